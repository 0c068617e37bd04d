//! `wordbound experiment ...`: argument parsing and the `all` fan-out.

use clap::{Args, Subcommand};
use rayon::prelude::*;
use wordbound_core::group::{parse_element, parse_group};
use wordbound_core::lab::{Experiment, ExperimentReport};
use wordbound_core::metric::SearchOptions;
use wordbound_core::{Element, Error, Group, Result};

#[derive(Debug, Subcommand)]
pub enum ExperimentCmd {
    /// l_S((0,1)) in Z x Z/q with S = {±(p,1), ±(q+1,0)}.
    Zxzq {
        #[arg(long)]
        q: Option<u64>,
        /// Comma-separated primes p > q+1.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    /// l_S(X) in Z^d along S(p,q).
    Zd {
        #[arg(long)]
        d: Option<usize>,
        /// Target element, e.g. "(1,0)".
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[command(flatten)]
        pairs: Pairs,
    },
    /// l_S(c^n) in H3 along S(p,q) = {a^±p, a^±q, b^±1}.
    Heisenberg {
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[command(flatten)]
        pairs: Pairs,
    },
    /// l_S(t) in Dinf along S(α,β) = {s, t^α·s, t^β·s}.
    Dinfty {
        #[command(flatten)]
        pairs: Pairs,
    },
    /// Random generating pairs of H3: [x,y] = c^±1 and l_S(c) ≤ 4.
    HeisCenter {
        #[arg(long)]
        count: Option<usize>,
    },
    /// Sampled generating sets of Z x D8: l_S((0,z)) ≤ 4.
    Zxd8 {
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        radius: Option<i64>,
    },
    /// Generating sets of F_k with l_E(g) = l+1.
    PrescribeFree {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        g: Option<String>,
        #[command(flatten)]
        grid: Grid,
    },
    /// Generating sets of Z^d with l_E(g) = l+1.
    PrescribeZd {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[command(flatten)]
        grid: Grid,
    },
    /// Orbits of x ↦ x^k on D_2p.
    QuotientOrbit {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<u64>>,
    },
    /// |Aut(G)·g| ≤ n^M and Aut(G)·g ⊆ B_S(M) over all generating sets.
    AutOrbit {
        /// Semicolon-separated finite groups.
        #[arg(long, value_delimiter = ';')]
        groups: Option<Vec<String>>,
    },
    /// Exact uniform length table of a small finite group.
    Uniform {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Conjugacy-orbit growth of a and c in H3.
    Fc {
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Every experiment with default parameters.
    All {
        /// Worker threads; 0 picks the number of CPUs.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, Args)]
pub struct Pairs {
    /// Comma-separated pairs, e.g. "2:3,3:5,5:7".
    #[arg(long, value_parser = parse_pair, value_delimiter = ',')]
    pairs: Option<Vec<(i64, i64)>>,
}

#[derive(Debug, Args)]
pub struct Grid {
    /// Comma-separated l:u:v triples.
    #[arg(long, value_parser = parse_triple, value_delimiter = ',')]
    grid: Option<Vec<(usize, u64, u64)>>,
}

fn parse_pair(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_triple(s: &str) -> std::result::Result<(usize, u64, u64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [l, u, v] = parts.as_slice() else {
        return Err(format!("expected l:u:v, got {s:?}"));
    };
    let bad = |t: &str| format!("{t:?} is not a nonnegative integer");
    Ok((
        l.trim().parse().map_err(|_| bad(l))?,
        u.trim().parse().map_err(|_| bad(u))?,
        v.trim().parse().map_err(|_| bad(v))?,
    ))
}

fn default_for(name: &str) -> Experiment {
    Experiment::defaults()
        .into_iter()
        .find(|e| e.name() == name)
        .expect("every experiment has defaults")
}

/// `None` for `all`.
pub fn build(cmd: &ExperimentCmd, seed: Option<u64>) -> Result<Option<Experiment>> {
    use ExperimentCmd as C;
    let name = match cmd {
        C::Zxzq { .. } => "zxzq",
        C::Zd { .. } => "zd",
        C::Heisenberg { .. } => "heisenberg",
        C::Dinfty { .. } => "dinfty",
        C::HeisCenter { .. } => "heis-center",
        C::Zxd8 { .. } => "zxd8",
        C::PrescribeFree { .. } => "prescribe-free",
        C::PrescribeZd { .. } => "prescribe-zd",
        C::QuotientOrbit { .. } => "quotient-orbit",
        C::AutOrbit { .. } => "aut-orbit",
        C::Uniform { .. } => "uniform",
        C::Fc { .. } => "fc",
        C::All { .. } => return Ok(None),
    };
    let mut e = default_for(name);
    match (&mut e, cmd) {
        (Experiment::Zxzq { q, primes }, C::Zxzq { q: q2, primes: p2 }) => {
            set(q, q2);
            set(primes, p2);
        }
        (
            Experiment::Zd { d, x, pairs },
            C::Zd {
                d: d2,
                x: x2,
                pairs: p2,
            },
        ) => {
            set(d, d2);
            if let Some(text) = x2 {
                let Element::Vector(v) = parse_element(&Group::int_vector(*d)?, text)? else {
                    unreachable!("Z^d elements are vectors")
                };
                *x = v
                    .iter()
                    .map(|c| {
                        i64::try_from(c).map_err(|_| Error::InvalidParameter(format!("coordinate {c} out of range")))
                    })
                    .collect::<Result<_>>()?;
            } else if x.len() != *d {
                return Err(Error::InvalidParameter(format!("--x is required when d = {d}")));
            }
            set(pairs, &p2.pairs);
        }
        (Experiment::Heisenberg { n, pairs }, C::Heisenberg { n: n2, pairs: p2 }) => {
            set(n, n2);
            set(pairs, &p2.pairs);
        }
        (Experiment::Dinfty { pairs }, C::Dinfty { pairs: p2 }) => set(pairs, &p2.pairs),
        (Experiment::HeisCenter { count, seed: s }, C::HeisCenter { count: c2 }) => {
            set(count, c2);
            set(s, &seed);
        }
        (
            Experiment::Zxd8 {
                samples,
                seed: s,
                radius,
            },
            C::Zxd8 {
                samples: n2,
                radius: r2,
            },
        ) => {
            set(samples, n2);
            set(radius, r2);
            set(s, &seed);
        }
        (
            Experiment::PrescribeFree { k, g, grid },
            C::PrescribeFree {
                k: k2,
                g: g2,
                grid: grid2,
            },
        ) => {
            set(k, k2);
            if let Some(text) = g2 {
                *g = parse_element(&Group::free(*k)?, text)?;
            }
            set(grid, &grid2.grid);
        }
        (
            Experiment::PrescribeZd { d, g, grid },
            C::PrescribeZd {
                d: d2,
                g: g2,
                grid: grid2,
            },
        ) => {
            set(d, d2);
            match g2 {
                Some(text) => *g = parse_element(&Group::int_vector(*d)?, text)?,
                None if d2.is_some() => return Err(Error::InvalidParameter("--g is required with --d".into())),
                None => {}
            }
            set(grid, &grid2.grid);
        }
        (Experiment::QuotientOrbit { p, ks }, C::QuotientOrbit { p: p2, ks: k2 }) => {
            set(p, p2);
            match k2 {
                Some(k2) => *ks = k2.clone(),
                None => *ks = (1..*p).collect(),
            }
        }
        (Experiment::AutOrbit { groups }, C::AutOrbit { groups: g2 }) => {
            if let Some(texts) = g2 {
                *groups = texts.iter().map(|t| parse_group(t)).collect::<Result<_>>()?;
            }
        }
        (Experiment::Uniform { group, cap }, C::Uniform { group: g2, cap: c2 }) => {
            if let Some(text) = g2 {
                *group = parse_group(text)?;
            }
            set(cap, c2);
        }
        (Experiment::Fc { radius }, C::Fc { radius: r2 }) => set(radius, r2),
        _ => unreachable!("defaults are looked up by name"),
    }
    Ok(Some(e))
}

fn set<T: Clone>(slot: &mut T, value: &Option<T>) {
    if let Some(v) = value {
        *slot = v.clone();
    }
}

/// Runs experiments on `jobs` workers; results stay in input order.
pub fn run_all(
    experiments: &[Experiment],
    jobs: usize,
    opts: &SearchOptions,
) -> Result<Vec<(String, Result<ExperimentReport>)>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    Ok(pool.install(|| {
        experiments
            .par_iter()
            .map(|e| (e.name().to_string(), e.run(opts)))
            .collect()
    }))
}
