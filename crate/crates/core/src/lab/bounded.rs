//! Elements whose length is bounded over a class of generating sets.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::automorphism::{aut_group, orbit, Automorphism};
use super::unbounded::{length_value, list, strictly_increasing};
use super::uniform::{generating_subsets, uniform_table, DEFAULT_CAP};
use super::ExperimentReport;
use crate::error::{Error, Result};
use crate::genset::{generates, GenSet, Generation};
use crate::group::{Element, FiniteGroup, Group};
use crate::metric::{ball, word_length, Length, SearchOptions};
use crate::row;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterCertificate {
    /// `e` with `[x, y] = c^e`.
    pub exponent: BigInt,
    /// `l_S(c)` for `S = {x^±1, y^±1}`, searched up to length 4.
    pub length: Length,
}

impl CenterCertificate {
    pub fn holds(&self) -> bool {
        self.exponent.abs().is_one() && matches!(self.length, Length::Exact(n) if n <= 4)
    }
}

pub fn heisenberg_center_certificate(x: &Element, y: &Element, opts: &SearchOptions) -> Result<CenterCertificate> {
    let h = Group::Heisenberg;
    let s = GenSet::make_symmetric(&h, &[x.clone(), y.clone()])?;
    match generates(&h, &s, 8)? {
        Generation::Yes(_) => {}
        _ => {
            return Err(Error::Precondition(format!(
                "{} and {} do not generate the Heisenberg group",
                h.format_element(x),
                h.format_element(y)
            )))
        }
    }
    let exponent = match h.commutator(x, y)? {
        Element::Heisenberg([_, _, l]) => l,
        _ => unreachable!("Heisenberg element"),
    };
    let c = Element::heisenberg(0, 0, 1);
    let length = word_length(&h, &s, &c, 4, opts)?.length;
    Ok(CenterCertificate { exponent, length })
}

/// A random pair whose abelianization images form a basis of `Z^2`, with
/// random central parts.
fn random_generating_pair(rng: &mut ChaCha8Rng) -> (Element, Element) {
    let (mut x, mut y) = ([1i64, 0], [0i64, 1]);
    for _ in 0..rng.gen_range(2..=6) {
        match rng.gen_range(0..4) {
            0 => {
                let k = *[-3, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
                x = [x[0] + k * y[0], x[1] + k * y[1]];
            }
            1 => {
                let k = *[-3, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
                y = [y[0] + k * x[0], y[1] + k * x[1]];
            }
            2 => std::mem::swap(&mut x, &mut y),
            _ => x = [-x[0], -x[1]],
        }
    }
    let cx = rng.gen_range(-20..=20);
    let cy = rng.gen_range(-20..=20);
    (Element::heisenberg(x[0], x[1], cx), Element::heisenberg(y[0], y[1], cy))
}

pub fn heisenberg_center_batch(count: usize, seed: u64, opts: &SearchOptions) -> Result<ExperimentReport> {
    let h = Group::Heisenberg;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ExperimentReport::new("heis-center")
        .param("count", count)
        .with_seed(seed);
    let mut failures = 0;
    for i in 0..count {
        let (x, y) = random_generating_pair(&mut rng);
        let cert = heisenberg_center_certificate(&x, &y, opts)?;
        failures += usize::from(!cert.holds());
        report.push_row(row! {
            "sample" => i,
            "x" => h.format_element(&x),
            "y" => h.format_element(&y),
            "exponent" => cert.exponent.to_string(),
            "length" => length_value(cert.length.exact()),
        });
    }
    report.verdict(
        "heisenberg-center",
        failures == 0 && count > 0,
        format!("{failures} failures among {count} generating pairs"),
    );
    Ok(report)
}

pub const ZXD8_ATTEMPTS_PER_SAMPLE: usize = 10_000;

/// Rejection-samples generating sets of `Z × D8` from elements with
/// `|Z-part| ≤ radius` and checks `l_S((0, z)) ≤ 4`.
pub fn bound_witness_zxd8(samples: usize, seed: u64, radius: i64, opts: &SearchOptions) -> Result<ExperimentReport> {
    if radius < 1 {
        return Err(Error::InvalidParameter("radius must be at least 1".into()));
    }
    let group = Group::product(Group::IntVector(1), Group::DihedralFinite(4));
    let d8 = Group::DihedralFinite(4).enumerate()?;
    let pool: Vec<Element> = (-radius..=radius)
        .flat_map(|n| d8.iter().map(move |d| Element::pair(Element::int(n), d.clone())))
        .filter(|g| !group.is_identity(g))
        .collect();
    let target = Element::pair(Element::int(0), Element::dihedral(2, false));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ExperimentReport::new("zxd8")
        .param("samples", samples)
        .param("radius", radius)
        .with_seed(seed);
    let (mut attempts, mut rejected, mut inconclusive, mut failures) = (0usize, 0usize, 0usize, 0usize);
    let mut accepted = 0;
    while accepted < samples {
        if attempts >= samples.max(1) * ZXD8_ATTEMPTS_PER_SAMPLE {
            return Err(Error::CapExceeded(format!(
                "sampler found only {accepted} generating sets in {attempts} attempts"
            )));
        }
        attempts += 1;
        let k = rng.gen_range(2..=4);
        let items: Vec<Element> = pool.choose_multiple(&mut rng, k).cloned().collect();
        let s = GenSet::make_symmetric(&group, &items)?;
        match generates(&group, &s, 1)? {
            Generation::Yes(cert) => {
                debug_assert!(cert.verify(&group, &s));
            }
            Generation::No(_) => {
                rejected += 1;
                continue;
            }
            Generation::Inconclusive(_) => {
                inconclusive += 1;
                continue;
            }
        }
        let l = word_length(&group, &s, &target, 4, opts)?.length.exact();
        failures += usize::from(l.is_none());
        report.push_row(row! {"sample" => accepted, "genset" => s.format(&group), "length" => length_value(l)});
        accepted += 1;
    }
    report = report
        .param("attempts", attempts)
        .param("rejected", rejected)
        .param("inconclusive", inconclusive);
    report.verdict(
        "zxd8-bounded",
        failures == 0,
        format!("{failures} of {samples} sampled generating sets give l_S((0,z)) > 4"),
    );
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCheck {
    pub orbit: Vec<Element>,
    pub m: usize,
    /// Cardinality of the generating set.
    pub n: usize,
    pub inside_ball: bool,
    pub within_count: bool,
}

impl OrbitCheck {
    pub fn passed(&self) -> bool {
        self.inside_ball && self.within_count
    }

    /// `n^M`, saturating.
    pub fn bound(&self) -> u128 {
        (self.n as u128).checked_pow(self.m as u32).unwrap_or(u128::MAX)
    }
}

fn orbit_check(
    group: &Group,
    f: &FiniteGroup,
    auts: &[Automorphism],
    g: usize,
    s: &GenSet,
    m: usize,
    opts: &SearchOptions,
) -> Result<OrbitCheck> {
    let b = ball(group, s, m, opts)?;
    let orbit: Vec<Element> = orbit(auts, g).into_iter().map(|i| f.element(i).clone()).collect();
    let inside_ball = orbit.iter().all(|x| b.contains(x));
    let mut check = OrbitCheck {
        orbit,
        m,
        n: s.cardinality(),
        inside_ball,
        within_count: false,
    };
    check.within_count = (check.orbit.len() as u128) <= check.bound();
    Ok(check)
}

/// Checks `Aut(G)·g ⊆ B_S(M)` and `|Aut(G)·g| ≤ n^M` for a given `M`.
pub fn aut_orbit_bound_check(
    group: &Group,
    g: &Element,
    s: &GenSet,
    m: usize,
    opts: &SearchOptions,
) -> Result<OrbitCheck> {
    let f = FiniteGroup::new(group, super::automorphism::GENERATOR_CAP)?;
    let auts = aut_group(&f)?;
    let gi = f.index_of(g).ok_or_else(|| Error::domain("element not in group"))?;
    orbit_check(group, &f, &auts, gi, s, m, opts)
}

/// For every element `g` and every symmetric generating set `S`, with `M`
/// the exact supremum of `l_S(g)` over all generating sets.
pub fn aut_orbit_experiment(groups: &[Group], opts: &SearchOptions) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("aut-orbit").param("groups", list(groups));
    let mut total_failures = 0;
    let mut total_checks = 0;
    for group in groups {
        let f = FiniteGroup::new(group, DEFAULT_CAP)?;
        let auts = aut_group(&f)?;
        let table = uniform_table(group, DEFAULT_CAP)?;
        let gensets: Vec<GenSet> = generating_subsets(&f, DEFAULT_CAP)?
            .iter()
            .map(|sub| GenSet::make_symmetric(group, &sub.iter().map(|&i| f.element(i).clone()).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        for (gi, u) in table.iter().enumerate() {
            let mut failures = 0;
            let mut min_bound = u128::MAX;
            let mut orbit_size = 0;
            for s in &gensets {
                let c = orbit_check(group, &f, &auts, gi, s, u.max, opts)?;
                orbit_size = c.orbit.len();
                min_bound = min_bound.min(c.bound());
                failures += usize::from(!c.passed());
            }
            total_failures += failures;
            total_checks += gensets.len();
            report.push_row(row! {
                "group" => group.to_string(),
                "element" => group.format_element(&u.element),
                "orbit_size" => orbit_size,
                "m" => u.max,
                "min_bound" => min_bound.to_string(),
                "gensets" => gensets.len(),
                "failures" => failures,
            });
        }
    }
    report.verdict(
        "aut-orbit-bound",
        total_failures == 0,
        format!("{total_failures} failures in {total_checks} (element, generating set) checks"),
    );
    Ok(report)
}

pub fn uniform_experiment(group: &Group, cap: usize) -> Result<ExperimentReport> {
    let order = group
        .order()
        .ok_or_else(|| Error::Unsupported(format!("{group} is infinite")))?;
    let table = uniform_table(group, cap)?;
    let mut report = ExperimentReport::new("uniform")
        .param("group", group.to_string())
        .param("cap", cap);
    for u in &table {
        report.push_row(row! {
            "element" => group.format_element(&u.element),
            "max_length" => u.max,
            "argmax" => u.argmax.format(group),
            "generating_sets" => u.generating_sets,
        });
    }
    let worst = table.iter().map(|u| u.max).max().unwrap_or(0);
    report.verdict(
        "uniform-length",
        (worst as u64) < order,
        format!("largest supremum {worst} against |G| = {order}"),
    );
    Ok(report)
}

/// Number of distinct conjugates `x·g·x⁻¹` with `x` in the standard ball of radius `r`, for `r = 1..=radius`.
pub fn conjugacy_orbit_growth(
    group: &Group,
    g: &Element,
    radius: usize,
    opts: &SearchOptions,
) -> Result<Vec<(usize, usize)>> {
    group.check(g)?;
    let s = GenSet::standard(group)?;
    let b = ball(group, &s, radius, opts)?;
    let mut conjugates = HashSet::from([g.clone()]);
    let mut out = Vec::with_capacity(radius);
    for r in 1..=radius {
        for x in b.sphere(r) {
            conjugates.insert(group.conjugate(x, g)?);
        }
        out.push((r, conjugates.len()));
    }
    Ok(out)
}

pub fn fc_experiment(radius: usize, opts: &SearchOptions) -> Result<ExperimentReport> {
    if radius == 0 {
        return Err(Error::InvalidParameter("radius must be at least 1".into()));
    }
    let h = Group::Heisenberg;
    let a = Element::heisenberg(1, 0, 0);
    let c = Element::heisenberg(0, 0, 1);
    let mut report = ExperimentReport::new("fc").param("radius", radius);
    let growth_a = conjugacy_orbit_growth(&h, &a, radius, opts)?;
    let growth_c = conjugacy_orbit_growth(&h, &c, radius, opts)?;
    for (name, growth) in [("a", &growth_a), ("c", &growth_c)] {
        for &(r, count) in growth {
            report.push_row(row! {"element" => name, "radius" => r, "conjugates" => count});
        }
    }
    let counts_a: Vec<Option<usize>> = growth_a.iter().map(|&(_, n)| Some(n)).collect();
    let central = growth_c.iter().all(|&(_, n)| n == 1);
    report.verdict(
        "fc-witness",
        strictly_increasing(&counts_a) && central,
        format!(
            "conjugates of a: {}; of c: {}",
            list(&growth_a.iter().map(|p| p.1).collect::<Vec<_>>()),
            list(&growth_c.iter().map(|p| p.1).collect::<Vec<_>>())
        ),
    );
    Ok(report)
}
