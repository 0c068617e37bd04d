//! Reproducible experiments about uniformly bounded word length.
//!
//! Every reported length comes from the search in [`crate::metric`]; formula
//! columns are only ever compared against it.

pub mod automorphism;
pub mod bounded;
pub mod catalog;
pub mod prescribe;
mod render;
mod report;
pub mod unbounded;
pub mod uniform;

pub use automorphism::{aut_group, Automorphism};
pub use bounded::{
    aut_orbit_bound_check, aut_orbit_experiment, bound_witness_zxd8, conjugacy_orbit_growth, fc_experiment,
    heisenberg_center_batch, heisenberg_center_certificate, uniform_experiment, CenterCertificate, OrbitCheck,
};
pub use catalog::{claim, Claim, CLAIMS};
pub use prescribe::{prescribe_experiment, prescribe_length_free, prescribe_length_zd, PrescribedLength};
pub use render::{render_report, Format};
pub use report::{ExperimentReport, Row, Verdict};
pub use unbounded::{
    quotient_orbit_experiment, unbounded_witness_dinfty, unbounded_witness_heisenberg, unbounded_witness_zd,
    unbounded_witness_zxzq,
};
pub use uniform::{uniform_length_exact, uniform_table, UniformLength};

use crate::error::Result;
use crate::group::{Element, Group};
use crate::metric::SearchOptions;

/// An experiment with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Experiment {
    Zxzq {
        q: u64,
        primes: Vec<u64>,
    },
    Zd {
        d: usize,
        x: Vec<i64>,
        pairs: Vec<(i64, i64)>,
    },
    Heisenberg {
        n: i64,
        pairs: Vec<(i64, i64)>,
    },
    Dinfty {
        pairs: Vec<(i64, i64)>,
    },
    HeisCenter {
        count: usize,
        seed: u64,
    },
    Zxd8 {
        samples: usize,
        seed: u64,
        radius: i64,
    },
    PrescribeFree {
        k: usize,
        g: Element,
        grid: Vec<(usize, u64, u64)>,
    },
    PrescribeZd {
        d: usize,
        g: Element,
        grid: Vec<(usize, u64, u64)>,
    },
    QuotientOrbit {
        p: u64,
        ks: Vec<u64>,
    },
    AutOrbit {
        groups: Vec<Group>,
    },
    Uniform {
        group: Group,
        cap: usize,
    },
    Fc {
        radius: usize,
    },
}

pub const DEFAULT_SEED: u64 = 42;

const LADDER: [(i64, i64); 3] = [(2, 3), (3, 5), (5, 7)];

impl Experiment {
    /// Every experiment with its default parameters, sorted by name.
    pub fn defaults() -> Vec<Experiment> {
        let mut all = vec![
            Experiment::Zxzq {
                q: 2,
                primes: vec![5, 7, 11],
            },
            Experiment::Zd {
                d: 2,
                x: vec![1, 0],
                pairs: LADDER.to_vec(),
            },
            Experiment::Heisenberg {
                n: 1,
                pairs: LADDER.to_vec(),
            },
            Experiment::Dinfty { pairs: LADDER.to_vec() },
            Experiment::HeisCenter {
                count: 100,
                seed: DEFAULT_SEED,
            },
            Experiment::Zxd8 {
                samples: 200,
                seed: DEFAULT_SEED,
                radius: 10,
            },
            Experiment::PrescribeFree {
                k: 2,
                g: Element::Free(vec![1]),
                grid: prescribe::DEFAULT_GRID.to_vec(),
            },
            Experiment::PrescribeZd {
                d: 2,
                g: Element::vector(&[1, 0]),
                grid: prescribe::DEFAULT_GRID.to_vec(),
            },
            Experiment::QuotientOrbit {
                p: 7,
                ks: (1..7).collect(),
            },
            Experiment::AutOrbit {
                groups: vec![Group::FiniteCyclic(5), Group::FiniteCyclic(8), Group::DihedralFinite(4)],
            },
            Experiment::Uniform {
                group: Group::DihedralFinite(4),
                cap: uniform::DEFAULT_CAP,
            },
            Experiment::Fc { radius: 4 },
        ];
        all.sort_by_key(|e| e.name());
        all
    }

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Zxzq { .. } => "zxzq",
            Experiment::Zd { .. } => "zd",
            Experiment::Heisenberg { .. } => "heisenberg",
            Experiment::Dinfty { .. } => "dinfty",
            Experiment::HeisCenter { .. } => "heis-center",
            Experiment::Zxd8 { .. } => "zxd8",
            Experiment::PrescribeFree { .. } => "prescribe-free",
            Experiment::PrescribeZd { .. } => "prescribe-zd",
            Experiment::QuotientOrbit { .. } => "quotient-orbit",
            Experiment::AutOrbit { .. } => "aut-orbit",
            Experiment::Uniform { .. } => "uniform",
            Experiment::Fc { .. } => "fc",
        }
    }

    /// Claim ids this experiment reports verdicts on.
    pub fn claims(&self) -> &'static [&'static str] {
        match self {
            Experiment::Zxzq { .. } => &["zxzq-length-formula", "zxzq-unbounded"],
            Experiment::Zd { .. } => &["zd-unbounded"],
            Experiment::Heisenberg { .. } => &["heisenberg-unbounded"],
            Experiment::Dinfty { .. } => &["dinfty-unbounded"],
            Experiment::HeisCenter { .. } => &["heisenberg-center"],
            Experiment::Zxd8 { .. } => &["zxd8-bounded"],
            Experiment::PrescribeFree { .. } | Experiment::PrescribeZd { .. } => &["prescribed-length"],
            Experiment::QuotientOrbit { .. } => &["quotient-orbit"],
            Experiment::AutOrbit { .. } => &["aut-orbit-bound"],
            Experiment::Uniform { .. } => &["uniform-length"],
            Experiment::Fc { .. } => &["fc-witness"],
        }
    }

    /// Statements of the claims checked, one per line.
    pub fn explain(&self) -> String {
        self.claims()
            .iter()
            .filter_map(|id| claim(id))
            .map(|c| format!("{}: {}\n", c.id, c.statement))
            .collect()
    }

    pub fn run(&self, opts: &SearchOptions) -> Result<ExperimentReport> {
        match self {
            Experiment::Zxzq { q, primes } => unbounded_witness_zxzq(*q, primes, opts),
            Experiment::Zd { d, x, pairs } => unbounded_witness_zd(*d, x, pairs, opts),
            Experiment::Heisenberg { n, pairs } => unbounded_witness_heisenberg(*n, pairs, opts),
            Experiment::Dinfty { pairs } => unbounded_witness_dinfty(pairs, opts),
            Experiment::HeisCenter { count, seed } => heisenberg_center_batch(*count, *seed, opts),
            Experiment::Zxd8 { samples, seed, radius } => bound_witness_zxd8(*samples, *seed, *radius, opts),
            Experiment::PrescribeFree { k, g, grid } => prescribe_experiment(&Group::free(*k)?, g, grid, opts),
            Experiment::PrescribeZd { d, g, grid } => prescribe_experiment(&Group::int_vector(*d)?, g, grid, opts),
            Experiment::QuotientOrbit { p, ks } => quotient_orbit_experiment(*p, ks),
            Experiment::AutOrbit { groups } => aut_orbit_experiment(groups, opts),
            Experiment::Uniform { group, cap } => uniform_experiment(group, *cap),
            Experiment::Fc { radius } => fc_experiment(*radius, opts),
        }
    }
}
