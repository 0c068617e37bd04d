//! Generating sets under which a given element has a prescribed length.
//!
//! `E = {g^±2, g^±p} ∪ {x_i^±u, x_i^±v}` with `p = 2l + 1`: `g = g^p·(g^2)^{-l}`
//! has length at most `l + 1`, and the large primes `u < v` keep the other
//! letters from producing a shorter expression. Lengths are certified by search.

use num_integer::Integer;

use super::unbounded::is_prime;
use super::ExperimentReport;
use crate::error::{Error, Result};
use crate::genset::{generates_with_witnesses, GenSet, Generation, SyllableWord};
use crate::group::{Element, Group};
use crate::metric::{word_length, LengthCert, SearchOptions};
use crate::row;

#[derive(Clone, Debug)]
pub struct PrescribedLength {
    pub group: Group,
    pub genset: GenSet,
    pub target: Element,
    /// `l + 1`.
    pub expected: usize,
    pub cert: LengthCert,
    pub generation: Generation,
}

impl PrescribedLength {
    pub fn holds(&self) -> bool {
        self.cert.length.exact() == Some(self.expected)
    }
}

/// Largest absolute exponent among the syllables of `g`.
fn syllable_bound(g: &Element) -> u64 {
    match g {
        Element::Free(w) => {
            let mut best = 0u64;
            let mut run = 0u64;
            for (i, &x) in w.iter().enumerate() {
                run = if i > 0 && w[i - 1] == x { run + 1 } else { 1 };
                best = best.max(run);
            }
            best
        }
        Element::Vector(v) => v
            .iter()
            .map(|c| c.magnitude().try_into().unwrap_or(u64::MAX))
            .max()
            .unwrap_or(0),
        _ => 0,
    }
}

fn check_parameters(g: &Element, group: &Group, l: usize, u: u64, v: u64) -> Result<u64> {
    if group.is_identity(g) {
        return Err(Error::InvalidParameter("g must be nontrivial".into()));
    }
    let p = 2 * l as u64 + 1;
    let n = syllable_bound(g);
    if !is_prime(u) || !is_prime(v) || u >= v {
        return Err(Error::InvalidParameter(format!(
            "u = {u} and v = {v} must be primes with u < v"
        )));
    }
    if u <= p {
        return Err(Error::InvalidParameter(format!("u = {u} must exceed p = 2l+1 = {p}")));
    }
    if v <= 3 * n * u {
        return Err(Error::InvalidParameter(format!(
            "v = {v} must exceed 3·N·u = {}",
            3 * n * u
        )));
    }
    Ok(p)
}

fn construct(group: Group, g: &Element, l: usize, u: u64, v: u64, opts: &SearchOptions) -> Result<PrescribedLength> {
    let p = check_parameters(g, &group, l, u, v)?;
    let basis = group.standard_generators();
    let mut items = vec![group.power(g, 2)?, group.power(g, p as i64)?];
    for x in &basis {
        items.push(group.power(x, u as i64)?);
        items.push(group.power(x, v as i64)?);
    }
    let genset = GenSet::make_symmetric(&group, &items)?;
    // x_i = (x_i^u)^α (x_i^v)^β with αu + βv = 1
    let e = (u as i64).extended_gcd(&(v as i64));
    let witnesses: Vec<SyllableWord> = basis
        .iter()
        .map(|x| {
            let xu = genset.position(&group.power(x, u as i64)?).expect("letter");
            let xv = genset.position(&group.power(x, v as i64)?).expect("letter");
            Ok(vec![(xu, e.x), (xv, e.y)])
        })
        .collect::<Result<_>>()?;
    let generation = generates_with_witnesses(&group, &genset, &witnesses, 1)?;
    if !generation.is_yes() {
        return Err(Error::Internal(format!("constructed set does not generate {group}")));
    }
    let cert = word_length(&group, &genset, g, l + 2, opts)?;
    Ok(PrescribedLength {
        group,
        genset,
        target: g.clone(),
        expected: l + 1,
        cert,
        generation,
    })
}

pub fn prescribe_length_free(
    k: usize,
    g: &Element,
    l: usize,
    u: u64,
    v: u64,
    opts: &SearchOptions,
) -> Result<PrescribedLength> {
    let group = Group::free(k)?;
    group.check(g)?;
    construct(group, g, l, u, v, opts)
}

pub fn prescribe_length_zd(
    d: usize,
    g: &Element,
    l: usize,
    u: u64,
    v: u64,
    opts: &SearchOptions,
) -> Result<PrescribedLength> {
    let group = Group::int_vector(d)?;
    group.check(g)?;
    construct(group, g, l, u, v, opts)
}

/// Parameter grid `(l, u, v)` valid for any `g` with syllable bound 1.
pub const DEFAULT_GRID: &[(usize, u64, u64)] = &[
    (0, 2, 7),
    (1, 5, 17),
    (1, 7, 23),
    (2, 7, 23),
    (2, 11, 37),
    (3, 11, 37),
    (3, 17, 53),
];

/// Runs the construction over a grid; `group` is `F_k` or `Z^d`.
pub fn prescribe_experiment(
    group: &Group,
    g: &Element,
    grid: &[(usize, u64, u64)],
    opts: &SearchOptions,
) -> Result<ExperimentReport> {
    let name = match group {
        Group::Free(_) => "prescribe-free",
        Group::IntVector(_) => "prescribe-zd",
        _ => {
            return Err(Error::Unsupported(format!(
                "prescribed lengths are built in F_k or Z^d, not {group}"
            )))
        }
    };
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty parameter grid".into()));
    }
    let mut report = ExperimentReport::new(name)
        .param("group", group.to_string())
        .param("g", group.format_element(g));
    let mut failures = 0;
    for &(l, u, v) in grid {
        let r = match group {
            Group::Free(k) => prescribe_length_free(*k, g, l, u, v, opts)?,
            Group::IntVector(d) => prescribe_length_zd(*d, g, l, u, v, opts)?,
            _ => unreachable!(),
        };
        failures += usize::from(!r.holds());
        let witness = r
            .cert
            .witness
            .as_ref()
            .map(|w| crate::girth::Word(w.clone()).format(&r.genset, group))
            .unwrap_or_default();
        report.push_row(row! {
            "l" => l,
            "u" => u,
            "v" => v,
            "p" => 2 * l + 1,
            "length" => super::unbounded::length_value(r.cert.length.exact()),
            "expected" => r.expected,
            "match" => r.holds(),
            "witness" => witness,
        });
    }
    report.verdict(
        "prescribed-length",
        failures == 0,
        format!("{failures} of {} parameter sets miss l_E(g) = l+1", grid.len()),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_element;
    use crate::metric::Length;

    #[test]
    fn free_construction() {
        let opts = SearchOptions::default();
        let f2 = Group::Free(2);
        let x1 = parse_element(&f2, "x1").unwrap();
        let r = prescribe_length_free(2, &x1, 2, 7, 23, &opts).unwrap();
        assert_eq!(r.cert.length, Length::Exact(3));
        assert!(r.cert.verify(&f2, &r.genset));
        assert_eq!(
            prescribe_length_free(2, &x1, 1, 5, 17, &opts).unwrap().cert.length,
            Length::Exact(2)
        );
        assert_eq!(
            prescribe_length_free(2, &x1, 0, 2, 7, &opts).unwrap().cert.length,
            Length::Exact(1)
        );
        let g = parse_element(&f2, "x1*x2").unwrap();
        assert!(prescribe_length_free(2, &g, 2, 7, 23, &opts).unwrap().holds());
    }

    #[test]
    fn zd_construction() {
        let opts = SearchOptions::default();
        let g = Element::vector(&[1, 0]);
        assert_eq!(
            prescribe_length_zd(2, &g, 2, 7, 23, &opts).unwrap().cert.length,
            Length::Exact(3)
        );
        assert_eq!(
            prescribe_length_zd(2, &g, 1, 5, 17, &opts).unwrap().cert.length,
            Length::Exact(2)
        );
        assert_eq!(
            prescribe_length_zd(2, &g, 0, 2, 7, &opts).unwrap().cert.length,
            Length::Exact(1)
        );
    }

    #[test]
    fn parameter_checks() {
        let opts = SearchOptions::default();
        let f2 = Group::Free(2);
        let x1 = parse_element(&f2, "x1").unwrap();
        assert!(prescribe_length_free(2, &x1, 2, 5, 23, &opts).is_err()); // u <= p
        assert!(prescribe_length_free(2, &x1, 2, 7, 19, &opts).is_err()); // v <= 3u
        assert!(prescribe_length_free(2, &x1, 2, 9, 29, &opts).is_err()); // u not prime
        assert!(prescribe_length_free(2, &f2.identity(), 2, 7, 23, &opts).is_err());
        let x1sq = parse_element(&f2, "x1^2").unwrap();
        assert!(prescribe_length_free(2, &x1sq, 2, 7, 23, &opts).is_err()); // v <= 3·2·7
        assert!(prescribe_length_free(2, &x1sq, 2, 7, 43, &opts).unwrap().holds());
    }

    #[test]
    fn default_grid_passes() {
        let opts = SearchOptions::default();
        let f2 = Group::Free(2);
        let r = prescribe_experiment(&f2, &parse_element(&f2, "x1").unwrap(), DEFAULT_GRID, &opts).unwrap();
        assert!(r.passed(), "{r:?}");
        let z2 = Group::IntVector(2);
        let r = prescribe_experiment(&z2, &Element::vector(&[1, 0]), DEFAULT_GRID, &opts).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn stated_constraints_admit_a_shorter_word() {
        // u = 2p - 1: g = g^-u · (g^p)^2 beats l + 1 = 4
        let opts = SearchOptions::default();
        let r = prescribe_length_zd(1, &Element::vector(&[1]), 3, 13, 41, &opts).unwrap();
        assert_eq!(r.cert.length, Length::Exact(3));
        assert!(!r.holds());
        let f2 = Group::Free(2);
        let r = prescribe_experiment(
            &f2,
            &parse_element(&f2, "x1").unwrap(),
            &[(2, 7, 23), (3, 13, 41)],
            &opts,
        )
        .unwrap();
        assert!(!r.passed());
    }
}
