//! Families of generating sets along which a fixed element's length grows.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde_json::Value;

use super::ExperimentReport;
use crate::error::{Error, Result};
use crate::genset::{generates, GenSet, Generation};
use crate::group::{Element, FiniteGroup, Group};
use crate::metric::{word_length, SearchOptions};
use crate::row;

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub(crate) fn length_value(l: Option<usize>) -> Value {
    l.map_or(Value::Null, Value::from)
}

pub(crate) fn strictly_increasing(xs: &[Option<usize>]) -> bool {
    xs.iter().all(Option::is_some) && xs.windows(2).all(|w| w[0] < w[1])
}

pub(crate) fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn pair_list(pairs: &[(i64, i64)]) -> String {
    pairs
        .iter()
        .map(|(p, q)| format!("{p}:{q}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn require_generation(group: &Group, s: &GenSet, budget: i64) -> Result<Generation> {
    match generates(group, s, budget)? {
        g @ Generation::Yes(_) => Ok(g),
        Generation::No(w) => Err(Error::Precondition(format!(
            "{} does not generate {group}: {w:?}",
            s.format(group)
        ))),
        Generation::Inconclusive(m) => Err(Error::Precondition(format!(
            "generation of {group} by {} is inconclusive: {m}",
            s.format(group)
        ))),
    }
}

fn length(group: &Group, s: &GenSet, g: &Element, cap: usize, opts: &SearchOptions) -> Result<Option<usize>> {
    Ok(word_length(group, s, g, cap, opts)?.length.exact())
}

/// `Z × Z/q` with `S = {±(p,1), ±(q+1,0)}`: the length of `(0,1)` against `p+q+1`.
pub fn unbounded_witness_zxzq(q: u64, primes: &[u64], opts: &SearchOptions) -> Result<ExperimentReport> {
    if q < 2 || primes.is_empty() {
        return Err(Error::InvalidParameter("need q >= 2 and at least one prime".into()));
    }
    let group = Group::product(Group::IntVector(1), Group::cyclic(q)?);
    let target = Element::pair(Element::int(0), Element::Cyclic(1));
    let mut report = ExperimentReport::new("zxzq")
        .param("q", q)
        .param("primes", list(primes));
    let mut lengths = Vec::new();
    for &p in primes {
        if !is_prime(p) || p <= q + 1 {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must be a prime greater than q+1 = {}",
                q + 1
            )));
        }
        let s = GenSet::make_symmetric(
            &group,
            &[
                Element::pair(Element::int(p as i64), Element::Cyclic(1)),
                Element::pair(Element::int(q as i64 + 1), Element::Cyclic(0)),
            ],
        )?;
        require_generation(&group, &s, 1)?;
        let expected = (p + q + 1) as usize;
        let l = length(&group, &s, &target, 2 * expected, opts)?;
        report.push_row(
            row! {"p" => p, "length" => length_value(l), "expected" => expected, "match" => l == Some(expected)},
        );
        lengths.push((p, l));
    }
    let matched = report.rows.iter().filter(|r| r["match"] == Value::Bool(true)).count();
    report.verdict(
        "zxzq-length-formula",
        matched == primes.len(),
        format!("{matched}/{} rows match p+q+1", primes.len()),
    );
    lengths.sort();
    let ls: Vec<Option<usize>> = lengths.iter().map(|&(_, l)| l).collect();
    report.verdict(
        "zxzq-unbounded",
        strictly_increasing(&ls),
        format!("lengths by increasing p: {}", fmt_lengths(&ls)),
    );
    Ok(report)
}

pub(crate) fn fmt_lengths(ls: &[Option<usize>]) -> String {
    ls.iter()
        .map(|l| l.map_or("-".to_string(), |n| n.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

/// `(a, b)` with `b·p − a·q = 1`, minimizing `|a| + |b|` (ties: smallest shift).
pub fn unimodular_completion(p: i64, q: i64) -> Result<(i64, i64)> {
    let e = p.extended_gcd(&q);
    if e.gcd != 1 {
        return Err(Error::InvalidParameter(format!("p = {p} and q = {q} are not coprime")));
    }
    // e.x·p + e.y·q = 1, so b0 = e.x, a0 = −e.y; general solution b0 + kq, a0 + kp
    let (b0, a0) = (e.x, -e.y);
    let cost = |k: i64| (a0 + k * p).abs() + (b0 + k * q).abs();
    let centers = [-Integer::div_floor(&a0, &p), -Integer::div_floor(&b0, &q)];
    let k = centers
        .iter()
        .flat_map(|&c| c - 2..=c + 2)
        .min_by_key(|&k| (cost(k), k))
        .expect("nonempty");
    Ok((a0 + k * p, b0 + k * q))
}

/// `S(p,q) = {±(p,a,0..), ±(q,b,0..), ±e_3, .., ±e_d}` with `bp − aq = 1`.
pub fn zd_genset(d: usize, p: i64, q: i64) -> Result<(GenSet, i64, i64)> {
    if d < 2 {
        return Err(Error::InvalidParameter("dimension must be at least 2".into()));
    }
    let (a, b) = unimodular_completion(p, q)?;
    let group = Group::IntVector(d);
    let mut items = Vec::with_capacity(d);
    let mut v1 = vec![0i64; d];
    let mut v2 = vec![0i64; d];
    (v1[0], v1[1], v2[0], v2[1]) = (p, a, q, b);
    items.push(Element::vector(&v1));
    items.push(Element::vector(&v2));
    for i in 2..d {
        let mut e = vec![0i64; d];
        e[i] = 1;
        items.push(Element::vector(&e));
    }
    Ok((GenSet::make_symmetric(&group, &items)?, a, b))
}

pub fn unbounded_witness_zd(
    d: usize,
    x: &[i64],
    pairs: &[(i64, i64)],
    opts: &SearchOptions,
) -> Result<ExperimentReport> {
    if x.len() != d || x.iter().all(|&c| c == 0) || pairs.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "X must be a nonzero vector of dimension {d}, with at least one pair"
        )));
    }
    let group = Group::int_vector(d)?;
    let target = Element::vector(x);
    let mut report = ExperimentReport::new("zd")
        .param("d", d)
        .param("x", group.format_element(&target))
        .param("pairs", pair_list(pairs));
    let mut ls = Vec::new();
    for &(p, q) in pairs {
        let (s, a, b) = zd_genset(d, p, q)?;
        require_generation(&group, &s, 1)?;
        // coordinates of X in the basis bound the length from above
        let alpha = b * x[0] - q * x[1];
        let beta = -a * x[0] + p * x[1];
        let cap = (alpha.abs() + beta.abs() + x[2..].iter().map(|c| c.abs()).sum::<i64>()) as usize;
        let l = length(&group, &s, &target, cap.max(1), opts)?;
        report.push_row(row! {"p" => p, "q" => q, "a" => a, "b" => b, "length" => length_value(l)});
        ls.push(l);
    }
    let nondecreasing = ls.iter().all(Option::is_some) && ls.windows(2).all(|w| w[0] <= w[1]);
    let grows = matches!((ls.first(), ls.last()), (Some(Some(f)), Some(Some(l))) if l > f);
    report.verdict(
        "zd-unbounded",
        nondecreasing && grows,
        format!("lengths along the ladder: {}", fmt_lengths(&ls)),
    );
    Ok(report)
}

/// `S = {a^±p, a^±q, b^±1}` in the Heisenberg group.
pub fn heisenberg_genset(p: i64, q: i64) -> Result<GenSet> {
    GenSet::make_symmetric(
        &Group::Heisenberg,
        &[
            Element::heisenberg(p, 0, 0),
            Element::heisenberg(q, 0, 0),
            Element::heisenberg(0, 1, 0),
        ],
    )
}

pub const HEISENBERG_CAP: usize = 64;

pub fn unbounded_witness_heisenberg(n: i64, pairs: &[(i64, i64)], opts: &SearchOptions) -> Result<ExperimentReport> {
    if n == 0 || pairs.is_empty() {
        return Err(Error::InvalidParameter("need n != 0 and at least one pair".into()));
    }
    let group = Group::Heisenberg;
    let target = Element::heisenberg(0, 0, n);
    let standard = length(&group, &GenSet::standard(&group)?, &target, HEISENBERG_CAP, opts)?;
    let mut report = ExperimentReport::new("heisenberg")
        .param("n", n)
        .param("pairs", pair_list(pairs))
        .param("standard_length", length_value(standard));
    let mut ls = Vec::new();
    for &(p, q) in pairs {
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidParameter(format!("p = {p} and q = {q} are not coprime")));
        }
        let s = heisenberg_genset(p, q)?;
        require_generation(&group, &s, 8)?;
        let l = length(&group, &s, &target, HEISENBERG_CAP, opts)?;
        report.push_row(row! {"p" => p, "q" => q, "length" => length_value(l)});
        ls.push(l);
    }
    report.verdict(
        "heisenberg-unbounded",
        strictly_increasing(&ls),
        format!("l_S(c^{n}) along the ladder: {}", fmt_lengths(&ls)),
    );
    Ok(report)
}

/// `S = {s, t^α s, t^β s}` in the infinite dihedral group.
pub fn dinfty_genset(alpha: i64, beta: i64) -> Result<GenSet> {
    GenSet::make_symmetric(
        &Group::DihedralInfinite,
        &[
            Element::dihedral(0, true),
            Element::dihedral(alpha, true),
            Element::dihedral(beta, true),
        ],
    )
}

pub fn unbounded_witness_dinfty(pairs: &[(i64, i64)], opts: &SearchOptions) -> Result<ExperimentReport> {
    if pairs.is_empty() {
        return Err(Error::InvalidParameter("need at least one pair".into()));
    }
    let group = Group::DihedralInfinite;
    let t = Element::dihedral(1, false);
    let mut report = ExperimentReport::new("dinfty").param("pairs", pair_list(pairs));
    let mut ls = Vec::new();
    for &(alpha, beta) in pairs {
        let s = dinfty_genset(alpha, beta)?;
        require_generation(&group, &s, 1)?;
        let cap = 2 * (alpha.unsigned_abs() + beta.unsigned_abs()) as usize + 2;
        let l = length(&group, &s, &t, cap, opts)?;
        report.push_row(row! {"alpha" => alpha, "beta" => beta, "length" => length_value(l)});
        ls.push(l);
    }
    report.verdict(
        "dinfty-unbounded",
        strictly_increasing(&ls),
        format!("l_S(t) along the ladder: {}", fmt_lengths(&ls)),
    );
    Ok(report)
}

/// Checks `F_k: (x, y) ↦ (x^k, y)` on `D_2p` and the orbit of the rotation `r`.
pub fn quotient_orbit_experiment(p: u64, ks: &[u64]) -> Result<ExperimentReport> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} must be an odd prime")));
    }
    if ks.is_empty() {
        return Err(Error::InvalidParameter("need at least one k".into()));
    }
    if let Some(k) = ks.iter().find(|&&k| k % p == 0) {
        return Err(Error::InvalidParameter(format!("k = {k} is not a unit mod {p}")));
    }
    let group = Group::dihedral(p)?;
    let f = FiniteGroup::new(&group, 1 << 12)?;
    let rotation = |x: &Element| match x {
        Element::Dihedral { rot, flip } => (rot.clone(), *flip),
        _ => unreachable!("dihedral element"),
    };
    let mut maps = Vec::new();
    let mut report = ExperimentReport::new("quotient-orbit")
        .param("p", p)
        .param("ks", list(ks));
    let r = f.index_of(&Element::dihedral(1, false)).expect("rotation");
    let mut all_valid = true;
    for &k in ks {
        let images: Vec<usize> = f
            .elements()
            .iter()
            .map(|x| {
                let (rot, flip) = rotation(x);
                let y = Element::Dihedral {
                    rot: (rot * k).mod_floor(&p.into()),
                    flip,
                };
                f.index_of(&y).expect("element of D_2p")
            })
            .collect();
        let valid = f.is_automorphism(&images);
        all_valid &= valid;
        report
            .push_row(row! {"k" => k, "automorphism" => valid, "image" => group.format_element(f.element(images[r]))});
        maps.push(super::Automorphism::Permutation(images));
    }
    let orbit = super::automorphism::orbit(&maps, r);
    let units: BTreeSet<u64> = {
        let mut seen = BTreeSet::from([1u64]);
        let mut frontier = vec![1u64];
        while let Some(x) = frontier.pop() {
            for &k in ks {
                let y = x * (k % p) % p;
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen
    };
    let full = units.len() as u64 == p - 1;
    report = report.param("orbit_size", orbit.len()).param("full_unit_group", full);
    let bound_ok = !full || 2 * orbit.len() as u64 >= p;
    report.verdict(
        "quotient-orbit",
        all_valid && bound_ok,
        format!(
            "{} maps valid: {all_valid}; orbit of r has {} elements{}",
            ks.len(),
            orbit.len(),
            if full {
                format!(" (bound p/2 = {:.1})", p as f64 / 2.0)
            } else {
                " (k-set does not generate the units; bound not asserted)".to_string()
            }
        ),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lengths(r: &ExperimentReport) -> Vec<Value> {
        r.rows.iter().map(|row| row["length"].clone()).collect()
    }

    #[test]
    fn completion_is_minimal() {
        assert_eq!(unimodular_completion(2, 3).unwrap(), (-1, -1));
        assert_eq!(unimodular_completion(3, 5).unwrap(), (1, 2));
        assert_eq!(unimodular_completion(5, 7).unwrap(), (2, 3));
        for p in 1..30i64 {
            for q in 1..30i64 {
                let Ok((a, b)) = unimodular_completion(p, q) else {
                    assert_ne!(p.gcd(&q), 1);
                    continue;
                };
                assert_eq!(b * p - a * q, 1);
                // brute force over a window
                let best = (-60i64..=60)
                    .flat_map(|a| (-60i64..=60).map(move |b| (a, b)))
                    .filter(|(a, b)| b * p - a * q == 1)
                    .map(|(a, b)| a.abs() + b.abs())
                    .min()
                    .unwrap();
                assert_eq!(a.abs() + b.abs(), best, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn zxzq_rows() {
        let r = unbounded_witness_zxzq(2, &[5, 7, 11], &SearchOptions::default()).unwrap();
        assert_eq!(lengths(&r), vec![Value::from(8), Value::from(10), Value::from(14)]);
        assert!(r.passed());
        assert!(unbounded_witness_zxzq(2, &[3], &SearchOptions::default()).is_err());
        assert!(unbounded_witness_zxzq(2, &[9], &SearchOptions::default()).is_err());
    }

    #[test]
    fn zd_rows() {
        let opts = SearchOptions::default();
        let r = unbounded_witness_zd(2, &[1, 0], &[(2, 3), (3, 5), (5, 7)], &opts).unwrap();
        assert_eq!(lengths(&r), vec![Value::from(2), Value::from(3), Value::from(5)]);
        assert!(r.passed());
        let r = unbounded_witness_zd(2, &[0, 1], &[(2, 3), (3, 5), (5, 7)], &opts).unwrap();
        assert_eq!(lengths(&r), vec![Value::from(5), Value::from(8), Value::from(12)]);
        let r = unbounded_witness_zd(3, &[1, 0, 0], &[(2, 3), (3, 5)], &opts).unwrap();
        assert_eq!(lengths(&r), vec![Value::from(2), Value::from(3)]);
        assert!(r.passed());
        assert!(unbounded_witness_zd(2, &[1, 0], &[(2, 4)], &opts).is_err());
        assert!(unbounded_witness_zd(2, &[0, 0], &[(2, 3)], &opts).is_err());
    }

    #[test]
    fn dinfty_rows() {
        let opts = SearchOptions::default();
        let r = unbounded_witness_dinfty(&[(1, 2), (2, 3), (3, 5), (5, 7)], &opts).unwrap();
        assert_eq!(
            lengths(&r),
            vec![Value::from(2), Value::from(2), Value::from(4), Value::from(6)]
        );
        // (1,2) and (2,3) tie, so the full ladder is not strictly increasing
        assert!(!r.passed());
        assert!(unbounded_witness_dinfty(&[(2, 3), (3, 5), (5, 7)], &opts)
            .unwrap()
            .passed());
        let r = unbounded_witness_dinfty(&[(1, 1)], &opts).unwrap();
        assert_eq!(lengths(&r), vec![Value::from(2)]);
        assert!(matches!(
            unbounded_witness_dinfty(&[(2, 4)], &opts),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quotient_orbits() {
        let r = quotient_orbit_experiment(5, &[1, 2, 3, 4]).unwrap();
        assert_eq!(r.params["orbit_size"], Value::from(4));
        assert!(r.passed());
        let r = quotient_orbit_experiment(7, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(r.params["orbit_size"], Value::from(6));
        let r = quotient_orbit_experiment(7, &[1]).unwrap();
        assert_eq!(r.params["orbit_size"], Value::from(1));
        assert!(r.passed());
        // 3 generates the units mod 7
        let r = quotient_orbit_experiment(7, &[3]).unwrap();
        assert_eq!(r.params["full_unit_group"], Value::from(true));
        assert_eq!(r.params["orbit_size"], Value::from(6));
        assert!(quotient_orbit_experiment(5, &[5]).is_err());
        assert!(quotient_orbit_experiment(9, &[2]).is_err());
    }
}
