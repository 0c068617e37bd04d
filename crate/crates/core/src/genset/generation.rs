//! Family-specific decision of whether a generating set generates its group.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{invert_syllables, GenSet, SyllableWord};
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Group};
use crate::metric::{ball, SearchOptions};
use crate::snf::{smith_normal_form, IntMatrix, Snf};

/// Outcome of a generation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generation {
    Yes(Certificate),
    No(NonGeneration),
    Inconclusive(String),
}

impl Generation {
    pub fn is_yes(&self) -> bool {
        matches!(self, Generation::Yes(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Generation::Yes(_) => "yes",
            Generation::No(_) => "no",
            Generation::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Evidence that a generating set generates the whole group; re-checkable via [`Certificate::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The closure of the letters has the order of the (finite) group.
    Closure { size: u64 },
    /// Letter coordinates plus torsion relations span the full lattice.
    Lattice { matrix: IntMatrix, snf: Snf },
    /// `Z^d × F`: the letters project onto `F` and the Schreier generators of the
    /// kernel span `Z^d`.
    Schreier {
        image_size: usize,
        kernel: IntMatrix,
        snf: Snf,
    },
    /// Infinite dihedral: a reflection letter and translation exponents with gcd 1.
    Dihedral {
        reflection: usize,
        translations: Vec<BigInt>,
    },
    /// Words over the letters evaluating to the standard generators of the group.
    Words {
        targets: Vec<Element>,
        words: Vec<SyllableWord>,
    },
}

/// Evidence of non-generation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonGeneration {
    Closure {
        size: u64,
        order: u64,
    },
    Lattice {
        invariant_factors: Vec<BigInt>,
    },
    FiniteImage {
        image_size: usize,
        order: usize,
    },
    NoReflection,
    TranslationGcd(BigInt),
    /// The image in the abelianization is a proper sublattice.
    Abelianization {
        invariant_factors: Vec<BigInt>,
    },
}

pub fn generates(group: &Group, genset: &GenSet, budget: i64) -> Result<Generation> {
    if budget <= 0 {
        return Err(Error::InvalidParameter(format!(
            "generation budget must be positive, got {budget}"
        )));
    }
    if !genset.belongs_to(group) {
        return Err(Error::domain(format!("generating set is not over {group}")));
    }
    if group.is_finite() {
        return closure_check(group, genset);
    }
    if let Some(coords) = abelian_coords(group) {
        return lattice_check(group, genset, &coords);
    }
    if split_lattice_finite(group).is_some() {
        return schreier_check(group, genset);
    }
    match group {
        Group::DihedralInfinite => dihedral_check(genset),
        Group::Heisenberg => heisenberg_check(group, genset),
        Group::Free(k) => free_check(group, genset, *k, budget as usize),
        _ => Ok(Generation::Inconclusive(format!("no generation procedure for {group}"))),
    }
}

/// Accepts caller-supplied words for the standard generators of `group`,
/// falling back to [`generates`] when they do not check out.
pub fn generates_with_witnesses(
    group: &Group,
    genset: &GenSet,
    witnesses: &[SyllableWord],
    budget: i64,
) -> Result<Generation> {
    let targets = group.standard_generators();
    if witnesses.len() == targets.len() {
        let cert = Certificate::Words {
            targets,
            words: witnesses.to_vec(),
        };
        if cert.verify(group, genset) {
            return Ok(Generation::Yes(cert));
        }
    }
    generates(group, genset, budget)
}

impl Certificate {
    pub fn verify(&self, group: &Group, genset: &GenSet) -> bool {
        match self {
            Certificate::Closure { size } => {
                group.order() == Some(*size) && closure_size(group, genset).ok() == Some(*size)
            }
            Certificate::Lattice { matrix, snf } => {
                let Some(coords) = abelian_coords(group) else {
                    return false;
                };
                lattice_matrix(group, genset, &coords).ok().as_ref() == Some(matrix)
                    && snf.verify(matrix)
                    && snf.spans_full_lattice()
            }
            Certificate::Schreier {
                image_size,
                kernel,
                snf,
            } => match schreier_data(group, genset) {
                Ok((size, order, k)) => {
                    size == *image_size
                        && size == order
                        && k == *kernel
                        && snf.verify(kernel)
                        && snf.spans_full_lattice()
                }
                Err(_) => false,
            },
            Certificate::Dihedral {
                reflection,
                translations,
            } => {
                *group == Group::DihedralInfinite
                    && *reflection < genset.len()
                    && matches!(genset.letter(*reflection), Element::Dihedral { flip: true, .. })
                    && *translations == dihedral_translations(genset)
                    && translations.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one()
            }
            Certificate::Words { targets, words } => {
                let gens: HashSet<Element> = group.standard_generators().into_iter().collect();
                let covered: HashSet<Element> = targets.iter().cloned().collect();
                targets.len() == words.len()
                    && covered == gens
                    && targets
                        .iter()
                        .zip(words)
                        .all(|(t, w)| genset.evaluate_syllables(group, w).ok().as_ref() == Some(t))
            }
        }
    }
}

fn closure_size(group: &Group, genset: &GenSet) -> Result<u64> {
    let mut seen: HashSet<Element> = HashSet::from([group.identity()]);
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for s in genset.letters() {
            let y = group.mul(&x, s)?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len() as u64)
}

fn closure_check(group: &Group, genset: &GenSet) -> Result<Generation> {
    let order = group
        .order()
        .ok_or_else(|| Error::Internal("finite group without order".into()))?;
    let size = closure_size(group, genset)?;
    Ok(if size == order {
        Generation::Yes(Certificate::Closure { size })
    } else {
        Generation::No(NonGeneration::Closure { size, order })
    })
}

/// Coordinate type of an abelian product: `None` for a free `Z` coordinate,
/// `Some(q)` for a `Z/q` coordinate.
fn abelian_coords(group: &Group) -> Option<Vec<Option<u64>>> {
    match group {
        Group::IntVector(d) => Some(vec![None; *d]),
        Group::FiniteCyclic(q) => Some(vec![Some(*q)]),
        Group::Product(l, r) => {
            let mut c = abelian_coords(l)?;
            c.extend(abelian_coords(r)?);
            Some(c)
        }
        _ => None,
    }
}

fn abelian_vector(g: &Element, out: &mut Vec<BigInt>) {
    match g {
        Element::Vector(v) => out.extend(v.iter().cloned()),
        Element::Cyclic(x) => out.push(BigInt::from(*x)),
        Element::Pair(a, b) => {
            abelian_vector(a, out);
            abelian_vector(b, out);
        }
        _ => {}
    }
}

/// Columns: letter coordinates, then `q·e_i` for every torsion coordinate.
fn lattice_matrix(group: &Group, genset: &GenSet, coords: &[Option<u64>]) -> Result<IntMatrix> {
    let n = coords.len();
    let mut columns = Vec::new();
    for g in genset.letters() {
        let mut v = Vec::with_capacity(n);
        abelian_vector(g, &mut v);
        if v.len() != n {
            return Err(Error::domain(format!("letter is not an element of {group}")));
        }
        columns.push(v);
    }
    for (i, c) in coords.iter().enumerate() {
        if let Some(q) = c {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(*q);
            columns.push(v);
        }
    }
    IntMatrix::from_columns(n, &columns)
}

fn lattice_check(group: &Group, genset: &GenSet, coords: &[Option<u64>]) -> Result<Generation> {
    let matrix = lattice_matrix(group, genset, coords)?;
    let snf = smith_normal_form(&matrix)?;
    Ok(if snf.spans_full_lattice() {
        Generation::Yes(Certificate::Lattice { matrix, snf })
    } else {
        Generation::No(NonGeneration::Lattice {
            invariant_factors: snf.invariant_factors(),
        })
    })
}

/// Splits a product into its `Z^d` coordinates and its finite factors.
/// `None` unless every factor is `Z^d` or finite, with at least one of each.
fn split_lattice_finite(group: &Group) -> Option<(usize, Vec<Group>)> {
    fn walk(g: &Group, dim: &mut usize, finite: &mut Vec<Group>) -> bool {
        match g {
            Group::IntVector(d) => {
                *dim += d;
                true
            }
            Group::Product(l, r) => walk(l, dim, finite) && walk(r, dim, finite),
            g if g.is_finite() => {
                finite.push(g.clone());
                true
            }
            _ => false,
        }
    }
    let mut dim = 0;
    let mut finite = Vec::new();
    if walk(group, &mut dim, &mut finite) && dim > 0 && !finite.is_empty() {
        Some((dim, finite))
    } else {
        None
    }
}

fn split_element(group: &Group, g: &Element, lattice: &mut Vec<BigInt>, finite: &mut Vec<Element>) {
    match (group, g) {
        (Group::IntVector(_), Element::Vector(v)) => lattice.extend(v.iter().cloned()),
        (Group::Product(l, r), Element::Pair(a, b)) if !group.is_finite() => {
            split_element(l, a, lattice, finite);
            split_element(r, b, lattice, finite);
        }
        _ => finite.push(g.clone()),
    }
}

fn fold_product(mut parts: Vec<Group>) -> Group {
    let mut acc = parts.pop().expect("nonempty");
    while let Some(g) = parts.pop() {
        acc = Group::product(g, acc);
    }
    acc
}

fn fold_element(mut parts: Vec<Element>) -> Element {
    let mut acc = parts.pop().expect("nonempty");
    while let Some(g) = parts.pop() {
        acc = Element::pair(g, acc);
    }
    acc
}

/// Returns (|image in F|, |F|, Schreier kernel lattice).
fn schreier_data(group: &Group, genset: &GenSet) -> Result<(usize, usize, IntMatrix)> {
    let (dim, finite_factors) =
        split_lattice_finite(group).ok_or_else(|| Error::Unsupported(format!("{group} is not Z^d x finite")))?;
    let finite = FiniteGroup::new(&fold_product(finite_factors), 1 << 12)?;
    let mut letters = Vec::with_capacity(genset.len());
    for g in genset.letters() {
        let mut lat = Vec::new();
        let mut fin = Vec::new();
        split_element(group, g, &mut lat, &mut fin);
        let f = finite
            .index_of(&fold_element(fin))
            .ok_or_else(|| Error::domain("letter is not in the group"))?;
        letters.push((lat, f));
    }
    // spanning tree of the image in F; each coset representative carries its lattice part
    let e = finite.identity();
    let mut rep: HashMap<usize, Vec<BigInt>> = HashMap::from([(e, vec![BigInt::zero(); dim])]);
    let mut order = vec![e];
    let mut queue = VecDeque::from([e]);
    while let Some(f) = queue.pop_front() {
        for (lat, fs) in &letters {
            let g = finite.mul(f, *fs);
            if !rep.contains_key(&g) {
                let v: Vec<BigInt> = rep[&f].iter().zip(lat).map(|(a, b)| a + b).collect();
                rep.insert(g, v);
                order.push(g);
                queue.push_back(g);
            }
        }
    }
    let mut columns = Vec::new();
    for f in &order {
        for (lat, fs) in &letters {
            let g = finite.mul(*f, *fs);
            let v: Vec<BigInt> = rep[f]
                .iter()
                .zip(lat)
                .zip(&rep[&g])
                .map(|((a, b), c)| a + b - c)
                .collect();
            if v.iter().any(|x| !x.is_zero()) && !columns.contains(&v) {
                columns.push(v);
            }
        }
    }
    if columns.is_empty() {
        columns.push(vec![BigInt::zero(); dim]);
    }
    Ok((order.len(), finite.size(), IntMatrix::from_columns(dim, &columns)?))
}

fn schreier_check(group: &Group, genset: &GenSet) -> Result<Generation> {
    let (image_size, order, kernel) = schreier_data(group, genset)?;
    if image_size != order {
        return Ok(Generation::No(NonGeneration::FiniteImage { image_size, order }));
    }
    let snf = smith_normal_form(&kernel)?;
    Ok(if snf.spans_full_lattice() {
        Generation::Yes(Certificate::Schreier {
            image_size,
            kernel,
            snf,
        })
    } else {
        Generation::No(NonGeneration::Lattice {
            invariant_factors: snf.invariant_factors(),
        })
    })
}

/// Translation exponents of translation letters and of products of two reflection letters.
fn dihedral_translations(genset: &GenSet) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut reflections = Vec::new();
    for g in genset.letters() {
        if let Element::Dihedral { rot, flip } = g {
            if *flip {
                reflections.push(rot.clone());
            } else {
                out.push(rot.clone());
            }
        }
    }
    for a in &reflections {
        for b in &reflections {
            let d = a - b;
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn dihedral_check(genset: &GenSet) -> Result<Generation> {
    let reflection = genset
        .letters()
        .iter()
        .position(|g| matches!(g, Element::Dihedral { flip: true, .. }));
    let Some(reflection) = reflection else {
        return Ok(Generation::No(NonGeneration::NoReflection));
    };
    let translations = dihedral_translations(genset);
    let g = translations.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    Ok(if g.is_one() {
        Generation::Yes(Certificate::Dihedral {
            reflection,
            translations,
        })
    } else {
        Generation::No(NonGeneration::TranslationGcd(g))
    })
}

/// Integer coefficients over the letters hitting each unit vector of the
/// abelianization, or the invariant factors when the image is proper.
fn abelianization_coefficients(
    genset: &GenSet,
    dim: usize,
    project: impl Fn(&Element) -> Vec<BigInt>,
) -> Result<std::result::Result<IntMatrix, Vec<BigInt>>> {
    let columns: Vec<Vec<BigInt>> = genset.letters().iter().map(project).collect();
    let m = IntMatrix::from_columns(dim, &columns)?;
    let snf = smith_normal_form(&m)?;
    Ok(snf.unit_coefficients().ok_or_else(|| snf.invariant_factors()))
}

fn coefficient_word(coeffs: &IntMatrix, col: usize) -> Result<SyllableWord> {
    let mut w = Vec::new();
    for id in 0..coeffs.rows() {
        let c = coeffs.get(id, col);
        if !c.is_zero() {
            let e = c
                .to_i64()
                .ok_or_else(|| Error::Internal("coefficient does not fit in i64".into()))?;
            w.push((id, e));
        }
    }
    Ok(w)
}

fn repeat_word(w: &[(usize, i64)], times: i64) -> SyllableWord {
    let unit = if times < 0 { invert_syllables(w) } else { w.to_vec() };
    (0..times.unsigned_abs()).flat_map(|_| unit.iter().copied()).collect()
}

/// The subgroup generated by `S` is the whole Heisenberg group exactly when its
/// image in `Z^2` is everything: lifts `x = a c^m`, `y = b c^n` give `[x, y] = c`.
fn heisenberg_check(group: &Group, genset: &GenSet) -> Result<Generation> {
    let coeffs = abelianization_coefficients(genset, 2, |g| match g {
        Element::Heisenberg([i, j, _]) => vec![i.clone(), j.clone()],
        _ => vec![BigInt::zero(), BigInt::zero()],
    })?;
    let coeffs = match coeffs {
        Ok(c) => c,
        Err(invariant_factors) => return Ok(Generation::No(NonGeneration::Abelianization { invariant_factors })),
    };
    let xw = coefficient_word(&coeffs, 0)?;
    let yw = coefficient_word(&coeffs, 1)?;
    let x = genset.evaluate_syllables(group, &xw)?;
    let y = genset.evaluate_syllables(group, &yw)?;
    let commutator: SyllableWord = xw
        .iter()
        .chain(&yw)
        .copied()
        .chain(invert_syllables(&xw))
        .chain(invert_syllables(&yw))
        .collect();
    if group.commutator(&x, &y)? != Element::heisenberg(0, 0, 1) {
        return Ok(Generation::Inconclusive("lifted basis does not commute to c".into()));
    }
    let c_part = |g: &Element| match g {
        Element::Heisenberg([_, _, l]) => l.to_i64(),
        _ => None,
    };
    let (Some(mx), Some(my)) = (c_part(&x), c_part(&y)) else {
        return Ok(Generation::Inconclusive("central correction too large".into()));
    };
    let aw: SyllableWord = xw.iter().copied().chain(repeat_word(&commutator, -mx)).collect();
    let bw: SyllableWord = yw.iter().copied().chain(repeat_word(&commutator, -my)).collect();
    let cert = Certificate::Words {
        targets: group.standard_generators(),
        words: vec![aw, bw],
    };
    if cert.verify(group, genset) {
        Ok(Generation::Yes(cert))
    } else {
        Err(Error::Internal("Heisenberg witness words failed to verify".into()))
    }
}

fn free_check(group: &Group, genset: &GenSet, k: usize, budget: usize) -> Result<Generation> {
    let abel = abelianization_coefficients(genset, k, |g| {
        let mut v = vec![BigInt::zero(); k];
        if let Element::Free(w) = g {
            for &x in w {
                v[x.unsigned_abs() as usize - 1] += x.signum();
            }
        }
        v
    })?;
    if let Err(invariant_factors) = abel {
        return Ok(Generation::No(NonGeneration::Abelianization { invariant_factors }));
    }
    let b = ball(group, genset, budget, &SearchOptions::default())?;
    let targets = group.standard_generators();
    let mut words = Vec::with_capacity(k);
    for t in &targets {
        match b.witness(t) {
            Some(w) => words.push(w.into_iter().map(|id| (id, 1)).collect()),
            None => {
                return Ok(Generation::Inconclusive(format!(
                    "basis letter {} not found within length {budget}",
                    group.format_element(t)
                )))
            }
        }
    }
    Ok(Generation::Yes(Certificate::Words { targets, words }))
}
