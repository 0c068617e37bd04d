//! Exact suprema of word length over all symmetric generating sets of a small finite group.

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::group::{Element, FiniteGroup, Group};

pub const DEFAULT_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformLength {
    pub element: Element,
    /// `max_S l_S(g)` over generating symmetric subsets `S ⊆ G∖{e}`.
    pub max: usize,
    /// First maximizing set in enumeration order.
    pub argmax: GenSet,
    pub generating_sets: usize,
}

/// Inverse classes `{x, x^-1}` of non-identity elements, in enumeration order.
fn inverse_classes(f: &FiniteGroup) -> Vec<Vec<usize>> {
    let e = f.identity();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut placed = vec![false; f.size()];
    for x in 0..f.size() {
        if x == e || placed[x] {
            continue;
        }
        let xi = f.inv(x);
        placed[x] = true;
        placed[xi] = true;
        classes.push(if xi == x { vec![x] } else { vec![x, xi] });
    }
    classes
}

/// Every symmetric generating subset of `G∖{e}`, as element indices in class order.
pub fn generating_subsets(f: &FiniteGroup, cap: usize) -> Result<Vec<Vec<usize>>> {
    if f.size() > cap {
        return Err(Error::CapExceeded(format!("|G| = {} exceeds cap {cap}", f.size())));
    }
    let classes = inverse_classes(f);
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << classes.len()) {
        let subset: Vec<usize> = classes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .flat_map(|(_, c)| c.iter().copied())
            .collect();
        if f.generates(&subset) {
            out.push(subset);
        }
    }
    Ok(out)
}

/// The full table: one entry per element of `group`, in enumeration order.
pub fn uniform_table(group: &Group, cap: usize) -> Result<Vec<UniformLength>> {
    let f = FiniteGroup::new(group, cap)?;
    let subsets = generating_subsets(&f, cap)?;
    let mut best: Vec<Option<(usize, usize)>> = vec![None; f.size()];
    for (si, s) in subsets.iter().enumerate() {
        let dist = f.distances(s);
        for (x, d) in dist.iter().enumerate() {
            let d = d.ok_or_else(|| Error::Internal("generating subset misses an element".into()))?;
            if best[x].is_none_or(|(m, _)| d > m) {
                best[x] = Some((d, si));
            }
        }
    }
    best.iter()
        .enumerate()
        .map(|(x, b)| {
            let (max, si) = b.ok_or_else(|| Error::Internal(format!("{group} has no generating subset")))?;
            let elements: Vec<Element> = subsets[si].iter().map(|&i| f.element(i).clone()).collect();
            Ok(UniformLength {
                element: f.element(x).clone(),
                max,
                argmax: GenSet::make_symmetric(group, &elements)?,
                generating_sets: subsets.len(),
            })
        })
        .collect()
}

pub fn uniform_length_exact(group: &Group, g: &Element, cap: usize) -> Result<UniformLength> {
    group.check(g)?;
    uniform_table(group, cap)?
        .into_iter()
        .find(|u| u.element == *g)
        .ok_or_else(|| Error::Internal("element missing from enumeration".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_examples() {
        let z5 = Group::FiniteCyclic(5);
        let u = uniform_length_exact(&z5, &Element::Cyclic(1), DEFAULT_CAP).unwrap();
        assert_eq!(u.max, 2);
        assert_eq!(u.argmax.letters(), &[Element::Cyclic(2), Element::Cyclic(3)]);
        assert_eq!(u.generating_sets, 3);
        let z2 = Group::FiniteCyclic(2);
        assert_eq!(
            uniform_length_exact(&z2, &Element::Cyclic(1), DEFAULT_CAP).unwrap().max,
            1
        );
        assert_eq!(
            uniform_length_exact(&z5, &Element::Cyclic(0), DEFAULT_CAP).unwrap().max,
            0
        );
        assert!(uniform_length_exact(&Group::FiniteCyclic(17), &Element::Cyclic(1), DEFAULT_CAP).is_err());
    }

    #[test]
    fn bounded_by_group_order() {
        for g in [
            Group::FiniteCyclic(7),
            Group::FiniteCyclic(12),
            Group::DihedralFinite(4),
            Group::DihedralFinite(5),
        ] {
            let n = g.order().unwrap() as usize;
            for u in uniform_table(&g, DEFAULT_CAP).unwrap() {
                assert!(u.max < n);
            }
        }
    }
}
