//! Automorphism groups of small finite groups.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Group};

/// Groups up to this order are searched by filtering bijections.
pub const BIJECTION_CAP: usize = 10;
/// Groups up to this order are searched by generator images.
pub const GENERATOR_CAP: usize = 24;

/// An automorphism of a [`FiniteGroup`], as the image of each element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Automorphism {
    Permutation(Vec<usize>),
    /// `x ↦ x^k` on a cyclic group.
    Power {
        k: u64,
        images: Vec<usize>,
    },
}

impl Automorphism {
    pub fn images(&self) -> &[usize] {
        match self {
            Automorphism::Permutation(p) => p,
            Automorphism::Power { images, .. } => images,
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images()[x]
    }
}

/// All automorphisms, each validated on all pairs. Cyclic groups report the
/// rule `x ↦ x^k`.
pub fn aut_group(g: &FiniteGroup) -> Result<Vec<Automorphism>> {
    let maps = if g.size() <= BIJECTION_CAP {
        automorphisms_by_bijections(g)
    } else if g.size() <= GENERATOR_CAP {
        automorphisms_by_generator_images(g)
    } else {
        return Err(Error::CapExceeded(format!(
            "automorphism search supports |G| <= {GENERATOR_CAP}, got {}",
            g.size()
        )));
    };
    let mut out = Vec::with_capacity(maps.len());
    for images in maps {
        if !g.is_automorphism(&images) {
            return Err(Error::Internal(
                "automorphism search produced a non-automorphism".into(),
            ));
        }
        out.push(match g.group() {
            Group::FiniteCyclic(_) => {
                let one = g.index_of(&Element::Cyclic(1)).expect("generator");
                match g.element(images[one]) {
                    Element::Cyclic(k) => Automorphism::Power { k: *k, images },
                    _ => Automorphism::Permutation(images),
                }
            }
            _ => Automorphism::Permutation(images),
        });
    }
    out.sort();
    Ok(out)
}

/// Backtracking over bijections fixing the identity, pruning as soon as an
/// assigned product contradicts the homomorphism property.
pub fn automorphisms_by_bijections(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let m = g.size();
    let e = g.identity();
    let mut images = vec![usize::MAX; m];
    let mut used = vec![false; m];
    images[e] = e;
    used[e] = true;
    let order: Vec<usize> = (0..m).filter(|&x| x != e).collect();
    let mut out = Vec::new();

    fn consistent(g: &FiniteGroup, images: &[usize], x: usize) -> bool {
        (0..g.size()).filter(|&y| images[y] != usize::MAX).all(|y| {
            [(x, y), (y, x)].iter().all(|&(a, b)| {
                let ab = g.mul(a, b);
                images[ab] == usize::MAX || images[ab] == g.mul(images[a], images[b])
            })
        })
    }

    fn go(
        g: &FiniteGroup,
        order: &[usize],
        i: usize,
        images: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == order.len() {
            out.push(images.to_vec());
            return;
        }
        let x = order[i];
        for y in 0..g.size() {
            if used[y] || g.order_of(y) != g.order_of(x) {
                continue;
            }
            images[x] = y;
            used[y] = true;
            if consistent(g, images, x) {
                go(g, order, i + 1, images, used, out);
            }
            images[x] = usize::MAX;
            used[y] = false;
        }
    }

    go(g, &order, 0, &mut images, &mut used, &mut out);
    out
}

/// A small generating set: greedily adds the element enlarging the closure most.
fn small_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closure = g.closure(&gens);
    while closure.iter().any(|&b| !b) {
        let best = (0..g.size())
            .filter(|&x| !closure[x])
            .max_by_key(|&x| {
                let mut trial = gens.clone();
                trial.push(x);
                (g.closure(&trial).iter().filter(|&&b| b).count(), std::cmp::Reverse(x))
            })
            .expect("element outside closure");
        gens.push(best);
        closure = g.closure(&gens);
    }
    gens
}

/// Tries every assignment of generator images (respecting element orders),
/// extends along a spanning tree and keeps the bijective homomorphisms.
pub fn automorphisms_by_generator_images(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = small_generating_set(g);
    let e = g.identity();
    // spanning tree: each element as (parent, generator position)
    let mut tree: Vec<Option<(usize, usize)>> = vec![None; g.size()];
    let mut order = vec![e];
    let mut seen = vec![false; g.size()];
    seen[e] = true;
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                tree[y] = Some((x, i));
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..g.size()).filter(|&y| g.order_of(y) == g.order_of(s)).collect())
        .collect();
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let targets: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
        let mut images = vec![usize::MAX; g.size()];
        images[e] = e;
        for &x in &order[1..] {
            let (p, i) = tree[x].expect("tree");
            images[x] = g.mul(images[p], targets[i]);
        }
        if g.is_automorphism(&images) {
            out.insert(images);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out.into_iter().collect();
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Orbit of `x` under the group generated by `auts`, sorted by index.
pub fn orbit(auts: &[Automorphism], x: usize) -> Vec<usize> {
    let mut seen = BTreeSet::from([x]);
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for a in auts {
            let z = a.apply(y);
            if seen.insert(z) {
                queue.push_back(z);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fg(g: Group) -> FiniteGroup {
        FiniteGroup::new(&g, 64).unwrap()
    }

    #[test]
    fn small_automorphism_groups() {
        let z5 = aut_group(&fg(Group::FiniteCyclic(5))).unwrap();
        assert_eq!(z5.len(), 4);
        let ks: Vec<u64> = z5
            .iter()
            .map(|a| match a {
                Automorphism::Power { k, .. } => *k,
                _ => panic!(),
            })
            .collect();
        assert_eq!(ks, vec![1, 2, 3, 4]);
        assert_eq!(aut_group(&fg(Group::FiniteCyclic(2))).unwrap().len(), 1);
        assert_eq!(aut_group(&fg(Group::DihedralFinite(4))).unwrap().len(), 8);
        assert_eq!(aut_group(&fg(Group::DihedralFinite(3))).unwrap().len(), 6);
        let klein = Group::product(Group::FiniteCyclic(2), Group::FiniteCyclic(2));
        assert_eq!(aut_group(&fg(klein)).unwrap().len(), 6);
        assert!(matches!(
            aut_group(&fg(Group::FiniteCyclic(30))),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn larger_groups_by_generator_images() {
        // |Aut(Z/n)| = φ(n), |Aut(D_2n)| = n·φ(n) for n ≥ 3
        assert_eq!(aut_group(&fg(Group::FiniteCyclic(16))).unwrap().len(), 8);
        assert_eq!(aut_group(&fg(Group::FiniteCyclic(21))).unwrap().len(), 12);
        assert_eq!(aut_group(&fg(Group::DihedralFinite(6))).unwrap().len(), 12);
        assert_eq!(aut_group(&fg(Group::DihedralFinite(12))).unwrap().len(), 48);
    }

    #[test]
    fn search_methods_agree() {
        let groups = [
            Group::FiniteCyclic(1),
            Group::FiniteCyclic(6),
            Group::FiniteCyclic(8),
            Group::FiniteCyclic(10),
            Group::DihedralFinite(4),
            Group::DihedralFinite(5),
            Group::product(Group::FiniteCyclic(2), Group::FiniteCyclic(4)),
        ];
        for g in groups {
            let f = fg(g.clone());
            let mut a = automorphisms_by_bijections(&f);
            let mut b = automorphisms_by_generator_images(&f);
            a.sort();
            b.sort();
            assert_eq!(a, b, "{g}");
        }
    }

    #[test]
    fn orbits() {
        let f = fg(Group::DihedralFinite(4));
        let auts = aut_group(&f).unwrap();
        let z = f.index_of(&Element::dihedral(2, false)).unwrap();
        assert_eq!(orbit(&auts, z), vec![z]);
        let r = f.index_of(&Element::dihedral(1, false)).unwrap();
        assert_eq!(orbit(&auts, r).len(), 2);
        let s = f.index_of(&Element::dihedral(0, true)).unwrap();
        assert_eq!(orbit(&auts, s).len(), 4);
    }
}
