//! Surjections onto quotient groups and projection of generating sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::GenSet;
use crate::error::{Error, Result};
use crate::group::{Element, Group};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientRule {
    /// `A × B → A` or `B`.
    Project(Side),
    /// `Z → Z/q`.
    ModQ(u64),
    /// Heisenberg → `Z^2`, `(i, j, l) ↦ (i, j)`.
    Abelianization,
    /// `D∞ → D_{2p}`, `t ↦ r`.
    DihedralMod(u64),
    /// Applies a rule to one factor of a product, identity on the other.
    OnFactor(Side, Box<QuotientRule>),
}

/// A surjective homomorphism `source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    source: Group,
    target: Group,
    rule: QuotientRule,
}

impl QuotientMap {
    pub fn new(source: Group, rule: QuotientRule) -> Result<QuotientMap> {
        let target = target_of(&source, &rule)?;
        Ok(QuotientMap { source, target, rule })
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn rule(&self) -> &QuotientRule {
        &self.rule
    }

    pub fn apply(&self, g: &Element) -> Result<Element> {
        self.source.check(g)?;
        apply(&self.source, &self.rule, g)
    }
}

fn target_of(source: &Group, rule: &QuotientRule) -> Result<Group> {
    let mismatch = || Error::InvalidParameter(format!("quotient rule {rule:?} does not apply to {source}"));
    match (rule, source) {
        (QuotientRule::Project(Side::Left), Group::Product(l, _)) => Ok((**l).clone()),
        (QuotientRule::Project(Side::Right), Group::Product(_, r)) => Ok((**r).clone()),
        (QuotientRule::ModQ(q), Group::IntVector(1)) => Group::cyclic(*q),
        (QuotientRule::Abelianization, Group::Heisenberg) => Ok(Group::IntVector(2)),
        (QuotientRule::DihedralMod(p), Group::DihedralInfinite) => Group::dihedral(*p),
        (QuotientRule::OnFactor(side, inner), Group::Product(l, r)) => Ok(match side {
            Side::Left => Group::product(target_of(l, inner)?, (**r).clone()),
            Side::Right => Group::product((**l).clone(), target_of(r, inner)?),
        }),
        _ => Err(mismatch()),
    }
}

fn residue(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits")
}

fn apply(source: &Group, rule: &QuotientRule, g: &Element) -> Result<Element> {
    let bad = || Error::domain("element does not match the quotient source");
    match (rule, source, g) {
        (QuotientRule::Project(side), Group::Product(..), Element::Pair(a, b)) => Ok(match side {
            Side::Left => (**a).clone(),
            Side::Right => (**b).clone(),
        }),
        (QuotientRule::ModQ(q), _, Element::Vector(v)) => Ok(Element::Cyclic(residue(&v[0], *q))),
        (QuotientRule::Abelianization, _, Element::Heisenberg([i, j, _])) => {
            Ok(Element::Vector(vec![i.clone(), j.clone()]))
        }
        (QuotientRule::DihedralMod(p), _, Element::Dihedral { rot, flip }) => Ok(Element::Dihedral {
            rot: BigInt::from(residue(rot, *p)),
            flip: *flip,
        }),
        (QuotientRule::OnFactor(side, inner), Group::Product(l, r), Element::Pair(a, b)) => Ok(match side {
            Side::Left => Element::pair(apply(l, inner, a)?, (**b).clone()),
            Side::Right => Element::pair((**a).clone(), apply(r, inner, b)?),
        }),
        _ => Err(bad()),
    }
}

/// Nontrivial images of the letters, symmetrized over the target.
pub fn project_genset(map: &QuotientMap, genset: &GenSet) -> Result<GenSet> {
    let images = genset
        .letters()
        .iter()
        .map(|g| map.apply(g))
        .collect::<Result<Vec<_>>>()?;
    GenSet::make_symmetric(map.target(), &images).map_err(|e| match e {
        Error::EmptyGenSet => Error::Internal(format!("every letter maps to the identity of {}", map.target())),
        e => e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_element_list, parse_group};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(group: &Group, rng: &mut ChaCha8Rng) -> Element {
        let mut x = || rng.gen_range(-9i64..=9);
        match group {
            Group::IntVector(1) => Element::int(x()),
            Group::Heisenberg => Element::heisenberg(x(), x(), x()),
            Group::DihedralInfinite => {
                let k = x();
                Element::dihedral(k, k % 2 == 0)
            }
            Group::Product(l, r) => Element::pair(random_element(l, rng), random_element(r, rng)),
            Group::FiniteCyclic(q) => Element::Cyclic(rng.gen_range(0..*q)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn maps_are_homomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let maps = [
            QuotientMap::new(parse_group("Z x Z/3").unwrap(), QuotientRule::Project(Side::Right)).unwrap(),
            QuotientMap::new(parse_group("Z x Z/3").unwrap(), QuotientRule::Project(Side::Left)).unwrap(),
            QuotientMap::new(Group::IntVector(1), QuotientRule::ModQ(4)).unwrap(),
            QuotientMap::new(Group::Heisenberg, QuotientRule::Abelianization).unwrap(),
            QuotientMap::new(Group::DihedralInfinite, QuotientRule::DihedralMod(5)).unwrap(),
            QuotientMap::new(
                parse_group("Z x Z/3").unwrap(),
                QuotientRule::OnFactor(Side::Left, Box::new(QuotientRule::ModQ(2))),
            )
            .unwrap(),
        ];
        for map in &maps {
            let src = map.source();
            let tgt = map.target();
            assert_eq!(map.apply(&src.identity()).unwrap(), tgt.identity());
            for _ in 0..500 {
                let g = random_element(src, &mut rng);
                let h = random_element(src, &mut rng);
                let lhs = map.apply(&src.mul(&g, &h).unwrap()).unwrap();
                let rhs = tgt.mul(&map.apply(&g).unwrap(), &map.apply(&h).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(
                    map.apply(&src.inv(&g).unwrap()).unwrap(),
                    tgt.inv(&map.apply(&g).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn projections() {
        let g = parse_group("Z x Z/2").unwrap();
        let s = GenSet::make_symmetric(&g, &parse_element_list(&g, "[(5,1),(3,0)]").unwrap()).unwrap();
        let pi = QuotientMap::new(g, QuotientRule::Project(Side::Right)).unwrap();
        let t = project_genset(&pi, &s).unwrap();
        assert_eq!(t.letters(), &[Element::Cyclic(1)]);

        let h = Group::Heisenberg;
        let pi = QuotientMap::new(h.clone(), QuotientRule::Abelianization).unwrap();
        let t = project_genset(&pi, &GenSet::standard(&h).unwrap()).unwrap();
        assert_eq!(t.format(pi.target()), "[(1,0),(-1,0),(0,1),(0,-1)]");

        let d = Group::DihedralInfinite;
        let s = GenSet::make_symmetric(&d, &[Element::dihedral(0, true), Element::dihedral(1, true)]).unwrap();
        let pi = QuotientMap::new(d, QuotientRule::DihedralMod(5)).unwrap();
        let t = project_genset(&pi, &s).unwrap();
        assert_eq!(t.letters(), &[Element::dihedral(0, true), Element::dihedral(1, true)]);

        // all letters in the kernel
        let g = parse_group("Z x Z/2").unwrap();
        let s = GenSet::make_symmetric(&g, &parse_element_list(&g, "[(1,0)]").unwrap()).unwrap();
        let pi = QuotientMap::new(g, QuotientRule::Project(Side::Right)).unwrap();
        assert!(matches!(project_genset(&pi, &s), Err(Error::Internal(_))));

        assert!(QuotientMap::new(Group::Heisenberg, QuotientRule::ModQ(3)).is_err());
    }
}
