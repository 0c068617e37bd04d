//! Exact arithmetic and canonical normal forms for the supported group families.
//!
//! Every element is stored in a normal form that is unique per group element, so
//! equality and hashing of [`Element`] values coincide with equality in the group.

mod finite;
mod table;
mod text;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use finite::FiniteGroup;
pub use table::CayleyTable;
pub use text::{parse_element, parse_element_list, parse_group};

/// A member of the closed family of concrete groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    /// `Z/q`, elements are residues in `[0, q)`.
    FiniteCyclic(u64),
    /// `Z^d`.
    IntVector(usize),
    /// Dihedral group of order `2n`: `r^k s^e` with `k` mod `n`.
    DihedralFinite(u64),
    /// `Z ⋊ Z/2`, elements `t^k s^e`.
    DihedralInfinite,
    /// Discrete Heisenberg group `<a, b, c | [a,b] = c, c central>`, elements `a^i b^j c^l`.
    Heisenberg,
    /// Free group on `k` letters.
    Free(usize),
    Product(Box<Group>, Box<Group>),
    CayleyTable(Arc<CayleyTable>),
}

/// Canonical normal form of a group element.
///
/// The variant must match the family of the group the element is used with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Cyclic(u64),
    Vector(Vec<BigInt>),
    /// `r^rot s^flip` (or `t^rot s^flip` in the infinite dihedral group).
    Dihedral {
        rot: BigInt,
        flip: bool,
    },
    /// `a^i b^j c^l` stored as `[i, j, l]`.
    Heisenberg([BigInt; 3]),
    /// Reduced word; letter `+i` is `x_i`, `-i` is `x_i^{-1}` (1-based).
    Free(Vec<i32>),
    Pair(Box<Element>, Box<Element>),
    Table(usize),
}

/// Result of an order computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    Finite(u64),
    Infinite,
    /// Finite order may exist but exceeds the cap.
    CapExceeded,
}

impl Element {
    pub fn int(n: i64) -> Element {
        Element::Vector(vec![BigInt::from(n)])
    }

    pub fn vector(entries: &[i64]) -> Element {
        Element::Vector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dihedral(rot: i64, flip: bool) -> Element {
        Element::Dihedral {
            rot: BigInt::from(rot),
            flip,
        }
    }

    pub fn heisenberg(i: i64, j: i64, l: i64) -> Element {
        Element::Heisenberg([BigInt::from(i), BigInt::from(j), BigInt::from(l)])
    }

    pub fn pair(left: Element, right: Element) -> Element {
        Element::Pair(Box::new(left), Box::new(right))
    }

    /// Rough number of heap bytes owned by this element, for memory budgeting.
    pub fn heap_bytes(&self) -> usize {
        fn big(x: &BigInt) -> usize {
            (x.bits() as usize).div_ceil(64) * 8
        }
        match self {
            Element::Cyclic(_) | Element::Table(_) => 0,
            Element::Vector(v) => v.len() * std::mem::size_of::<BigInt>() + v.iter().map(big).sum::<usize>(),
            Element::Dihedral { rot, .. } => big(rot),
            Element::Heisenberg(t) => t.iter().map(big).sum(),
            Element::Free(w) => w.len() * 4,
            Element::Pair(l, r) => 2 * std::mem::size_of::<Element>() + l.heap_bytes() + r.heap_bytes(),
        }
    }
}

fn mismatch(group: &Group, what: &str) -> Error {
    Error::domain(format!("{what} does not belong to {group}"))
}

fn reduce_mod(x: &BigInt, n: u64) -> BigInt {
    x.mod_floor(&BigInt::from(n))
}

fn free_push(word: &mut Vec<i32>, letter: i32) {
    if word.last() == Some(&-letter) {
        word.pop();
    } else {
        word.push(letter);
    }
}

impl Group {
    pub fn cyclic(q: u64) -> Result<Group> {
        if q == 0 {
            return Err(Error::InvalidGroup("Z/q needs q >= 1".into()));
        }
        Ok(Group::FiniteCyclic(q))
    }

    pub fn int_vector(d: usize) -> Result<Group> {
        if d == 0 {
            return Err(Error::InvalidGroup("Z^d needs d >= 1".into()));
        }
        Ok(Group::IntVector(d))
    }

    pub fn dihedral(n: u64) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 1".into()));
        }
        Ok(Group::DihedralFinite(n))
    }

    pub fn free(k: usize) -> Result<Group> {
        if k == 0 || k > i32::MAX as usize {
            return Err(Error::InvalidGroup("free group needs rank k >= 1".into()));
        }
        Ok(Group::Free(k))
    }

    pub fn product(left: Group, right: Group) -> Group {
        Group::Product(Box::new(left), Box::new(right))
    }

    pub fn table(table: CayleyTable) -> Group {
        Group::CayleyTable(Arc::new(table))
    }

    /// Checks the parameter invariants of the descriptor tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            Group::FiniteCyclic(q) => Group::cyclic(*q).map(drop),
            Group::IntVector(d) => Group::int_vector(*d).map(drop),
            Group::DihedralFinite(n) => Group::dihedral(*n).map(drop),
            Group::Free(k) => Group::free(*k).map(drop),
            Group::DihedralInfinite | Group::Heisenberg | Group::CayleyTable(_) => Ok(()),
            Group::Product(l, r) => {
                l.validate()?;
                r.validate()
            }
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Group::FiniteCyclic(_) => Element::Cyclic(0),
            Group::IntVector(d) => Element::Vector(vec![BigInt::zero(); *d]),
            Group::DihedralFinite(_) | Group::DihedralInfinite => Element::Dihedral {
                rot: BigInt::zero(),
                flip: false,
            },
            Group::Heisenberg => Element::Heisenberg([BigInt::zero(), BigInt::zero(), BigInt::zero()]),
            Group::Free(_) => Element::Free(Vec::new()),
            Group::Product(l, r) => Element::pair(l.identity(), r.identity()),
            Group::CayleyTable(_) => Element::Table(0),
        }
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        *g == self.identity()
    }

    /// Whether `g` is a normal form of an element of this group.
    pub fn contains(&self, g: &Element) -> bool {
        match (self, g) {
            (Group::FiniteCyclic(q), Element::Cyclic(x)) => x < q,
            (Group::IntVector(d), Element::Vector(v)) => v.len() == *d,
            (Group::DihedralFinite(n), Element::Dihedral { rot, .. }) => !rot.is_negative() && *rot < BigInt::from(*n),
            (Group::DihedralInfinite, Element::Dihedral { .. }) => true,
            (Group::Heisenberg, Element::Heisenberg(_)) => true,
            (Group::Free(k), Element::Free(w)) => {
                w.iter().all(|&x| x != 0 && x.unsigned_abs() as usize <= *k) && w.windows(2).all(|p| p[0] != -p[1])
            }
            (Group::Product(l, r), Element::Pair(a, b)) => l.contains(a) && r.contains(b),
            (Group::CayleyTable(t), Element::Table(i)) => *i < t.size(),
            _ => false,
        }
    }

    pub fn check(&self, g: &Element) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::domain(format!("{g:?} is not an element of {self}")))
        }
    }

    pub fn mul(&self, g: &Element, h: &Element) -> Result<Element> {
        Ok(match (self, g, h) {
            (Group::FiniteCyclic(q), Element::Cyclic(a), Element::Cyclic(b)) => {
                Element::Cyclic(((*a as u128 + *b as u128) % *q as u128) as u64)
            }
            (Group::IntVector(d), Element::Vector(a), Element::Vector(b)) if a.len() == *d && b.len() == *d => {
                Element::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (
                Group::DihedralFinite(_) | Group::DihedralInfinite,
                Element::Dihedral { rot: k, flip: e },
                Element::Dihedral { rot: m, flip: f },
            ) => {
                let rot = if *e { k - m } else { k + m };
                let rot = match self {
                    Group::DihedralFinite(n) => reduce_mod(&rot, *n),
                    _ => rot,
                };
                Element::Dihedral { rot, flip: e ^ f }
            }
            (Group::Heisenberg, Element::Heisenberg([i, j, l]), Element::Heisenberg([i2, j2, l2])) => {
                Element::Heisenberg([i + i2, j + j2, l + l2 - j * i2])
            }
            (Group::Free(_), Element::Free(a), Element::Free(b)) => {
                let mut w = a.clone();
                for &x in b {
                    free_push(&mut w, x);
                }
                Element::Free(w)
            }
            (Group::Product(l, r), Element::Pair(a, b), Element::Pair(c, d)) => {
                Element::pair(l.mul(a, c)?, r.mul(b, d)?)
            }
            (Group::CayleyTable(t), Element::Table(a), Element::Table(b)) if *a < t.size() && *b < t.size() => {
                Element::Table(t.mul(*a, *b))
            }
            _ => return Err(mismatch(self, "operand")),
        })
    }

    pub fn inv(&self, g: &Element) -> Result<Element> {
        Ok(match (self, g) {
            (Group::FiniteCyclic(q), Element::Cyclic(a)) => Element::Cyclic((q - a % q) % q),
            (Group::IntVector(d), Element::Vector(a)) if a.len() == *d => {
                Element::Vector(a.iter().map(|x| -x).collect())
            }
            (Group::DihedralFinite(n), Element::Dihedral { rot, flip }) => Element::Dihedral {
                rot: if *flip { rot.clone() } else { reduce_mod(&-rot, *n) },
                flip: *flip,
            },
            (Group::DihedralInfinite, Element::Dihedral { rot, flip }) => Element::Dihedral {
                rot: if *flip { rot.clone() } else { -rot },
                flip: *flip,
            },
            (Group::Heisenberg, Element::Heisenberg([i, j, l])) => Element::Heisenberg([-i, -j, -l - i * j]),
            (Group::Free(_), Element::Free(w)) => Element::Free(w.iter().rev().map(|x| -x).collect()),
            (Group::Product(l, r), Element::Pair(a, b)) => Element::pair(l.inv(a)?, r.inv(b)?),
            (Group::CayleyTable(t), Element::Table(a)) if *a < t.size() => Element::Table(t.inv(*a)),
            _ => return Err(mismatch(self, "operand")),
        })
    }

    /// `g^n` by repeated squaring; negative exponents invert first.
    pub fn power(&self, g: &Element, n: i64) -> Result<Element> {
        let mut base = if n < 0 {
            self.inv(g)?
        } else {
            self.mul(g, &self.identity())?
        };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `g h g^{-1} h^{-1}`.
    pub fn commutator(&self, g: &Element, h: &Element) -> Result<Element> {
        let gh = self.mul(g, h)?;
        let ghg = self.mul(&gh, &self.inv(g)?)?;
        self.mul(&ghg, &self.inv(h)?)
    }

    /// `x g x^{-1}`.
    pub fn conjugate(&self, x: &Element, g: &Element) -> Result<Element> {
        self.mul(&self.mul(x, g)?, &self.inv(x)?)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product_of<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        items.into_iter().try_fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// Least `n ≥ 1` with `g^n = e`. Infinite families answer analytically;
    /// the cap bounds only searches (and reports finite orders above it as exceeded).
    pub fn element_order(&self, g: &Element, cap: u64) -> Result<Order> {
        self.check(g)?;
        let cap = cap.max(1);
        let exact = self.order_of(g)?;
        Ok(match exact {
            Order::Finite(n) if n > cap => Order::CapExceeded,
            other => other,
        })
    }

    fn order_of(&self, g: &Element) -> Result<Order> {
        Ok(match (self, g) {
            (Group::FiniteCyclic(q), Element::Cyclic(x)) => Order::Finite(q / x.gcd(q)),
            (Group::IntVector(_), Element::Vector(v)) => {
                if v.iter().all(Zero::is_zero) {
                    Order::Finite(1)
                } else {
                    Order::Infinite
                }
            }
            (Group::DihedralFinite(n), Element::Dihedral { rot, flip }) => {
                if *flip {
                    Order::Finite(2)
                } else {
                    let k = u64::try_from(rot).map_err(|_| Error::Internal("rotation out of range".into()))?;
                    Order::Finite(n / k.gcd(n))
                }
            }
            (Group::DihedralInfinite, Element::Dihedral { rot, flip }) => {
                if *flip {
                    Order::Finite(2)
                } else if rot.is_zero() {
                    Order::Finite(1)
                } else {
                    Order::Infinite
                }
            }
            (Group::Heisenberg, _) | (Group::Free(_), _) => {
                // torsion-free families
                if self.is_identity(g) {
                    Order::Finite(1)
                } else {
                    Order::Infinite
                }
            }
            (Group::Product(l, r), Element::Pair(a, b)) => match (l.order_of(a)?, r.order_of(b)?) {
                (Order::Finite(x), Order::Finite(y)) => Order::Finite(x.lcm(&y)),
                _ => Order::Infinite,
            },
            (Group::CayleyTable(t), Element::Table(i)) => {
                let mut x = *i;
                let mut n = 1u64;
                while x != 0 {
                    x = t.mul(x, *i);
                    n += 1;
                }
                Order::Finite(n)
            }
            _ => return Err(mismatch(self, "element")),
        })
    }

    /// Number of elements, `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        match self {
            Group::FiniteCyclic(q) => Some(*q),
            Group::DihedralFinite(n) => Some(2 * n),
            Group::CayleyTable(t) => Some(t.size() as u64),
            Group::Product(l, r) => Some(l.order()?.checked_mul(r.order()?)?),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Group::FiniteCyclic(_) | Group::DihedralFinite(_) | Group::CayleyTable(_) => true,
            Group::Product(l, r) => l.is_finite() && r.is_finite(),
            _ => false,
        }
    }

    /// All elements of a finite group, each exactly once, in a fixed order.
    pub fn enumerate(&self) -> Result<Vec<Element>> {
        match self {
            Group::FiniteCyclic(q) => Ok((0..*q).map(Element::Cyclic).collect()),
            Group::DihedralFinite(n) => Ok([false, true]
                .into_iter()
                .flat_map(|flip| {
                    (0..*n).map(move |k| Element::Dihedral {
                        rot: BigInt::from(k),
                        flip,
                    })
                })
                .collect()),
            Group::CayleyTable(t) => Ok((0..t.size()).map(Element::Table).collect()),
            Group::Product(l, r) => {
                let left = l.enumerate()?;
                let right = r.enumerate()?;
                let mut out = Vec::with_capacity(left.len() * right.len());
                for a in &left {
                    for b in &right {
                        out.push(Element::pair(a.clone(), b.clone()));
                    }
                }
                Ok(out)
            }
            _ => Err(Error::Unsupported(format!(
                "cannot enumerate the infinite group {self}"
            ))),
        }
    }

    /// A standard symmetric-closable generating list for the family
    /// (`a, b` for Heisenberg, `r, s` for dihedral, unit vectors for `Z^d`, ...).
    pub fn standard_generators(&self) -> Vec<Element> {
        match self {
            Group::FiniteCyclic(q) => {
                if *q == 1 {
                    vec![]
                } else {
                    vec![Element::Cyclic(1)]
                }
            }
            Group::IntVector(d) => (0..*d)
                .map(|i| {
                    let mut v = vec![BigInt::zero(); *d];
                    v[i] = BigInt::one();
                    Element::Vector(v)
                })
                .collect(),
            Group::DihedralFinite(_) | Group::DihedralInfinite => {
                vec![Element::dihedral(1, false), Element::dihedral(0, true)]
            }
            Group::Heisenberg => vec![Element::heisenberg(1, 0, 0), Element::heisenberg(0, 1, 0)],
            Group::Free(k) => (1..=*k as i32).map(|i| Element::Free(vec![i])).collect(),
            Group::Product(l, r) => {
                let li = l.identity();
                let ri = r.identity();
                l.standard_generators()
                    .into_iter()
                    .map(|g| Element::pair(g, ri.clone()))
                    .chain(
                        r.standard_generators()
                            .into_iter()
                            .map(|h| Element::pair(li.clone(), h)),
                    )
                    .collect()
            }
            Group::CayleyTable(t) => (1..t.size()).map(Element::Table).collect(),
        }
    }

    /// Text form of an element under this group's grammar.
    pub fn format_element(&self, g: &Element) -> String {
        text::format_element(self, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h(i: i64, j: i64, l: i64) -> Element {
        Element::heisenberg(i, j, l)
    }

    #[test]
    fn heisenberg_products_match_presentation() {
        let g = Group::Heisenberg;
        assert_eq!(g.mul(&h(1, 0, 0), &h(0, 1, 0)).unwrap(), h(1, 1, 0));
        // b·a = a·b·c^{-1} because [a,b] = c
        assert_eq!(g.mul(&h(0, 1, 0), &h(1, 0, 0)).unwrap(), h(1, 1, -1));
        assert_eq!(g.commutator(&h(1, 0, 0), &h(0, 1, 0)).unwrap(), h(0, 0, 1));
        assert_eq!(g.inv(&h(1, 1, 0)).unwrap(), h(-1, -1, -1));
        assert_eq!(g.commutator(&h(2, 0, 0), &h(0, 3, 0)).unwrap(), h(0, 0, 6));
    }

    #[test]
    fn heisenberg_inverse_solves_equation() {
        // x = (1,1,0)^{-1} must satisfy (1,1,0)·x = e; solve for x by brute force.
        let g = Group::Heisenberg;
        let mut found = None;
        for i in -2..=2 {
            for j in -2..=2 {
                for l in -2..=2 {
                    if g.mul(&h(1, 1, 0), &h(i, j, l)).unwrap() == g.identity() {
                        found = Some(h(i, j, l));
                    }
                }
            }
        }
        assert_eq!(found, Some(g.inv(&h(1, 1, 0)).unwrap()));
    }

    #[test]
    fn conjugation_identities() {
        let g = Group::Heisenberg;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let n = rng.gen_range(-20..=20);
            let (i, j, l) = (
                rng.gen_range(-20..=20),
                rng.gen_range(-20..=20),
                rng.gen_range(-20..=20),
            );
            let x = h(i, j, l);
            let an = h(n, 0, 0);
            let bn = h(0, n, 0);
            assert_eq!(g.conjugate(&an, &x).unwrap(), h(i, j, l + n * j));
            assert_eq!(g.conjugate(&bn, &x).unwrap(), h(i, j, l - n * i));
        }
        for u in -20..=20 {
            for v in -20..=20 {
                assert_eq!(g.commutator(&h(u, 0, 0), &h(0, v, 0)).unwrap(), h(0, 0, u * v));
            }
        }
    }

    #[test]
    fn dihedral_and_cyclic_basics() {
        let d8 = Group::dihedral(4).unwrap();
        let s = Element::dihedral(1, true);
        assert_eq!(d8.mul(&s, &s).unwrap(), d8.identity());
        assert_eq!(
            d8.element_order(&Element::dihedral(1, false), 10).unwrap(),
            Order::Finite(4)
        );
        assert_eq!(d8.enumerate().unwrap().len(), 8);

        let z5 = Group::cyclic(5).unwrap();
        assert_eq!(z5.power(&Element::Cyclic(2), 3).unwrap(), Element::Cyclic(1));
        assert_eq!(z5.power(&Element::Cyclic(2), -1).unwrap(), Element::Cyclic(3));
        let z3 = Group::cyclic(3).unwrap();
        assert_eq!(
            z3.enumerate().unwrap(),
            vec![Element::Cyclic(0), Element::Cyclic(1), Element::Cyclic(2)]
        );
        let z8 = Group::cyclic(8).unwrap();
        assert_eq!(z8.element_order(&Element::Cyclic(2), 10).unwrap(), Order::Finite(4));
        assert_eq!(z8.element_order(&Element::Cyclic(1), 5).unwrap(), Order::CapExceeded);

        let z2z2 = Group::product(Group::cyclic(2).unwrap(), Group::cyclic(2).unwrap());
        assert_eq!(z2z2.enumerate().unwrap().len(), 4);
    }

    #[test]
    fn infinite_families() {
        let heis = Group::Heisenberg;
        assert_eq!(heis.element_order(&h(0, 0, 1), 10).unwrap(), Order::Infinite);
        assert_eq!(heis.element_order(&h(0, 0, 0), 10).unwrap(), Order::Finite(1));
        let z2 = Group::IntVector(2);
        assert_eq!(z2.inv(&Element::vector(&[3, -1])).unwrap(), Element::vector(&[-3, 1]));
        let z3 = Group::IntVector(3);
        let c = z3
            .commutator(&Element::vector(&[1, 2, 3]), &Element::vector(&[-4, 0, 9]))
            .unwrap();
        assert_eq!(c, z3.identity());
        let dinf = Group::DihedralInfinite;
        assert_eq!(
            dinf.element_order(&Element::dihedral(5, true), 3).unwrap(),
            Order::Finite(2)
        );
        assert_eq!(
            dinf.element_order(&Element::dihedral(5, false), 3).unwrap(),
            Order::Infinite
        );
        assert!(Group::Heisenberg.enumerate().is_err());
    }

    #[test]
    fn free_words_stay_reduced() {
        let f2 = Group::Free(2);
        let w = Element::Free(vec![1, -2]);
        assert_eq!(f2.inv(&w).unwrap(), Element::Free(vec![2, -1]));
        assert_eq!(f2.mul(&w, &f2.inv(&w).unwrap()).unwrap(), f2.identity());
        assert_eq!(
            f2.mul(&Element::Free(vec![1, 2]), &Element::Free(vec![-2, 1])).unwrap(),
            Element::Free(vec![1, 1])
        );
        assert!(!f2.contains(&Element::Free(vec![1, -1])));
        assert!(!f2.contains(&Element::Free(vec![3])));
    }

    #[test]
    fn family_mismatch_is_a_domain_error() {
        let z5 = Group::cyclic(5).unwrap();
        let err = z5.mul(&Element::Cyclic(1), &Element::int(1)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(Group::Heisenberg.inv(&Element::Cyclic(0)).is_err());
        assert!(matches!(
            Group::IntVector(2).element_order(&Element::int(1), 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(Group::cyclic(0).is_err());
        assert!(Group::int_vector(0).is_err());
        assert!(Group::dihedral(0).is_err());
        assert!(Group::free(0).is_err());
        assert!(Group::product(Group::Heisenberg, Group::FiniteCyclic(0))
            .validate()
            .is_err());
    }
}
