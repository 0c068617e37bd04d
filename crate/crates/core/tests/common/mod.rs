//! Seeded property suites shared by the property and acceptance tests.
//!
//! Each suite draws random generating sets, builds one ball per set and checks a
//! batch of elements against it, so `samples` counts checked instances, not balls.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordbound_core::genset::{generates, QuotientMap, QuotientRule, Side};
use wordbound_core::group::parse_group;
use wordbound_core::metric::{ball, word_length, Ball, Mode, SearchOptions};
use wordbound_core::{Element, GenSet, Group};

pub const SAMPLES: usize = 10_000;
const PER_BALL: usize = 100;

#[derive(Debug, Default)]
pub struct Tally {
    pub samples: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok && self.failures.len() < 10 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut ChaCha8Rng, r: i64) -> i64 {
    rng.gen_range(-r..=r)
}

/// A random element with small coordinates.
pub fn random_element(group: &Group, rng: &mut ChaCha8Rng) -> Element {
    match group {
        Group::FiniteCyclic(q) => Element::Cyclic(rng.gen_range(0..*q)),
        Group::IntVector(d) => Element::vector(&(0..*d).map(|_| small(rng, 4)).collect::<Vec<_>>()),
        Group::DihedralFinite(n) => Element::dihedral(rng.gen_range(0..*n as i64), rng.gen()),
        Group::DihedralInfinite => Element::dihedral(small(rng, 5), rng.gen()),
        Group::Heisenberg => Element::heisenberg(small(rng, 3), small(rng, 3), small(rng, 3)),
        Group::Free(k) => {
            let len = rng.gen_range(0..=4);
            let word: Vec<i32> = (0..len)
                .map(|_| {
                    let x = rng.gen_range(1..=*k as i32);
                    if rng.gen() {
                        x
                    } else {
                        -x
                    }
                })
                .collect();
            group
                .product_of(&word.iter().map(|&x| Element::Free(vec![x])).collect::<Vec<_>>())
                .unwrap()
        }
        Group::Product(l, r) => Element::pair(random_element(l, rng), random_element(r, rng)),
        Group::CayleyTable(_) => unreachable!("not sampled"),
    }
}

/// A random generating set of 2–3 small elements, resampled until it provably generates.
pub fn random_genset(group: &Group, rng: &mut ChaCha8Rng) -> GenSet {
    if let Group::Free(k) = group {
        // random words almost never generate; use Nielsen moves on the basis
        let mut basis: Vec<Element> = group.standard_generators();
        for _ in 0..rng.gen_range(0..=2) {
            let i = rng.gen_range(0..*k);
            let j = (i + rng.gen_range(1..*k)) % k;
            let y = if rng.gen() {
                basis[j].clone()
            } else {
                group.inv(&basis[j]).unwrap()
            };
            basis[i] = if rng.gen() {
                group.mul(&basis[i], &y).unwrap()
            } else {
                group.mul(&y, &basis[i]).unwrap()
            };
        }
        if rng.gen() {
            basis.push(random_element(group, rng));
        }
        return GenSet::make_symmetric(group, &basis).unwrap();
    }
    loop {
        let n = rng.gen_range(2..=3);
        let items: Vec<Element> = (0..n).map(|_| random_element(group, rng)).collect();
        let Ok(s) = GenSet::make_symmetric(group, &items) else {
            continue;
        };
        if generates(group, &s, 6).is_ok_and(|g| g.is_yes()) {
            return s;
        }
    }
}

fn pick<'a>(elements: &'a [Element], rng: &mut ChaCha8Rng) -> &'a Element {
    elements.choose(rng).expect("nonempty ball")
}

fn ball_of(group: &Group, s: &GenSet, radius: usize) -> Ball {
    ball(group, s, radius, &SearchOptions::default()).expect("ball fits in memory")
}

/// Groups the inverse-symmetry and subadditivity suites sample from.
pub fn sample_groups() -> Vec<Group> {
    ["Z^2", "Z x Z/4", "H3", "Dinf", "D10", "F2"]
        .iter()
        .map(|t| parse_group(t).unwrap())
        .collect()
}

fn radius_for(group: &Group) -> usize {
    match group {
        Group::Free(_) | Group::Heisenberg => 4,
        _ => 6,
    }
}

/// `l_S(g) = l_S(g^-1)`.
pub fn inverse_symmetry(seed: u64, samples: usize) -> Tally {
    let mut rng = rng(seed);
    let groups = sample_groups();
    let mut t = Tally::default();
    while t.samples < samples {
        let group = groups.choose(&mut rng).unwrap();
        let s = random_genset(group, &mut rng);
        let b = ball_of(group, &s, radius_for(group));
        let elements: Vec<Element> = b.elements().cloned().collect();
        for _ in 0..PER_BALL {
            let g = pick(&elements, &mut rng);
            let gi = group.inv(g).unwrap();
            t.check(b.length(g) == b.length(&gi), || {
                format!(
                    "{group} {}: l({}) != l(inverse)",
                    s.format(group),
                    group.format_element(g)
                )
            });
        }
    }
    t
}

/// `l_S(gh) ≤ l_S(g) + l_S(h)`, with `g`, `h` drawn from the half-radius ball.
pub fn subadditivity(seed: u64, samples: usize) -> Tally {
    let mut rng = rng(seed);
    let groups = sample_groups();
    let mut t = Tally::default();
    while t.samples < samples {
        let group = groups.choose(&mut rng).unwrap();
        let s = random_genset(group, &mut rng);
        let radius = radius_for(group);
        let b = ball_of(group, &s, radius);
        let half: Vec<Element> = b
            .elements()
            .filter(|x| b.length(x).unwrap() <= radius / 2)
            .cloned()
            .collect();
        for _ in 0..PER_BALL {
            let (g, h) = (pick(&half, &mut rng), pick(&half, &mut rng));
            let gh = group.mul(g, h).unwrap();
            let (lg, lh) = (b.length(g).unwrap(), b.length(h).unwrap());
            t.check(b.length(&gh).is_some_and(|l| l <= lg + lh), || {
                format!(
                    "{group} {}: l({}·{}) > {lg} + {lh}",
                    s.format(group),
                    group.format_element(g),
                    group.format_element(h)
                )
            });
        }
    }
    t
}

/// A random element of SL(2, Z) as a product of elementary matrices.
pub fn random_unimodular(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
    let mut m = [[1, 0], [0, 1]];
    for _ in 0..rng.gen_range(1..=4) {
        let k = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        let e = if rng.gen() { [[1, k], [0, 1]] } else { [[1, 0], [k, 1]] };
        m = [
            [
                m[0][0] * e[0][0] + m[0][1] * e[1][0],
                m[0][0] * e[0][1] + m[0][1] * e[1][1],
            ],
            [
                m[1][0] * e[0][0] + m[1][1] * e[1][0],
                m[1][0] * e[0][1] + m[1][1] * e[1][1],
            ],
        ];
    }
    m
}

fn vector_coords(x: &Element) -> Vec<i64> {
    let Element::Vector(v) = x else { panic!("not a vector") };
    v.iter().map(|c| i64::try_from(c).unwrap()).collect()
}

fn heisenberg_coords(x: &Element) -> [i64; 3] {
    let Element::Heisenberg(v) = x else {
        panic!("not a Heisenberg element")
    };
    [0, 1, 2].map(|i| i64::try_from(&v[i]).unwrap())
}

/// `a ↔ b`, `c ↦ c^-1`: `a^i b^j c^l ↦ b^i a^j c^-l = a^j b^i c^(-l-ij)`.
pub fn heisenberg_swap(x: &Element) -> Element {
    let [i, j, l] = heisenberg_coords(x);
    Element::heisenberg(j, i, -l - i * j)
}

/// `l_{φ(S)}(φ(g)) = l_S(g)` for unimodular `φ` on `Z^2` and the swap on `H3`.
pub fn automorphism_equivariance(seed: u64, samples: usize) -> Tally {
    let mut rng = rng(seed);
    let z2 = Group::IntVector(2);
    let h3 = Group::Heisenberg;
    let mut t = Tally::default();
    let mut round = 0;
    while t.samples < samples {
        round += 1;
        let (group, radius) = if round % 2 == 0 { (&z2, 6) } else { (&h3, 4) };
        let s = random_genset(group, &mut rng);
        let phi: Box<dyn Fn(&Element) -> Element> = if round % 2 == 0 {
            let m = random_unimodular(&mut rng);
            Box::new(move |x: &Element| {
                let v = vector_coords(x);
                Element::vector(&[m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]])
            })
        } else {
            Box::new(heisenberg_swap)
        };
        let s2 = s.map(group, |x| Ok(phi(x))).unwrap();
        let b = ball_of(group, &s, radius);
        let b2 = ball_of(group, &s2, radius);
        let elements: Vec<Element> = b.elements().cloned().collect();
        for _ in 0..PER_BALL {
            let g = pick(&elements, &mut rng);
            t.check(b.length(g) == b2.length(&phi(g)), || {
                format!("{group} {}: l(φ({})) differs", s.format(group), group.format_element(g))
            });
        }
        // the ball sizes must agree too
        t.check(b.len() == b2.len(), || format!("{group}: ball sizes differ under φ"));
    }
    t
}

/// `l_{π(S)}(π(g)) ≤ l_S(g)` for `Z x Z/q → Z/q` and `H3 → Z^2`.
pub fn quotient_monotonicity(seed: u64, samples: usize) -> Tally {
    let mut rng = rng(seed);
    let maps = [
        QuotientMap::new(parse_group("Z x Z/6").unwrap(), QuotientRule::Project(Side::Right)).unwrap(),
        QuotientMap::new(parse_group("Z x Z/5").unwrap(), QuotientRule::Project(Side::Right)).unwrap(),
        QuotientMap::new(Group::Heisenberg, QuotientRule::Abelianization).unwrap(),
    ];
    let mut t = Tally::default();
    while t.samples < samples {
        let map = maps.choose(&mut rng).unwrap();
        let group = map.source();
        let radius = radius_for(group);
        let s = random_genset(group, &mut rng);
        let ps = wordbound_core::genset::project_genset(map, &s).unwrap();
        let b = ball_of(group, &s, radius);
        let pb = ball_of(map.target(), &ps, radius);
        let elements: Vec<Element> = b.elements().cloned().collect();
        for _ in 0..PER_BALL {
            let g = pick(&elements, &mut rng);
            let pg = map.apply(g).unwrap();
            let l = b.length(g).unwrap();
            t.check(pb.length(&pg).is_some_and(|m| m <= l), || {
                format!("{group} {}: l(π({})) > {l}", s.format(group), group.format_element(g))
            });
        }
    }
    t
}

/// Bidirectional and unidirectional searches agree on `word_length`.
pub fn search_modes_agree(seed: u64, instances: usize) -> Tally {
    let mut rng = rng(seed);
    let groups = sample_groups();
    let uni = SearchOptions::with_mode(Mode::Unidirectional);
    let bi = SearchOptions::with_mode(Mode::Bidirectional);
    let mut t = Tally::default();
    while t.samples < instances {
        let group = groups.choose(&mut rng).unwrap();
        let s = random_genset(group, &mut rng);
        for _ in 0..10 {
            let g = random_element(group, &mut rng);
            let cap = rng.gen_range(1..=6);
            let a = word_length(group, &s, &g, cap, &uni).unwrap();
            let b = word_length(group, &s, &g, cap, &bi).unwrap();
            let witness_ok = b
                .witness
                .as_ref()
                .is_none_or(|w| s.evaluate(group, w).unwrap() == g && w.len() == b.length.exact().unwrap());
            t.check(a.length == b.length && witness_ok, || {
                format!(
                    "{group} {} g={} cap {cap}: {:?} vs {:?}",
                    s.format(group),
                    group.format_element(&g),
                    a.length,
                    b.length
                )
            });
        }
    }
    t
}
