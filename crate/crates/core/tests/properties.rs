mod common;

use common::{random_element, sample_groups, SAMPLES};
use proptest::prelude::*;
use wordbound_core::{Element, Group};

fn report(name: &str, t: &common::Tally) {
    assert!(t.samples >= SAMPLES.min(1000), "{name}: only {} samples", t.samples);
    assert!(t.passed(), "{name}: {:#?}", t.failures);
}

#[test]
fn inverse_symmetry() {
    report("inverse symmetry", &common::inverse_symmetry(11, SAMPLES));
}

#[test]
fn subadditivity() {
    report("subadditivity", &common::subadditivity(12, SAMPLES));
}

#[test]
fn automorphism_equivariance() {
    report("equivariance", &common::automorphism_equivariance(13, SAMPLES));
}

#[test]
fn quotient_monotonicity() {
    report("quotient monotonicity", &common::quotient_monotonicity(14, SAMPLES));
}

#[test]
fn bidirectional_matches_unidirectional() {
    report("search modes", &common::search_modes_agree(15, 1000));
}

#[test]
fn heisenberg_swap_is_an_automorphism() {
    let h = Group::Heisenberg;
    let mut rng = common::rng(16);
    for _ in 0..2000 {
        let (x, y) = (random_element(&h, &mut rng), random_element(&h, &mut rng));
        let lhs = common::heisenberg_swap(&h.mul(&x, &y).unwrap());
        let rhs = h
            .mul(&common::heisenberg_swap(&x), &common::heisenberg_swap(&y))
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

fn group_strategy() -> impl Strategy<Value = (Group, u64)> {
    (0..sample_groups().len(), any::<u64>()).prop_map(|(i, seed)| (sample_groups()[i].clone(), seed))
}

fn triple(group: &Group, seed: u64) -> [Element; 3] {
    let mut rng = common::rng(seed);
    [(); 3].map(|_| random_element(group, &mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 2000, ..ProptestConfig::default() })]

    #[test]
    fn group_laws((group, seed) in group_strategy()) {
        let [x, y, z] = triple(&group, seed);
        let e = group.identity();
        prop_assert_eq!(group.mul(&group.mul(&x, &y).unwrap(), &z).unwrap(), group.mul(&x, &group.mul(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(group.mul(&x, &e).unwrap(), x.clone());
        prop_assert_eq!(group.mul(&e, &x).unwrap(), x.clone());
        prop_assert!(group.is_identity(&group.mul(&x, &group.inv(&x).unwrap()).unwrap()));
        prop_assert_eq!(group.inv(&group.inv(&x).unwrap()).unwrap(), x.clone());
        prop_assert!(group.contains(&group.mul(&x, &y).unwrap()));
    }

    #[test]
    fn free_products_stay_reduced(a in prop::collection::vec(prop_oneof![-2i32..=-1, 1i32..=2], 0..12),
                                  b in prop::collection::vec(prop_oneof![-2i32..=-1, 1i32..=2], 0..12)) {
        let f2 = Group::Free(2);
        let word = |w: &[i32]| f2.product_of(&w.iter().map(|&x| Element::Free(vec![x])).collect::<Vec<_>>()).unwrap();
        let (x, y) = (word(&a), word(&b));
        let xy = f2.mul(&x, &y).unwrap();
        let Element::Free(letters) = &xy else { unreachable!() };
        prop_assert!(letters.windows(2).all(|p| p[0] != -p[1]));
        // concatenating the raw letters gives the same normal form
        let joined: Vec<i32> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(word(&joined), xy);
    }
}

#[test]
fn torsion_words_bound_the_girth() {
    use rand::Rng;
    use wordbound_core::girth::{cyclic_reduce, girth, GirthValue, Word};
    use wordbound_core::metric::{word_length, SearchOptions};
    use wordbound_core::{GenSet, Order};

    // if w' is cyclically reduced and w'w' is reduced, w'^n is a closed
    // non-backtracking walk, so it contains a cycle of length at most n|w'|
    let opts = SearchOptions::default();
    let mut rng = common::rng(17);
    let mut checked = 0;
    for _ in 0..300 {
        let group = match rng.gen_range(0..3) {
            0 => Group::FiniteCyclic(rng.gen_range(3..=12)),
            1 => Group::DihedralFinite(rng.gen_range(3..=6)),
            _ => wordbound_core::group::parse_group("Z/2 x Z/4").unwrap(),
        };
        let items: Vec<Element> = (0..rng.gen_range(1..=3))
            .map(|_| random_element(&group, &mut rng))
            .collect();
        let Ok(s) = GenSet::make_symmetric(&group, &items) else {
            continue;
        };
        for g in group.enumerate().unwrap() {
            let Some(w) = word_length(&group, &s, &g, 12, &opts).unwrap().witness else {
                continue;
            };
            let w = cyclic_reduce(&s, &Word(w)).unwrap();
            let doubled = Word(w.0.iter().chain(&w.0).copied().collect());
            if w.is_empty() || !doubled.is_reduced(&s) {
                continue;
            }
            let Order::Finite(n) = group.element_order(&g, 64).unwrap() else {
                unreachable!()
            };
            let bound = n as usize * w.len();
            let r = girth(&group, &s, bound.max(2), &opts).unwrap();
            assert!(
                matches!(r.value, GirthValue::Exact(v) if v <= bound),
                "{group} {} g={}: girth {} > {bound}",
                s.format(&group),
                group.format_element(&g),
                r.value
            );
            checked += 1;
        }
    }
    assert!(checked > 500, "only {checked} instances");
}
