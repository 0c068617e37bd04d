//! Girth of Cayley graphs and loops built from powers of torsion elements.
//!
//! Words live on the formal alphabet of a [`GenSet`]: a letter cancels only
//! against its paired inverse, and an involution letter is its own inverse,
//! so `s·s` counts as backtracking (one undirected edge, not a 2-cycle).

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::group::{Element, Group, Order};
use crate::metric::{ball, SearchOptions};

/// Word over the letter ids of a generating set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn check(&self, genset: &GenSet) -> Result<()> {
        self.0.iter().try_for_each(|&id| genset.check_symbol(id))
    }

    pub fn inverse(&self, genset: &GenSet) -> Word {
        Word(self.0.iter().rev().map(|&s| genset.inverse_of(s)).collect())
    }

    pub fn is_reduced(&self, genset: &GenSet) -> bool {
        self.0.windows(2).all(|p| genset.inverse_of(p[0]) != p[1])
    }

    pub fn is_cyclically_reduced(&self, genset: &GenSet) -> bool {
        self.is_reduced(genset)
            && match (self.0.first(), self.0.last()) {
                (Some(&a), Some(&b)) if self.len() > 1 => genset.inverse_of(b) != a,
                _ => true,
            }
    }

    pub fn format(&self, genset: &GenSet, group: &Group) -> String {
        let parts: Vec<String> = self.0.iter().map(|&s| group.format_element(genset.letter(s))).collect();
        format!("[{}]", parts.join(","))
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// Free reduction on the formal alphabet.
pub fn reduce(genset: &GenSet, w: &Word) -> Result<Word> {
    w.check(genset)?;
    let mut out: Vec<usize> = Vec::with_capacity(w.len());
    for &s in &w.0 {
        if out.last().is_some_and(|&t| genset.inverse_of(t) == s) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    Ok(Word(out))
}

/// Free reduction followed by stripping inverse pairs across the seam.
pub fn cyclic_reduce(genset: &GenSet, w: &Word) -> Result<Word> {
    let r = reduce(genset, w)?.0;
    let (mut i, mut j) = (0, r.len());
    while j - i >= 2 && genset.inverse_of(r[j - 1]) == r[i] {
        i += 1;
        j -= 1;
    }
    Ok(Word(r[i..j].to_vec()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GirthValue {
    Exact(usize),
    GreaterThan(usize),
}

impl fmt::Display for GirthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GirthValue::Exact(n) => write!(f, "{n}"),
            GirthValue::GreaterThan(cap) => write!(f, ">{cap}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GirthResult {
    pub value: GirthValue,
    pub witness: Option<Word>,
}

fn check_cap(cap: usize) -> Result<()> {
    if cap < 2 {
        Err(Error::InvalidParameter(format!(
            "girth cap must be at least 2, got {cap}"
        )))
    } else {
        Ok(())
    }
}

fn check_dedup(group: &Group, genset: &GenSet) -> Result<()> {
    let distinct: HashSet<&Element> = genset.letters().iter().collect();
    if distinct.len() != genset.len() || genset.letters().iter().any(|g| group.is_identity(g)) {
        return Err(Error::Internal(
            "generating set has duplicate or trivial letters".into(),
        ));
    }
    Ok(())
}

/// Shortest cycle through the identity, from a ball of radius `⌈cap/2⌉`:
/// every non-tree edge `u — u·s` closes a cycle of length `d(u) + d(u·s) + 1`,
/// and the minimum over non-tree edges is the girth (Cayley graphs are
/// vertex-transitive).
pub fn girth(group: &Group, genset: &GenSet, cap: usize, opts: &SearchOptions) -> Result<GirthResult> {
    check_cap(cap)?;
    check_dedup(group, genset)?;
    let b = ball(group, genset, cap.div_ceil(2), opts)?;
    let mut best: Option<(usize, Word)> = None;
    for u in b.elements() {
        let du = b.length(u).expect("ball element");
        for (s, letter) in genset.letters().iter().enumerate() {
            let v = group.mul(u, letter)?;
            let Some(dv) = b.length(&v) else { continue };
            let tree = |x: &Element, y: &Element, t: usize| b.parent(y).is_some_and(|(p, l)| l == t && p == x);
            if tree(u, &v, s) || tree(&v, u, genset.inverse_of(s)) {
                continue;
            }
            let n = du + dv + 1;
            if n <= cap && best.as_ref().is_none_or(|(m, _)| n < *m) {
                let mut w = b.witness(u).expect("ball element");
                w.push(s);
                w.extend(Word(b.witness(&v).expect("ball element")).inverse(genset).0);
                best = Some((n, Word(w)));
            }
        }
    }
    Ok(match best {
        Some((n, w)) => GirthResult {
            value: GirthValue::Exact(n),
            witness: Some(w),
        },
        None => GirthResult {
            value: GirthValue::GreaterThan(cap),
            witness: None,
        },
    })
}

/// Reference implementation: iterative deepening over reduced words,
/// accepting the first cyclically reduced relation.
pub fn girth_reference(group: &Group, genset: &GenSet, cap: usize) -> Result<GirthResult> {
    check_cap(cap)?;
    check_dedup(group, genset)?;
    fn dfs(group: &Group, genset: &GenSet, word: &mut Vec<usize>, value: &Element, depth: usize) -> Result<bool> {
        if word.len() == depth {
            return Ok(group.is_identity(value) && Word(word.clone()).is_cyclically_reduced(genset));
        }
        for s in 0..genset.len() {
            if word.last().is_some_and(|&t| genset.inverse_of(t) == s) {
                continue;
            }
            let next = group.mul(value, genset.letter(s))?;
            // a proper prefix that is already a relation cannot be on a shortest cycle
            if group.is_identity(&next) && word.len() + 1 < depth {
                continue;
            }
            word.push(s);
            if dfs(group, genset, word, &next, depth)? {
                return Ok(true);
            }
            word.pop();
        }
        Ok(false)
    }
    for depth in 1..=cap {
        let mut word = Vec::with_capacity(depth);
        if dfs(group, genset, &mut word, &group.identity(), depth)? {
            return Ok(GirthResult {
                value: GirthValue::Exact(depth),
                witness: Some(Word(word)),
            });
        }
    }
    Ok(GirthResult {
        value: GirthValue::GreaterThan(cap),
        witness: None,
    })
}

/// Vertices visited by the path of `w` from the identity, endpoints included.
pub fn walk(group: &Group, genset: &GenSet, w: &Word) -> Result<Vec<Element>> {
    w.check(genset)?;
    let mut path = vec![group.identity()];
    for &s in &w.0 {
        let next = group.mul(path.last().expect("nonempty"), genset.letter(s))?;
        path.push(next);
    }
    Ok(path)
}

/// Whether `w` is a nonempty cyclically reduced relation whose path revisits no vertex.
pub fn validate_loop(group: &Group, genset: &GenSet, w: &Word) -> Result<bool> {
    if w.is_empty() || !w.is_cyclically_reduced(genset) {
        return Ok(false);
    }
    let path = walk(group, genset, w)?;
    Ok(group.is_identity(path.last().expect("nonempty")) && distinct_interior(&path))
}

fn distinct_interior(path: &[Element]) -> bool {
    let mut seen = HashSet::new();
    path[..path.len() - 1].iter().all(|v| seen.insert(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopVerdict {
    /// Length of the simple loop `w'^n`.
    SimpleLoop(usize),
    Fails(String),
}

impl LoopVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, LoopVerdict::SimpleLoop(_))
    }
}

/// Walks `w'^n` where `w'` is the cyclic reduction of `w` and `n` the order
/// of `g`, and checks that the walk is a simple loop at the identity.
pub fn simple_loop_check(group: &Group, genset: &GenSet, g: &Element, w: &Word, order_cap: u64) -> Result<LoopVerdict> {
    group.check(g)?;
    let n = match group.element_order(g, order_cap)? {
        Order::Finite(n) => n as usize,
        _ => {
            return Err(Error::NotTorsion(group.format_element(g)));
        }
    };
    if genset.evaluate(group, &w.0)? != *g {
        return Err(Error::Precondition(format!(
            "word {} does not evaluate to {}",
            w.format(genset, group),
            group.format_element(g)
        )));
    }
    let reduced = cyclic_reduce(genset, w)?;
    if reduced.is_empty() {
        return Ok(LoopVerdict::Fails(
            "cyclic reduction is empty: the loop is trivial".into(),
        ));
    }
    let looped = Word(reduced.0.iter().copied().cycle().take(n * reduced.len()).collect());
    let path = walk(group, genset, &looped)?;
    if !group.is_identity(path.last().expect("nonempty")) {
        return Ok(LoopVerdict::Fails("path does not return to the identity".into()));
    }
    let mut seen = HashSet::new();
    for (step, v) in path[..path.len() - 1].iter().enumerate() {
        if !seen.insert(v) {
            return Ok(LoopVerdict::Fails(format!(
                "vertex {} revisited at step {step} of {}",
                group.format_element(v),
                looped.len()
            )));
        }
    }
    Ok(LoopVerdict::SimpleLoop(looped.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_element_list, parse_group};

    fn setup(group: &str, elements: &str) -> (Group, GenSet) {
        let g = parse_group(group).unwrap();
        let s = GenSet::make_symmetric(&g, &parse_element_list(&g, elements).unwrap()).unwrap();
        (g, s)
    }

    #[test]
    fn cyclic_reduction() {
        // letters: s=0, s^-1=1, t=2, t^-1=3
        let (_, s) = setup("F2", "[x1,x2]");
        assert_eq!(cyclic_reduce(&s, &Word(vec![0, 2, 1])).unwrap(), Word(vec![2]));
        assert_eq!(cyclic_reduce(&s, &Word(vec![0, 1])).unwrap(), Word(vec![]));
        assert_eq!(
            cyclic_reduce(&s, &Word(vec![0, 2, 1, 3])).unwrap(),
            Word(vec![0, 2, 1, 3])
        );
        assert_eq!(cyclic_reduce(&s, &Word(vec![0, 0, 2, 1, 1])).unwrap(), Word(vec![2]));
        assert!(cyclic_reduce(&s, &Word(vec![9])).is_err());
        // involution letters cancel against themselves
        let (_, s) = setup("D8", "[(1,0),(0,1)]");
        assert_eq!(reduce(&s, &Word(vec![2, 2, 0])).unwrap(), Word(vec![0]));
    }

    fn both(group: &str, elements: &str, cap: usize) -> GirthValue {
        let (g, s) = setup(group, elements);
        let fast = girth(&g, &s, cap, &SearchOptions::default()).unwrap();
        let reference = girth_reference(&g, &s, cap).unwrap();
        assert_eq!(fast.value, reference.value, "{group} {elements}");
        for r in [&fast, &reference] {
            if let Some(w) = &r.witness {
                assert!(validate_loop(&g, &s, w).unwrap(), "{group}: {}", w.format(&s, &g));
            }
        }
        fast.value
    }

    #[test]
    fn girth_examples() {
        // abelian: s·t·s⁻¹·t⁻¹ closes the square 0, 2, 5, 3
        assert_eq!(both("Z", "[2,3]", 10), GirthValue::Exact(4));
        assert_eq!(both("Z", "[3,5]", 10), GirthValue::Exact(4));
        assert_eq!(both("Z", "[3]", 10), GirthValue::GreaterThan(10));
        assert_eq!(both("Z^2", "[(1,0),(0,1)]", 6), GirthValue::Exact(4));
        assert_eq!(both("D8", "[(1,0),(0,1)]", 6), GirthValue::Exact(4));
        assert_eq!(both("F2", "[x1,x2]", 9), GirthValue::GreaterThan(9));
        assert_eq!(both("Z/5", "[1]", 8), GirthValue::Exact(5));
        assert_eq!(both("Z/6", "[1,2]", 8), GirthValue::Exact(3));
        assert_eq!(both("H3", "[(1,0,0),(0,1,0)]", 10), GirthValue::Exact(8));
        assert_eq!(both("Z", "[2,3]", 3), GirthValue::GreaterThan(3));
        let (g, s) = setup("Z", "[1]");
        assert!(girth(&g, &s, 1, &SearchOptions::default()).is_err());
    }

    #[test]
    fn girth_of_free_group_ball() {
        let (g, s) = setup("F2", "[x1,x2]");
        assert_eq!(
            girth(&g, &s, 12, &SearchOptions::default()).unwrap().value,
            GirthValue::GreaterThan(12)
        );
    }

    #[test]
    fn two_generator_sets_of_z_have_girth_at_most_four() {
        // the smallest relation is 1+1-2 when q = 2p, otherwise the commutator square
        for p in 1u32..=13 {
            for q in p + 1..=17 {
                let (g, s) = setup("Z", &format!("[{p},{q}]"));
                let r = girth(&g, &s, 8, &SearchOptions::default()).unwrap();
                let expected = if q == 2 * p { 3 } else { 4 };
                assert_eq!(r.value, GirthValue::Exact(expected), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn simple_loops() {
        let (d8, s) = setup("D8", "[(1,0),(0,1)]");
        let r = Element::dihedral(1, false);
        assert_eq!(
            simple_loop_check(&d8, &s, &r, &Word(vec![0]), 100).unwrap(),
            LoopVerdict::SimpleLoop(4)
        );
        let (z6, s) = setup("Z/6", "[2]");
        assert_eq!(
            simple_loop_check(&z6, &s, &Element::Cyclic(2), &Word(vec![0]), 100).unwrap(),
            LoopVerdict::SimpleLoop(3)
        );
        let (z4, s) = setup("Z/4", "[1]");
        assert_eq!(
            simple_loop_check(&z4, &s, &Element::Cyclic(2), &Word(vec![0, 0]), 100).unwrap(),
            LoopVerdict::SimpleLoop(4)
        );
        // 2 in Z/5 has order 5: the walk of (+1,+1)^5 wraps the 5-cycle twice
        let (z5, s) = setup("Z/5", "[1]");
        assert!(!simple_loop_check(&z5, &s, &Element::Cyclic(2), &Word(vec![0, 0]), 100)
            .unwrap()
            .passed());
        assert!(matches!(
            simple_loop_check(&z5, &s, &Element::Cyclic(2), &Word(vec![0]), 100),
            Err(Error::Precondition(_))
        ));
        let (z, s) = setup("Z", "[1]");
        assert!(matches!(
            simple_loop_check(&z, &s, &Element::int(1), &Word(vec![0]), 100),
            Err(Error::NotTorsion(_))
        ));
    }
}
