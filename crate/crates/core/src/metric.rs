//! Word length `l_S(g)` and balls in Cayley graphs, by breadth-first search
//! over the implicit graph with edges `g — g·s`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::group::{Element, Group};

pub const DEFAULT_MEM_LIMIT: usize = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Bidirectional when `cap > 8` and the group is infinite.
    #[default]
    Auto,
    Unidirectional,
    Bidirectional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Approximate byte budget for visited sets.
    pub mem_limit: usize,
    pub mode: Mode,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mem_limit: DEFAULT_MEM_LIMIT,
            mode: Mode::Auto,
        }
    }
}

impl SearchOptions {
    pub fn with_mode(mode: Mode) -> Self {
        SearchOptions {
            mode,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug)]
struct Node {
    element: Element,
    length: usize,
    /// (parent node, letter) with `element = parent · letter`.
    parent: Option<(usize, usize)>,
}

fn node_bytes(g: &Element) -> usize {
    2 * std::mem::size_of::<Element>() + 2 * g.heap_bytes() + 48
}

/// Ball of radius `r` about a root (the identity for [`ball`]).
#[derive(Clone, Debug)]
pub struct Ball {
    nodes: Vec<Node>,
    index: HashMap<Element, usize>,
    /// `layer_ends[k]` = number of nodes with length ≤ k.
    layer_ends: Vec<usize>,
    bytes: usize,
}

impl Ball {
    fn rooted(root: Element) -> Ball {
        let bytes = node_bytes(&root);
        Ball {
            index: HashMap::from([(root.clone(), 0)]),
            nodes: vec![Node {
                element: root,
                length: 0,
                parent: None,
            }],
            layer_ends: vec![1],
            bytes,
        }
    }

    /// Radius reached so far.
    pub fn radius(&self) -> usize {
        self.layer_ends.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.index.contains_key(g)
    }

    pub fn length(&self, g: &Element) -> Option<usize> {
        self.index.get(g).map(|&i| self.nodes[i].length)
    }

    /// Elements in BFS order.
    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.nodes.iter().map(|n| &n.element)
    }

    /// Elements of length exactly `r`.
    pub fn sphere(&self, r: usize) -> impl Iterator<Item = &Element> {
        let start = if r == 0 {
            0
        } else {
            self.layer_ends.get(r - 1).copied().unwrap_or(self.len())
        };
        let end = self.layer_ends.get(r).copied().unwrap_or(self.len());
        self.nodes[start.min(end)..end].iter().map(|n| &n.element)
    }

    /// Sizes of the balls of radius `0..=radius`.
    pub fn growth(&self) -> &[usize] {
        &self.layer_ends
    }

    /// Geodesic word from the root, as letter ids.
    pub fn witness(&self, g: &Element) -> Option<Vec<usize>> {
        self.index.get(g).map(|&i| self.path(i))
    }

    fn path(&self, mut i: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.nodes[i].length);
        while let Some((p, s)) = self.nodes[i].parent {
            word.push(s);
            i = p;
        }
        word.reverse();
        word
    }

    /// Parent link of `g`: (parent element, letter).
    pub fn parent(&self, g: &Element) -> Option<(&Element, usize)> {
        let i = *self.index.get(g)?;
        self.nodes[i].parent.map(|(p, s)| (&self.nodes[p].element, s))
    }

    /// Adds the next layer; returns the indices of new nodes. Parents are the
    /// lowest letter id among edges from the previous layer.
    fn grow(&mut self, group: &Group, genset: &GenSet, mem_limit: usize) -> Result<std::ops::Range<usize>> {
        let r = self.radius();
        let start = if r == 0 { 0 } else { self.layer_ends[r - 1] };
        let end = self.layer_ends[r];
        for i in start..end {
            for (s, letter) in genset.letters().iter().enumerate() {
                let y = group.mul(&self.nodes[i].element, letter)?;
                match self.index.get(&y) {
                    Some(&j) => {
                        if self.nodes[j].length == r + 1 {
                            if let Some((_, ps)) = self.nodes[j].parent {
                                if s < ps {
                                    self.nodes[j].parent = Some((i, s));
                                }
                            }
                        }
                    }
                    None => {
                        self.bytes += node_bytes(&y);
                        if self.bytes > mem_limit {
                            return Err(Error::MemoryBudget {
                                limit: mem_limit,
                                radius: r,
                            });
                        }
                        self.index.insert(y.clone(), self.nodes.len());
                        self.nodes.push(Node {
                            element: y,
                            length: r + 1,
                            parent: Some((i, s)),
                        });
                    }
                }
            }
        }
        self.layer_ends.push(self.nodes.len());
        Ok(end..self.nodes.len())
    }

    fn frontier_len(&self) -> usize {
        let r = self.radius();
        self.layer_ends[r] - if r == 0 { 0 } else { self.layer_ends[r - 1] }
    }
}

/// All elements of word length ≤ `radius`, with exact distances.
pub fn ball(group: &Group, genset: &GenSet, radius: usize, opts: &SearchOptions) -> Result<Ball> {
    check_genset(group, genset)?;
    let mut b = Ball::rooted(group.identity());
    while b.radius() < radius {
        let new = b.grow(group, genset, opts.mem_limit)?;
        if new.is_empty() {
            // the subgroup is exhausted; record remaining (empty) layers
            while b.radius() < radius {
                b.layer_ends.push(b.nodes.len());
            }
        }
    }
    Ok(b)
}

fn check_genset(group: &Group, genset: &GenSet) -> Result<()> {
    if genset.belongs_to(group) {
        Ok(())
    } else {
        Err(Error::domain(format!("generating set is not over {group}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Exact(usize),
    NotInBall,
}

impl Length {
    pub fn exact(self) -> Option<usize> {
        match self {
            Length::Exact(n) => Some(n),
            Length::NotInBall => None,
        }
    }
}

/// Word length with a geodesic witness and the search effort spent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthCert {
    pub element: Element,
    pub length: Length,
    pub witness: Option<Vec<usize>>,
    pub cap: usize,
    pub explored: usize,
}

impl LengthCert {
    /// Witness length matches and the witness evaluates to the element.
    pub fn verify(&self, group: &Group, genset: &GenSet) -> bool {
        match (self.length, &self.witness) {
            (Length::Exact(n), Some(w)) => {
                w.len() == n && n <= self.cap && genset.evaluate(group, w).ok().as_ref() == Some(&self.element)
            }
            (Length::NotInBall, None) => true,
            _ => false,
        }
    }
}

pub fn word_length(
    group: &Group,
    genset: &GenSet,
    g: &Element,
    cap: usize,
    opts: &SearchOptions,
) -> Result<LengthCert> {
    if cap == 0 {
        return Err(Error::InvalidParameter("cap must be at least 1".into()));
    }
    group.check(g)?;
    check_genset(group, genset)?;
    let bidirectional = match opts.mode {
        Mode::Auto => cap > 8 && !group.is_finite(),
        Mode::Unidirectional => false,
        Mode::Bidirectional => true,
    };
    if bidirectional {
        bidirectional_length(group, genset, g, cap, opts.mem_limit)
    } else {
        unidirectional_length(group, genset, g, cap, opts.mem_limit)
    }
}

fn unidirectional_length(group: &Group, genset: &GenSet, g: &Element, cap: usize, mem: usize) -> Result<LengthCert> {
    let mut b = Ball::rooted(group.identity());
    loop {
        if let Some(&i) = b.index.get(g) {
            return Ok(LengthCert {
                element: g.clone(),
                length: Length::Exact(b.nodes[i].length),
                witness: Some(b.path(i)),
                cap,
                explored: b.len(),
            });
        }
        if b.radius() >= cap || b.grow(group, genset, mem)?.is_empty() {
            return Ok(not_in_ball(g, cap, b.len()));
        }
    }
}

fn not_in_ball(g: &Element, cap: usize, explored: usize) -> LengthCert {
    LengthCert {
        element: g.clone(),
        length: Length::NotInBall,
        witness: None,
        cap,
        explored,
    }
}

/// Grows the smaller frontier by a full layer until the two balls meet;
/// at the first meeting the distance is `r_forward + r_backward`.
fn bidirectional_length(group: &Group, genset: &GenSet, g: &Element, cap: usize, mem: usize) -> Result<LengthCert> {
    if group.is_identity(g) {
        return unidirectional_length(group, genset, g, cap, mem);
    }
    let mut fwd = Ball::rooted(group.identity());
    let mut bwd = Ball::rooted(g.clone());
    let explored = |f: &Ball, b: &Ball| f.len() + b.len();
    while fwd.radius() + bwd.radius() < cap {
        let grow_forward = fwd.frontier_len() <= bwd.frontier_len();
        let (grown, other) = if grow_forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let budget = mem.saturating_sub(other.bytes);
        let new = grown.grow(group, genset, budget).map_err(|e| match e {
            Error::MemoryBudget { radius, .. } => Error::MemoryBudget {
                limit: mem,
                radius: radius + other.radius(),
            },
            e => e,
        })?;
        if new.is_empty() {
            return Ok(not_in_ball(g, cap, explored(&fwd, &bwd)));
        }
        // best meeting node among the new layer
        let (grown, other) = if grow_forward { (&fwd, &bwd) } else { (&bwd, &fwd) };
        let meet = new
            .filter_map(|i| {
                other
                    .index
                    .get(&grown.nodes[i].element)
                    .map(|&j| (grown.nodes[i].length + other.nodes[j].length, i, j))
            })
            .min_by_key(|&(d, _, _)| d);
        if let Some((d, i, j)) = meet {
            let (fi, bi) = if grow_forward { (i, j) } else { (j, i) };
            let mut word = fwd.path(fi);
            word.extend(bwd.path(bi).into_iter().rev().map(|s| genset.inverse_of(s)));
            debug_assert_eq!(word.len(), d);
            return Ok(LengthCert {
                element: g.clone(),
                length: Length::Exact(d),
                witness: Some(word),
                cap,
                explored: explored(&fwd, &bwd),
            });
        }
    }
    Ok(not_in_ball(g, cap, explored(&fwd, &bwd)))
}

/// Length of `g` under each labelled generating set of a family.
pub fn length_profile(
    group: &Group,
    family: &[(String, GenSet)],
    g: &Element,
    cap: usize,
    opts: &SearchOptions,
) -> Result<Vec<(String, LengthCert)>> {
    family
        .iter()
        .map(|(label, s)| Ok((label.clone(), word_length(group, s, g, cap, opts)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_element, parse_element_list, parse_group};

    fn setup(group: &str, elements: &str) -> (Group, GenSet) {
        let g = parse_group(group).unwrap();
        let s = GenSet::make_symmetric(&g, &parse_element_list(&g, elements).unwrap()).unwrap();
        (g, s)
    }

    fn length(group: &Group, s: &GenSet, g: &str, cap: usize, mode: Mode) -> Length {
        let x = parse_element(group, g).unwrap();
        let cert = word_length(group, s, &x, cap, &SearchOptions::with_mode(mode)).unwrap();
        assert!(cert.verify(group, s), "{cert:?}");
        cert.length
    }

    #[test]
    fn balls() {
        let (z, s) = setup("Z", "[1]");
        let b = ball(&z, &s, 3, &SearchOptions::default()).unwrap();
        assert_eq!(b.len(), 7);
        for n in -3i64..=3 {
            assert_eq!(b.length(&Element::int(n)), Some(n.unsigned_abs() as usize));
        }
        let (z2, s) = setup("Z^2", "[(1,0),(0,1)]");
        assert_eq!(ball(&z2, &s, 2, &SearchOptions::default()).unwrap().len(), 13);
        let (h, s) = setup("H3", "[(1,0,0),(0,1,0)]");
        let b = ball(&h, &s, 4, &SearchOptions::default()).unwrap();
        assert_eq!(b.length(&Element::heisenberg(0, 0, 1)), Some(4));
        assert_eq!(b.sphere(0).count(), 1);
        assert_eq!(b.sphere(1).count(), 4);
    }

    #[test]
    fn finite_ball_saturates() {
        let (d8, s) = setup("D8", "[(1,0),(0,1)]");
        let b = ball(&d8, &s, 10, &SearchOptions::default()).unwrap();
        assert_eq!(b.len(), 8);
        assert_eq!(b.radius(), 10);
        assert_eq!(b.growth().last(), Some(&8));
    }

    #[test]
    fn parents_use_lowest_letter() {
        let (z2, s) = setup("Z^2", "[(1,0),(0,1)]");
        let b = ball(&z2, &s, 2, &SearchOptions::default()).unwrap();
        // (1,1) is reached from (0,1) by letter 0 and from (1,0) by letter 2
        let (p, letter) = b.parent(&Element::vector(&[1, 1])).unwrap();
        assert_eq!((p.clone(), letter), (Element::vector(&[0, 1]), 0));
    }

    #[test]
    fn word_length_examples() {
        for mode in [Mode::Unidirectional, Mode::Bidirectional] {
            let (g, s) = setup("Z x Z/2", "[(5,1),(3,0)]");
            assert_eq!(length(&g, &s, "(0,1)", 12, mode), Length::Exact(8));
            assert_eq!(length(&g, &s, "(0,0)", 12, mode), Length::Exact(0));
            assert_eq!(length(&g, &s, "(0,1)", 7, mode), Length::NotInBall);
            let (z, s) = setup("Z", "[2,3]");
            assert_eq!(length(&z, &s, "1", 5, mode), Length::Exact(2));
            let (h, s) = setup("H3", "[(1,0,0),(0,1,0)]");
            assert_eq!(length(&h, &s, "(0,0,1)", 10, mode), Length::Exact(4));
            // proper subgroup: search exhausts
            let (z6, s) = setup("Z/6", "[2]");
            assert_eq!(length(&z6, &s, "1", 10, mode), Length::NotInBall);
        }
    }

    #[test]
    fn profile() {
        let z = Group::IntVector(1);
        let family: Vec<(String, GenSet)> = [(2, 3), (3, 5), (5, 7)]
            .iter()
            .map(|&(p, q)| {
                (
                    format!("{p},{q}"),
                    GenSet::make_symmetric(&z, &[Element::int(p), Element::int(q)]).unwrap(),
                )
            })
            .collect();
        let rows = length_profile(&z, &family, &Element::int(1), 20, &SearchOptions::default()).unwrap();
        let lengths: Vec<_> = rows.iter().map(|(_, c)| c.length.exact().unwrap()).collect();
        assert_eq!(lengths, vec![2, 3, 5]);
    }

    #[test]
    fn errors() {
        let (z, s) = setup("Z", "[1]");
        assert!(word_length(&z, &s, &Element::int(1), 0, &SearchOptions::default()).is_err());
        assert!(word_length(&z, &s, &Element::Cyclic(1), 3, &SearchOptions::default()).is_err());
        let tiny = SearchOptions {
            mem_limit: 2000,
            mode: Mode::Unidirectional,
        };
        let err = ball(
            &Group::IntVector(3),
            &GenSet::standard(&Group::IntVector(3)).unwrap(),
            20,
            &tiny,
        )
        .unwrap_err();
        assert!(matches!(err, Error::MemoryBudget { limit: 2000, .. }));
        assert!(err.is_resource());
    }
}
