use std::collections::{HashMap, VecDeque};

use super::{Element, Group};
use crate::error::{Error, Result};

/// Indexed view of a finite group: elements numbered in enumeration order
/// with a precomputed multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    group: Group,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds the table; `max_size` guards against accidentally huge groups.
    pub fn new(group: &Group, max_size: usize) -> Result<Self> {
        let size = group
            .order()
            .ok_or_else(|| Error::Unsupported(format!("{group} is infinite")))?;
        if size as usize > max_size {
            return Err(Error::CapExceeded(format!("|{group}| = {size} exceeds cap {max_size}")));
        }
        let elements = group.enumerate()?;
        let index: HashMap<Element, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let m = elements.len();
        let mut table = Vec::with_capacity(m * m);
        for a in &elements {
            for b in &elements {
                table.push(index[&group.mul(a, b)?]);
            }
        }
        let inverse = elements
            .iter()
            .map(|a| Ok(index[&group.inv(a)?]))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup {
            group: group.clone(),
            elements,
            index,
            table,
            inverse,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> usize {
        self.index[&self.group.identity()]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn order_of(&self, a: usize) -> usize {
        let e = self.identity();
        let mut x = a;
        let mut n = 1;
        while x != e {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Subgroup generated by `gens`, as a membership mask.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.size()];
        let e = self.identity();
        seen[e] = true;
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.closure(gens).iter().all(|&b| b)
    }

    /// Word-length of every element with respect to `gens` (`None` = unreachable).
    pub fn distances(&self, gens: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.size()];
        let e = self.identity();
        dist[e] = Some(0);
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &g in gens {
                let y = self.mul(x, g);
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Whether the index map `images` is a bijective homomorphism.
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        let m = self.size();
        if images.len() != m {
            return false;
        }
        let mut hit = vec![false; m];
        for &x in images {
            if x >= m || hit[x] {
                return false;
            }
            hit[x] = true;
        }
        (0..m).all(|a| (0..m).all(|b| images[self.mul(a, b)] == self.mul(images[a], images[b])))
    }
}
