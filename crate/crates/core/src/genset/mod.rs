//! Symmetric generating sets over a formal alphabet.

mod generation;
mod quotient;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{parse_element, Element, Group};

pub use generation::{generates, generates_with_witnesses, Certificate, Generation, NonGeneration};
pub use quotient::{project_genset, QuotientMap, QuotientRule, Side};

/// A word written as syllables `(letter id, exponent)`.
pub type SyllableWord = Vec<(usize, i64)>;

/// Symmetric generating set: letters with an involution pairing each letter
/// with the letter of its inverse. Involutions are their own formal inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSet {
    letters: Vec<Element>,
    inverse: Vec<usize>,
    index: HashMap<Element, usize>,
}

impl GenSet {
    /// Adds every element and its inverse, drops the identity and merges duplicates.
    /// Letter order is first occurrence: `g1, g1^{-1}, g2, g2^{-1}, ...`.
    pub fn make_symmetric(group: &Group, elements: &[Element]) -> Result<GenSet> {
        let mut s = GenSet {
            letters: Vec::new(),
            inverse: Vec::new(),
            index: HashMap::new(),
        };
        for g in elements {
            group.check(g)?;
            if group.is_identity(g) || s.index.contains_key(g) {
                continue;
            }
            let gi = group.inv(g)?;
            let id = s.letters.len();
            s.index.insert(g.clone(), id);
            s.letters.push(g.clone());
            if gi == *g {
                s.inverse.push(id);
            } else {
                s.index.insert(gi.clone(), id + 1);
                s.letters.push(gi);
                s.inverse.push(id + 1);
                s.inverse.push(id);
            }
        }
        if s.letters.is_empty() {
            return Err(Error::EmptyGenSet);
        }
        Ok(s)
    }

    /// Standard generators of the family, symmetrized.
    pub fn standard(group: &Group) -> Result<GenSet> {
        GenSet::make_symmetric(group, &group.standard_generators())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of distinct group elements among the letters (so `{±1}` in `Z` has 2).
    pub fn cardinality(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Element] {
        &self.letters
    }

    pub fn letter(&self, id: usize) -> &Element {
        &self.letters[id]
    }

    pub fn inverse_of(&self, id: usize) -> usize {
        self.inverse[id]
    }

    pub fn is_involution(&self, id: usize) -> bool {
        self.inverse[id] == id
    }

    pub fn position(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Whether all letters are elements of `group`.
    pub fn belongs_to(&self, group: &Group) -> bool {
        self.letters.iter().all(|g| group.contains(g))
    }

    pub fn check_symbol(&self, id: usize) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "unknown symbol id {id} (alphabet has {})",
                self.len()
            )))
        }
    }

    /// Value of a word of letter ids.
    pub fn evaluate(&self, group: &Group, word: &[usize]) -> Result<Element> {
        let mut acc = group.identity();
        for &id in word {
            self.check_symbol(id)?;
            acc = group.mul(&acc, &self.letters[id])?;
        }
        Ok(acc)
    }

    pub fn evaluate_syllables(&self, group: &Group, word: &[(usize, i64)]) -> Result<Element> {
        let mut acc = group.identity();
        for &(id, e) in word {
            self.check_symbol(id)?;
            acc = group.mul(&acc, &group.power(&self.letters[id], e)?)?;
        }
        Ok(acc)
    }

    /// Image of the generating set under `f`, symmetrized in `target`.
    pub fn map(&self, target: &Group, f: impl Fn(&Element) -> Result<Element>) -> Result<GenSet> {
        let images = self.letters.iter().map(f).collect::<Result<Vec<_>>>()?;
        GenSet::make_symmetric(target, &images)
    }

    pub fn format(&self, group: &Group) -> String {
        let items: Vec<String> = self.letters.iter().map(|g| group.format_element(g)).collect();
        format!("[{}]", items.join(","))
    }

    pub fn to_json(&self, group: &Group) -> Result<String> {
        let file = GenSetFile {
            group: group.clone(),
            elements: self.letters.iter().map(|g| group.format_element(g)).collect(),
        };
        Ok(serde_json::to_string_pretty(&file)? + "\n")
    }

    /// Reads `{"group": <descriptor>, "elements": [...]}`; symmetrization is applied on load.
    pub fn from_json(text: &str) -> Result<(Group, GenSet)> {
        let file: GenSetFile = serde_json::from_str(text)?;
        file.group.validate()?;
        let elements = file
            .elements
            .iter()
            .map(|t| parse_element(&file.group, t))
            .collect::<Result<Vec<_>>>()?;
        let s = GenSet::make_symmetric(&file.group, &elements)?;
        Ok((file.group, s))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GenSetFile {
    group: Group,
    elements: Vec<String>,
}

/// Inverse of a syllable word.
pub fn invert_syllables(word: &[(usize, i64)]) -> SyllableWord {
    word.iter().rev().map(|&(id, e)| (id, -e)).collect()
}
