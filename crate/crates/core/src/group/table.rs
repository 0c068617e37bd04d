use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by an explicit multiplication table on `0..m`.
///
/// Index 0 is the identity. The table is validated eagerly on construction:
/// closure, identity, two-sided inverses and associativity (an `O(m^3)` check).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct CayleyTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl TryFrom<TableRepr> for CayleyTable {
    type Error = Error;

    fn try_from(repr: TableRepr) -> Result<Self> {
        CayleyTable::new(repr.elements, repr.table)
    }
}

impl From<CayleyTable> for TableRepr {
    fn from(t: CayleyTable) -> Self {
        TableRepr {
            elements: t.names,
            table: t.table,
        }
    }
}

impl CayleyTable {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if names.len() != m {
            return Err(Error::InvalidGroup(format!(
                "{} element names for a table of size {m}",
                names.len()
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= m) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {i} is out of range")));
            }
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::InvalidGroup(format!("duplicate element name {name:?}")));
            }
        }
        for (x, row) in table.iter().enumerate() {
            if table[0][x] != x || row[0] != x {
                return Err(Error::InvalidGroup(format!(
                    "index 0 is not a two-sided identity at {x}"
                )));
            }
        }
        let mut inverse = Vec::with_capacity(m);
        for (x, row) in table.iter().enumerate() {
            match row.iter().position(|&z| z == 0) {
                Some(y) if table[y][x] == 0 => inverse.push(y),
                _ => return Err(Error::InvalidGroup(format!("element {x} has no two-sided inverse"))),
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = table[a][b];
                for c in 0..m {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(CayleyTable { names, table, inverse })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Table of the cyclic group of order `m`; handy for tests.
    pub fn cyclic(m: usize) -> Result<Self> {
        let names = (0..m).map(|i| format!("g{i}")).collect();
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        Self::new(names, table)
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}
