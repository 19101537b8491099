use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Which half of the two-sorted algebra a symbol lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Scalar,
    Vector,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Scalar => f.write_str("scalar"),
            Sort::Vector => f.write_str("vector"),
        }
    }
}

/// A declared symbol. Ordered by declaration index, which is what makes the
/// canonical order of atoms and dot-words depend on the order a session
/// declares its symbols in.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    index: u32,
    name: Arc<str>,
}

impl Var {
    pub fn new(index: u32, name: &str) -> Self {
        Var {
            index,
            name: Arc::from(name),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn index(&self) -> u32 {
        self.index
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Declaration table mapping identifiers to sorted symbols.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    entries: Vec<(Var, Sort)>,
    by_name: HashMap<Arc<str>, usize>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `scalars` then `vectors`, in that order.
    pub fn with(scalars: &[&str], vectors: &[&str]) -> Result<Self> {
        let mut table = SymbolTable::new();
        for s in scalars {
            table.declare(s, Sort::Scalar)?;
        }
        for v in vectors {
            table.declare(v, Sort::Vector)?;
        }
        Ok(table)
    }

    /// Declares `name`. Re-declaring with the same sort is a no-op.
    pub fn declare(&mut self, name: &str, sort: Sort) -> Result<Var> {
        if let Some(&i) = self.by_name.get(name) {
            let (var, existing) = &self.entries[i];
            if *existing != sort {
                return Err(Error::Redeclared {
                    name: name.to_string(),
                    existing: existing.to_string(),
                });
            }
            return Ok(var.clone());
        }
        let var = Var::new(self.entries.len() as u32, name);
        self.by_name.insert(var.name.clone(), self.entries.len());
        self.entries.push((var.clone(), sort));
        Ok(var)
    }

    pub fn get(&self, name: &str) -> Option<(&Var, Sort)> {
        self.by_name.get(name).map(|&i| {
            let (v, s) = &self.entries[i];
            (v, *s)
        })
    }

    pub fn vector(&self, name: &str) -> Option<&Var> {
        match self.get(name) {
            Some((v, Sort::Vector)) => Some(v),
            _ => None,
        }
    }

    pub fn scalar(&self, name: &str) -> Option<&Var> {
        match self.get(name) {
            Some((v, Sort::Scalar)) => Some(v),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, Sort)> {
        self.entries.iter().map(|(v, s)| (v, *s))
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Var> {
        self.iter().filter(|(_, s)| *s == Sort::Vector).map(|(v, _)| v)
    }

    pub fn scalars(&self) -> impl Iterator<Item = &Var> {
        self.iter().filter(|(_, s)| *s == Sort::Scalar).map(|(v, _)| v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
