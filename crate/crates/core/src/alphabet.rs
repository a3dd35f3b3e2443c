use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::Symbol;

/// A finite ordered set of symbols. Iteration follows declaration order.
#[derive(Clone, Default)]
pub struct Alphabet {
    symbols: Arc<[Symbol]>,
    index: Arc<HashMap<Symbol, usize>>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Alphabet> {
        let symbols: Vec<Symbol> = symbols.into_iter().collect();
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &s) in symbols.iter().enumerate() {
            if index.insert(s, i).is_some() {
                return Err(Error::DuplicateSymbol(s));
            }
        }
        Ok(Alphabet {
            symbols: symbols.into(),
            index: Arc::new(index),
        })
    }

    /// Builds an alphabet from symbols in first-occurrence order, dropping repeats.
    pub fn dedup(symbols: impl IntoIterator<Item = Symbol>) -> Alphabet {
        let mut seen = Vec::new();
        let mut index = HashMap::new();
        for s in symbols {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(s) {
                e.insert(seen.len());
                seen.push(s);
            }
        }
        Alphabet {
            symbols: seen.into(),
            index: Arc::new(index),
        }
    }

    /// Parses whitespace-separated rendered symbols.
    pub fn parse(text: &str) -> Result<Alphabet> {
        Alphabet::new(crate::Word::parse(text)?.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.iter().copied()
    }

    pub fn get(&self, index: usize) -> Option<Symbol> {
        self.symbols.get(index).copied()
    }

    pub fn index_of(&self, symbol: Symbol) -> Option<usize> {
        self.index.get(&symbol).copied()
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        self.index.contains_key(&symbol)
    }

    /// Same symbols, in any order.
    pub fn same_set(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.iter().all(|s| other.contains(s))
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.symbols.iter()).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}
