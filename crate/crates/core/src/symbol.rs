//! Interned symbols.
//!
//! A [`Symbol`] is a name with an ordered, possibly empty list of parameter
//! symbols, rendered as `name` or `name[p1,...,pk]`. Parameters nest, so a
//! tuple of factor outputs is itself a symbol (`tuple[a,node[NULL,ready]]`).
//!
//! Symbols are interned into a process-wide table and never freed. Equality
//! and hashing are pointer operations.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct SymbolData {
    name: Box<str>,
    params: Box<[Symbol]>,
}

#[derive(Clone, Copy)]
pub struct Symbol(&'static SymbolData);

fn interner() -> &'static Mutex<HashSet<&'static SymbolData>> {
    static TABLE: OnceLock<Mutex<HashSet<&'static SymbolData>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

fn intern(data: SymbolData) -> Symbol {
    let mut table = interner().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(existing) = table.get(&data) {
        return Symbol(existing);
    }
    let leaked: &'static SymbolData = Box::leak(Box::new(data));
    table.insert(leaked);
    Symbol(leaked)
}

/// Characters that may not appear in a symbol name.
fn is_reserved(c: char) -> bool {
    c.is_whitespace() || matches!(c, '[' | ']' | ',')
}

pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(is_reserved)
}

impl Symbol {
    /// Interns a parameterless symbol.
    ///
    /// Panics if `name` is empty or contains whitespace, brackets or commas;
    /// use [`Symbol::parse`] for untrusted text.
    pub fn new(name: &str) -> Symbol {
        Symbol::with_params(name, Vec::new())
    }

    pub fn with_params(name: &str, params: impl Into<Vec<Symbol>>) -> Symbol {
        assert!(is_valid_name(name), "invalid symbol name {name:?}");
        intern(SymbolData {
            name: name.into(),
            params: params.into().into_boxed_slice(),
        })
    }

    pub fn int(value: i64) -> Symbol {
        Symbol::new(&value.to_string())
    }

    pub fn name(&self) -> &'static str {
        &self.0.name
    }

    pub fn params(&self) -> &'static [Symbol] {
        &self.0.params
    }

    pub fn param(&self, index: usize) -> Option<Symbol> {
        self.0.params.get(index).copied()
    }

    /// The name read as an integer, for numeric outputs such as counter residues.
    pub fn as_int(&self) -> Option<i64> {
        if self.0.params.is_empty() {
            self.0.name.parse().ok()
        } else {
            None
        }
    }

    pub fn parse(text: &str) -> Result<Symbol> {
        let mut parser = Parser {
            text,
            pos: 0,
        };
        parser.skip_ws();
        let sym = parser.symbol()?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(parser.error("trailing characters"));
        }
        Ok(sym)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::MalformedSymbol {
            text: self.text.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn symbol(&mut self) -> Result<Symbol> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if is_reserved(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        if start == self.pos {
            return Err(self.error("expected a symbol name"));
        }
        let name = &self.text[start..self.pos];
        let mut params = Vec::new();
        if self.peek() == Some('[') {
            self.pos += 1;
            self.skip_ws();
            if self.peek() == Some(']') {
                self.pos += 1;
            } else {
                loop {
                    self.skip_ws();
                    params.push(self.symbol()?);
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected `,` or `]`")),
                    }
                }
            }
        }
        Ok(Symbol::with_params(name, params))
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::ptr::hash(self.0, state)
    }
}

/// Structural order: by name, then parameters. Independent of interning order.
impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.name()
            .cmp(other.name())
            .then_with(|| self.params().cmp(other.params()))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        if !self.params().is_empty() {
            f.write_str("[")?;
            for (i, p) in self.params().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl std::str::FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Symbol::parse(s)
    }
}
