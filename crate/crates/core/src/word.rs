use std::fmt;
use std::ops::Deref;

use crate::error::Result;
use crate::Symbol;

/// A finite string of symbols. The empty word is Λ.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(symbol: Symbol) -> Word {
        Word(vec![symbol])
    }

    /// Parses whitespace-separated rendered symbols. Empty text and `Λ` both
    /// denote the empty word.
    pub fn parse(text: &str) -> Result<Word> {
        let mut symbols = Vec::new();
        let mut depth = 0usize;
        let mut start = None;
        for (i, c) in text.char_indices() {
            match c {
                '[' => depth += 1,
                ']' => depth = depth.saturating_sub(1),
                _ => {}
            }
            if c.is_whitespace() && depth == 0 {
                if let Some(s) = start.take() {
                    symbols.push(&text[s..i]);
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            symbols.push(&text[s..]);
        }
        if symbols == ["Λ"] {
            return Ok(Word::empty());
        }
        symbols
            .into_iter()
            .map(Symbol::parse)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn push(&mut self, symbol: Symbol) {
        self.0.push(symbol);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn appended(&self, symbol: Symbol) -> Word {
        let mut out = self.clone();
        out.push(symbol);
        out
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Space-separated symbols; the empty word prints as `Λ`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Λ");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Every word over `alphabet` of length `len`, in lexicographic order of
/// symbol positions in the alphabet.
pub fn words_of_length(alphabet: &[Symbol], len: usize) -> impl Iterator<Item = Word> + '_ {
    let k = alphabet.len();
    let total = if len == 0 {
        Some(1u64)
    } else if k == 0 {
        Some(0)
    } else {
        (k as u64).checked_pow(len as u32)
    };
    let total = total.expect("word space too large to enumerate");
    (0..total).map(move |mut code| {
        let mut out = vec![alphabet.first().copied().unwrap_or_else(|| Symbol::new("_")); len];
        for slot in out.iter_mut().rev() {
            *slot = alphabet[(code % k as u64) as usize];
            code /= k as u64;
        }
        Word(out)
    })
}

/// Every word of length at most `max_len`, in length-lexicographic order.
pub fn words_up_to(alphabet: &[Symbol], max_len: usize) -> impl Iterator<Item = Word> + '_ {
    (0..=max_len).flat_map(move |len| words_of_length(alphabet, len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    #[test]
    fn parse_handles_params_and_lambda() {
        let w = Word::parse("PUSH[a]  POP\tPUSH[ b ]").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w[2], Symbol::parse("PUSH[b]").unwrap());
        assert!(Word::parse("").unwrap().is_empty());
        assert!(Word::parse(" Λ ").unwrap().is_empty());
        assert_eq!(Word::empty().to_string(), "Λ");
    }

    #[test]
    fn length_lex_enumeration() {
        let alpha = [sym("a"), sym("b")];
        let all: Vec<String> = words_up_to(&alpha, 2).map(|w| w.to_string()).collect();
        assert_eq!(all, ["Λ", "a", "b", "a a", "a b", "b a", "b b"]);
        assert_eq!(words_up_to(&alpha, 8).count(), (1 << 9) - 1);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::sample::select(vec!["a", "b", "c"]), 0..8)
            .prop_map(|v| v.into_iter().map(Symbol::new).collect())
    }

    proptest! {
        #[test]
        fn concat_identity_and_length(w in arb_word(), z in arb_word()) {
            prop_assert_eq!(w.concat(&Word::empty()), w.clone());
            prop_assert_eq!(Word::empty().concat(&w), w.clone());
            prop_assert_eq!(w.concat(&z).len(), w.len() + z.len());
        }

        #[test]
        fn display_parse_round_trip(w in arb_word()) {
            prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
        }
    }
}
