use crate::error::Result;
use crate::{Alphabet, Machine, Symbol};

pub const EMPTY: &str = "EMPTY";

pub fn empty() -> Symbol {
    Symbol::new(EMPTY)
}

/// The storage cell `S(Λ) = EMPTY`, `S(za) = a`.
///
/// One state per letter of `alphabet`, plus an initial `EMPTY` state when
/// `EMPTY` is not itself a letter.
pub fn make_cell(alphabet: &Alphabet) -> Result<Machine> {
    let k = alphabet.len();
    let (states, start) = match alphabet.index_of(empty()) {
        Some(i) => (k, i),
        None => (k + 1, k),
    };
    Machine::from_fn(
        alphabet.clone(),
        states,
        start,
        |_, a| alphabet.index_of(a).expect("letter of the alphabet"),
        |s| alphabet.get(s).unwrap_or_else(empty),
    )
    .and_then(|m| {
        let names = m.gammas().iter().map(Symbol::to_string).collect();
        m.with_names(names)
    })
}
