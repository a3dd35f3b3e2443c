use crate::function::Generator;
use crate::{Alphabet, StringFunction, Symbol};

/// `L(Λ) = 0`, `L(wa) = L(w) + 1`. No finite table exists.
struct Length {
    alphabet: Alphabet,
}

impl Generator for Length {
    fn label(&self) -> String {
        "length function L".into()
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn start(&self) -> u64 {
        0
    }

    fn next(&self, state: u64, _: Symbol) -> u64 {
        state + 1
    }

    fn output(&self, state: u64) -> Symbol {
        Symbol::int(state as i64)
    }
}

pub fn make_length(alphabet: &Alphabet) -> StringFunction {
    StringFunction::from_generator(Length {
        alphabet: alphabet.clone(),
    })
}
