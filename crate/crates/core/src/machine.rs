//! Table-backed Moore machines.

use std::fmt;

use crate::error::{Error, Result};
use crate::{Alphabet, StringFunction, Symbol, Word};

pub type StateId = usize;

/// A finite Moore machine `(A, X, S, start, δ, γ)` with dense state ids.
///
/// `delta` is stored row-major: the successor of state `s` on the `k`-th
/// alphabet symbol is `delta[s * |A| + k]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Machine {
    alphabet: Alphabet,
    outputs: Alphabet,
    start: StateId,
    delta: Vec<StateId>,
    gamma: Vec<Symbol>,
    names: Option<Vec<String>>,
}

impl Machine {
    /// Builds a machine from a transition table (`delta[s][k]` is the
    /// successor of `s` on `alphabet[k]`) and a per-state output. The output
    /// alphabet is the set of values `gamma` takes, in first-occurrence order.
    pub fn new(
        alphabet: Alphabet,
        start: StateId,
        delta: Vec<Vec<StateId>>,
        gamma: Vec<Symbol>,
    ) -> Result<Machine> {
        let k = alphabet.len();
        if delta.len() != gamma.len() {
            return Err(Error::MalformedMachine(format!(
                "{} transition rows but {} outputs",
                delta.len(),
                gamma.len()
            )));
        }
        if delta.is_empty() {
            return Err(Error::MalformedMachine("no states".into()));
        }
        let n = delta.len();
        if start >= n {
            return Err(Error::UnknownState { state: start, count: n });
        }
        let mut flat = Vec::with_capacity(n * k);
        for (s, row) in delta.iter().enumerate() {
            if row.len() != k {
                return Err(Error::MalformedMachine(format!(
                    "state {s} has {} transitions, alphabet has {k} symbols",
                    row.len()
                )));
            }
            for &t in row {
                if t >= n {
                    return Err(Error::UnknownState { state: t, count: n });
                }
            }
            flat.extend_from_slice(row);
        }
        let outputs = Alphabet::dedup(gamma.iter().copied());
        Ok(Machine {
            alphabet,
            outputs,
            start,
            delta: flat,
            gamma,
            names: None,
        })
    }

    /// Builds a machine from closures over `0..states`.
    pub fn from_fn(
        alphabet: Alphabet,
        states: usize,
        start: StateId,
        mut delta: impl FnMut(StateId, Symbol) -> StateId,
        mut gamma: impl FnMut(StateId) -> Symbol,
    ) -> Result<Machine> {
        let table = (0..states)
            .map(|s| alphabet.iter().map(|a| delta(s, a)).collect())
            .collect();
        let outputs = (0..states).map(&mut gamma).collect();
        Machine::new(alphabet, start, table, outputs)
    }

    pub(crate) fn from_flat(
        alphabet: Alphabet,
        start: StateId,
        delta: Vec<StateId>,
        gamma: Vec<Symbol>,
    ) -> Machine {
        debug_assert_eq!(delta.len(), gamma.len() * alphabet.len());
        let outputs = Alphabet::dedup(gamma.iter().copied());
        Machine {
            alphabet,
            outputs,
            start,
            delta,
            gamma,
            names: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Machine> {
        if names.len() != self.state_count() {
            return Err(Error::MalformedMachine(format!(
                "{} names for {} states",
                names.len(),
                self.state_count()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn state_count(&self) -> usize {
        self.gamma.len()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.gamma.len()
    }

    pub fn name(&self, s: StateId) -> String {
        match &self.names {
            Some(names) => names[s].clone(),
            None => s.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn gamma(&self, s: StateId) -> Symbol {
        self.gamma[s]
    }

    pub fn gammas(&self) -> &[Symbol] {
        &self.gamma
    }

    /// Successor by alphabet position. No bounds checks beyond slice indexing.
    #[inline]
    pub fn next_by_index(&self, s: StateId, letter: usize) -> StateId {
        self.delta[s * self.alphabet.len() + letter]
    }

    pub fn delta(&self, s: StateId, a: Symbol) -> Result<StateId> {
        self.check_state(s)?;
        let k = self.letter(a)?;
        Ok(self.next_by_index(s, k))
    }

    /// The extended transition function δ*: δ*(s, Λ) = s, δ*(s, wa) = δ(δ*(s, w), a).
    pub fn delta_star(&self, s: StateId, w: &[Symbol]) -> Result<StateId> {
        self.check_state(s)?;
        w.iter()
            .try_fold(s, |state, &a| Ok(self.next_by_index(state, self.letter(a)?)))
    }

    /// f_M(w) = γ(δ*(start, w)).
    pub fn eval(&self, w: &[Symbol]) -> Result<Symbol> {
        Ok(self.gamma(self.delta_star(self.start, w)?))
    }

    pub fn representing_function(&self) -> StringFunction {
        StringFunction::from_machine(self.clone())
    }

    pub fn letter(&self, a: Symbol) -> Result<usize> {
        self.alphabet.index_of(a).ok_or_else(|| Error::UnknownSymbol {
            symbol: a,
            context: "the machine".into(),
        })
    }

    fn check_state(&self, s: StateId) -> Result<()> {
        if s < self.state_count() {
            Ok(())
        } else {
            Err(Error::UnknownState {
                state: s,
                count: self.state_count(),
            })
        }
    }

    /// Same transition structure, outputs replaced by `g(γ(s))`.
    pub fn map_outputs(&self, mut g: impl FnMut(Symbol) -> Symbol) -> Machine {
        let gamma: Vec<Symbol> = self.gamma.iter().map(|&x| g(x)).collect();
        Machine {
            alphabet: self.alphabet.clone(),
            outputs: Alphabet::dedup(gamma.iter().copied()),
            start: self.start,
            delta: self.delta.clone(),
            gamma,
            names: self.names.clone(),
        }
    }

    /// Transition rows, one `Vec` per state.
    pub fn table(&self) -> Vec<Vec<StateId>> {
        let k = self.alphabet.len();
        if k == 0 {
            return vec![Vec::new(); self.state_count()];
        }
        self.delta.chunks(k).map(<[_]>::to_vec).collect()
    }
}

/// Free-standing form of [`Machine::delta_star`].
pub fn delta_star(m: &Machine, s: StateId, w: &Word) -> Result<StateId> {
    m.delta_star(s, w)
}

pub fn representing_function(m: &Machine) -> StringFunction {
    m.representing_function()
}

impl fmt::Debug for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Machine over {} start={}", self.alphabet, self.start)?;
        for s in self.states() {
            write!(f, "  {} / {} :", self.name(s), self.gamma(s))?;
            for (k, a) in self.alphabet.iter().enumerate() {
                write!(f, " {a}->{}", self.name(self.next_by_index(s, k)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
