//! String functions `f: A* → X`.
//!
//! A [`StringFunction`] is evaluated incrementally through an opaque
//! [`FnState`]: start from [`StringFunction::initial`], feed symbols with
//! [`StringFunction::advance`], read [`StringFunction::output`]. The backing
//! mechanism is a finite table, a product of other string functions, an
//! output remapping of another function, or a [`Generator`] whose state space
//! may be infinite.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::machine::StateId;
use crate::product::{self, ProductDef};
use crate::{Alphabet, Machine, Symbol, Word};

/// A rule-defined transducer whose state is a natural number.
///
/// Used for functions such as word length that have no finite table.
/// `next` is only called with symbols of `alphabet()`.
pub trait Generator: Send + Sync {
    fn label(&self) -> String;
    fn alphabet(&self) -> &Alphabet;
    fn start(&self) -> u64;
    fn next(&self, state: u64, a: Symbol) -> u64;
    fn output(&self, state: u64) -> Symbol;
}

pub type SymbolMap = Arc<dyn Fn(Symbol) -> Symbol + Send + Sync>;

#[derive(Clone)]
pub struct StringFunction {
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Table(Arc<Machine>),
    Generator(Arc<dyn Generator>),
    Product(Arc<ProductDef>),
    Remap { inner: Box<StringFunction>, map: SymbolMap },
}

/// Evaluation state of a [`StringFunction`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FnState {
    Table(StateId),
    Generator(u64),
    /// Current states of the factors of a product.
    Product(Box<[FnState]>),
}

impl StringFunction {
    pub fn from_machine(m: Machine) -> StringFunction {
        StringFunction {
            repr: Repr::Table(Arc::new(m)),
        }
    }

    pub fn from_generator(g: impl Generator + 'static) -> StringFunction {
        StringFunction {
            repr: Repr::Generator(Arc::new(g)),
        }
    }

    pub fn from_product(p: ProductDef) -> StringFunction {
        StringFunction {
            repr: Repr::Product(Arc::new(p)),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match &self.repr {
            Repr::Table(m) => m.alphabet(),
            Repr::Generator(g) => g.alphabet(),
            Repr::Product(p) => p.alphabet(),
            Repr::Remap { inner, .. } => inner.alphabet(),
        }
    }

    pub fn describe(&self) -> String {
        match &self.repr {
            Repr::Table(m) => format!("table machine ({} states)", m.state_count()),
            Repr::Generator(g) => g.label(),
            Repr::Product(p) => format!("product of {} factors", p.factor_count()),
            Repr::Remap { inner, .. } => format!("remapped {}", inner.describe()),
        }
    }

    pub fn as_machine(&self) -> Option<&Machine> {
        match &self.repr {
            Repr::Table(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_product(&self) -> Option<&ProductDef> {
        match &self.repr {
            Repr::Product(p) => Some(p),
            _ => None,
        }
    }

    /// True when the function is backed entirely by finite tables.
    pub fn is_finite(&self) -> bool {
        match &self.repr {
            Repr::Table(_) => true,
            Repr::Generator(_) => false,
            Repr::Product(p) => p.factors().iter().all(StringFunction::is_finite),
            Repr::Remap { inner, .. } => inner.is_finite(),
        }
    }

    pub fn initial(&self) -> FnState {
        match &self.repr {
            Repr::Table(m) => FnState::Table(m.start()),
            Repr::Generator(g) => FnState::Generator(g.start()),
            Repr::Product(p) => FnState::Product(product::initial_config(p)),
            Repr::Remap { inner, .. } => inner.initial(),
        }
    }

    pub fn advance(&self, state: &mut FnState, a: Symbol) -> Result<()> {
        match (&self.repr, state) {
            (Repr::Table(m), FnState::Table(s)) => {
                *s = m.delta(*s, a)?;
                Ok(())
            }
            (Repr::Generator(g), FnState::Generator(s)) => {
                if !g.alphabet().contains(a) {
                    return Err(Error::UnknownSymbol {
                        symbol: a,
                        context: g.label(),
                    });
                }
                *s = g.next(*s, a);
                Ok(())
            }
            (Repr::Product(p), FnState::Product(config)) => {
                product::advance_config(p, config, a, None)
            }
            (Repr::Remap { inner, .. }, state) => inner.advance(state, a),
            (_, state) => panic!("state {state:?} does not belong to {}", self.describe()),
        }
    }

    pub fn advance_word(&self, state: &mut FnState, w: &[Symbol]) -> Result<()> {
        w.iter().try_for_each(|&a| self.advance(state, a))
    }

    pub fn output(&self, state: &FnState) -> Result<Symbol> {
        match (&self.repr, state) {
            (Repr::Table(m), FnState::Table(s)) => Ok(m.gamma(*s)),
            (Repr::Generator(g), FnState::Generator(s)) => Ok(g.output(*s)),
            (Repr::Product(p), FnState::Product(config)) => product::config_output(p, config),
            (Repr::Remap { inner, map }, state) => Ok(map(inner.output(state)?)),
            (_, state) => panic!("state {state:?} does not belong to {}", self.describe()),
        }
    }

    pub fn eval(&self, w: &[Symbol]) -> Result<Symbol> {
        let mut state = self.initial();
        self.advance_word(&mut state, w)?;
        self.output(&state)
    }

    /// The finite table this function denotes. Products are expanded to the
    /// full Cartesian state set; generators are rejected.
    pub fn to_machine(&self) -> Result<Machine> {
        match &self.repr {
            Repr::Table(m) => Ok((**m).clone()),
            Repr::Generator(g) => Err(Error::InfiniteFunction(g.label())),
            Repr::Product(p) => product::expand_product(p),
            Repr::Remap { inner, map } => Ok(inner.to_machine()?.map_outputs(|x| map(x))),
        }
    }

    /// Breadth-first exploration of the states reachable through
    /// [`advance`](Self::advance), numbered in discovery order. Works for any
    /// backing; fails with [`Error::BudgetExceeded`] past `limit` states,
    /// which is how an infinite generator surfaces here.
    pub fn reachable_machine(&self, limit: usize) -> Result<Machine> {
        let alphabet = self.alphabet().clone();
        let mut index: HashMap<FnState, StateId> = HashMap::new();
        let mut states = Vec::new();
        let mut queue = VecDeque::new();
        let start = self.initial();
        index.insert(start.clone(), 0);
        states.push(start.clone());
        queue.push_back(start);
        let mut delta = Vec::new();
        let mut gamma = Vec::new();
        while let Some(state) = queue.pop_front() {
            gamma.push(self.output(&state)?);
            for a in alphabet.iter() {
                let mut next = state.clone();
                self.advance(&mut next, a)?;
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        if id >= limit {
                            return Err(Error::BudgetExceeded {
                                budget: limit as u64,
                                checked: id as u64,
                                complete_len: None,
                            });
                        }
                        index.insert(next.clone(), id);
                        states.push(next.clone());
                        queue.push_back(next);
                        id
                    }
                };
                delta.push(id);
            }
        }
        Ok(Machine::from_flat(alphabet, 0, delta, gamma))
    }
}

/// `f'(w) = g(f(w))`: same state structure, outputs passed through `g`.
pub fn remap_output(
    f: &StringFunction,
    g: impl Fn(Symbol) -> Symbol + Send + Sync + 'static,
) -> StringFunction {
    StringFunction {
        repr: Repr::Remap {
            inner: Box::new(f.clone()),
            map: Arc::new(g),
        },
    }
}

/// Compares two functions over every word of length at most `max_len` in
/// length-lexicographic order. Returns the first disagreeing word, if any.
pub fn first_disagreement(
    f: &StringFunction,
    g: &StringFunction,
    max_len: usize,
) -> Result<Option<Word>> {
    if !f.alphabet().same_set(g.alphabet()) {
        return Err(Error::AlphabetMismatch(format!(
            "{} vs {}",
            f.alphabet(),
            g.alphabet()
        )));
    }
    let alphabet = f.alphabet().clone();
    let mut frontier = vec![(f.initial(), g.initial())];
    for len in 0..=max_len {
        for (i, (sf, sg)) in frontier.iter().enumerate() {
            if f.output(sf)? != g.output(sg)? {
                return Ok(Some(crate::product::word_at(&alphabet, len, i)));
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::with_capacity(frontier.len() * alphabet.len());
        for (sf, sg) in &frontier {
            for a in alphabet.iter() {
                let (mut nf, mut ng) = (sf.clone(), sg.clone());
                f.advance(&mut nf, a)?;
                g.advance(&mut ng, a)?;
                next.push((nf, ng));
            }
        }
        frontier = next;
    }
    Ok(None)
}

impl fmt::Debug for StringFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StringFunction({})", self.describe())
    }
}

impl From<Machine> for StringFunction {
    fn from(m: Machine) -> Self {
        StringFunction::from_machine(m)
    }
}

impl From<ProductDef> for StringFunction {
    fn from(p: ProductDef) -> Self {
        StringFunction::from_product(p)
    }
}
