//! General products of automata with feedback.
//!
//! A [`ProductDef`] combines factor string functions `f_1..f_n` with a
//! connection map `g` and an output map `h`. On composite input `a` after
//! word `w`, factor `i` consumes the word `g(i, a, x⃗)` where `x⃗` is the
//! vector of factor outputs *before* the step, and the composite output is
//! `h(x⃗)`. The product can be evaluated two ways:
//!
//! * by simultaneous recursion ([`recursion_eval`], [`RecursionState`]),
//!   carrying only the current factor states;
//! * by building the explicit product machine ([`expand_product`]) over the
//!   Cartesian product of factor states.
//!
//! [`check_theorem1`] compares the two exhaustively.

mod encode;
mod eval;
mod expand;
pub mod rules;
mod theorem;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use encode::{binary_encode, bit_register, bits_needed};
pub use eval::{recursion_eval, step, RecursionState};
pub use expand::{expand_product, expand_product_with_limit, DEFAULT_EXPANSION_LIMIT};
pub use rules::RuleSet;
pub use theorem::{check_theorem1, check_theorem1_with_budget, Divergence, TheoremReport, DEFAULT_WORD_BUDGET};

pub(crate) use eval::{advance_config, config_output, initial_config};

use crate::error::{Error, Result};
use crate::{Alphabet, StringFunction, Symbol, Word};

pub type ConnectionFn = dyn Fn(usize, Symbol, &[Symbol]) -> Result<Word> + Send + Sync;
pub type OutputFn = dyn Fn(&[Symbol]) -> Result<Symbol> + Send + Sync;

/// The connection map `g(i, a, x⃗)`.
#[derive(Clone)]
pub enum ConnectionMap {
    /// Inspectable and serializable.
    Rules(RuleSet),
    /// Arbitrary code. Cannot be analysed by [`is_cascade`].
    Opaque(Arc<ConnectionFn>),
}

impl ConnectionMap {
    pub fn opaque(g: impl Fn(usize, Symbol, &[Symbol]) -> Result<Word> + Send + Sync + 'static) -> Self {
        ConnectionMap::Opaque(Arc::new(g))
    }

    pub fn rules(&self) -> Option<&RuleSet> {
        match self {
            ConnectionMap::Rules(r) => Some(r),
            ConnectionMap::Opaque(_) => None,
        }
    }
}

impl fmt::Debug for ConnectionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectionMap::Rules(r) => write!(f, "Rules({} rules)", r.rules().len()),
            ConnectionMap::Opaque(_) => f.write_str("Opaque"),
        }
    }
}

/// Finite lookup from factor-output vectors to a composite output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LookupTable {
    entries: Vec<(Vec<Symbol>, Symbol)>,
    index: HashMap<Vec<Symbol>, usize>,
    default: Option<Symbol>,
}

impl LookupTable {
    pub fn new(entries: Vec<(Vec<Symbol>, Symbol)>, default: Option<Symbol>) -> Result<LookupTable> {
        let mut index = HashMap::new();
        for (i, (key, _)) in entries.iter().enumerate() {
            if index.insert(key.clone(), i).is_some() {
                return Err(Error::BadParameter(format!(
                    "duplicate lookup key {}",
                    Word::from(key.clone())
                )));
            }
        }
        Ok(LookupTable {
            entries,
            index,
            default,
        })
    }

    pub fn entries(&self) -> &[(Vec<Symbol>, Symbol)] {
        &self.entries
    }

    pub fn default(&self) -> Option<Symbol> {
        self.default
    }

    pub fn get(&self, key: &[Symbol]) -> Option<Symbol> {
        self.index
            .get(key)
            .map(|&i| self.entries[i].1)
            .or(self.default)
    }
}

/// The output map `h(x⃗)`.
#[derive(Clone)]
pub enum OutputMap {
    /// `tuple[x1,...,xn]`.
    Tuple,
    /// `x_i` (1-based).
    Project(usize),
    /// `Σ x_i · base^(i-1)` over numeric outputs.
    WeightedSum { base: i64 },
    Lookup(LookupTable),
    Opaque(Arc<OutputFn>),
}

pub const TUPLE: &str = "tuple";

impl OutputMap {
    pub fn opaque(h: impl Fn(&[Symbol]) -> Result<Symbol> + Send + Sync + 'static) -> Self {
        OutputMap::Opaque(Arc::new(h))
    }

    pub fn apply(&self, outputs: &[Symbol]) -> Result<Symbol> {
        match self {
            OutputMap::Tuple => Ok(Symbol::with_params(TUPLE, outputs.to_vec())),
            OutputMap::Project(i) => outputs.get(i.wrapping_sub(1)).copied().ok_or(Error::FactorIndex {
                index: *i,
                count: outputs.len(),
            }),
            OutputMap::WeightedSum { base } => {
                let mut total: i64 = 0;
                let mut weight: i64 = 1;
                for x in outputs {
                    let v = x
                        .as_int()
                        .ok_or_else(|| Error::OutputUndefined(format!("non-numeric output `{x}`")))?;
                    total += v * weight;
                    weight *= base;
                }
                Ok(Symbol::int(total))
            }
            OutputMap::Lookup(t) => t
                .get(outputs)
                .ok_or_else(|| Error::OutputUndefined(Word::from(outputs.to_vec()).to_string())),
            OutputMap::Opaque(h) => h(outputs),
        }
    }
}

impl fmt::Debug for OutputMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputMap::Tuple => f.write_str("Tuple"),
            OutputMap::Project(i) => write!(f, "Project({i})"),
            OutputMap::WeightedSum { base } => write!(f, "WeightedSum({base})"),
            OutputMap::Lookup(t) => write!(f, "Lookup({} entries)", t.entries().len()),
            OutputMap::Opaque(_) => f.write_str("Opaque"),
        }
    }
}

/// `𝒜ⁿᵢ₌₁[M_i, g, h]`: factors, composite alphabet, connection and output maps.
#[derive(Clone, Debug)]
pub struct ProductDef {
    factors: Vec<StringFunction>,
    alphabet: Alphabet,
    g: ConnectionMap,
    h: OutputMap,
}

impl ProductDef {
    /// Validates rule-based wiring: every rule's factor references resolve
    /// for each factor it covers, literal emissions lie in the fed factor's
    /// alphabet, and emitted parameters are bound by the input pattern.
    pub fn new(
        factors: Vec<StringFunction>,
        alphabet: Alphabet,
        g: ConnectionMap,
        h: OutputMap,
    ) -> Result<ProductDef> {
        let n = factors.len();
        if let ConnectionMap::Rules(rules) = &g {
            for rule in rules.rules() {
                if let Some(name) = rule.unbound_params().first() {
                    return Err(Error::UnboundParameter(name.to_string()));
                }
                // An explicit bound past the last factor is a wiring error;
                // an empty range (such as `2..1` at depth one) is not.
                if let Some(to) = rule.factor.to {
                    if to >= rule.factor.from && to > n {
                        return Err(Error::FactorIndex { index: to, count: n });
                    }
                }
                for i in rule.factor.indices(n) {
                    rule.references(i, n)?;
                    for item in &rule.emit {
                        if let rules::EmitItem::Lit(s) = item {
                            if !factors[i - 1].alphabet().contains(*s) {
                                return Err(Error::ForeignEmission { factor: i, symbol: *s });
                            }
                        }
                    }
                }
            }
        }
        if let OutputMap::Project(i) = h {
            if i == 0 || i > n {
                return Err(Error::FactorIndex { index: i, count: n });
            }
        }
        Ok(ProductDef {
            factors,
            alphabet,
            g,
            h,
        })
    }

    pub fn factors(&self) -> &[StringFunction] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// 1-based.
    pub fn factor(&self, i: usize) -> Option<&StringFunction> {
        i.checked_sub(1).and_then(|k| self.factors.get(k))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn connection(&self) -> &ConnectionMap {
        &self.g
    }

    pub fn output_map(&self) -> &OutputMap {
        &self.h
    }

    pub fn with_output_map(&self, h: OutputMap) -> Result<ProductDef> {
        ProductDef::new(self.factors.clone(), self.alphabet.clone(), self.g.clone(), h)
    }

    /// `g(i, a, x⃗)`, checked against factor `i`'s alphabet.
    pub fn connect(&self, i: usize, a: Symbol, feedback: &[Symbol]) -> Result<Word> {
        let w = match &self.g {
            ConnectionMap::Rules(r) => r.emit(i, a, feedback)?,
            ConnectionMap::Opaque(g) => g(i, a, feedback)?,
        };
        let alphabet = self.factors[i - 1].alphabet();
        if let Some(&bad) = w.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(Error::ForeignEmission { factor: i, symbol: bad });
        }
        Ok(w)
    }

    pub fn into_function(self) -> StringFunction {
        StringFunction::from_product(self)
    }
}

/// Result of [`is_cascade`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeReport {
    pub is_cascade: bool,
    /// `(i, j)`: factor `i`'s input depends on the output of factor `j ≥ i`.
    pub offenders: Vec<(usize, usize)>,
}

/// Whether information flows only from lower to higher factor indices:
/// every rule feeding factor `i` reads only outputs of factors `j < i`.
pub fn is_cascade(p: &ProductDef) -> Result<CascadeReport> {
    let rules = p.g.rules().ok_or(Error::OpaqueMap)?;
    let n = p.factor_count();
    let mut offenders = Vec::new();
    for i in 1..=n {
        for j in rules.dependencies(i, n)? {
            if j >= i {
                offenders.push((i, j));
            }
        }
    }
    Ok(CascadeReport {
        is_cascade: offenders.is_empty(),
        offenders,
    })
}

/// The `index`-th word of length `len` in lexicographic order over `alphabet`.
pub(crate) fn word_at(alphabet: &Alphabet, len: usize, mut index: usize) -> Word {
    let k = alphabet.len().max(1);
    let mut out = vec![None; len];
    for slot in out.iter_mut().rev() {
        *slot = alphabet.get(index % k);
        index /= k;
    }
    out.into_iter().flatten().collect()
}
