use thiserror::Error;

use crate::Symbol;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol `{symbol}` is not in the alphabet of {context}")]
    UnknownSymbol { symbol: Symbol, context: String },

    #[error("state {state} does not exist (machine has {count} states)")]
    UnknownState { state: usize, count: usize },

    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(Symbol),

    #[error("malformed symbol `{text}`: {reason}")]
    MalformedSymbol { text: String, reason: String },

    #[error("malformed machine: {0}")]
    MalformedMachine(String),

    #[error("{0} is infinite-state; this operation needs a finite table")]
    InfiniteFunction(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("connection map emitted `{symbol}` for factor {factor}, which is outside its alphabet")]
    ForeignEmission { factor: usize, symbol: Symbol },

    #[error("factor index {index} out of range (product has {count} factors)")]
    FactorIndex { index: usize, count: usize },

    #[error("output map is undefined on {0}")]
    OutputUndefined(String),

    #[error("connection map is opaque; dependency analysis needs rule-based wiring")]
    OpaqueMap,

    #[error("budget of {budget} exceeded after checking {checked} words (complete through length {complete_len:?})")]
    BudgetExceeded {
        budget: u64,
        checked: u64,
        complete_len: Option<usize>,
    },

    #[error("product expansion needs {needed} states, above the limit of {limit}")]
    ExpansionTooLarge { needed: u128, limit: u128 },

    #[error("monoid exceeds the cap of {cap} elements")]
    MonoidTooLarge { cap: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("node {node} produced malformed output `{output}` (expected node[message,ready|busy])")]
    MalformedNodeOutput { node: usize, output: Symbol },

    #[error("emission refers to unbound parameter `?{0}`")]
    UnboundParameter(String),
}
