//! Moore machines presented as string functions `f: A* → X`, and their
//! general products with feedback.
//!
//! The crate is organised around one idea: a Moore machine is fully
//! described by its representing function `f(w) = γ(δ*(start, w))`, and a
//! product of machines can be evaluated directly by simultaneous recursion on
//! the factors' input words instead of by building the product state set.
//!
//! * [`Machine`], [`StringFunction`]: finite tables and general string functions.
//! * [`product`]: general products, the recursion evaluator, explicit
//!   expansion, the cross-check between the two, cascade detection, binary
//!   encoding.
//! * [`minimize`]: reachable-state extraction, Moore partition refinement,
//!   equivalence.
//! * [`monoid`]: the transition monoid of a minimal machine.
//! * [`examples`]: storage cell, parallel stack, counters, ripple-carry
//!   cascade, broadcast network, length function.

pub mod alphabet;
pub mod error;
pub mod examples;
pub mod function;
pub mod machine;
pub mod minimize;
pub mod monoid;
pub mod product;
pub mod symbol;
pub mod word;

pub use alphabet::Alphabet;
pub use error::{Error, Result};
pub use examples::Definition;
pub use function::{first_disagreement, remap_output, FnState, Generator, StringFunction};
pub use machine::{delta_star, representing_function, Machine, StateId};
pub use minimize::{equivalent, minimize, reachable, Bound, Equivalence, MinimizedMachine};
pub use monoid::{classify, congruent, transition_monoid, Classification, MonoidTable};
pub use product::{
    binary_encode, check_theorem1, expand_product, is_cascade, recursion_eval, step, CascadeReport, ConnectionMap,
    OutputMap, ProductDef, RecursionState, TheoremReport,
};
pub use symbol::Symbol;
pub use word::{words_of_length, words_up_to, Word};
