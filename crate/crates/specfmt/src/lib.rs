//! JSON spec files describing alphabets, machines, rule-wired products and
//! run directives, so that compositions are data rather than code.
//!
//! ```json
//! {
//!   "specfmt_version": 1,
//!   "machines": {
//!     "t2": {"builtin": "counter", "params": {"n": "2"}}
//!   },
//!   "products": {
//!     "g2": {
//!       "alphabet": ["tick"],
//!       "factors": ["t2", "t2"],
//!       "rules": [
//!         {"factor": "1", "input": "*", "emit": ["$a"]},
//!         {"factor": "2", "input": "*", "when": ["out(1) == 0"], "emit": []},
//!         {"factor": "2", "input": "*", "emit": ["$a"]}
//!       ],
//!       "output": {"weighted_sum": 2}
//!     }
//!   }
//! }
//! ```
//!
//! [`parse`] reads and validates a document, [`render`] writes its canonical
//! text, and [`compile`] instantiates every definition.

mod canonical;
mod compile;
mod document;
mod error;
pub mod fixtures;

pub use compile::{compile, Compiled};
pub use document::{
    AlphabetRef, LookupEntry, LookupSpec, MachineSpec, OutputSpec, ProductSpec, RuleSpec, RunDirective, SpecDocument,
    Symbols, SPECFMT_VERSION,
};
pub use error::{SpecError, SpecErrors};

use rmoore::{Symbol, Word};

/// Reads a document and checks it: names resolve, there are no cycles,
/// every definition instantiates, and rule emissions fit their factors.
/// Blank text is the empty document.
pub fn parse(text: &str) -> Result<SpecDocument, SpecErrors> {
    let doc = read(text)?;
    compile(&doc)?;
    Ok(doc)
}

/// Deserializes without the semantic checks.
pub fn read(text: &str) -> Result<SpecDocument, SpecErrors> {
    if text.trim().is_empty() {
        return Ok(SpecDocument::default());
    }
    let value: serde_json::Value = serde_json::from_str(text).map_err(SpecError::from)?;
    match value.get("specfmt_version") {
        Some(v) if v.as_u64() == Some(SPECFMT_VERSION) => {}
        Some(v) => return Err(SpecError::Version(v.as_u64().unwrap_or(0)).into()),
        None => {
            return Err(SpecError::invalid("document", "missing required field `specfmt_version`").into());
        }
    }
    // deserialize from the text again so data errors keep their positions
    Ok(serde_json::from_str(text).map_err(SpecError::from)?)
}

/// Canonical text: fixed key order, two-space indentation, trailing newline.
pub fn render(doc: &SpecDocument) -> String {
    let value = serde_json::to_value(doc).expect("documents always serialize");
    canonical::to_text(&value)
}

/// Parses and compiles in one step.
pub fn load(text: &str) -> Result<(SpecDocument, Compiled), SpecErrors> {
    let doc = read(text)?;
    let compiled = compile(&doc)?;
    Ok((doc, compiled))
}

/// The outcome of one run directive.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub target: String,
    pub word: Word,
    pub output: Result<Symbol, rmoore::Error>,
    pub expect: Option<Symbol>,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        match (&self.output, self.expect) {
            (Ok(got), Some(want)) => *got == want,
            (Ok(_), None) => true,
            (Err(_), _) => false,
        }
    }
}

/// Evaluates every run directive against the compiled definitions.
pub fn run_directives(doc: &SpecDocument, compiled: &Compiled) -> Vec<RunOutcome> {
    doc.runs
        .iter()
        .map(|run| RunOutcome {
            target: run.target.clone(),
            word: run.word.clone(),
            output: compiled
                .get(&run.target)
                .ok_or_else(|| rmoore::Error::BadParameter(format!("no definition `{}`", run.target)))
                .and_then(|d| d.to_function().eval(&run.word)),
            expect: run.expect,
        })
        .collect()
}
