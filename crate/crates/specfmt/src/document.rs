//! The document model. Every symbol, word and rule fragment is stored parsed;
//! on the wire they are strings in their rendered form.

use std::collections::BTreeMap;

use rmoore::product::rules::{EmitItem, FactorPattern, Guard, InputPattern};
use rmoore::{Symbol, Word};
use serde::{Deserialize, Serialize};

pub const SPECFMT_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub specfmt_version: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub alphabets: BTreeMap<String, Symbols>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub machines: BTreeMap<String, MachineSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub products: BTreeMap<String, ProductSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<RunDirective>,
}

impl Default for SpecDocument {
    fn default() -> Self {
        SpecDocument {
            specfmt_version: SPECFMT_VERSION,
            alphabets: BTreeMap::new(),
            machines: BTreeMap::new(),
            products: BTreeMap::new(),
            runs: Vec::new(),
        }
    }
}

/// A list of symbols, written as a JSON array of strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Symbols(pub Vec<Symbol>);

impl TryFrom<Vec<String>> for Symbols {
    type Error = rmoore::Error;

    fn try_from(texts: Vec<String>) -> Result<Self, Self::Error> {
        texts.iter().map(|t| Symbol::parse(t)).collect::<Result<_, _>>().map(Symbols)
    }
}

impl From<Symbols> for Vec<String> {
    fn from(s: Symbols) -> Self {
        s.0.iter().map(Symbol::to_string).collect()
    }
}

/// An alphabet given by name or written out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphabetRef {
    Named(String),
    Inline(Symbols),
}

/// A machine: either an explicit table or a registered example.
///
/// Table form: `delta[s][k]` is the successor of state `s` on the `k`-th
/// letter, `outputs[s]` is `γ(s)`, and `states` optionally names the states.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<AlphabetRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Symbols>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub alphabet: AlphabetRef,
    /// Names of machines or products, in factor order.
    pub factors: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rules: Vec<RuleSpec>,
    #[serde(default)]
    pub output: OutputSpec,
    /// A definition this product is expected to behave like.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
}

/// One connection rule. On the wire:
/// `{"factor": "2..3", "input": "PUSH[?v]", "when": ["out(1) == 0"], "emit": ["out(i-1)"]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RuleWire", into = "RuleWire")]
pub struct RuleSpec {
    pub factor: FactorPattern,
    pub input: InputPattern,
    pub when: Vec<Guard>,
    pub emit: Vec<EmitItem>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleWire {
    factor: String,
    input: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    when: Vec<String>,
    emit: Vec<String>,
}

impl TryFrom<RuleWire> for RuleSpec {
    type Error = rmoore::Error;

    fn try_from(w: RuleWire) -> Result<Self, Self::Error> {
        Ok(RuleSpec {
            factor: w.factor.parse()?,
            input: w.input.parse()?,
            when: w.when.iter().map(|g| g.parse()).collect::<Result<_, _>>()?,
            emit: w.emit.iter().map(|e| e.parse()).collect::<Result<_, _>>()?,
        })
    }
}

impl From<RuleSpec> for RuleWire {
    fn from(r: RuleSpec) -> Self {
        RuleWire {
            factor: r.factor.to_string(),
            input: r.input.to_string(),
            when: r.when.iter().map(Guard::to_string).collect(),
            emit: r.emit.iter().map(EmitItem::to_string).collect(),
        }
    }
}

/// `h`: `"tuple"`, `{"project": i}`, `{"weighted_sum": base}` or
/// `{"lookup": {"entries": [[[x1, ...], y], ...], "default": y}}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputSpec {
    #[default]
    Tuple,
    Project(usize),
    WeightedSum(i64),
    Lookup(LookupSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LookupSpec {
    pub entries: Vec<LookupEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_symbol")]
    pub default: Option<Symbol>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(Symbols, String)", into = "(Symbols, String)")]
pub struct LookupEntry {
    pub key: Vec<Symbol>,
    pub value: Symbol,
}

impl TryFrom<(Symbols, String)> for LookupEntry {
    type Error = rmoore::Error;

    fn try_from((key, value): (Symbols, String)) -> Result<Self, Self::Error> {
        Ok(LookupEntry {
            key: key.0,
            value: Symbol::parse(&value)?,
        })
    }
}

impl From<LookupEntry> for (Symbols, String) {
    fn from(e: LookupEntry) -> Self {
        (Symbols(e.key), e.value.to_string())
    }
}

/// Evaluate `target` on `word`; when `expect` is given the result must match.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunDirective {
    pub target: String,
    #[serde(with = "word_text")]
    pub word: Word,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_symbol")]
    pub expect: Option<Symbol>,
}

mod opt_symbol {
    use rmoore::Symbol;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: &Option<Symbol>, ser: S) -> Result<S::Ok, S::Error> {
        match s {
            Some(s) => ser.serialize_str(&s.to_string()),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Symbol>, D::Error> {
        Option::<String>::deserialize(de)?
            .map(|t| Symbol::parse(&t).map_err(D::Error::custom))
            .transpose()
    }
}

mod word_text {
    use rmoore::Word;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(w: &Word, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&w.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Word, D::Error> {
        Word::parse(&String::deserialize(de)?).map_err(D::Error::custom)
    }
}
