//! Executable versions of the classic worked examples, plus a registry that
//! builds them by name from string parameters.
//!
//! | name      | parameters                                              | result   |
//! |-----------|---------------------------------------------------------|----------|
//! | `cell`    | `values` (default `a b EMPTY`)                          | machine  |
//! | `counter` | `n`                                                     | machine  |
//! | `stack`   | `depth`, `values` (default `a b EMPTY`)                 | product  |
//! | `ripple`  | `n`, `guard` (`ripple`/`printed`), `output` (`tuple`/`value`) | product |
//! | `network` | `nodes`, `capacity`, `messages`, `seeds`, `arbiter_start` | product |
//! | `node`    | `messages`, `capacity`, `seed`                          | machine  |
//! | `length`  | `alphabet` (default `tick`)                             | function |
//!
//! List-valued parameters are whitespace-separated symbols. `seeds` gives one
//! initial queue per node separated by `;`.

pub mod cell;
pub mod counter;
pub mod length;
pub mod network;
pub mod ripple;
pub mod stack;

use std::collections::BTreeMap;

pub use cell::make_cell;
pub use counter::make_counter;
pub use length::make_length;
pub use network::{make_network, NetworkConfig};
pub use ripple::{make_ripple, ripple_value, select_carry_guard, CarryGuard};
pub use stack::{make_stack, StackConfig, StackView};

use crate::error::{Error, Result};
use crate::product::ProductDef;
use crate::{Alphabet, Machine, StringFunction, Symbol, Word};

pub const BUILTINS: [&str; 7] = ["cell", "counter", "stack", "ripple", "network", "node", "length"];

/// Something a name can resolve to.
#[derive(Clone, Debug)]
pub enum Definition {
    Machine(Machine),
    Product(ProductDef),
    Function(StringFunction),
}

impl Definition {
    pub fn to_function(&self) -> StringFunction {
        match self {
            Definition::Machine(m) => StringFunction::from_machine(m.clone()),
            Definition::Product(p) => StringFunction::from_product(p.clone()),
            Definition::Function(f) => f.clone(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Definition::Machine(m) => m.alphabet(),
            Definition::Product(p) => p.alphabet(),
            Definition::Function(f) => f.alphabet(),
        }
    }

    pub fn as_product(&self) -> Option<&ProductDef> {
        match self {
            Definition::Product(p) => Some(p),
            Definition::Function(f) => f.as_product(),
            Definition::Machine(_) => None,
        }
    }
}

pub type Params = BTreeMap<String, String>;

fn get<'a>(params: &'a Params, key: &str) -> Option<&'a str> {
    params.get(key).map(String::as_str)
}

fn count(params: &Params, key: &str, default: Option<usize>) -> Result<usize> {
    match get(params, key) {
        Some(text) => text
            .trim()
            .parse()
            .map_err(|_| Error::BadParameter(format!("`{key}` must be a non-negative integer, got `{text}`"))),
        None => default.ok_or_else(|| Error::BadParameter(format!("missing parameter `{key}`"))),
    }
}

fn alphabet(params: &Params, key: &str, default: &str) -> Result<Alphabet> {
    Alphabet::parse(get(params, key).unwrap_or(default))
}

fn check_keys(name: &str, params: &Params, allowed: &[&str]) -> Result<()> {
    match params.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::BadParameter(format!("`{name}` has no parameter `{k}`"))),
        None => Ok(()),
    }
}

/// Instantiates a registered example.
pub fn builtin(name: &str, params: &Params) -> Result<Definition> {
    match name {
        "cell" => {
            check_keys(name, params, &["values"])?;
            Ok(Definition::Machine(make_cell(&alphabet(params, "values", "a b EMPTY")?)?))
        }
        "counter" => {
            check_keys(name, params, &["n"])?;
            Ok(Definition::Machine(make_counter(count(params, "n", None)?)?))
        }
        "stack" => {
            check_keys(name, params, &["depth", "values"])?;
            let config = StackConfig::new(count(params, "depth", None)?, alphabet(params, "values", "a b EMPTY")?)?;
            Ok(Definition::Product(make_stack(&config)?))
        }
        "ripple" => {
            check_keys(name, params, &["n", "guard", "output"])?;
            let n = count(params, "n", None)?;
            let guard: CarryGuard = get(params, "guard").map_or(Ok(CarryGuard::default()), str::parse)?;
            let p = match get(params, "output").unwrap_or("tuple") {
                "tuple" => make_ripple(n, guard)?,
                "value" => ripple_value(n, guard)?,
                other => return Err(Error::BadParameter(format!("unknown ripple output `{other}`"))),
            };
            Ok(Definition::Product(p))
        }
        "network" => {
            check_keys(name, params, &["nodes", "capacity", "messages", "seeds", "arbiter_start"])?;
            let nodes = count(params, "nodes", Some(3))?;
            let capacity = count(params, "capacity", Some(2))?;
            let messages = alphabet(params, "messages", "m1 m2")?;
            let mut seeds: Vec<Vec<Symbol>> = match get(params, "seeds") {
                Some(text) => text
                    .split(';')
                    .map(|s| Word::parse(s).map(Word::into_vec))
                    .collect::<Result<_>>()?,
                None => Vec::new(),
            };
            if seeds.len() > nodes {
                return Err(Error::BadParameter(format!("{} seeds for {nodes} nodes", seeds.len())));
            }
            seeds.resize(nodes, Vec::new());
            let start = count(params, "arbiter_start", Some(1))?;
            let config = NetworkConfig::echo(messages, capacity, &seeds, start)?;
            Ok(Definition::Product(make_network(&config)?))
        }
        "node" => {
            check_keys(name, params, &["messages", "capacity", "seed"])?;
            let seed = Word::parse(get(params, "seed").unwrap_or(""))?;
            Ok(Definition::Machine(network::echo_node(
                &alphabet(params, "messages", "m1 m2")?,
                count(params, "capacity", Some(2))?,
                &seed,
            )?))
        }
        "length" => {
            check_keys(name, params, &["alphabet"])?;
            Ok(Definition::Function(make_length(&alphabet(params, "alphabet", "tick")?)))
        }
        other => Err(Error::BadParameter(format!("no builtin named `{other}`"))),
    }
}
