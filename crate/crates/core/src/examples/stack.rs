//! A bounded stack as a product of storage cells.
//!
//! Cell 1 is the top. `PUSH[v]` shifts every cell one place down (cell 1
//! receives `v`, cell `i > 1` receives the old value of cell `i-1`) and
//! `POP` shifts every cell up (cell `n` receives `EMPTY`, cell `i < n`
//! receives the old value of cell `i+1`). Both shifts are unconditional:
//! popping an empty stack leaves it empty, pushing onto a full stack drops
//! the bottom value.

use crate::error::{Error, Result};
use crate::product::rules::{EmitItem, FactorPattern, FactorRef, InputPattern, ParamPattern, Rule, RuleSet};
use crate::product::{ConnectionMap, OutputMap, ProductDef};
use crate::{Alphabet, StringFunction, Symbol};

use super::cell::{empty, make_cell};

pub const PUSH: &str = "PUSH";
pub const POP: &str = "POP";

#[derive(Clone, Debug)]
pub struct StackConfig {
    depth: usize,
    values: Alphabet,
}

impl StackConfig {
    pub fn new(depth: usize, values: Alphabet) -> Result<StackConfig> {
        if depth == 0 {
            return Err(Error::BadParameter("stack depth must be at least 1".into()));
        }
        if !values.contains(empty()) {
            return Err(Error::BadParameter("stack value alphabet must contain EMPTY".into()));
        }
        Ok(StackConfig { depth, values })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn values(&self) -> &Alphabet {
        &self.values
    }

    /// `PUSH[v]` for each non-EMPTY value, then `POP`.
    pub fn inputs(&self) -> Alphabet {
        let pushes = self
            .values
            .iter()
            .filter(|&v| v != empty())
            .map(push);
        Alphabet::new(pushes.chain([Symbol::new(POP)])).expect("distinct values")
    }
}

pub fn push(v: Symbol) -> Symbol {
    Symbol::with_params(PUSH, vec![v])
}

pub fn pop() -> Symbol {
    Symbol::new(POP)
}

/// The four connection rules for depth `n`, in first-match order.
pub fn stack_rules(n: usize) -> RuleSet {
    let push_any = InputPattern::Match {
        name: PUSH.into(),
        params: vec![ParamPattern::Bind("v".into())],
    };
    let pop = InputPattern::Match {
        name: POP.into(),
        params: vec![],
    };
    RuleSet::new(vec![
        Rule::new(FactorPattern::single(1), push_any.clone(), vec![EmitItem::Param("v".into())]),
        Rule::new(FactorPattern::single(n), pop.clone(), vec![EmitItem::Lit(empty())]),
        Rule::new(FactorPattern::range(2, n), push_any, vec![EmitItem::Out(FactorRef::Rel(-1))]),
        Rule::new(FactorPattern::range(1, n - 1), pop, vec![EmitItem::Out(FactorRef::Rel(1))]),
    ])
}

/// `Stack_n(w) = (S(u_1), …, S(u_n))`.
pub fn make_stack(config: &StackConfig) -> Result<ProductDef> {
    let cell = StringFunction::from_machine(make_cell(&config.values)?);
    ProductDef::new(
        vec![cell; config.depth],
        config.inputs(),
        ConnectionMap::Rules(stack_rules(config.depth)),
        OutputMap::Tuple,
    )
}

/// Reads Top, Empty and Full off a stack product's tuple output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StackView {
    pub top: Symbol,
    pub empty: bool,
    pub full: bool,
}

impl StackView {
    pub fn from_output(output: Symbol) -> Option<StackView> {
        let cells = output.params();
        let (&first, &last) = (cells.first()?, cells.last()?);
        Some(StackView {
            top: first,
            empty: first == empty(),
            full: last != empty(),
        })
    }
}
