//! Rule-based connection maps.
//!
//! A rule set computes `g(i, a, x⃗)`: the first rule whose factor pattern
//! covers `i`, whose input pattern matches `a`, and whose guards all hold on
//! the feedback `x⃗` emits its word. When no rule fires the factor receives
//! Λ and skips the step.
//!
//! Every piece has a text form used by spec files:
//!
//! | piece   | examples                                   |
//! |---------|--------------------------------------------|
//! | factor  | `*`, `2`, `2..`, `1..3`                    |
//! | input   | `*`, `POP`, `PUSH[?v]`, `PUSH[*]`          |
//! | guard   | `out(1) == 0`, `out(i-1) != out(3)`        |
//! | emit    | `EMPTY`, `?v`, `$a`, `out(i+1)`            |
//!
//! `i` in a factor reference is the index of the factor being fed.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::{Symbol, Word};

/// Inclusive 1-based range of factor indices; `to: None` is open-ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorPattern {
    pub from: usize,
    pub to: Option<usize>,
}

impl FactorPattern {
    pub const ALL: FactorPattern = FactorPattern { from: 1, to: None };

    pub fn single(i: usize) -> FactorPattern {
        FactorPattern { from: i, to: Some(i) }
    }

    pub fn range(from: usize, to: usize) -> FactorPattern {
        FactorPattern { from, to: Some(to) }
    }

    pub fn from(from: usize) -> FactorPattern {
        FactorPattern { from, to: None }
    }

    pub fn matches(&self, i: usize) -> bool {
        i >= self.from && self.to.is_none_or(|t| i <= t)
    }

    /// Indices in `1..=n` covered by this pattern.
    pub fn indices(&self, n: usize) -> impl Iterator<Item = usize> {
        let hi = self.to.map_or(n, |t| t.min(n));
        self.from.max(1)..=hi
    }
}

impl fmt::Display for FactorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.from, self.to) {
            (1, None) => f.write_str("*"),
            (a, None) => write!(f, "{a}.."),
            (a, Some(b)) if a == b => write!(f, "{a}"),
            (a, Some(b)) => write!(f, "{a}..{b}"),
        }
    }
}

fn bad(text: &str, what: &str) -> Error {
    Error::MalformedSymbol {
        text: text.to_string(),
        reason: format!("not a valid {what}"),
    }
}

fn parse_index(text: &str, whole: &str, what: &str) -> Result<usize> {
    match text.trim().parse::<usize>() {
        Ok(0) | Err(_) => Err(bad(whole, what)),
        Ok(i) => Ok(i),
    }
}

impl FromStr for FactorPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "*" {
            return Ok(FactorPattern::ALL);
        }
        if let Some((a, b)) = t.split_once("..") {
            let from = parse_index(a, s, "factor pattern")?;
            let to = if b.trim().is_empty() {
                None
            } else {
                Some(parse_index(b, s, "factor pattern")?)
            };
            return Ok(FactorPattern { from, to });
        }
        Ok(FactorPattern::single(parse_index(t, s, "factor pattern")?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamPattern {
    /// `?name`: matches anything and binds it.
    Bind(String),
    /// `*`
    Any,
    Literal(Symbol),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputPattern {
    Any,
    /// Matches symbols with this name and exactly these parameters.
    Match { name: String, params: Vec<ParamPattern> },
}

impl InputPattern {
    pub fn literal(symbol: Symbol) -> InputPattern {
        InputPattern::Match {
            name: symbol.name().to_string(),
            params: symbol.params().iter().map(|&p| ParamPattern::Literal(p)).collect(),
        }
    }

    /// On a match, returns the `?name` bindings in pattern order.
    pub fn matches(&self, a: Symbol) -> Option<Vec<(&str, Symbol)>> {
        match self {
            InputPattern::Any => Some(Vec::new()),
            InputPattern::Match { name, params } => {
                if a.name() != name || a.params().len() != params.len() {
                    return None;
                }
                let mut bound = Vec::new();
                for (pat, &actual) in params.iter().zip(a.params()) {
                    match pat {
                        ParamPattern::Any => {}
                        ParamPattern::Literal(s) if *s == actual => {}
                        ParamPattern::Literal(_) => return None,
                        ParamPattern::Bind(var) => bound.push((var.as_str(), actual)),
                    }
                }
                Some(bound)
            }
        }
    }

    fn binds(&self, var: &str) -> bool {
        match self {
            InputPattern::Any => false,
            InputPattern::Match { params, .. } => params
                .iter()
                .any(|p| matches!(p, ParamPattern::Bind(v) if v == var)),
        }
    }
}

impl fmt::Display for InputPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputPattern::Any => f.write_str("*"),
            InputPattern::Match { name, params } => {
                f.write_str(name)?;
                if !params.is_empty() {
                    f.write_str("[")?;
                    for (i, p) in params.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        match p {
                            ParamPattern::Bind(v) => write!(f, "?{v}")?,
                            ParamPattern::Any => f.write_str("*")?,
                            ParamPattern::Literal(s) => write!(f, "{s}")?,
                        }
                    }
                    f.write_str("]")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for InputPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "*" {
            return Ok(InputPattern::Any);
        }
        // Parse as a symbol, then reinterpret `?x` and `*` parameters.
        let sym = Symbol::parse(t).map_err(|_| bad(s, "input pattern"))?;
        let params = sym
            .params()
            .iter()
            .map(|p| {
                if !p.params().is_empty() {
                    return ParamPattern::Literal(*p);
                }
                match p.name() {
                    "*" => ParamPattern::Any,
                    n if n.starts_with('?') && n.len() > 1 => ParamPattern::Bind(n[1..].to_string()),
                    _ => ParamPattern::Literal(*p),
                }
            })
            .collect();
        Ok(InputPattern::Match {
            name: sym.name().to_string(),
            params,
        })
    }
}

/// A feedback reference `out(j)`: absolute, or relative to the fed factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorRef {
    Abs(usize),
    Rel(isize),
}

impl FactorRef {
    /// Resolves against the fed factor `i` in a product of `n` factors.
    pub fn resolve(&self, i: usize, n: usize) -> Result<usize> {
        let j = match *self {
            FactorRef::Abs(j) => j as isize,
            FactorRef::Rel(d) => i as isize + d,
        };
        if j >= 1 && j as usize <= n {
            Ok(j as usize)
        } else {
            Err(Error::FactorIndex {
                index: j.max(0) as usize,
                count: n,
            })
        }
    }
}

impl fmt::Display for FactorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorRef::Abs(j) => write!(f, "out({j})"),
            FactorRef::Rel(0) => f.write_str("out(i)"),
            FactorRef::Rel(d) if d > 0 => write!(f, "out(i+{d})"),
            FactorRef::Rel(d) => write!(f, "out(i-{})", -d),
        }
    }
}

impl FromStr for FactorRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix("out(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad(s, "factor reference"))?
            .trim();
        if let Some(rest) = inner.strip_prefix('i') {
            let rest: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
            if rest.is_empty() {
                return Ok(FactorRef::Rel(0));
            }
            let (sign, digits) = rest.split_at(1);
            let d: isize = digits.parse().map_err(|_| bad(s, "factor reference"))?;
            return match sign {
                "+" => Ok(FactorRef::Rel(d)),
                "-" => Ok(FactorRef::Rel(-d)),
                _ => Err(bad(s, "factor reference")),
            };
        }
        Ok(FactorRef::Abs(parse_index(inner, s, "factor reference")?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operand {
    Out(FactorRef),
    Lit(Symbol),
}

impl Operand {
    fn value(&self, i: usize, feedback: &[Symbol]) -> Result<Symbol> {
        match self {
            Operand::Lit(s) => Ok(*s),
            Operand::Out(r) => Ok(feedback[r.resolve(i, feedback.len())? - 1]),
        }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Out(r) => write!(f, "{r}"),
            Operand::Lit(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for Operand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().starts_with("out(") {
            Ok(Operand::Out(s.parse()?))
        } else {
            Ok(Operand::Lit(Symbol::parse(s)?))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GuardOp {
    Eq,
    Ne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub left: Operand,
    pub op: GuardOp,
    pub right: Operand,
}

impl Guard {
    pub fn out_eq(j: usize, value: Symbol) -> Guard {
        Guard {
            left: Operand::Out(FactorRef::Abs(j)),
            op: GuardOp::Eq,
            right: Operand::Lit(value),
        }
    }

    pub fn holds(&self, i: usize, feedback: &[Symbol]) -> Result<bool> {
        let l = self.left.value(i, feedback)?;
        let r = self.right.value(i, feedback)?;
        Ok(match self.op {
            GuardOp::Eq => l == r,
            GuardOp::Ne => l != r,
        })
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.op {
            GuardOp::Eq => "==",
            GuardOp::Ne => "!=",
        };
        write!(f, "{} {op} {}", self.left, self.right)
    }
}

impl FromStr for Guard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, op, r) = if let Some((l, r)) = s.split_once("==") {
            (l, GuardOp::Eq, r)
        } else if let Some((l, r)) = s.split_once("!=") {
            (l, GuardOp::Ne, r)
        } else {
            return Err(bad(s, "guard"));
        };
        Ok(Guard {
            left: l.parse()?,
            op,
            right: r.parse()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmitItem {
    Lit(Symbol),
    /// `?name`, bound by the input pattern.
    Param(String),
    /// `$a`: the composite input symbol itself.
    Input,
    Out(FactorRef),
}

impl fmt::Display for EmitItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmitItem::Lit(s) => write!(f, "{s}"),
            EmitItem::Param(v) => write!(f, "?{v}"),
            EmitItem::Input => f.write_str("$a"),
            EmitItem::Out(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for EmitItem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "$a" {
            Ok(EmitItem::Input)
        } else if let Some(v) = t.strip_prefix('?') {
            if v.is_empty() || !crate::symbol::is_valid_name(v) {
                return Err(bad(s, "emit item"));
            }
            Ok(EmitItem::Param(v.to_string()))
        } else if t.starts_with("out(") {
            Ok(EmitItem::Out(t.parse()?))
        } else {
            Ok(EmitItem::Lit(Symbol::parse(t)?))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub factor: FactorPattern,
    pub input: InputPattern,
    pub guards: Vec<Guard>,
    pub emit: Vec<EmitItem>,
}

impl Rule {
    pub fn new(factor: FactorPattern, input: InputPattern, emit: Vec<EmitItem>) -> Rule {
        Rule {
            factor,
            input,
            guards: Vec::new(),
            emit,
        }
    }

    pub fn with_guard(mut self, guard: Guard) -> Rule {
        self.guards.push(guard);
        self
    }

    /// Factor references in guards and emissions, resolved for factor `i`.
    pub fn references(&self, i: usize, n: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for g in &self.guards {
            for op in [g.left, g.right] {
                if let Operand::Out(r) = op {
                    out.push(r.resolve(i, n)?);
                }
            }
        }
        for e in &self.emit {
            if let EmitItem::Out(r) = e {
                out.push(r.resolve(i, n)?);
            }
        }
        Ok(out)
    }

    pub fn unbound_params(&self) -> Vec<&str> {
        self.emit
            .iter()
            .filter_map(|e| match e {
                EmitItem::Param(v) if !self.input.binds(v) => Some(v.as_str()),
                _ => None,
            })
            .collect()
    }

    fn fire(&self, i: usize, a: Symbol, feedback: &[Symbol]) -> Result<Option<Word>> {
        if !self.factor.matches(i) {
            return Ok(None);
        }
        let Some(bound) = self.input.matches(a) else {
            return Ok(None);
        };
        for g in &self.guards {
            if !g.holds(i, feedback)? {
                return Ok(None);
            }
        }
        let mut word = Word::empty();
        for item in &self.emit {
            let sym = match item {
                EmitItem::Lit(s) => *s,
                EmitItem::Input => a,
                EmitItem::Out(r) => feedback[r.resolve(i, feedback.len())? - 1],
                EmitItem::Param(v) => bound
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|&(_, s)| s)
                    .ok_or_else(|| Error::UnboundParameter(v.clone()))?,
            };
            word.push(sym);
        }
        Ok(Some(word))
    }
}

/// An ordered list of rules; first match wins, the implicit default emits Λ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<Rule>,
}

impl RuleSet {
    pub fn new(rules: Vec<Rule>) -> RuleSet {
        RuleSet { rules }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// `g(i, a, x⃗)` with `i` 1-based and `feedback = x⃗`.
    pub fn emit(&self, i: usize, a: Symbol, feedback: &[Symbol]) -> Result<Word> {
        for rule in &self.rules {
            if let Some(w) = rule.fire(i, a, feedback)? {
                return Ok(w);
            }
        }
        Ok(Word::empty())
    }

    /// Every factor index some rule for factor `i` may read.
    pub fn dependencies(&self, i: usize, n: usize) -> Result<BTreeSet<usize>> {
        let mut deps = BTreeSet::new();
        for rule in self.rules.iter().filter(|r| r.factor.matches(i)) {
            deps.extend(rule.references(i, n)?);
        }
        Ok(deps)
    }
}
