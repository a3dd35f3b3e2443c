//! `G_n`: a cascade of `n` mod-2 counters wired as a ripple-carry counter,
//! and `H_n`, the same cascade read out as the binary number
//! `Σ T_2(u_i)·2^(i-1)`.
//!
//! Two readings of the carry guard are available. [`CarryGuard::RippleCarry`]
//! lets factor `k` see a tick only when every lower factor currently shows 1
//! (it skips when some `j < k` shows 0); this makes `H_n` count mod `2^n`.
//! [`CarryGuard::AsPrinted`] indexes the guard as written for `u_{i+1}`, with
//! `j < i`, so factor `k` only inspects factors `j < k-1`. Under that reading
//! factors 1 and 2 move in lockstep and `H_2` is not `T_4`.
//! [`select_carry_guard`] decides between them by brute force.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::minimize::{equivalent, minimize, Bound};
use crate::product::rules::{EmitItem, FactorPattern, Guard, InputPattern, Rule, RuleSet};
use crate::product::{expand_product, ConnectionMap, OutputMap, ProductDef};
use crate::{Alphabet, StringFunction, Symbol};

use super::counter::{make_counter, TICK};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CarryGuard {
    #[default]
    RippleCarry,
    AsPrinted,
}

impl CarryGuard {
    pub const ALL: [CarryGuard; 2] = [CarryGuard::RippleCarry, CarryGuard::AsPrinted];

    /// Lower factors whose showing 0 makes factor `k` skip.
    fn watched(self, k: usize) -> std::ops::Range<usize> {
        match self {
            CarryGuard::RippleCarry => 1..k,
            CarryGuard::AsPrinted => 1..k.saturating_sub(1).max(1),
        }
    }
}

impl fmt::Display for CarryGuard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CarryGuard::RippleCarry => "ripple",
            CarryGuard::AsPrinted => "printed",
        })
    }
}

impl FromStr for CarryGuard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ripple" => Ok(CarryGuard::RippleCarry),
            "printed" => Ok(CarryGuard::AsPrinted),
            other => Err(Error::BadParameter(format!(
                "unknown carry guard `{other}` (expected `ripple` or `printed`)"
            ))),
        }
    }
}

/// For each factor `k`: one skip rule per watched `j` (`out(j) == 0` → Λ),
/// then a rule passing the tick through.
pub fn ripple_rules(n: usize, guard: CarryGuard) -> RuleSet {
    let zero = Symbol::int(0);
    let mut rules = Vec::new();
    for k in 1..=n {
        for j in guard.watched(k) {
            rules.push(
                Rule::new(FactorPattern::single(k), InputPattern::Any, vec![]).with_guard(Guard::out_eq(j, zero)),
            );
        }
        rules.push(Rule::new(FactorPattern::single(k), InputPattern::Any, vec![EmitItem::Input]));
    }
    RuleSet::new(rules)
}

fn ripple_with_output(n: usize, guard: CarryGuard, h: OutputMap) -> Result<ProductDef> {
    if n == 0 {
        return Err(Error::BadParameter("ripple counter needs at least one stage".into()));
    }
    let t2 = StringFunction::from_machine(make_counter(2)?);
    ProductDef::new(
        vec![t2; n],
        Alphabet::new([Symbol::new(TICK)])?,
        ConnectionMap::Rules(ripple_rules(n, guard)),
        h,
    )
}

/// `G_n`, reporting the tuple of stage outputs.
pub fn make_ripple(n: usize, guard: CarryGuard) -> Result<ProductDef> {
    ripple_with_output(n, guard, OutputMap::Tuple)
}

/// `H_n`: `G_n` read out as `Σ T_2(u_i)·2^(i-1)`.
pub fn ripple_value(n: usize, guard: CarryGuard) -> Result<ProductDef> {
    ripple_with_output(n, guard, OutputMap::WeightedSum { base: 2 })
}

/// Whether `H_n` under `guard` is behaviourally `T_{2^n}`, by exhaustive
/// pair search between the two minimal machines.
pub fn carry_guard_counts(guard: CarryGuard, n: usize) -> Result<bool> {
    let h = minimize(&expand_product(&ripple_value(n, guard)?)?);
    let t = minimize(&make_counter(1 << n)?);
    Ok(equivalent(h.machine(), t.machine(), Bound::Exhaustive)?.equivalent)
}

/// The readings for which `H_n = T_{2^n}` holds for every `n` in `1..=max_n`.
pub fn select_carry_guard(max_n: usize) -> Result<Vec<CarryGuard>> {
    let mut ok = Vec::new();
    for guard in CarryGuard::ALL {
        let mut all = true;
        for n in 1..=max_n {
            if !carry_guard_counts(guard, n)? {
                all = false;
                break;
            }
        }
        if all {
            ok.push(guard);
        }
    }
    Ok(ok)
}
