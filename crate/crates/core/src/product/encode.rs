use crate::error::Result;
use crate::{Alphabet, Machine, StringFunction, Symbol};

use super::rules::{EmitItem, FactorPattern, Guard, InputPattern, Rule, RuleSet};
use super::{ConnectionMap, LookupTable, OutputMap, ProductDef};

/// `⌈log₂ n⌉` for `n ≥ 1`.
pub fn bits_needed(n: usize) -> usize {
    (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize
}

fn bit(v: usize) -> Symbol {
    Symbol::int(v as i64)
}

/// A two-state register: input `0`/`1` sets the stored bit, output is the bit.
pub fn bit_register(initial: usize) -> Machine {
    Machine::new(
        Alphabet::new([bit(0), bit(1)]).expect("distinct bits"),
        initial,
        vec![vec![0, 1], vec![0, 1]],
        vec![bit(0), bit(1)],
    )
    .expect("valid register")
}

/// Re-expresses `m` as a product of `⌈log₂|S|⌉` two-state registers.
///
/// Factor `i` holds bit `i-1` (least significant first) of the current state
/// index. The connection map is a rule table keyed on the full bit vector:
/// on input `a` in state `s`, factor `i` is sent bit `i-1` of `δ(s, a)`. The
/// output map looks the bit vector up in `γ`. A one-state machine becomes a
/// zero-factor constant product.
pub fn binary_encode(m: &Machine) -> Result<ProductDef> {
    let n = m.state_count();
    let k = bits_needed(n);
    let code = |s: usize| -> Vec<Symbol> { (0..k).map(|i| bit((s >> i) & 1)).collect() };

    let factors: Vec<StringFunction> = (0..k)
        .map(|i| bit_register((m.start() >> i) & 1).into())
        .collect();

    let mut rules = Vec::with_capacity(k * n * m.alphabet().len());
    for s in m.states() {
        let key = code(s);
        for (letter, a) in m.alphabet().iter().enumerate() {
            let target = m.next_by_index(s, letter);
            for i in 1..=k {
                let mut rule = Rule::new(
                    FactorPattern::single(i),
                    InputPattern::literal(a),
                    vec![EmitItem::Lit(bit((target >> (i - 1)) & 1))],
                );
                for (j, &b) in key.iter().enumerate() {
                    rule = rule.with_guard(Guard::out_eq(j + 1, b));
                }
                rules.push(rule);
            }
        }
    }

    let table = LookupTable::new(
        m.states().map(|s| (code(s), m.gamma(s))).collect(),
        Some(m.gamma(m.start())),
    )?;
    ProductDef::new(
        factors,
        m.alphabet().clone(),
        ConnectionMap::Rules(RuleSet::new(rules)),
        OutputMap::Lookup(table),
    )
}
