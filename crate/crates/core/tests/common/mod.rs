#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use rmoore::product::rules::{EmitItem, FactorPattern, FactorRef, Guard, GuardOp, InputPattern, Operand, Rule, RuleSet};
use rmoore::{Alphabet, ConnectionMap, Machine, OutputMap, ProductDef, StringFunction, Symbol};

pub fn pool(k: usize) -> Vec<Symbol> {
    ["p", "q", "r"][..k].iter().map(|s| Symbol::new(s)).collect()
}

pub fn random_machine(rng: &mut StdRng, alphabet: &Alphabet, states: usize, outputs: &[Symbol]) -> Machine {
    let table = (0..states)
        .map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..states)).collect())
        .collect();
    let gamma = (0..states).map(|_| *outputs.choose(rng).unwrap()).collect();
    Machine::new(alphabet.clone(), rng.gen_range(0..states), table, gamma).unwrap()
}

fn random_ref(rng: &mut StdRng, n: usize) -> FactorRef {
    if rng.gen_bool(0.5) {
        FactorRef::Abs(rng.gen_range(1..=n))
    } else {
        FactorRef::Rel(0)
    }
}

/// A random rule-based product. Factors and composite share the symbol pool,
/// so feedback and the input itself are always valid emissions.
pub fn random_product(rng: &mut StdRng, max_factors: usize, max_states: usize, max_rules: usize) -> ProductDef {
    let k = rng.gen_range(1..=3);
    let symbols = pool(k);
    let alphabet = Alphabet::new(symbols.clone()).unwrap();
    let n = rng.gen_range(1..=max_factors);
    let factors: Vec<StringFunction> = (0..n)
        .map(|_| {
            let states = rng.gen_range(1..=max_states);
            random_machine(rng, &alphabet, states, &symbols).into()
        })
        .collect();
    let rule_count = rng.gen_range(0..=max_rules);
    let mut rules = Vec::new();
    for _ in 0..rule_count {
        let factor = match rng.gen_range(0..3) {
            0 => FactorPattern::ALL,
            1 => FactorPattern::single(rng.gen_range(1..=n)),
            _ => FactorPattern::from(rng.gen_range(1..=n)),
        };
        let input = if rng.gen_bool(0.4) {
            InputPattern::Any
        } else {
            InputPattern::literal(*symbols.choose(rng).unwrap())
        };
        let mut rule = Rule::new(factor, input, Vec::new());
        for _ in 0..rng.gen_range(0..=2) {
            let right = if rng.gen_bool(0.7) {
                Operand::Lit(*symbols.choose(rng).unwrap())
            } else {
                Operand::Out(random_ref(rng, n))
            };
            rule = rule.with_guard(Guard {
                left: Operand::Out(random_ref(rng, n)),
                op: if rng.gen_bool(0.5) { GuardOp::Eq } else { GuardOp::Ne },
                right,
            });
        }
        for _ in 0..rng.gen_range(0..=3) {
            rule.emit.push(match rng.gen_range(0..3) {
                0 => EmitItem::Lit(*symbols.choose(rng).unwrap()),
                1 => EmitItem::Input,
                _ => EmitItem::Out(random_ref(rng, n)),
            });
        }
        rules.push(rule);
    }
    let h = match rng.gen_range(0..3) {
        0 => OutputMap::Tuple,
        1 => OutputMap::Project(rng.gen_range(1..=n)),
        _ => OutputMap::opaque(|xs| Ok(Symbol::int(xs.iter().filter(|x| x.name() == "p").count() as i64))),
    };
    ProductDef::new(factors, alphabet, ConnectionMap::Rules(RuleSet::new(rules)), h).unwrap()
}
