mod common;

use std::collections::{BTreeSet, VecDeque};

use rand::rngs::StdRng;
use rand::SeedableRng;
use rmoore::examples::{make_counter, make_stack, StackConfig};
use rmoore::product::rules::{EmitItem, FactorPattern, InputPattern, Rule, RuleSet};
use rmoore::product::{check_theorem1_with_budget, LookupTable};
use rmoore::{
    check_theorem1, expand_product, minimize, reachable, recursion_eval, Alphabet, ConnectionMap, Error,
    OutputMap, ProductDef, RecursionState, StringFunction, Symbol, Word,
};

fn sym(s: &str) -> Symbol {
    Symbol::parse(s).unwrap()
}

/// Two T_2 factors both fed `tick` on `tick` and nothing on `idle`; h = xor.
fn lockstep_xor() -> ProductDef {
    let t2: StringFunction = make_counter(2).unwrap().into();
    let rules = RuleSet::new(vec![Rule::new(
        FactorPattern::ALL,
        InputPattern::literal(sym("tick")),
        vec![EmitItem::Input],
    )]);
    let xor = LookupTable::new(
        vec![
            (vec![sym("0"), sym("0")], sym("0")),
            (vec![sym("0"), sym("1")], sym("1")),
            (vec![sym("1"), sym("0")], sym("1")),
            (vec![sym("1"), sym("1")], sym("0")),
        ],
        None,
    )
    .unwrap();
    // factor alphabets are {tick}; the composite also has `idle`
    ProductDef::new(
        vec![t2.clone(), t2],
        Alphabet::parse("tick idle").unwrap(),
        ConnectionMap::Rules(rules),
        OutputMap::Lookup(xor),
    )
    .unwrap()
}

#[test]
fn lockstep_product_shape() {
    let p = lockstep_xor();
    let m = expand_product(&p).unwrap();
    assert_eq!(m.state_count(), 4);

    // BFS oracle over state names
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([m.start()]);
    while let Some(s) = queue.pop_front() {
        if seen.insert(m.name(s)) {
            for a in m.alphabet().iter() {
                queue.push_back(m.delta(s, a).unwrap());
            }
        }
    }
    assert_eq!(seen.into_iter().collect::<Vec<_>>(), ["(0,0)", "(1,1)"]);
    assert_eq!(reachable(&m).state_count(), 2);

    let report = check_theorem1(&p, 8).unwrap();
    assert!(report.agrees());
    assert_eq!(report.words_checked, (1 << 9) - 1);
}

#[test]
fn stack_two_agrees_with_expansion() {
    let config = StackConfig::new(2, Alphabet::parse("a b EMPTY").unwrap()).unwrap();
    let p = make_stack(&config).unwrap();
    assert_eq!(expand_product(&p).unwrap().state_count(), 9);
    let report = check_theorem1(&p, 6).unwrap();
    assert!(report.agrees());
    assert_eq!(report.words_checked, (0..=6).map(|k| 3u64.pow(k)).sum::<u64>());
}

#[test]
fn stack_over_one_value_has_unreachable_tuples() {
    let config = StackConfig::new(2, Alphabet::parse("a EMPTY").unwrap()).unwrap();
    let m = expand_product(&make_stack(&config).unwrap()).unwrap();
    assert_eq!(m.state_count(), 4);
    // by hand: (EMPTY,EMPTY), (a,EMPTY), (a,a); (EMPTY,a) never occurs
    let r = reachable(&m);
    assert_eq!(r.state_count(), 3);
    let mut names: Vec<String> = r.states().map(|s| r.name(s)).collect();
    names.sort();
    assert_eq!(names, ["(EMPTY,EMPTY)", "(a,EMPTY)", "(a,a)"]);
}

#[test]
fn identity_wiring_of_one_factor() {
    let t3: StringFunction = make_counter(3).unwrap().into();
    let p = ProductDef::new(
        vec![t3.clone()],
        Alphabet::parse("tick").unwrap(),
        ConnectionMap::Rules(RuleSet::new(vec![Rule::new(FactorPattern::ALL, InputPattern::Any, vec![EmitItem::Input])])),
        OutputMap::Project(1),
    )
    .unwrap();
    assert!(check_theorem1(&p, 10).unwrap().agrees());
    for len in 0..10 {
        let w: Word = std::iter::repeat_n(sym("tick"), len).collect();
        assert_eq!(recursion_eval(&p, &w).unwrap(), t3.eval(&w).unwrap());
    }
}

#[test]
fn zero_factor_product_is_constant() {
    let p = ProductDef::new(
        vec![],
        Alphabet::parse("a b").unwrap(),
        ConnectionMap::Rules(RuleSet::default()),
        OutputMap::Tuple,
    )
    .unwrap();
    assert_eq!(expand_product(&p).unwrap().state_count(), 1);
    assert_eq!(recursion_eval(&p, &Word::parse("a b a").unwrap()).unwrap(), sym("tuple"));
    assert!(check_theorem1(&p, 4).unwrap().agrees());
}

#[test]
fn empty_word_gives_initial_outputs() {
    let p = lockstep_xor();
    assert_eq!(recursion_eval(&p, &Word::empty()).unwrap(), sym("0"));
    let rs = RecursionState::traced(&p).unwrap();
    assert!(rs.words().unwrap().iter().all(|u| u.is_empty()));
    assert_eq!(rs.consumed(), [0, 0]);
}

#[test]
fn budget_exceeded_reports_progress() {
    let p = lockstep_xor();
    match check_theorem1_with_budget(&p, 10, 100) {
        Err(Error::BudgetExceeded { checked, complete_len, .. }) => {
            // levels 0..=5 hold 63 words, level 6 would pass 100
            assert_eq!(checked, 63);
            assert_eq!(complete_len, Some(5));
        }
        other => panic!("expected budget error, got {other:?}"),
    }
}

#[test]
fn generator_factor_is_rejected() {
    let l = rmoore::examples::make_length(&Alphabet::parse("tick").unwrap());
    let p = ProductDef::new(
        vec![l],
        Alphabet::parse("tick").unwrap(),
        ConnectionMap::Rules(RuleSet::new(vec![Rule::new(FactorPattern::ALL, InputPattern::Any, vec![EmitItem::Input])])),
        OutputMap::Project(1),
    )
    .unwrap();
    assert!(matches!(check_theorem1(&p, 3), Err(Error::InfiniteFunction(_))));
    assert!(matches!(expand_product(&p), Err(Error::InfiniteFunction(_))));
    // the recursion itself still evaluates
    assert_eq!(recursion_eval(&p, &Word::parse("tick tick").unwrap()).unwrap(), sym("2"));
}

#[test]
fn nested_products_expand_and_agree() {
    let inner = make_stack(&StackConfig::new(2, Alphabet::parse("a EMPTY").unwrap()).unwrap()).unwrap();
    let inner_alpha = inner.alphabet().clone();
    let t2: StringFunction = make_counter(2).unwrap().into();
    // outer: forward every stack input to the stack; tick the counter on POP
    let rules = RuleSet::new(vec![
        Rule::new(FactorPattern::single(1), InputPattern::Any, vec![EmitItem::Input]),
        Rule::new(FactorPattern::single(2), "POP".parse().unwrap(), vec![EmitItem::Lit(sym("tick"))]),
    ]);
    let outer = ProductDef::new(
        vec![inner.into_function(), t2],
        inner_alpha,
        ConnectionMap::Rules(rules),
        OutputMap::Tuple,
    )
    .unwrap();
    assert!(check_theorem1(&outer, 6).unwrap().agrees());
    assert_eq!(
        recursion_eval(&outer, &Word::parse("PUSH[a] POP").unwrap()).unwrap(),
        sym("tuple[tuple[EMPTY,EMPTY],1]")
    );
}

#[test]
fn random_products_satisfy_invariants() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..60 {
        let p = common::random_product(&mut rng, 3, 4, 5);
        let report = check_theorem1(&p, 5).unwrap();
        assert!(report.agrees(), "divergence {:?}", report.divergence);

        let expanded = expand_product(&p).unwrap();
        let product_size: usize = p.factors().iter().map(|f| f.as_machine().unwrap().state_count()).product();
        assert_eq!(expanded.state_count(), product_size);

        // reachable recursion states form a finite machine no larger than the product
        let explored = p.clone().into_function().reachable_machine(10_000).unwrap();
        assert!(explored.state_count() <= product_size);
        assert_eq!(minimize(&expanded).state_count(), minimize(&explored).state_count());

        // |u_i| accumulates |g(i, a, f(w))| step by step
        let w = rmoore::words_of_length(p.alphabet().symbols(), 6).last().unwrap();
        let mut rs = RecursionState::traced(&p).unwrap();
        let mut lengths = vec![0usize; p.factor_count()];
        for &a in w.iter() {
            let before = rs.words().unwrap().to_vec();
            rs.advance(&p, a).unwrap();
            for (i, emitted) in rs.last_emitted().iter().enumerate() {
                lengths[i] += emitted.len();
                assert_eq!(rs.words().unwrap()[i], before[i].concat(emitted));
            }
        }
        assert_eq!(rs.consumed(), lengths);
    }
}
