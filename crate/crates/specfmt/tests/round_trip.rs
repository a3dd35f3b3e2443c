use std::collections::BTreeMap;

use proptest::collection::{btree_map, vec};
use proptest::prelude::*;
use rmoore::{Symbol, Word};
use rmoore_specfmt::{
    compile, parse, read, render, AlphabetRef, LookupEntry, LookupSpec, MachineSpec, OutputSpec, ProductSpec,
    RuleSpec, RunDirective, SpecDocument, Symbols,
};

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,5}"
}

fn symbol() -> impl Strategy<Value = Symbol> {
    let leaf = prop_oneof![
        name().prop_map(|n| Symbol::new(&n)),
        (-20i64..20).prop_map(Symbol::int),
        Just(Symbol::new("Ünïcode")),
    ];
    leaf.prop_recursive(2, 6, 3, |inner| {
        (name(), vec(inner, 1..3)).prop_map(|(n, ps)| Symbol::with_params(&n, ps))
    })
}

fn symbols(max: usize) -> impl Strategy<Value = Symbols> {
    vec(symbol(), 1..=max).prop_map(Symbols)
}

fn alphabet_ref() -> impl Strategy<Value = AlphabetRef> {
    prop_oneof![name().prop_map(AlphabetRef::Named), symbols(3).prop_map(AlphabetRef::Inline)]
}

fn machine() -> impl Strategy<Value = MachineSpec> {
    let table = (
        alphabet_ref(),
        proptest::option::of(0usize..3),
        proptest::option::of(vec(name(), 1..4)),
        symbols(4),
        vec(vec(0usize..4, 1..3), 1..4),
    )
        .prop_map(|(alphabet, start, states, outputs, delta)| MachineSpec {
            alphabet: Some(alphabet),
            start,
            states,
            outputs: Some(outputs),
            delta: Some(delta),
            ..MachineSpec::default()
        });
    let builtin = (name(), btree_map(name(), "[a-z0-9 ;]{0,8}", 0..3)).prop_map(|(b, params)| MachineSpec {
        builtin: Some(b),
        params,
        ..MachineSpec::default()
    });
    prop_oneof![table, builtin]
}

fn rule() -> impl Strategy<Value = RuleSpec> {
    let factor = prop_oneof![Just("*"), Just("1"), Just("2.."), Just("1..3")];
    let input = prop_oneof![Just("*".to_string()), Just("PUSH[?v]".to_string()), symbol().prop_map(|s| s.to_string())];
    let guard = prop_oneof![
        Just("out(1) == 0".to_string()),
        Just("out(i-1) != out(2)".to_string()),
        symbol().prop_map(|s| format!("out(i) == {s}")),
    ];
    let item = prop_oneof![
        Just("$a".to_string()),
        Just("out(i+1)".to_string()),
        Just("out(3)".to_string()),
        symbol().prop_map(|s| s.to_string()),
    ];
    (factor, input, vec(guard, 0..3), vec(item, 0..3)).prop_map(|(f, i, g, e)| RuleSpec {
        factor: f.parse().unwrap(),
        input: i.parse().unwrap(),
        when: g.iter().map(|g| g.parse().unwrap()).collect(),
        emit: e.iter().map(|e| e.parse().unwrap()).collect(),
    })
}

fn output() -> impl Strategy<Value = OutputSpec> {
    let entry = (vec(symbol(), 0..3), symbol()).prop_map(|(key, value)| LookupEntry { key, value });
    prop_oneof![
        Just(OutputSpec::Tuple),
        (1usize..4).prop_map(OutputSpec::Project),
        (2i64..5).prop_map(OutputSpec::WeightedSum),
        (vec(entry, 0..3), proptest::option::of(symbol()))
            .prop_map(|(entries, default)| OutputSpec::Lookup(LookupSpec { entries, default })),
    ]
}

fn product() -> impl Strategy<Value = ProductSpec> {
    (alphabet_ref(), vec(name(), 0..4), vec(rule(), 0..4), output(), proptest::option::of(name())).prop_map(
        |(alphabet, factors, rules, output, reference)| ProductSpec {
            alphabet,
            factors,
            rules,
            output,
            reference,
        },
    )
}

fn run() -> impl Strategy<Value = RunDirective> {
    (name(), vec(symbol(), 0..4), proptest::option::of(symbol())).prop_map(|(target, w, expect)| RunDirective {
        target,
        word: Word::from(w),
        expect,
    })
}

fn document() -> impl Strategy<Value = SpecDocument> {
    (
        btree_map(name(), symbols(4), 0..3),
        btree_map(name(), machine(), 0..3),
        btree_map(name(), product(), 0..3),
        vec(run(), 0..3),
    )
        .prop_map(|(alphabets, machines, products, runs)| SpecDocument {
            specfmt_version: 1,
            alphabets,
            machines,
            products,
            runs,
        })
}

/// Table machines over a shared alphabet, a product of them that forwards
/// the input, and runs over it: documents that compile.
fn valid_document() -> impl Strategy<Value = SpecDocument> {
    (1usize..4, vec((1usize..5, any::<u64>()), 1..4), vec(vec(0usize..3, 0..5), 0..3)).prop_map(
        |(k, shapes, words)| {
            let letters: Vec<Symbol> = (0..k).map(|i| Symbol::new(&format!("x{i}"))).collect();
            let mut machines = BTreeMap::new();
            for (m, &(states, seed)) in shapes.iter().enumerate() {
                let delta = (0..states)
                    .map(|s| (0..k).map(|a| ((seed >> ((s * k + a) % 60)) as usize + s) % states).collect())
                    .collect();
                let outputs = (0..states).map(|s| Symbol::int(((seed >> s) & 1) as i64)).collect();
                machines.insert(
                    format!("m{m}"),
                    MachineSpec {
                        alphabet: Some(AlphabetRef::Named("letters".into())),
                        outputs: Some(Symbols(outputs)),
                        delta: Some(delta),
                        ..MachineSpec::default()
                    },
                );
            }
            let factors: Vec<String> = machines.keys().cloned().collect();
            let product = ProductSpec {
                alphabet: AlphabetRef::Named("letters".into()),
                factors,
                rules: vec![RuleSpec {
                    factor: "*".parse().unwrap(),
                    input: "*".parse().unwrap(),
                    when: vec![],
                    emit: vec!["$a".parse().unwrap()],
                }],
                output: OutputSpec::Tuple,
                reference: None,
            };
            let runs = words
                .iter()
                .map(|w| RunDirective {
                    target: "p".into(),
                    word: w.iter().map(|&i| letters[i % k]).collect(),
                    expect: None,
                })
                .collect();
            SpecDocument {
                specfmt_version: 1,
                alphabets: BTreeMap::from([("letters".to_string(), Symbols(letters))]),
                machines,
                products: BTreeMap::from([("p".to_string(), product)]),
                runs,
            }
        },
    )
}

proptest! {
    #[test]
    fn read_inverts_render(doc in document()) {
        let text = render(&doc);
        let back = read(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(render(&back), text);
    }

    #[test]
    fn parse_inverts_render_on_valid_documents(doc in valid_document()) {
        let text = render(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert!(compile(&back).unwrap().contains_key("p"));
    }
}
