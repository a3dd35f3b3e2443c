use std::collections::BTreeMap;

use rmoore::examples::{
    builtin, make_cell, make_counter, make_stack, ripple_value, CarryGuard, Definition, StackConfig,
};
use rmoore::{
    check_theorem1, equivalent, expand_product, is_cascade, Alphabet, Bound, Machine, StringFunction, Symbol,
};
use rmoore_specfmt::{compile, fixtures, load, parse, read, render, run_directives, SpecDocument, SpecError};

fn compiled(name: &str) -> BTreeMap<String, Definition> {
    load(fixtures::get(name).unwrap()).unwrap().1
}

fn machine_of(d: &Definition) -> Machine {
    match d {
        Definition::Machine(m) => m.clone(),
        Definition::Product(p) => expand_product(p).unwrap(),
        Definition::Function(f) => f.to_machine().unwrap(),
    }
}

fn same_behaviour(a: &Machine, b: &Machine) {
    assert!(a.alphabet().same_set(b.alphabet()));
    let e = equivalent(a, b, Bound::UpTo(8)).unwrap();
    assert!(e.equivalent, "counterexample {:?}", e.counterexample);
}

#[test]
fn fixtures_are_canonical() {
    for (name, text) in fixtures::ALL {
        let doc = parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(render(&doc), text, "{name} is not in canonical form");
        assert_eq!(std::fs::read_to_string(fixtures::path(name)).unwrap(), text);
    }
}

#[test]
fn fixture_run_directives_hold() {
    for (name, text) in fixtures::ALL {
        let (doc, defs) = load(text).unwrap();
        for r in run_directives(&doc, &defs) {
            assert!(r.passed(), "{name}: {} on {} gave {:?}", r.target, r.word, r.output);
        }
    }
}

#[test]
fn stack_fixture_matches_constructor() {
    let defs = compiled("stack");
    let config = StackConfig::new(3, Alphabet::parse("a b EMPTY").unwrap()).unwrap();
    let built = expand_product(&make_stack(&config).unwrap()).unwrap();
    same_behaviour(&machine_of(&defs["stack3"]), &built);
    let p = defs["stack3"].as_product().unwrap();
    assert!(check_theorem1(p, 5).unwrap().agrees());
    assert!(!is_cascade(p).unwrap().is_cascade);
}

#[test]
fn ripple_fixture_matches_constructor() {
    let defs = compiled("ripple");
    let h2 = defs["h2"].as_product().unwrap();
    assert!(is_cascade(h2).unwrap().is_cascade);
    assert!(is_cascade(defs["g2"].as_product().unwrap()).unwrap().is_cascade);
    let built = expand_product(&ripple_value(2, CarryGuard::RippleCarry).unwrap()).unwrap();
    same_behaviour(&machine_of(&defs["h2"]), &built);
    same_behaviour(&machine_of(&defs["h2"]), &make_counter(4).unwrap());
    assert!(check_theorem1(h2, 8).unwrap().agrees());
}

#[test]
fn counter_and_cell_fixtures_match_constructors() {
    let defs = compiled("counters");
    same_behaviour(&machine_of(&defs["t3"]), &make_counter(3).unwrap());
    same_behaviour(&machine_of(&defs["t4_table"]), &make_counter(4).unwrap());
    same_behaviour(&machine_of(&defs["t5"]), &make_counter(5).unwrap());
    let defs = compiled("cell");
    let cell = make_cell(&Alphabet::parse("a b EMPTY").unwrap()).unwrap();
    same_behaviour(&machine_of(&defs["cell"]), &cell);
    let last = make_cell(&Alphabet::parse("a b").unwrap()).unwrap();
    same_behaviour(&machine_of(&defs["last"]), &last);
}

#[test]
fn network_fixture_matches_builtin() {
    let defs = compiled("network");
    let params: BTreeMap<String, String> = [
        ("nodes", "3"),
        ("capacity", "2"),
        ("messages", "m1 m2"),
        ("seeds", "m1;m2;"),
        ("arbiter_start", "1"),
    ]
    .iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect();
    let built = builtin("network", &params).unwrap();
    same_behaviour(&machine_of(&defs["net"]), &machine_of(&built));
    assert!(check_theorem1(defs["net"].as_product().unwrap(), 8).unwrap().agrees());
}

#[test]
fn trivial_fixture() {
    let defs = compiled("trivial");
    let identity = defs["identity"].as_product().unwrap();
    assert!(check_theorem1(identity, 10).unwrap().agrees());
    same_behaviour(&machine_of(&defs["identity"]), &make_counter(3).unwrap());
    let konst = machine_of(&defs["const"]);
    assert_eq!(rmoore::minimize(&konst).state_count(), 1);
    let nested = defs["nested"].to_function();
    assert_eq!(nested.eval(&rmoore::Word::parse("tick").unwrap()).unwrap(), Symbol::parse("tuple[1,1]").unwrap());
}

#[test]
fn corrupted_stack_differs_from_its_reference() {
    let defs = compiled("corrupted_stack");
    let bad = defs["stack3_corrupt"].to_function();
    let good = defs["stack3"].to_function();
    // recursion and expansion still agree: the corruption is in g itself
    assert!(check_theorem1(defs["stack3_corrupt"].as_product().unwrap(), 6).unwrap().agrees());
    let w = rmoore::first_disagreement(&bad, &good, 8).unwrap().unwrap();
    assert!(w.len() <= 3);
    assert_eq!(w.to_string(), "PUSH[a] PUSH[a]");
}

#[test]
fn empty_documents() {
    assert_eq!(parse("").unwrap(), SpecDocument::default());
    assert_eq!(parse("  \n").unwrap(), SpecDocument::default());
    assert_eq!(parse("{\"specfmt_version\": 1}").unwrap(), SpecDocument::default());
    assert_eq!(render(&SpecDocument::default()), "{\"specfmt_version\": 1}\n");
}

#[test]
fn one_machine_renders_one_block() {
    let text = r#"{"specfmt_version": 1, "machines": {"c": {"builtin": "counter", "params": {"n": "2"}}}}"#;
    let rendered = render(&parse(text).unwrap());
    assert_eq!(rendered.matches("\"builtin\"").count(), 1);
    assert_eq!(rendered.matches("\"machines\"").count(), 1);
}

#[test]
fn symbols_render_with_brackets() {
    let text = r#"{"specfmt_version": 1, "alphabets": {"x": ["f[ a , b[c] ]", "g"]}}"#;
    let rendered = render(&parse(text).unwrap());
    assert!(rendered.contains("\"f[a,b[c]]\""), "{rendered}");
}

fn first_error(text: &str) -> SpecError {
    parse(text).unwrap_err().errors()[0].clone()
}

#[test]
fn syntax_errors_carry_positions() {
    match first_error("{\n  \"specfmt_version\": 1,\n  \"machines\": {,}\n}") {
        SpecError::Syntax { line, column, .. } => assert_eq!((line, column), (3, 16)),
        other => panic!("{other:?}"),
    }
    match first_error("{\"specfmt_version\": 1, \"alphabets\": {\"x\": [\"a[\"]}}") {
        SpecError::Syntax { line, .. } => assert_eq!(line, 1),
        other => panic!("{other:?}"),
    }
    assert!(matches!(first_error("{\"specfmt_version\": 2}"), SpecError::Version(2)));
    assert!(matches!(first_error("{\"machines\": {}}"), SpecError::Invalid { .. }));
    assert!(matches!(
        first_error("{\"specfmt_version\": 1, \"colour\": 3}"),
        SpecError::Syntax { .. }
    ));
}

#[test]
fn unresolved_names_are_reported() {
    let text = r#"{"specfmt_version": 1,
        "products": {"p": {"alphabet": ["a"], "factors": ["foo"], "output": "tuple"}}}"#;
    match first_error(text) {
        SpecError::Unresolved { name, kind, .. } => {
            assert_eq!(name, "foo");
            assert_eq!(kind, "factor");
        }
        other => panic!("{other:?}"),
    }
    let e = parse(text).unwrap_err().to_string();
    assert!(e.contains("`foo`"), "{e}");

    let text = r#"{"specfmt_version": 1, "machines": {"m": {"alphabet": "nope", "outputs": ["x"], "delta": [[0]]}}}"#;
    assert!(matches!(first_error(text), SpecError::Unresolved { kind: "alphabet", .. }));
    let text = r#"{"specfmt_version": 1, "runs": [{"target": "ghost", "word": "a"}]}"#;
    assert!(matches!(first_error(text), SpecError::Unresolved { kind: "target", .. }));
}

#[test]
fn cycles_are_reported() {
    let text = r#"{"specfmt_version": 1, "products": {
        "p": {"alphabet": ["a"], "factors": ["q"], "output": "tuple"},
        "q": {"alphabet": ["a"], "factors": ["p"], "output": "tuple"}}}"#;
    assert!(parse(text)
        .unwrap_err()
        .errors()
        .iter()
        .any(|e| matches!(e, SpecError::Cycle { .. })));
}

#[test]
fn emissions_are_type_checked() {
    // the counter accepts only `tick`; the input `go` is forwarded as is
    let text = r#"{"specfmt_version": 1,
        "machines": {"t2": {"builtin": "counter", "params": {"n": "2"}}},
        "products": {"p": {"alphabet": ["go"], "factors": ["t2"],
            "rules": [{"factor": "*", "input": "*", "emit": ["$a"]}], "output": "tuple"}}}"#;
    match first_error(text) {
        SpecError::Type { location, message } => {
            assert_eq!(location, "products.p.rules[0]");
            assert!(message.contains("`go`"), "{message}");
        }
        other => panic!("{other:?}"),
    }
    // a literal outside the factor alphabet is caught while building the product
    let text = r#"{"specfmt_version": 1,
        "machines": {"t2": {"builtin": "counter", "params": {"n": "2"}}},
        "products": {"p": {"alphabet": ["tick"], "factors": ["t2"],
            "rules": [{"factor": "*", "input": "*", "emit": ["tock"]}], "output": "tuple"}}}"#;
    assert!(matches!(first_error(text), SpecError::Model { .. }));
    // feedback is narrowed by an equality guard on the same factor
    let text = r#"{"specfmt_version": 1,
        "machines": {"t2": {"builtin": "counter", "params": {"n": "2"}},
                     "z": {"alphabet": ["0", "tick"], "outputs": ["0"], "delta": [[0, 0]]}},
        "products": {"p": {"alphabet": ["tick"], "factors": ["z", "t2"],
            "rules": [{"factor": "2", "input": "*", "when": ["out(1) == tick"], "emit": ["out(1)"]}],
            "output": "tuple"}}}"#;
    parse(text).unwrap();
}

#[test]
fn builtin_errors() {
    let text = r#"{"specfmt_version": 1, "machines": {"c": {"builtin": "counter", "params": {"n": "0"}}}}"#;
    match first_error(text) {
        SpecError::Model { source, .. } => assert!(matches!(source, rmoore::Error::BadParameter(_))),
        other => panic!("{other:?}"),
    }
    let text = r#"{"specfmt_version": 1, "machines": {"c": {"builtin": "counter", "params": {"n": "2"}, "start": 1}}}"#;
    assert!(matches!(first_error(text), SpecError::Invalid { .. }));
}

#[test]
fn compile_keeps_rules_inspectable() {
    let doc = read(fixtures::get("stack").unwrap()).unwrap();
    let defs = compile(&doc).unwrap();
    let p = defs["stack3"].as_product().unwrap();
    assert_eq!(p.connection().rules().unwrap().rules().len(), 4);
    let f: StringFunction = defs["stack3"].to_function();
    assert!(f.as_product().is_some());
}
