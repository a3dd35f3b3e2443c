use std::path::PathBuf;
use std::process::Command;

use rmoore_cli::{execute, exit, Outcome};
use rmoore_specfmt::fixtures;

fn fixture(name: &str) -> String {
    fixtures::path(name).display().to_string()
}

fn rmoore(args: &[&str]) -> Outcome {
    execute(std::iter::once("rmoore").chain(args.iter().copied()))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rmoore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn stack_trace_has_one_row_per_letter() {
    let out = rmoore(&["run", &fixture("stack"), "stack3", "PUSH[a] POP", "--trace"]);
    assert_eq!(out.code, exit::OK, "{}", out.stderr);
    let rows: Vec<&str> = out.stdout.lines().filter(|l| l.starts_with("step ")).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].contains("u_1 = a"));
    assert!(out.stdout.ends_with("output: tuple[EMPTY,EMPTY,EMPTY]\n"));

    let report = rmoore_cli::cmd_run(&fixtures::path("stack"), "stack3", "PUSH[a] POP", true, None).unwrap();
    let top = report.output().params()[0];
    assert_eq!(top.to_string(), "EMPTY");
    assert_eq!(report.outputs.len(), 2);
    assert_eq!(report.trace.as_ref().unwrap().len(), 2);
}

#[test]
fn empty_word_prints_initial_output() {
    for word in ["", "Λ"] {
        let out = rmoore(&["run", &fixture("ripple"), "h2", word, "--trace"]);
        assert_eq!(out.code, exit::OK);
        assert!(!out.stdout.contains("step "));
        assert!(out.stdout.contains("initial: 0\n"));
        assert!(out.stdout.ends_with("output: 0\n"));
    }
}

#[test]
fn foreign_symbols_and_unknown_targets() {
    assert_eq!(rmoore(&["run", &fixture("stack"), "stack3", "PUSH[c]"]).code, exit::BAD_WORD);
    assert_eq!(rmoore(&["run", &fixture("stack"), "stack3", "PUSH[a"]).code, exit::BAD_WORD);
    let out = rmoore(&["run", &fixture("stack"), "queue", "POP"]);
    assert_eq!(out.code, exit::UNKNOWN_TARGET);
    assert!(out.stderr.contains("`queue`"));
    assert_eq!(rmoore(&["run", &fixture("stack"), "stack3", "POP", "--factor", "4"]).code, exit::UNKNOWN_TARGET);
    assert_eq!(rmoore(&["frobnicate"]).code, exit::USAGE);
}

#[test]
fn parse_errors_exit_one() {
    let bad = scratch("bad.json", "{\"specfmt_version\": 1,\n \"machines\": [}");
    let out = rmoore(&["run", bad.to_str().unwrap(), "x", ""]);
    assert_eq!(out.code, exit::PARSE);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
    let missing = rmoore(&["run", "/no/such/spec.json", "x", ""]);
    assert_eq!(missing.code, exit::PARSE);
}

#[test]
fn factor_paths_reach_nested_products() {
    let out = rmoore(&["run", &fixture("trivial"), "nested", "tick tick", "--factor", "2/1"]);
    assert_eq!(out.code, exit::OK, "{}", out.stderr);
    assert!(out.stdout.contains("factor 2/1: tick tick -> 2"), "{}", out.stdout);
    assert_eq!(rmoore(&["run", &fixture("trivial"), "nested", "tick", "--factor", "1/1"]).code, exit::UNKNOWN_TARGET);
}

#[test]
fn check_commands() {
    let out = rmoore(&["check", &fixture("ripple"), "h2", "--max-len", "8"]);
    assert_eq!(out.code, exit::OK);
    assert!(out.stdout.contains("all 9 words"));
    for k in ["0", "3", "12"] {
        assert_eq!(rmoore(&["check", &fixture("trivial"), "identity", "--max-len", k]).code, exit::OK);
    }
    let out = rmoore(&["check", &fixture("corrupted_stack"), "stack3_corrupt", "--max-len", "5"]);
    assert_eq!(out.code, exit::DIVERGENCE);
    let line = out.stdout.lines().find(|l| l.contains("on word:")).unwrap();
    let word = line.split("on word: ").nth(1).unwrap();
    assert!(word.split_whitespace().count() <= 3, "{word}");
    // identical reruns print identical reports
    assert_eq!(out, rmoore(&["check", &fixture("corrupted_stack"), "stack3_corrupt", "--max-len", "5"]));
    let out = rmoore(&["check", &fixture("stack"), "stack3", "--max-len", "8", "--budget", "100"]);
    assert_eq!(out.code, exit::BUDGET);
}

#[test]
fn infinite_targets_exit_five() {
    let spec = scratch(
        "length.json",
        r#"{"specfmt_version": 1,
            "machines": {"len": {"builtin": "length", "params": {"alphabet": "tick"}}},
            "products": {"p": {"alphabet": ["tick"], "factors": ["len"],
                "rules": [{"factor": "*", "input": "*", "emit": ["$a"]}], "output": {"project": 1}}}}"#,
    );
    let spec = spec.to_str().unwrap();
    for cmd in ["minimize", "monoid", "dot"] {
        assert_eq!(rmoore(&[cmd, spec, "len"]).code, exit::INFINITE, "{cmd}");
    }
    assert_eq!(rmoore(&["check", spec, "p"]).code, exit::INFINITE);
    let out = rmoore(&["run", spec, "p", "tick tick tick"]);
    assert!(out.stdout.ends_with("output: 3\n"));
}

#[test]
fn counter_minimize_and_monoid() {
    let out = rmoore(&["minimize", &fixture("counters"), "t5"]);
    assert_eq!(out.code, exit::OK);
    assert!(out.stdout.starts_with("states: 5 -> 5\n"));
    let out = rmoore(&["monoid", &fixture("counters"), "t5"]);
    assert!(out.stdout.contains("elements: 5\n"));
    assert!(out.stdout.contains("group: true\n"));
}

#[test]
fn cell_monoid_is_aperiodic() {
    let out = rmoore(&["monoid", &fixture("cell"), "cell"]);
    assert!(out.stdout.contains("elements: 4\n"));
    assert!(out.stdout.contains("aperiodic: true\n"));
    assert!(out.stdout.contains("group: false\n"));
}

#[test]
fn constant_machine() {
    let out = rmoore(&["minimize", &fixture("trivial"), "const"]);
    assert!(out.stdout.starts_with("states: 1 -> 1\n"));
    let dot = rmoore(&["dot", &fixture("trivial"), "const"]).stdout;
    assert_eq!(dot.matches("[label=\"").count(), 3);
    assert_eq!(dot.matches("s0 -> s0").count(), 2);
    assert!(dot.contains("start -> s0;"));
}

#[test]
fn minimized_output_is_a_spec() {
    let dir = std::env::temp_dir().join(format!("rmoore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("min.json");
    let out = rmoore(&["minimize", &fixture("stack"), "stack3", "-o", out_path.to_str().unwrap()]);
    assert_eq!(out.code, exit::OK);
    assert!(out.stdout.starts_with("states: 27 -> "));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let (_, defs) = rmoore_specfmt::load(&text).unwrap();
    let m = match &defs["stack3"] {
        rmoore::Definition::Machine(m) => m.clone(),
        other => panic!("{other:?}"),
    };
    let product = rmoore_specfmt::load(fixtures::get("stack").unwrap()).unwrap().1["stack3"].clone();
    let expanded = rmoore::expand_product(product.as_product().unwrap()).unwrap();
    assert!(rmoore::equivalent(&m, &expanded, rmoore::Bound::Exhaustive).unwrap().equivalent);
}

#[test]
fn dot_and_monoid_files_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("rmoore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (cmd, ext) in [("dot", "dot"), ("monoid", "txt")] {
        let a = dir.join(format!("a.{ext}"));
        let b = dir.join(format!("b.{ext}"));
        assert_eq!(rmoore(&[cmd, &fixture("stack"), "stack3", "-o", a.to_str().unwrap()]).code, exit::OK);
        assert_eq!(rmoore(&[cmd, &fixture("stack"), "stack3", "-o", b.to_str().unwrap()]).code, exit::OK);
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}

#[test]
fn fmt_and_verify() {
    for (name, text) in fixtures::ALL {
        assert_eq!(rmoore(&["fmt", &fixture(name)]).stdout, text);
        assert_eq!(rmoore(&["fmt", &fixture(name), "--check"]).code, exit::OK);
        let out = rmoore(&["verify", &fixture(name)]);
        assert_eq!(out.code, exit::OK, "{name}: {}", out.stdout);
    }
    let messy = scratch("messy.json", r#"{"runs": [], "specfmt_version": 1}"#);
    assert_eq!(rmoore(&["fmt", messy.to_str().unwrap(), "--check"]).code, exit::PARSE);
    assert_eq!(rmoore(&["fmt", messy.to_str().unwrap(), "--write"]).code, exit::OK);
    assert_eq!(std::fs::read_to_string(&messy).unwrap(), "{\"specfmt_version\": 1}\n");
}

#[test]
fn binary_honours_monoid_cap() {
    let bin = env!("CARGO_BIN_EXE_rmoore");
    let run = |cap: Option<&str>| {
        let mut cmd = Command::new(bin);
        cmd.args(["monoid", &fixture("counters"), "t5"]);
        match cap {
            Some(c) => cmd.env("RMOORE_MONOID_CAP", c),
            None => cmd.env_remove("RMOORE_MONOID_CAP"),
        };
        cmd.output().unwrap()
    };
    assert_eq!(run(Some("4")).status.code(), Some(exit::MONOID_CAP));
    assert_eq!(run(Some("5")).status.code(), Some(exit::OK));
    let plain = run(None);
    assert_eq!(plain.status.code(), Some(exit::OK));
    assert!(String::from_utf8(plain.stdout).unwrap().contains("elements: 5"));
}
