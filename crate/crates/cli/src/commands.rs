use std::fmt::Write;
use std::fs;
use std::path::Path;

use rmoore::examples::Definition;
use rmoore::minimize::MinimizedMachine;
use rmoore::monoid::{transition_monoid_with_cap, DEFAULT_MONOID_CAP};
use rmoore::product::check_theorem1_with_budget;
use rmoore::{
    classify, expand_product, first_disagreement, minimize, Error, Machine, ProductDef, RecursionState,
    StringFunction, Word,
};
use rmoore_specfmt::{render, AlphabetRef, Compiled, MachineSpec, SpecDocument, Symbols};

use crate::report::{RunReport, TraceRow};
use crate::{exit, Failure};

pub const MONOID_CAP_VAR: &str = "RMOORE_MONOID_CAP";

/// Text for stdout, or whatever was printed before failing and the failure.
pub type CmdResult = Result<String, (String, Failure)>;

fn fail(code: i32, message: impl Into<String>) -> (String, Failure) {
    (String::new(), Failure::new(code, message))
}

/// Exit status for a model error that is not specific to one command.
fn code_of(e: &Error) -> i32 {
    match e {
        Error::InfiniteFunction(_) | Error::ExpansionTooLarge { .. } => exit::INFINITE,
        Error::MonoidTooLarge { .. } => exit::MONOID_CAP,
        Error::BudgetExceeded { .. } => exit::BUDGET,
        _ => exit::PARSE,
    }
}

fn model(e: Error) -> (String, Failure) {
    fail(code_of(&e), e.to_string())
}

/// The monoid size cap: `RMOORE_MONOID_CAP` if set, else 10,000.
pub fn monoid_cap() -> Result<usize, Failure> {
    match std::env::var(MONOID_CAP_VAR) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| Failure::new(exit::USAGE, format!("{MONOID_CAP_VAR} must be a count, got `{text}`"))),
        Err(_) => Ok(DEFAULT_MONOID_CAP),
    }
}

fn load(spec: &Path) -> Result<(SpecDocument, Compiled), (String, Failure)> {
    let text = fs::read_to_string(spec).map_err(|e| fail(exit::PARSE, format!("{}: {e}", spec.display())))?;
    rmoore_specfmt::load(&text).map_err(|errors| {
        let lines: Vec<String> = errors.errors().iter().map(|e| format!("{}: {e}", spec.display())).collect();
        fail(exit::PARSE, lines.join("\n"))
    })
}

fn target<'c>(compiled: &'c Compiled, name: &str) -> Result<&'c Definition, (String, Failure)> {
    compiled.get(name).ok_or_else(|| {
        let known: Vec<&str> = compiled.keys().map(String::as_str).collect();
        fail(
            exit::UNKNOWN_TARGET,
            format!("unknown target `{name}` (defined: {})", known.join(", ")),
        )
    })
}

fn finite_machine(def: &Definition) -> Result<Machine, (String, Failure)> {
    match def {
        Definition::Machine(m) => Ok(m.clone()),
        Definition::Product(p) => expand_product(p).map_err(model),
        Definition::Function(f) => f.to_machine().map_err(model),
    }
}

fn write_out(path: Option<&Path>, text: &str, stdout: &mut String) -> Result<(), (String, Failure)> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| fail(exit::USAGE, format!("{}: {e}", p.display()))),
        None => {
            stdout.push_str(text);
            Ok(())
        }
    }
}

fn parse_path(text: &str) -> Result<Vec<usize>, (String, Failure)> {
    text.split('/')
        .map(|k| k.trim().parse::<usize>().ok().filter(|&i| i >= 1))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| fail(exit::USAGE, format!("bad factor path `{text}` (expected e.g. `2/1`)")))
}

/// Checks that `path` names a factor, descending through nested products.
fn check_path(p: &ProductDef, path: &[usize], text: &str) -> Result<(), (String, Failure)> {
    let mut current = p;
    for (depth, &i) in path.iter().enumerate() {
        let f = current.factor(i).ok_or_else(|| {
            fail(
                exit::UNKNOWN_TARGET,
                format!("no factor {text}: level {} has {} factors", depth + 1, current.factor_count()),
            )
        })?;
        if depth + 1 < path.len() {
            current = f
                .as_product()
                .ok_or_else(|| fail(exit::UNKNOWN_TARGET, format!("no factor {text}: factor {i} is not a product")))?;
        }
    }
    Ok(())
}

/// The input word and output of the factor at `path`, given the top-level
/// factor words.
fn focus(p: &ProductDef, words: &[Word], path: &[usize]) -> rmoore::Result<(Word, rmoore::Symbol)> {
    let f = p.factor(path[0]).expect("checked path");
    let u = &words[path[0] - 1];
    if path.len() == 1 {
        return Ok((u.clone(), f.eval(u)?));
    }
    let inner = f.as_product().expect("checked path");
    let mut rs = RecursionState::traced(inner)?;
    for &a in u.iter() {
        rs.advance(inner, a)?;
    }
    focus(inner, rs.words().expect("traced"), &path[1..])
}

/// Evaluates `target` on `word`, collecting per-step outputs and, if asked,
/// a trace.
pub fn cmd_run(spec: &Path, target_name: &str, word: &str, trace: bool, factor: Option<&str>) -> Result<RunReport, (String, Failure)> {
    let (_, compiled) = load(spec)?;
    let def = target(&compiled, target_name)?;
    let word = Word::parse(word).map_err(|e| fail(exit::BAD_WORD, e.to_string()))?;
    if let Some(&a) = word.iter().find(|a| !def.alphabet().contains(**a)) {
        return Err(fail(
            exit::BAD_WORD,
            format!("`{a}` is not in the alphabet of `{target_name}` {}", def.alphabet()),
        ));
    }
    let path = match factor {
        Some(text) => {
            let product = def
                .as_product()
                .ok_or_else(|| fail(exit::UNKNOWN_TARGET, format!("`{target_name}` has no factors")))?;
            let path = parse_path(text)?;
            check_path(product, &path, text)?;
            Some((text.to_string(), path))
        }
        None => None,
    };
    let trace = trace || path.is_some();

    let f: StringFunction = def.to_function();
    let mut state = f.initial();
    let initial = f.output(&state).map_err(model)?;
    let product = def.as_product();
    let mut rs = match product {
        Some(p) if trace => Some(RecursionState::traced(p).map_err(model)?),
        _ => None,
    };
    let mut outputs = Vec::with_capacity(word.len());
    let mut rows = Vec::new();
    for (k, &a) in word.iter().enumerate() {
        f.advance(&mut state, a).map_err(model)?;
        let output = f.output(&state).map_err(model)?;
        outputs.push(output);
        if !trace {
            continue;
        }
        let mut row = TraceRow {
            step: k + 1,
            input: a,
            output,
            words: Vec::new(),
            state: None,
            focus: None,
        };
        if let (Some(p), Some(rs)) = (product, rs.as_mut()) {
            rs.advance(p, a).map_err(model)?;
            row.words = rs.words().expect("traced").to_vec();
            if let Some((text, path)) = &path {
                let (u, x) = focus(p, &row.words, path).map_err(model)?;
                row.focus = Some((text.clone(), u, x));
            }
        }
        if let (Definition::Machine(m), rmoore::FnState::Table(s)) = (def, &state) {
            row.state = Some(m.name(*s));
        }
        rows.push(row);
    }
    Ok(RunReport {
        target: target_name.to_string(),
        word,
        initial,
        outputs,
        trace: trace.then_some(rows),
        status: exit::OK,
    })
}

pub(crate) fn run_text(spec: &Path, target: &str, word: &str, trace: bool, factor: Option<&str>) -> CmdResult {
    cmd_run(spec, target, word, trace, factor).map(|r| r.render())
}

/// Compares the recursion with the expanded product on every word up to
/// `max_len`, then against the product's declared reference if it has one.
pub fn cmd_check(spec: &Path, target_name: &str, max_len: usize, budget: u64) -> CmdResult {
    let (doc, compiled) = load(spec)?;
    let def = target(&compiled, target_name)?;
    let p = def
        .as_product()
        .ok_or_else(|| fail(exit::USAGE, format!("`{target_name}` is not a product")))?;
    let mut out = String::new();
    let report = check_theorem1_with_budget(p, max_len, budget).map_err(|e| match e {
        Error::BudgetExceeded {
            checked, complete_len, ..
        } => {
            let done = match complete_len {
                Some(k) => format!("all words up to length {k} agree"),
                None => "no complete length".to_string(),
            };
            fail(
                exit::BUDGET,
                format!("word budget {budget} exhausted after {checked} words; {done}"),
            )
        }
        other => model(other),
    })?;
    if let Some(d) = &report.divergence {
        writeln!(out, "divergence on word: {}", d.word).unwrap();
        writeln!(out, "  recursion: {}", d.recursion).unwrap();
        writeln!(out, "  expansion: {}", d.expanded).unwrap();
        return Err((
            out,
            Failure::new(exit::DIVERGENCE, format!("`{target_name}`: recursion and expansion disagree")),
        ));
    }
    writeln!(
        out,
        "recursion and expansion agree on all {} words of length <= {max_len}",
        report.words_checked
    )
    .unwrap();

    if let Some(reference) = doc.products.get(target_name).and_then(|p| p.reference.as_ref()) {
        let r = target(&compiled, reference)?.to_function();
        let f = def.to_function();
        match first_disagreement(&f, &r, max_len).map_err(model)? {
            None => writeln!(out, "matches reference `{reference}` on all words of length <= {max_len}").unwrap(),
            Some(w) => {
                writeln!(out, "differs from reference `{reference}` on word: {w}").unwrap();
                writeln!(out, "  {target_name}: {}", f.eval(&w).map_err(model)?).unwrap();
                writeln!(out, "  {reference}: {}", r.eval(&w).map_err(model)?).unwrap();
                return Err((
                    out,
                    Failure::new(exit::DIVERGENCE, format!("`{target_name}` disagrees with `{reference}`")),
                ));
            }
        }
    }
    Ok(out)
}

fn render_table(m: &Machine) -> String {
    let mut header = vec!["state".to_string()];
    if m.names().is_some() {
        header.push("name".to_string());
    }
    header.push("output".to_string());
    header.extend(m.alphabet().iter().map(|a| a.to_string()));
    let mut rows = vec![header];
    for s in m.states() {
        let mut row = vec![s.to_string()];
        if m.names().is_some() {
            row.push(m.name(s));
        }
        row.push(m.gamma(s).to_string());
        row.extend(m.alphabet().iter().map(|a| m.delta(s, a).expect("letter").to_string()));
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// A one-machine spec document holding `m` under `name`.
fn machine_document(name: &str, m: &Machine) -> String {
    let spec = MachineSpec {
        alphabet: Some(AlphabetRef::Inline(Symbols(m.alphabet().symbols().to_vec()))),
        start: Some(m.start()),
        states: m.names().map(<[String]>::to_vec),
        outputs: Some(Symbols(m.gammas().to_vec())),
        delta: Some(m.table()),
        ..MachineSpec::default()
    };
    let mut doc = SpecDocument::default();
    doc.machines.insert(name.to_string(), spec);
    render(&doc)
}

fn minimized(spec: &Path, target_name: &str) -> Result<(Machine, MinimizedMachine), (String, Failure)> {
    let (_, compiled) = load(spec)?;
    let m = finite_machine(target(&compiled, target_name)?)?;
    let min = minimize(&m);
    Ok((m, min))
}

/// Prints the state count before and after minimization and the minimal
/// table; `out` receives the minimal machine as a spec document.
pub fn cmd_minimize(spec: &Path, target_name: &str, out: Option<&Path>) -> CmdResult {
    let (m, min) = minimized(spec, target_name)?;
    let mut text = String::new();
    writeln!(text, "states: {} -> {}", m.state_count(), min.state_count()).unwrap();
    text.push_str(&render_table(min.machine()));
    if let Some(path) = out {
        write_out(Some(path), &machine_document(target_name, min.machine()), &mut text)?;
        writeln!(text, "wrote {}", path.display()).unwrap();
    }
    Ok(text)
}

/// Element count, classification, elements with witnesses, and the Cayley
/// table of the minimal machine's transition monoid.
pub fn cmd_monoid(spec: &Path, target_name: &str, out: Option<&Path>) -> CmdResult {
    let cap = monoid_cap().map_err(|f| (String::new(), f))?;
    let (_, min) = minimized(spec, target_name)?;
    let t = transition_monoid_with_cap(min.machine(), cap).map_err(model)?;
    let c = classify(&t);
    let mut text = String::new();
    writeln!(text, "elements: {}", c.element_count).unwrap();
    writeln!(text, "idempotents: {}", c.idempotent_count).unwrap();
    writeln!(text, "group: {}", c.is_group).unwrap();
    writeln!(text, "aperiodic: {}", c.is_aperiodic).unwrap();
    let width = t.len().saturating_sub(1).to_string().len();
    for (i, e) in t.elements().iter().enumerate() {
        let mapping: Vec<String> = e.mapping.iter().map(u32::to_string).collect();
        writeln!(text, "  {i:>width$}  [{}]  {}", mapping.join(" "), e.witness).unwrap();
    }
    text.push_str(&t.render_cayley());
    let mut stdout = String::new();
    write_out(out, &text, &mut stdout)?;
    if let Some(path) = out {
        writeln!(stdout, "wrote {}", path.display()).unwrap();
    }
    Ok(stdout)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz text for `m`: nodes in state order, one edge per letter in
/// alphabet order, and a point-shaped start marker.
pub fn dot(name: &str, m: &Machine) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", dot_escape(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    writeln!(out, "  start [shape=point];").unwrap();
    for s in m.states() {
        writeln!(out, "  s{s} [label=\"{s} / {}\"];", dot_escape(&m.gamma(s).to_string())).unwrap();
    }
    writeln!(out, "  start -> s{};", m.start()).unwrap();
    for s in m.states() {
        for a in m.alphabet().iter() {
            let t = m.delta(s, a).expect("letter");
            writeln!(out, "  s{s} -> s{t} [label=\"{}\"];", dot_escape(&a.to_string())).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn cmd_dot(spec: &Path, target_name: &str, out: Option<&Path>) -> CmdResult {
    let (_, min) = minimized(spec, target_name)?;
    let text = dot(target_name, min.machine());
    let mut stdout = String::new();
    write_out(out, &text, &mut stdout)?;
    if let Some(path) = out {
        writeln!(stdout, "wrote {}", path.display()).unwrap();
    }
    Ok(stdout)
}

/// Evaluates every run directive; fails with the divergence status if any
/// expectation is not met.
pub(crate) fn cmd_verify(spec: &Path) -> CmdResult {
    let (doc, compiled) = load(spec)?;
    let mut out = String::new();
    let mut failed = 0;
    for r in rmoore_specfmt::run_directives(&doc, &compiled) {
        let verdict = if r.passed() { "ok" } else { "FAILED" };
        let got = match &r.output {
            Ok(s) => s.to_string(),
            Err(e) => format!("error: {e}"),
        };
        write!(out, "{verdict}  {} {} -> {got}", r.target, r.word).unwrap();
        if let (false, Some(want)) = (r.passed(), r.expect) {
            write!(out, " (expected {want})").unwrap();
        }
        out.push('\n');
        failed += usize::from(!r.passed());
    }
    if failed > 0 {
        return Err((
            out,
            Failure::new(exit::DIVERGENCE, format!("{failed} run directive(s) failed")),
        ));
    }
    Ok(out)
}

pub(crate) fn cmd_fmt(spec: &Path, check: bool, write: bool) -> CmdResult {
    let text = fs::read_to_string(spec).map_err(|e| fail(exit::PARSE, format!("{}: {e}", spec.display())))?;
    let doc = rmoore_specfmt::parse(&text).map_err(|errors| {
        let lines: Vec<String> = errors.errors().iter().map(|e| format!("{}: {e}", spec.display())).collect();
        fail(exit::PARSE, lines.join("\n"))
    })?;
    let canonical = render(&doc);
    if check {
        if canonical != text {
            return Err(fail(exit::PARSE, format!("{} is not in canonical form", spec.display())));
        }
        return Ok(String::new());
    }
    if write {
        if canonical != text {
            fs::write(spec, &canonical).map_err(|e| fail(exit::USAGE, format!("{}: {e}", spec.display())))?;
        }
        return Ok(String::new());
    }
    Ok(canonical)
}
