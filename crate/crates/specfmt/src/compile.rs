use std::collections::{BTreeMap, BTreeSet};

use rmoore::examples::{builtin, Definition};
use rmoore::product::rules::{EmitItem, GuardOp, Operand, RuleSet};
use rmoore::product::LookupTable;
use rmoore::{Alphabet, ConnectionMap, Machine, OutputMap, ProductDef, Symbol};

use crate::document::{AlphabetRef, MachineSpec, OutputSpec, ProductSpec, SpecDocument, SPECFMT_VERSION};
use crate::error::{SpecError, SpecErrors};

/// Every definition in a document, by name.
pub type Compiled = BTreeMap<String, Definition>;

enum Entry<'a> {
    Machine(&'a MachineSpec),
    Product(&'a ProductSpec),
}

struct Compiler<'a> {
    doc: &'a SpecDocument,
    entries: BTreeMap<&'a str, (String, Entry<'a>)>,
    done: Compiled,
    failed: BTreeSet<String>,
    active: Vec<&'a str>,
    errors: Vec<SpecError>,
}

/// Instantiates every machine and product, checking names, wiring and
/// emission types along the way.
pub fn compile(doc: &SpecDocument) -> Result<Compiled, SpecErrors> {
    if doc.specfmt_version != SPECFMT_VERSION {
        return Err(SpecError::Version(doc.specfmt_version).into());
    }
    let mut c = Compiler {
        doc,
        entries: BTreeMap::new(),
        done: BTreeMap::new(),
        failed: BTreeSet::new(),
        active: Vec::new(),
        errors: Vec::new(),
    };
    for (name, m) in &doc.machines {
        c.entries.insert(name, (format!("machines.{name}"), Entry::Machine(m)));
    }
    for (name, p) in &doc.products {
        let location = format!("products.{name}");
        if doc.machines.contains_key(name) {
            c.errors.push(SpecError::Duplicate {
                location,
                name: name.clone(),
            });
            continue;
        }
        c.entries.insert(name, (location, Entry::Product(p)));
    }
    let names: Vec<&str> = c.entries.keys().copied().collect();
    for name in names {
        c.resolve(name);
    }
    c.check_references();
    c.check_runs();
    if c.errors.is_empty() {
        Ok(c.done)
    } else {
        Err(SpecErrors(c.errors))
    }
}

impl<'a> Compiler<'a> {
    fn alphabet(&mut self, location: &str, r: &AlphabetRef) -> Option<Alphabet> {
        let symbols = match r {
            AlphabetRef::Inline(s) => &s.0,
            AlphabetRef::Named(name) => match self.doc.alphabets.get(name) {
                Some(s) => &s.0,
                None => {
                    self.errors.push(SpecError::Unresolved {
                        location: format!("{location}.alphabet"),
                        kind: "alphabet",
                        name: name.clone(),
                    });
                    return None;
                }
            },
        };
        self.ok(format!("{location}.alphabet"), Alphabet::new(symbols.iter().copied()))
    }

    fn ok<T>(&mut self, location: String, r: rmoore::Result<T>) -> Option<T> {
        r.map_err(|e| self.errors.push(SpecError::model(location, e))).ok()
    }

    /// Compiles `name` and its dependencies; `None` if anything failed.
    fn resolve(&mut self, name: &'a str) -> Option<Definition> {
        if let Some(d) = self.done.get(name) {
            return Some(d.clone());
        }
        if self.failed.contains(name) {
            return None;
        }
        let (location, entry) = match self.entries.get(name) {
            Some((l, Entry::Machine(m))) => (l.clone(), Entry::Machine(m)),
            Some((l, Entry::Product(p))) => (l.clone(), Entry::Product(p)),
            None => return None,
        };
        if self.active.contains(&name) {
            self.errors.push(SpecError::Cycle {
                location,
                name: name.to_string(),
            });
            return None;
        }
        self.active.push(name);
        let built = match entry {
            Entry::Machine(m) => self.machine(&location, m),
            Entry::Product(p) => self.product(&location, p),
        };
        self.active.pop();
        match &built {
            Some(d) => {
                self.done.insert(name.to_string(), d.clone());
            }
            None => {
                self.failed.insert(name.to_string());
            }
        }
        built
    }

    fn machine(&mut self, location: &str, m: &MachineSpec) -> Option<Definition> {
        if let Some(name) = &m.builtin {
            if m.alphabet.is_some() || m.start.is_some() || m.states.is_some() || m.outputs.is_some() || m.delta.is_some()
            {
                self.errors
                    .push(SpecError::invalid(location, "a builtin machine takes only `params`"));
                return None;
            }
            return self.ok(location.to_string(), builtin(name, &m.params));
        }
        if !m.params.is_empty() {
            self.errors
                .push(SpecError::invalid(location, "`params` apply only to builtin machines"));
            return None;
        }
        let (Some(alphabet), Some(outputs), Some(delta)) = (&m.alphabet, &m.outputs, &m.delta) else {
            self.errors.push(SpecError::invalid(
                location,
                "a table machine needs `alphabet`, `outputs` and `delta`",
            ));
            return None;
        };
        let alphabet = self.alphabet(location, alphabet)?;
        let built = Machine::new(alphabet, m.start.unwrap_or(0), delta.clone(), outputs.0.clone());
        let mut machine = self.ok(location.to_string(), built)?;
        if let Some(names) = &m.states {
            machine = self.ok(format!("{location}.states"), machine.with_names(names.clone()))?;
        }
        Some(Definition::Machine(machine))
    }

    fn product(&mut self, location: &str, p: &'a ProductSpec) -> Option<Definition> {
        let alphabet = self.alphabet(location, &p.alphabet);
        let mut factors = Vec::new();
        let mut missing = false;
        for (k, name) in p.factors.iter().enumerate() {
            if !self.entries.contains_key(name.as_str()) {
                self.errors.push(SpecError::Unresolved {
                    location: format!("{location}.factors[{k}]"),
                    kind: "factor",
                    name: name.clone(),
                });
                missing = true;
                continue;
            }
            match self.resolve(name) {
                Some(d) => factors.push(d.to_function()),
                None => missing = true,
            }
        }
        let alphabet = alphabet?;
        if missing {
            return None;
        }
        let h = match &p.output {
            OutputSpec::Tuple => OutputMap::Tuple,
            OutputSpec::Project(i) => OutputMap::Project(*i),
            OutputSpec::WeightedSum(base) => OutputMap::WeightedSum { base: *base },
            OutputSpec::Lookup(l) => {
                let entries = l.entries.iter().map(|e| (e.key.clone(), e.value)).collect();
                OutputMap::Lookup(self.ok(format!("{location}.output"), LookupTable::new(entries, l.default))?)
            }
        };
        let rules = RuleSet::new(
            p.rules
                .iter()
                .map(|r| {
                    let mut rule = rmoore::product::rules::Rule::new(r.factor, r.input.clone(), r.emit.clone());
                    for g in &r.when {
                        rule = rule.with_guard(*g);
                    }
                    rule
                })
                .collect(),
        );
        let product = self.ok(
            location.to_string(),
            ProductDef::new(factors, alphabet, ConnectionMap::Rules(rules), h),
        )?;
        let before = self.errors.len();
        self.check_emissions(location, &product);
        (self.errors.len() == before).then_some(Definition::Product(product))
    }

    /// Every symbol a rule can emit must be accepted by the factor it feeds.
    /// Feedback `out(j)` ranges over `γ` of a table factor `j`, narrowed by an
    /// `out(j) == c` guard on the same rule; other factors are checked when run.
    fn check_emissions(&mut self, location: &str, p: &ProductDef) {
        let n = p.factor_count();
        let rules = p.connection().rules().expect("built from rules");
        for (r, rule) in rules.rules().iter().enumerate() {
            for i in rule.factor.indices(n) {
                let target = p.factor(i).expect("index in range").alphabet();
                for a in p.alphabet().iter() {
                    let Some(bound) = rule.input.matches(a) else { continue };
                    for item in &rule.emit {
                        let candidates: Vec<Symbol> = match item {
                            EmitItem::Lit(s) => vec![*s],
                            EmitItem::Input => vec![a],
                            EmitItem::Param(v) => bound.iter().filter(|(n, _)| n == v).map(|&(_, s)| s).collect(),
                            EmitItem::Out(fr) => {
                                let Ok(j) = fr.resolve(i, n) else { continue };
                                self.feedback_values(p, rule, i, j)
                            }
                        };
                        if let Some(bad) = candidates.into_iter().find(|s| !target.contains(*s)) {
                            self.errors.push(SpecError::Type {
                                location: format!("{location}.rules[{r}]"),
                                message: format!(
                                    "on input `{a}`, `{item}` can emit `{bad}`, which factor {i} does not accept"
                                ),
                            });
                            return;
                        }
                    }
                }
            }
        }
    }

    fn feedback_values(&self, p: &ProductDef, rule: &rmoore::product::rules::Rule, i: usize, j: usize) -> Vec<Symbol> {
        let n = p.factor_count();
        for g in &rule.guards {
            if g.op != GuardOp::Eq {
                continue;
            }
            let pinned = match (&g.left, &g.right) {
                (Operand::Out(r), Operand::Lit(c)) | (Operand::Lit(c), Operand::Out(r)) => {
                    (r.resolve(i, n).ok() == Some(j)).then_some(*c)
                }
                _ => None,
            };
            if let Some(c) = pinned {
                return vec![c];
            }
        }
        match p.factor(j).and_then(|f| f.as_machine()) {
            Some(m) => {
                let mut values: Vec<Symbol> = m.gammas().to_vec();
                values.sort();
                values.dedup();
                values
            }
            None => Vec::new(),
        }
    }

    fn check_references(&mut self) {
        for (name, p) in &self.doc.products {
            let Some(reference) = &p.reference else { continue };
            let location = format!("products.{name}.reference");
            let Some(target) = self.done.get(reference) else {
                if !self.entries.contains_key(reference.as_str()) {
                    self.errors.push(SpecError::Unresolved {
                        location,
                        kind: "reference",
                        name: reference.clone(),
                    });
                }
                continue;
            };
            if let Some(product) = self.done.get(name) {
                if !product.alphabet().same_set(target.alphabet()) {
                    self.errors.push(SpecError::Type {
                        location,
                        message: format!("`{reference}` reads a different alphabet"),
                    });
                }
            }
        }
    }

    fn check_runs(&mut self) {
        for (k, run) in self.doc.runs.iter().enumerate() {
            let location = format!("runs[{k}]");
            let Some(target) = self.done.get(&run.target) else {
                if !self.entries.contains_key(run.target.as_str()) {
                    self.errors.push(SpecError::Unresolved {
                        location,
                        kind: "target",
                        name: run.target.clone(),
                    });
                }
                continue;
            };
            if let Some(&a) = run.word.iter().find(|a| !target.alphabet().contains(**a)) {
                self.errors.push(SpecError::Type {
                    location,
                    message: format!("`{a}` is not in the alphabet of `{}`", run.target),
                });
            }
        }
    }
}
