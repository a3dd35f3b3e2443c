use std::fmt::Write;

use rmoore::{Symbol, Word};

/// One input letter's effect on the target.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub step: usize,
    pub input: Symbol,
    pub output: Symbol,
    /// For products, every factor's input word `u_i` after this step.
    pub words: Vec<Word>,
    /// For table machines, the state reached.
    pub state: Option<String>,
    /// The factor selected with `--factor`: its path, input word and output.
    pub focus: Option<(String, Word, Symbol)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub target: String,
    pub word: Word,
    pub initial: Symbol,
    /// `f` of each non-empty prefix of the word, in order.
    pub outputs: Vec<Symbol>,
    pub trace: Option<Vec<TraceRow>>,
    pub status: i32,
}

impl RunReport {
    pub fn output(&self) -> Symbol {
        self.outputs.last().copied().unwrap_or(self.initial)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "target: {}", self.target).unwrap();
        writeln!(out, "word: {}", self.word).unwrap();
        if let Some(rows) = &self.trace {
            writeln!(out, "initial: {}", self.initial).unwrap();
            for row in rows {
                write!(out, "step {}: {} -> {}", row.step, row.input, row.output).unwrap();
                if let Some(state) = &row.state {
                    write!(out, " | state {state}").unwrap();
                }
                for (i, u) in row.words.iter().enumerate() {
                    write!(out, " | u_{} = {u}", i + 1).unwrap();
                }
                if let Some((path, u, x)) = &row.focus {
                    write!(out, " | factor {path}: {u} -> {x}").unwrap();
                }
                out.push('\n');
            }
        }
        writeln!(out, "output: {}", self.output()).unwrap();
        out
    }
}
