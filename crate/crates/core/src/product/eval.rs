use crate::error::{Error, Result};
use crate::function::FnState;
use crate::{Symbol, Word};

use super::ProductDef;

pub(crate) fn initial_config(p: &ProductDef) -> Box<[FnState]> {
    p.factors().iter().map(|f| f.initial()).collect()
}

pub(crate) fn factor_outputs(p: &ProductDef, config: &[FnState]) -> Result<Vec<Symbol>> {
    p.factors()
        .iter()
        .zip(config)
        .map(|(f, s)| f.output(s))
        .collect()
}

pub(crate) fn config_output(p: &ProductDef, config: &[FnState]) -> Result<Symbol> {
    p.output_map().apply(&factor_outputs(p, config)?)
}

/// One composite step. All emitted words are computed from the pre-step
/// feedback before any factor moves; factor `i` then consumes its whole word.
/// When `emitted` is given it receives `g(i, a, x⃗)` for each factor.
pub(crate) fn advance_config(
    p: &ProductDef,
    config: &mut [FnState],
    a: Symbol,
    emitted: Option<&mut Vec<Word>>,
) -> Result<()> {
    if !p.alphabet().contains(a) {
        return Err(Error::UnknownSymbol {
            symbol: a,
            context: "the product".into(),
        });
    }
    let feedback = factor_outputs(p, config)?;
    let words = (1..=p.factor_count())
        .map(|i| p.connect(i, a, &feedback))
        .collect::<Result<Vec<Word>>>()?;
    for ((f, state), w) in p.factors().iter().zip(config.iter_mut()).zip(&words) {
        f.advance_word(state, w)?;
    }
    if let Some(out) = emitted {
        *out = words;
    }
    Ok(())
}

/// The simultaneous-recursion state after some word `w`: the current state
/// of every factor, `|u_i(w)|`, and optionally the words `u_i(w)` themselves.
#[derive(Clone, Debug)]
pub struct RecursionState {
    config: Box<[FnState]>,
    output: Symbol,
    steps: usize,
    consumed: Vec<usize>,
    words: Option<Vec<Word>>,
    last_emitted: Vec<Word>,
}

impl RecursionState {
    /// The state for Λ. Every `u_i` is empty.
    pub fn initial(p: &ProductDef) -> Result<RecursionState> {
        let config = initial_config(p);
        let output = config_output(p, &config)?;
        Ok(RecursionState {
            config,
            output,
            steps: 0,
            consumed: vec![0; p.factor_count()],
            words: None,
            last_emitted: Vec::new(),
        })
    }

    /// Like [`initial`](Self::initial) but also records each `u_i` in full.
    pub fn traced(p: &ProductDef) -> Result<RecursionState> {
        let mut rs = RecursionState::initial(p)?;
        rs.words = Some(vec![Word::empty(); p.factor_count()]);
        Ok(rs)
    }

    pub fn advance(&mut self, p: &ProductDef, a: Symbol) -> Result<()> {
        let mut emitted = Vec::new();
        advance_config(p, &mut self.config, a, Some(&mut emitted))?;
        self.output = config_output(p, &self.config)?;
        self.steps += 1;
        for (i, w) in emitted.iter().enumerate() {
            self.consumed[i] += w.len();
            if let Some(words) = &mut self.words {
                words[i].extend_from(w);
            }
        }
        self.last_emitted = emitted;
        Ok(())
    }

    /// `f(w)`.
    pub fn output(&self) -> Symbol {
        self.output
    }

    /// `|w|`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn config(&self) -> &[FnState] {
        &self.config
    }

    /// `|u_i(w)|` for each factor (0-based vector).
    pub fn consumed(&self) -> &[usize] {
        &self.consumed
    }

    /// `u_i(w)` for each factor, when traced.
    pub fn words(&self) -> Option<&[Word]> {
        self.words.as_deref()
    }

    /// The words `g(i, a, x⃗)` appended by the most recent step.
    pub fn last_emitted(&self) -> &[Word] {
        &self.last_emitted
    }

    pub fn factor_outputs(&self, p: &ProductDef) -> Result<Vec<Symbol>> {
        factor_outputs(p, &self.config)
    }
}

/// The state for `wa`, given the state for `w`.
pub fn step(p: &ProductDef, rs: &RecursionState, a: Symbol) -> Result<RecursionState> {
    let mut next = rs.clone();
    next.advance(p, a)?;
    Ok(next)
}

/// `f(w) = h(f_1(u_1(w)), …, f_n(u_n(w)))` with `u_i(wa) = u_i(w) ∘ g(i, a, x⃗(w))`.
pub fn recursion_eval(p: &ProductDef, w: &[Symbol]) -> Result<Symbol> {
    let mut rs = RecursionState::initial(p)?;
    for &a in w {
        rs.advance(p, a)?;
    }
    Ok(rs.output())
}
