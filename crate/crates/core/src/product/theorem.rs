use crate::error::{Error, Result};
use crate::function::FnState;
use crate::{Symbol, Word};

use super::eval::{advance_config, config_output, initial_config};
use super::{expand_product, word_at, ProductDef};

/// Word budget used by [`check_theorem1`].
pub const DEFAULT_WORD_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub word: Word,
    pub recursion: Symbol,
    pub expanded: Symbol,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub max_len: usize,
    pub words_checked: u64,
    /// The length-lexicographically least disagreeing word, if any.
    pub divergence: Option<Divergence>,
}

impl TheoremReport {
    pub fn agrees(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Compares [`recursion_eval`](super::recursion_eval) with the representing
/// function of [`expand_product`] on every word of length `≤ max_len`.
pub fn check_theorem1(p: &ProductDef, max_len: usize) -> Result<TheoremReport> {
    check_theorem1_with_budget(p, max_len, DEFAULT_WORD_BUDGET)
}

/// Words are visited level by level in length-lexicographic order, so the
/// first divergence found is minimal. Each level is derived from the previous
/// one by a single step on both sides.
pub fn check_theorem1_with_budget(p: &ProductDef, max_len: usize, budget: u64) -> Result<TheoremReport> {
    if let Some(f) = p.factors().iter().find(|f| !f.is_finite()) {
        return Err(Error::InfiniteFunction(f.describe()));
    }
    let expanded = expand_product(p)?;
    let alphabet = p.alphabet().clone();
    let k = alphabet.len();

    let mut frontier: Vec<(Box<[FnState]>, usize)> = vec![(initial_config(p), expanded.start())];
    let mut checked: u64 = 0;
    for len in 0..=max_len {
        if checked + frontier.len() as u64 > budget {
            return Err(Error::BudgetExceeded {
                budget,
                checked,
                complete_len: len.checked_sub(1),
            });
        }
        for (index, (config, state)) in frontier.iter().enumerate() {
            checked += 1;
            let recursion = config_output(p, config)?;
            let expanded_out = expanded.gamma(*state);
            if recursion != expanded_out {
                return Ok(TheoremReport {
                    max_len,
                    words_checked: checked,
                    divergence: Some(Divergence {
                        word: word_at(&alphabet, len, index),
                        recursion,
                        expanded: expanded_out,
                    }),
                });
            }
        }
        if len == max_len || k == 0 {
            break;
        }
        let mut next = Vec::with_capacity(frontier.len() * k);
        for (config, state) in &frontier {
            for (letter, a) in alphabet.iter().enumerate() {
                let mut c = config.clone();
                advance_config(p, &mut c, a, None)?;
                next.push((c, expanded.next_by_index(*state, letter)));
            }
        }
        frontier = next;
    }
    Ok(TheoremReport {
        max_len,
        words_checked: checked,
        divergence: None,
    })
}
