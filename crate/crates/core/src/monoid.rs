//! The monoid of a finite string function, computed as the transition monoid
//! of its minimal machine: each word class is identified with the map it
//! induces on minimized states.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::minimize::{minimize_function, MinimizedMachine};
use crate::{Machine, StringFunction, Word};

pub const DEFAULT_MONOID_CAP: usize = 10_000;

/// A word class as a total map on minimized states, with the
/// length-lexicographically least word inducing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMapElement {
    pub mapping: Vec<u32>,
    pub witness: Word,
}

impl StateMapElement {
    pub fn apply(&self, state: usize) -> usize {
        self.mapping[state] as usize
    }
}

#[derive(Clone, Debug)]
pub struct MonoidTable {
    elements: Vec<StateMapElement>,
    /// `mul[i * len + j]` = index of `e_i · e_j` (apply `e_i`, then `e_j`).
    mul: Vec<u32>,
    /// Element induced by each alphabet letter.
    generators: Vec<usize>,
}

impl MonoidTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[StateMapElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &StateMapElement {
        &self.elements[i]
    }

    /// `[Λ]`, always element 0.
    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Index of the element whose mapping is `mapping`, if present.
    pub fn find(&self, mapping: &[u32]) -> Option<usize> {
        self.elements.iter().position(|e| e.mapping == mapping)
    }

    /// Rows and columns in discovery order; cells are element indices.
    pub fn render_cayley(&self) -> String {
        let n = self.len();
        let width = n.saturating_sub(1).to_string().len().max(1);
        let mut out = String::new();
        let _ = write!(out, "{:>width$} |", "·");
        for j in 0..n {
            let _ = write!(out, " {j:>width$}");
        }
        out.push('\n');
        let _ = writeln!(out, "{}-+{}", "-".repeat(width), "-".repeat((width + 1) * n));
        for i in 0..n {
            let _ = write!(out, "{i:>width$} |");
            for j in 0..n {
                let _ = write!(out, " {:>width$}", self.mul(i, j));
            }
            out.push('\n');
        }
        out
    }
}

fn compose(first: &[u32], then: &[u32]) -> Vec<u32> {
    first.iter().map(|&s| then[s as usize]).collect()
}

/// Closure of the letter maps under composition, breadth-first from the
/// identity. Letters are tried in alphabet order, so each element's witness
/// is the least word inducing it in length-lexicographic order.
pub fn transition_monoid(m: &MinimizedMachine) -> Result<MonoidTable> {
    transition_monoid_with_cap(m.machine(), DEFAULT_MONOID_CAP)
}

/// Transition monoid of any table machine (minimize first for the monoid of
/// its representing function).
pub fn transition_monoid_with_cap(m: &Machine, cap: usize) -> Result<MonoidTable> {
    let n = m.state_count();
    let k = m.alphabet().len();
    let letter_maps: Vec<Vec<u32>> = (0..k)
        .map(|letter| (0..n).map(|s| m.next_by_index(s, letter) as u32).collect())
        .collect();

    let identity: Vec<u32> = (0..n as u32).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut elements = vec![StateMapElement {
        mapping: identity.clone(),
        witness: Word::empty(),
    }];
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for (letter, lm) in letter_maps.iter().enumerate() {
            let mapping = compose(&elements[e].mapping, lm);
            if index.contains_key(&mapping) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::MonoidTooLarge { cap });
            }
            let witness = elements[e]
                .witness
                .appended(m.alphabet().get(letter).expect("letter"));
            index.insert(mapping.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(StateMapElement { mapping, witness });
        }
    }

    let len = elements.len();
    let mut mul = Vec::with_capacity(len * len);
    for a in &elements {
        for b in &elements {
            mul.push(index[&compose(&a.mapping, &b.mapping)] as u32);
        }
    }
    let generators = letter_maps.iter().map(|lm| index[lm]).collect();
    Ok(MonoidTable {
        elements,
        mul,
        generators,
    })
}

/// The monoid determined by a finite string function.
pub fn monoid_of(f: &StringFunction) -> Result<MonoidTable> {
    transition_monoid(&minimize_function(f)?)
}

/// `w ≡_f u`: both words induce the same map on the states of `f`'s
/// minimal machine.
pub fn congruent(f: &StringFunction, w: &Word, u: &Word) -> Result<bool> {
    let min = minimize_function(f)?;
    congruent_in(&min, w, u)
}

/// [`congruent`] against an already minimized machine.
pub fn congruent_in(min: &MinimizedMachine, w: &Word, u: &Word) -> Result<bool> {
    let m = min.machine();
    for s in m.states() {
        if m.delta_star(s, w)? != m.delta_star(s, u)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_group: bool,
    pub is_aperiodic: bool,
    pub element_count: usize,
    pub idempotent_count: usize,
}

/// `is_group`: every element has a two-sided inverse. `is_aperiodic`: every
/// element's powers reach a fixed point `x^k = x^(k+1)`, i.e. every cyclic
/// subsemigroup has period 1, so no nontrivial group embeds.
pub fn classify(t: &MonoidTable) -> Classification {
    let n = t.len();
    let e = t.identity();
    let is_group = (0..n).all(|x| (0..n).any(|y| t.mul(x, y) == e && t.mul(y, x) == e));
    let idempotent_count = (0..n).filter(|&x| t.mul(x, x) == x).count();
    let is_aperiodic = (0..n).all(|x| {
        // walk x, x^2, ... until a repeat; period 1 iff the repeat is a fixed point
        let mut seen = vec![false; n];
        let mut p = x;
        while !seen[p] {
            seen[p] = true;
            p = t.mul(p, x);
        }
        t.mul(p, x) == p
    });
    Classification {
        is_group,
        is_aperiodic,
        element_count: n,
        idempotent_count,
    }
}
