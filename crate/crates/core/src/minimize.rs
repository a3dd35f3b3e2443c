//! Reachability, Moore partition refinement and machine equivalence.
//!
//! [`minimize`] yields the canonical machine of a representing function:
//! unreachable states removed, observationally equivalent states merged,
//! states numbered in breadth-first discovery order from the start state.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::machine::StateId;
use crate::{Machine, StringFunction, Symbol, Word};

/// Breadth-first discovery order from start, following letters in alphabet
/// order. Returns the order and the inverse map.
fn bfs_order(m: &Machine) -> (Vec<StateId>, Vec<Option<StateId>>) {
    let mut new_id = vec![None; m.state_count()];
    let mut order = vec![m.start()];
    new_id[m.start()] = Some(0);
    let mut head = 0;
    while head < order.len() {
        let s = order[head];
        head += 1;
        for k in 0..m.alphabet().len() {
            let t = m.next_by_index(s, k);
            if new_id[t].is_none() {
                new_id[t] = Some(order.len());
                order.push(t);
            }
        }
    }
    (order, new_id)
}

fn renumber(m: &Machine, order: &[StateId], new_id: &[Option<StateId>]) -> Machine {
    let k = m.alphabet().len();
    let mut delta = Vec::with_capacity(order.len() * k);
    for &s in order {
        for letter in 0..k {
            delta.push(new_id[m.next_by_index(s, letter)].expect("successor of a reachable state"));
        }
    }
    let gamma = order.iter().map(|&s| m.gamma(s)).collect();
    let out = Machine::from_flat(m.alphabet().clone(), 0, delta, gamma);
    match m.names() {
        Some(names) => out
            .with_names(order.iter().map(|&s| names[s].clone()).collect())
            .expect("one name per state"),
        None => out,
    }
}

/// `m` restricted to the states reachable from start, renumbered in BFS order.
pub fn reachable(m: &Machine) -> Machine {
    let (order, new_id) = bfs_order(m);
    renumber(m, &order, &new_id)
}

/// Observational-equivalence classes of all states of `m` (reachable or
/// not), as arbitrary dense block ids.
fn moore_partition(m: &Machine) -> Vec<usize> {
    let n = m.state_count();
    let k = m.alphabet().len();
    let mut block: Vec<usize> = {
        let mut ids: HashMap<Symbol, usize> = HashMap::new();
        m.gammas()
            .iter()
            .map(|&x| {
                let next = ids.len();
                *ids.entry(x).or_insert(next)
            })
            .collect()
    };
    let mut count = block.iter().copied().max().map_or(0, |b| b + 1);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::with_capacity(count);
        let mut next = Vec::with_capacity(n);
        for s in 0..n {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(block[s]);
            sig.extend((0..k).map(|letter| block[m.next_by_index(s, letter)]));
            let fresh = ids.len();
            next.push(*ids.entry(sig).or_insert(fresh));
        }
        let refined = ids.len();
        block = next;
        if refined == count {
            return block;
        }
        count = refined;
    }
}

/// Shortest distinguishing words between states of a minimal machine,
/// stored as one step per pair (first letter, or "outputs differ").
#[derive(Clone, Debug)]
struct Witnesses {
    n: usize,
    /// `u32::MAX`: outputs differ now. Otherwise the index of the first letter.
    first: Vec<u32>,
}

const OUTPUT_DIFFERS: u32 = u32::MAX;
const UNKNOWN: u32 = u32::MAX - 1;

impl Witnesses {
    fn slot(&self, p: StateId, q: StateId) -> usize {
        let (p, q) = if p < q { (p, q) } else { (q, p) };
        q * (q - 1) / 2 + p
    }

    fn compute(m: &Machine) -> Witnesses {
        let n = m.state_count();
        let k = m.alphabet().len();
        let mut w = Witnesses {
            n,
            first: vec![UNKNOWN; n * n.saturating_sub(1) / 2],
        };
        let mut round = vec![u32::MAX; w.first.len()];
        for q in 1..n {
            for p in 0..q {
                if m.gamma(p) != m.gamma(q) {
                    let i = w.slot(p, q);
                    w.first[i] = OUTPUT_DIFFERS;
                    round[i] = 0;
                }
            }
        }
        let mut r = 0u32;
        loop {
            r += 1;
            let mut changed = false;
            for q in 1..n {
                for p in 0..q {
                    let i = w.slot(p, q);
                    if round[i] != u32::MAX {
                        continue;
                    }
                    for letter in 0..k {
                        let (tp, tq) = (m.next_by_index(p, letter), m.next_by_index(q, letter));
                        if tp != tq && round[w.slot(tp, tq)] < r {
                            w.first[i] = letter as u32;
                            round[i] = r;
                            changed = true;
                            break;
                        }
                    }
                }
            }
            if !changed {
                return w;
            }
        }
    }

    fn word(&self, m: &Machine, mut p: StateId, mut q: StateId) -> Option<Word> {
        if p == q || p >= self.n || q >= self.n {
            return None;
        }
        let mut word = Word::empty();
        loop {
            match self.first[self.slot(p, q)] {
                OUTPUT_DIFFERS => return Some(word),
                UNKNOWN => return None,
                letter => {
                    let letter = letter as usize;
                    word.push(m.alphabet().get(letter).expect("letter index"));
                    p = m.next_by_index(p, letter);
                    q = m.next_by_index(q, letter);
                }
            }
        }
    }
}

/// The minimal machine together with the quotient map and pairwise witnesses.
#[derive(Clone, Debug)]
pub struct MinimizedMachine {
    machine: Machine,
    class_of: Vec<Option<StateId>>,
    witnesses: Witnesses,
}

impl MinimizedMachine {
    pub fn machine(&self) -> &Machine {
        &self.machine
    }

    pub fn into_machine(self) -> Machine {
        self.machine
    }

    pub fn state_count(&self) -> usize {
        self.machine.state_count()
    }

    /// Minimized state of an original state; `None` if it was unreachable.
    pub fn class_of(&self, original: StateId) -> Option<StateId> {
        self.class_of.get(original).copied().flatten()
    }

    /// A shortest (then lexicographically least) word after which the two
    /// minimized states produce different outputs.
    pub fn witness(&self, p: StateId, q: StateId) -> Option<Word> {
        self.witnesses.word(&self.machine, p, q)
    }
}

pub fn minimize(m: &Machine) -> MinimizedMachine {
    let block = moore_partition(m);
    let n = m.state_count();
    let k = m.alphabet().len();

    // Number blocks by BFS from the start block over representatives.
    let mut block_id: Vec<Option<StateId>> = vec![None; n];
    let mut reps: Vec<StateId> = vec![m.start()];
    block_id[block[m.start()]] = Some(0);
    let mut head = 0;
    while head < reps.len() {
        let s = reps[head];
        head += 1;
        for letter in 0..k {
            let t = m.next_by_index(s, letter);
            if block_id[block[t]].is_none() {
                block_id[block[t]] = Some(reps.len());
                reps.push(t);
            }
        }
    }
    let mut delta = Vec::with_capacity(reps.len() * k);
    for &s in &reps {
        for letter in 0..k {
            delta.push(block_id[block[m.next_by_index(s, letter)]].expect("reachable block"));
        }
    }
    let gamma = reps.iter().map(|&s| m.gamma(s)).collect();
    let mut machine = Machine::from_flat(m.alphabet().clone(), 0, delta, gamma);
    if let Some(names) = m.names() {
        machine = machine
            .with_names(reps.iter().map(|&s| names[s].clone()).collect())
            .expect("one name per state");
    }

    let (_, reach) = bfs_order(m);
    let class_of = (0..n)
        .map(|s| reach[s].and_then(|_| block_id[block[s]]))
        .collect();
    let witnesses = Witnesses::compute(&machine);
    MinimizedMachine {
        machine,
        class_of,
        witnesses,
    }
}

/// Minimizes a finite string function.
pub fn minimize_function(f: &StringFunction) -> Result<MinimizedMachine> {
    if !f.is_finite() {
        return Err(Error::InfiniteFunction(f.describe()));
    }
    Ok(minimize(&f.to_machine()?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Complete for finite machines.
    Exhaustive,
    /// Only words of length at most this.
    UpTo(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// A shortest distinguishing word when not equivalent.
    pub counterexample: Option<Word>,
}

/// Behavioural equivalence by breadth-first search over state pairs. The
/// first pair found with different outputs yields a shortest counterexample.
/// Input alphabets must contain the same symbols; their order may differ.
pub fn equivalent(m1: &Machine, m2: &Machine, bound: Bound) -> Result<Equivalence> {
    if !m1.alphabet().same_set(m2.alphabet()) {
        return Err(Error::AlphabetMismatch(format!(
            "{} vs {}",
            m1.alphabet(),
            m2.alphabet()
        )));
    }
    let letters2: Vec<usize> = m1
        .alphabet()
        .iter()
        .map(|a| m2.alphabet().index_of(a).expect("same symbols"))
        .collect();
    let depth_limit = match bound {
        Bound::Exhaustive => usize::MAX,
        Bound::UpTo(d) => d,
    };

    let start = (m1.start(), m2.start());
    type Pair = (StateId, StateId);
    // pair -> (parent pair, letter, depth)
    let mut seen: HashMap<Pair, (Option<Pair>, usize, usize)> = HashMap::new();
    seen.insert(start, (None, 0, 0));
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        let (p, q) = pair;
        let depth = seen[&pair].2;
        if m1.gamma(p) != m2.gamma(q) {
            let mut letters = Vec::new();
            let mut cur = pair;
            while let Some((Some(parent), letter, _)) = seen.get(&cur).copied() {
                letters.push(m1.alphabet().get(letter).expect("letter"));
                cur = parent;
            }
            letters.reverse();
            return Ok(Equivalence {
                equivalent: false,
                counterexample: Some(letters.into()),
            });
        }
        if depth >= depth_limit {
            continue;
        }
        for (letter, &l2) in letters2.iter().enumerate() {
            let next = (m1.next_by_index(p, letter), m2.next_by_index(q, l2));
            seen.entry(next).or_insert_with(|| {
                queue.push_back(next);
                (Some(pair), letter, depth + 1)
            });
        }
    }
    Ok(Equivalence {
        equivalent: true,
        counterexample: None,
    })
}

/// Whether two minimal machines are identical up to renaming of states,
/// checked by walking both in lockstep from their starts.
pub fn isomorphic(m1: &Machine, m2: &Machine) -> bool {
    if m1.state_count() != m2.state_count() || !m1.alphabet().same_set(m2.alphabet()) {
        return false;
    }
    let mut map: Vec<Option<StateId>> = vec![None; m1.state_count()];
    let mut used = vec![false; m2.state_count()];
    let mut queue = VecDeque::from([(m1.start(), m2.start())]);
    map[m1.start()] = Some(m2.start());
    used[m2.start()] = true;
    while let Some((p, q)) = queue.pop_front() {
        if m1.gamma(p) != m2.gamma(q) {
            return false;
        }
        for (letter, a) in m1.alphabet().iter().enumerate() {
            let tp = m1.next_by_index(p, letter);
            let tq = m2.next_by_index(q, m2.alphabet().index_of(a).expect("same symbols"));
            match map[tp] {
                Some(x) if x == tq => {}
                Some(_) => return false,
                None => {
                    if used[tq] {
                        return false;
                    }
                    map[tp] = Some(tq);
                    used[tq] = true;
                    queue.push_back((tp, tq));
                }
            }
        }
    }
    true
}
