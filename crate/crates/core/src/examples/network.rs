//! A broadcast network of nodes `D_1..D_n` plus an arbiter `R`, driven by a
//! single composite input `TICK`.
//!
//! Every node outputs `node[m,c]`: the message `m` it is trying to send
//! (`NULL` for none) and whether it is `ready` or `busy`. On each tick, with
//! `j` the arbiter's current choice and `node[m,_]` the output of `D_j`, each
//! ready node `D_i` receives `RECV[m] TICK` when `m` is not `NULL`; every
//! other node receives just `TICK`. The arbiter receives `flags[b_1,...,b_n]`
//! where `b_j` is 1 when `D_j` has a pending message.
//!
//! The arbiter is a finite machine and therefore reacts one tick late: its
//! choice for the current tick was computed from the flags of the previous
//! one.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::product::{ConnectionMap, OutputMap, ProductDef};
use crate::{Alphabet, Machine, StringFunction, Symbol, Word};

pub const TICK: &str = "TICK";
pub const RECV: &str = "RECV";
pub const TRANSMIT: &str = "TRANSMIT";
pub const NULL: &str = "NULL";
pub const READY: &str = "ready";
pub const BUSY: &str = "busy";
pub const NODE: &str = "node";
pub const FLAGS: &str = "flags";

pub fn tick() -> Symbol {
    Symbol::new(TICK)
}

pub fn recv(m: Symbol) -> Symbol {
    Symbol::with_params(RECV, vec![m])
}

pub fn transmit(m: Symbol) -> Symbol {
    Symbol::with_params(TRANSMIT, vec![m])
}

pub fn node_output(message: Option<Symbol>, ready: bool) -> Symbol {
    Symbol::with_params(
        NODE,
        vec![
            message.unwrap_or_else(|| Symbol::new(NULL)),
            Symbol::new(if ready { READY } else { BUSY }),
        ],
    )
}

/// A node output `node[m,c]` taken apart: the pending message (`None` for
/// `NULL`) and readiness.
pub fn parse_node_output(node: usize, output: Symbol) -> Result<(Option<Symbol>, bool)> {
    let malformed = || Error::MalformedNodeOutput { node, output };
    if output.name() != NODE || output.params().len() != 2 {
        return Err(malformed());
    }
    let (m, c) = (output.params()[0], output.params()[1]);
    let ready = match c.name() {
        READY if c.params().is_empty() => true,
        BUSY if c.params().is_empty() => false,
        _ => return Err(malformed()),
    };
    Ok(((m != Symbol::new(NULL)).then_some(m), ready))
}

/// `RECV[m]` and `TRANSMIT[m]` for each message, then `TICK`.
pub fn node_alphabet(messages: &Alphabet) -> Alphabet {
    let recvs = messages.iter().map(recv);
    let sends = messages.iter().map(transmit);
    Alphabet::new(recvs.chain(sends).chain([tick()])).expect("distinct messages")
}

/// The default node: a bounded FIFO that rebroadcasts what it hears.
///
/// `RECV[m]` and `TRANSMIT[m]` append `m` when there is room. On `TICK` the
/// message that was at the head when the tick began is dropped: it has had
/// its one broadcast attempt. The node is busy while the queue is full.
///
/// States are `(queue, arrivals this tick)` pairs, enumerated up front.
pub fn echo_node(messages: &Alphabet, capacity: usize, seed: &[Symbol]) -> Result<Machine> {
    if capacity == 0 {
        return Err(Error::BadParameter("node capacity must be at least 1".into()));
    }
    if seed.len() > capacity {
        return Err(Error::BadParameter(format!(
            "seed of {} messages exceeds capacity {capacity}",
            seed.len()
        )));
    }
    if let Some(&m) = seed.iter().find(|&&m| !messages.contains(m)) {
        return Err(Error::UnknownSymbol {
            symbol: m,
            context: "the message alphabet".into(),
        });
    }
    let alphabet = node_alphabet(messages);

    // All queues up to `capacity`, shortest first, then every arrival count.
    let mut queues: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..capacity {
        let mut next = Vec::new();
        for q in &frontier {
            for m in 0..messages.len() {
                let mut q2: Vec<usize> = q.clone();
                q2.push(m);
                next.push(q2);
            }
        }
        queues.extend(next.iter().cloned());
        frontier = next;
    }
    let mut states: Vec<(Vec<usize>, usize)> = Vec::new();
    for q in &queues {
        for arrivals in 0..=q.len() {
            states.push((q.clone(), arrivals));
        }
    }
    let index = |q: &[usize], arrivals: usize| -> usize {
        states
            .iter()
            .position(|(sq, sa)| sq == q && *sa == arrivals)
            .expect("enumerated state")
    };

    let seed_q: Vec<usize> = seed
        .iter()
        .map(|&m| messages.index_of(m).expect("checked above"))
        .collect();
    let start = index(&seed_q, 0);
    let mut table = Vec::with_capacity(states.len());
    let mut gamma = Vec::with_capacity(states.len());
    let mut names = Vec::with_capacity(states.len());
    for (q, arrivals) in &states {
        let mut row = Vec::with_capacity(alphabet.len());
        for a in alphabet.iter() {
            let mut q2: VecDeque<usize> = q.iter().copied().collect();
            let mut arr = *arrivals;
            if a == tick() {
                if q2.len() > arr {
                    q2.pop_front();
                }
                arr = 0;
            } else if q2.len() < capacity {
                let m = messages.index_of(a.params()[0]).expect("message parameter");
                q2.push_back(m);
                arr += 1;
            }
            let q2: Vec<usize> = q2.into();
            row.push(index(&q2, arr));
        }
        table.push(row);
        let head = q.first().map(|&m| messages.get(m).expect("message"));
        gamma.push(node_output(head, q.len() < capacity));
        let rendered: Vec<String> = q.iter().map(|&m| messages.get(m).expect("message").to_string()).collect();
        names.push(format!("[{}]+{arrivals}", rendered.join(" ")));
    }
    Machine::new(alphabet, start, table, gamma)?.with_names(names)
}

/// How the arbiter picks a sender.
#[derive(Clone, Debug)]
pub enum ArbiterPolicy {
    /// Starts on node `start`; on each tick moves to the next node after the
    /// current one, cyclically, that reported a pending message, or simply
    /// to the next node when none did.
    RoundRobin { start: usize },
    /// Any machine over the `flags[...]` alphabet whose outputs are node indices.
    Custom(Machine),
}

pub fn flags(bits: &[bool]) -> Symbol {
    Symbol::with_params(FLAGS, bits.iter().map(|&b| Symbol::int(b as i64)).collect::<Vec<_>>())
}

/// Every `flags[b_1,...,b_n]` symbol, in binary counting order with `b_1`
/// most significant.
pub fn flag_alphabet(n: usize) -> Alphabet {
    let all = (0..1usize << n).map(|code| {
        let bits: Vec<bool> = (0..n).map(|j| (code >> (n - 1 - j)) & 1 == 1).collect();
        flags(&bits)
    });
    Alphabet::new(all).expect("distinct flag vectors")
}

pub fn round_robin_arbiter(n: usize, start: usize) -> Result<Machine> {
    if n == 0 || start == 0 || start > n {
        return Err(Error::BadParameter(format!(
            "round-robin start {start} outside 1..={n}"
        )));
    }
    let alphabet = flag_alphabet(n);
    Machine::from_fn(
        alphabet,
        n,
        start - 1,
        |current, f| {
            let pending: Vec<bool> = f.params().iter().map(|b| b.as_int() == Some(1)).collect();
            (1..=n)
                .map(|d| (current + d) % n)
                .find(|&j| pending[j])
                .unwrap_or((current + 1) % n)
        },
        |s| Symbol::int(s as i64 + 1),
    )
}

#[derive(Clone, Debug)]
pub struct NetworkConfig {
    pub nodes: Vec<StringFunction>,
    pub messages: Alphabet,
    pub arbiter: ArbiterPolicy,
}

impl NetworkConfig {
    /// `seeds[i]` is the initial queue of node `i + 1`.
    pub fn echo(messages: Alphabet, capacity: usize, seeds: &[Vec<Symbol>], arbiter_start: usize) -> Result<Self> {
        let nodes = seeds
            .iter()
            .map(|seed| echo_node(&messages, capacity, seed).map(StringFunction::from))
            .collect::<Result<Vec<_>>>()?;
        Ok(NetworkConfig {
            nodes,
            messages,
            arbiter: ArbiterPolicy::RoundRobin { start: arbiter_start },
        })
    }
}

/// The delivery rule: the words fed to every node and to the arbiter for one
/// `TICK`, given the pre-step outputs `x⃗ = (D_1, …, D_n, R)`.
pub fn network_connection(i: usize, feedback: &[Symbol]) -> Result<Word> {
    let n = feedback.len() - 1;
    let parsed = feedback[..n]
        .iter()
        .enumerate()
        .map(|(k, &x)| parse_node_output(k + 1, x))
        .collect::<Result<Vec<_>>>()?;
    if i == n + 1 {
        let bits: Vec<bool> = parsed.iter().map(|(m, _)| m.is_some()).collect();
        return Ok(Word::single(flags(&bits)));
    }
    let chosen = feedback[n]
        .as_int()
        .filter(|&j| j >= 1 && j as usize <= n)
        .ok_or_else(|| Error::BadParameter(format!("arbiter output `{}` is not a node index", feedback[n])))?
        as usize;
    let (pending, _) = parsed[chosen - 1];
    let (_, ready) = parsed[i - 1];
    Ok(match pending {
        Some(m) if ready => Word::from(vec![recv(m), tick()]),
        _ => Word::single(tick()),
    })
}

/// `N(w) = (D_1(u_1), …, D_n(u_n), R(v))`; the arbiter is factor `n + 1`.
pub fn make_network(config: &NetworkConfig) -> Result<ProductDef> {
    let n = config.nodes.len();
    if n == 0 {
        return Err(Error::BadParameter("network needs at least one node".into()));
    }
    for (k, node) in config.nodes.iter().enumerate() {
        for needed in config.messages.iter().map(recv).chain([tick()]) {
            if !node.alphabet().contains(needed) {
                return Err(Error::AlphabetMismatch(format!(
                    "node {} does not accept `{needed}`",
                    k + 1
                )));
            }
        }
    }
    let arbiter = match &config.arbiter {
        ArbiterPolicy::RoundRobin { start } => round_robin_arbiter(n, *start)?,
        ArbiterPolicy::Custom(m) => {
            if !m.alphabet().same_set(&flag_alphabet(n)) {
                return Err(Error::AlphabetMismatch("arbiter must read flags[...] symbols".into()));
            }
            m.clone()
        }
    };
    let mut factors = config.nodes.clone();
    factors.push(arbiter.into());
    ProductDef::new(
        factors,
        Alphabet::new([tick()])?,
        ConnectionMap::opaque(|i, _, feedback| network_connection(i, feedback)),
        OutputMap::Tuple,
    )
}
