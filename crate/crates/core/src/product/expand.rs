use crate::error::{Error, Result};
use crate::{Machine, StringFunction, Symbol};

use super::ProductDef;

/// Upper bound on `Π|S_i|` accepted by [`expand_product`].
pub const DEFAULT_EXPANSION_LIMIT: usize = 1 << 22;

/// The explicit product machine over the full Cartesian product of factor
/// states, unreachable tuples included. State ids are mixed-radix with
/// factor 1 as the most significant digit; state names are `(s1,...,sn)`.
pub fn expand_product(p: &ProductDef) -> Result<Machine> {
    expand_product_with_limit(p, DEFAULT_EXPANSION_LIMIT)
}

pub fn expand_product_with_limit(p: &ProductDef, limit: usize) -> Result<Machine> {
    let factors: Vec<Machine> = p
        .factors()
        .iter()
        .map(StringFunction::to_machine)
        .collect::<Result<_>>()?;
    let sizes: Vec<usize> = factors.iter().map(Machine::state_count).collect();
    let needed: u128 = sizes.iter().map(|&s| s as u128).product();
    if needed > limit as u128 {
        return Err(Error::ExpansionTooLarge {
            needed,
            limit: limit as u128,
        });
    }
    let total = needed as usize;
    let n = factors.len();
    let alphabet = p.alphabet().clone();

    let encode = |tuple: &[usize]| tuple.iter().zip(&sizes).fold(0usize, |acc, (&s, &size)| acc * size + s);
    let decode = |mut code: usize, out: &mut [usize]| {
        for i in (0..n).rev() {
            out[i] = code % sizes[i];
            code /= sizes[i];
        }
    };

    let mut delta = Vec::with_capacity(total * alphabet.len());
    let mut gamma = Vec::with_capacity(total);
    let mut names = Vec::with_capacity(total);
    let mut tuple = vec![0usize; n];
    let mut next = vec![0usize; n];
    for code in 0..total {
        decode(code, &mut tuple);
        let feedback: Vec<Symbol> = factors.iter().zip(&tuple).map(|(m, &s)| m.gamma(s)).collect();
        gamma.push(p.output_map().apply(&feedback)?);
        names.push(format!(
            "({})",
            factors
                .iter()
                .zip(&tuple)
                .map(|(m, &s)| m.name(s))
                .collect::<Vec<_>>()
                .join(",")
        ));
        for a in alphabet.iter() {
            for i in 0..n {
                let w = p.connect(i + 1, a, &feedback)?;
                next[i] = factors[i].delta_star(tuple[i], &w)?;
            }
            delta.push(encode(&next));
        }
    }
    let start: Vec<usize> = factors.iter().map(Machine::start).collect();
    Machine::from_flat(alphabet, encode(&start), delta, gamma).with_names(names)
}
