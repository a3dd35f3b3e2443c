use crate::error::{Error, Result};
use crate::{Alphabet, Machine, Symbol};

pub const TICK: &str = "tick";

/// `T_n`: an `n`-state cycle over `{tick}` whose output is the residue
/// `|w| mod n`.
pub fn make_counter(n: usize) -> Result<Machine> {
    if n == 0 {
        return Err(Error::BadParameter("counter modulus must be at least 1".into()));
    }
    Machine::from_fn(
        Alphabet::new([Symbol::new(TICK)])?,
        n,
        0,
        |s, _| (s + 1) % n,
        |s| Symbol::int(s as i64),
    )
}
