//! Seeded random networks and formulas for test corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula::{Formula, NetworkDef};

/// Largest `n + m` for which [`random_network`] will write out minterm tables.
pub const RANDOM_MAX_BITS: usize = 16;

/// A network whose updates are uniformly random truth tables, written as
/// minterm disjunctions. States are `X1..Xn`, inputs `U1..Um`. The same
/// `(n, m, seed)` always gives the same network.
pub fn random_network(n: usize, m: usize, seed: u64) -> Result<NetworkDef> {
    if n == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1 and m <= n, got n={n}, m={m}"
        )));
    }
    if n + m > RANDOM_MAX_BITS {
        return Err(Error::CapExceeded {
            what: "variables for a random truth-table network",
            needed: (n + m) as u64,
            cap: RANDOM_MAX_BITS as u64,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let inputs: Vec<String> = (1..=m).map(|i| format!("U{i}")).collect();
    let names: Vec<String> = inputs.iter().chain(&states).cloned().collect();
    let rows = 1usize << (n + m);
    let updates = (0..n)
        .map(|_| {
            let table: Vec<bool> = (0..rows).map(|_| rng.gen()).collect();
            Formula::from_truth_table(&names, |r| table[r])
        })
        .collect();
    NetworkDef::new(states, inputs, updates)
}

/// A random formula tree with `leaves` literals over `vars`. Internal nodes
/// are `&` with probability 0.6, otherwise `|`; literals are negated half the
/// time.
pub fn random_formula<R: Rng + ?Sized>(vars: &[String], leaves: usize, rng: &mut R) -> Formula {
    assert!(!vars.is_empty() && leaves >= 1);
    if leaves == 1 {
        let v = Formula::var(vars[rng.gen_range(0..vars.len())].clone());
        return if rng.gen_bool(0.5) { v.negate() } else { v };
    }
    let left = rng.gen_range(1..leaves);
    let lhs = random_formula(vars, left, rng);
    let rhs = random_formula(vars, leaves - left, rng);
    if rng.gen_bool(0.6) {
        lhs.and(rhs)
    } else {
        lhs.or(rhs)
    }
}

/// Seeded RNG used across the crate's corpora.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
