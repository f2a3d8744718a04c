//! Brute-force counterparts of the spectral results.
//!
//! A length-`j` trajectory is a state sequence `X(0) .. X(j-1)`, so it uses
//! `j - 1` controls. The number of distinct trajectories equals the number of
//! length-`(j-1)` walks in the graph of `M`, i.e. the sum of the entries of
//! `M^(j-1)`. Counts grow like `2^(n + m(j-1))` and are kept exact.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::NetworkDef;
use crate::stp::BoolMatrix;

/// Simulation budget for [`enumerate_trajectories`]: initial states times
/// control sequences.
pub const TRAJECTORY_BUDGET: u64 = 10_000_000;

/// Largest state count accepted by [`maximal_closed_set_bruteforce`].
pub const SUBSET_ORACLE_MAX_STATES: usize = 12;

/// `|A^j|`, the number of distinct trajectories of length `horizon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrajectoryCount {
    pub horizon: usize,
    #[serde(serialize_with = "serialize_decimal")]
    pub count: BigUint,
}

fn serialize_decimal<S: serde::Serializer>(
    n: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_str_radix(10))
}

impl TrajectoryCount {
    /// `(1/j) log2 |A^j|`.
    pub fn bits_per_step(&self) -> f64 {
        log2_big(&self.count) / self.horizon as f64
    }
}

/// `log2` of an arbitrarily large integer, accurate to double precision.
pub fn log2_big(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let shift = n.bits().saturating_sub(64);
    let top = (n >> shift).to_u64().expect("at most 64 bits remain") as f64;
    top.log2() + shift as f64
}

/// Walk counts for horizons `1 ..= j_max`.
pub fn walk_counts(m: &BoolMatrix, j_max: usize) -> Result<Vec<TrajectoryCount>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "walk counting needs a square matrix".into(),
        ));
    }
    let k = m.rows();
    let mut out = Vec::with_capacity(j_max);
    // paths[i] = number of walks of the current length ending at i.
    let mut paths = vec![BigUint::from(1u32); k];
    for horizon in 1..=j_max {
        if horizon > 1 {
            let mut next = vec![BigUint::zero(); k];
            for (j, count) in paths.iter().enumerate() {
                if count.is_zero() {
                    continue;
                }
                for i in m.column_ones(j) {
                    next[i] += count;
                }
            }
            paths = next;
        }
        out.push(TrajectoryCount {
            horizon,
            count: paths.iter().sum(),
        });
    }
    Ok(out)
}

/// Number of length-`j` trajectories in the graph of `m` (exact).
pub fn count_walks(m: &BoolMatrix, j: usize) -> Result<BigUint> {
    if j == 0 {
        return Err(Error::InvalidArgument(
            "trajectory length must be at least 1".into(),
        ));
    }
    Ok(walk_counts(m, j)?.pop().expect("j >= 1").count)
}

/// Counts distinct state sequences of length `j` by simulating the update
/// formulas from every initial state under every control sequence.
pub fn enumerate_trajectories(net: &NetworkDef, j: usize) -> Result<BigUint> {
    if j == 0 {
        return Err(Error::InvalidArgument(
            "trajectory length must be at least 1".into(),
        ));
    }
    let states = 1u64 << net.n();
    let inputs = 1u64 << net.m();
    let sequences = (0..j - 1).try_fold(1u64, |acc, _| acc.checked_mul(inputs));
    match sequences.and_then(|s| s.checked_mul(states)) {
        Some(runs) if runs <= TRAJECTORY_BUDGET => {}
        runs => {
            return Err(Error::CapExceeded {
                what: "simulated trajectories",
                needed: runs.unwrap_or(u64::MAX),
                cap: TRAJECTORY_BUDGET,
            })
        }
    }
    let sequences = sequences.expect("checked above");

    // Successors memoised as they are first simulated.
    let mut memo: HashMap<(usize, usize), usize> = HashMap::new();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for start in 1..=states as usize {
        for seq in 0..sequences {
            let mut path = Vec::with_capacity(j);
            let mut x = start;
            path.push(x as u32);
            let mut digits = seq;
            for _ in 1..j {
                let u = (digits % inputs) as usize + 1;
                digits /= inputs;
                x = match memo.get(&(x, u)) {
                    Some(&next) => next,
                    None => {
                        let next = net.step_index(x, u)?;
                        memo.insert((x, u), next);
                        next
                    }
                };
                path.push(x as u32);
            }
            seen.insert(path);
        }
    }
    Ok(BigUint::from(seen.len()))
}

/// Growth-rate estimates from walk counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    /// `(1/j) log2 |A^j|` for `j = 1 ..= j_max`.
    pub cesaro: Vec<f64>,
    /// `log2(|A^j_max| / |A^(j_max - 1)|)`. Converges to the entropy when the
    /// dominant component is aperiodic; the Cesàro sequence always does, slowly.
    pub ratio: f64,
}

pub fn entropy_estimate(m: &BoolMatrix, j_max: usize) -> Result<EntropyEstimate> {
    if j_max < 2 {
        return Err(Error::InvalidArgument(
            "entropy estimate needs j_max >= 2".into(),
        ));
    }
    let counts = walk_counts(m, j_max)?;
    let cesaro = counts.iter().map(TrajectoryCount::bits_per_step).collect();
    let ratio = log2_big(&counts[j_max - 1].count) - log2_big(&counts[j_max - 2].count);
    Ok(EntropyEstimate { cesaro, ratio })
}

/// Union of every set `S` whose members have column sum `v` and successors in
/// `S`, found by checking all `2^k` subsets.
pub fn maximal_closed_set_bruteforce(m: &BoolMatrix, v: usize) -> Result<Vec<usize>> {
    let k = m.rows();
    if !m.is_square() || k > SUBSET_ORACLE_MAX_STATES {
        return Err(Error::CapExceeded {
            what: "states for subset enumeration",
            needed: k as u64,
            cap: SUBSET_ORACLE_MAX_STATES as u64,
        });
    }
    let succ_mask: Vec<u32> = (0..k)
        .map(|j| m.column_ones(j).fold(0u32, |acc, i| acc | 1 << i))
        .collect();
    let mut union = 0u32;
    for subset in 1u32..(1 << k) {
        let qualifies = (0..k)
            .filter(|&j| subset >> j & 1 == 1)
            .all(|j| m.col_sum(j) == v && succ_mask[j] & !subset == 0);
        if qualifies {
            union |= subset;
        }
    }
    Ok((0..k)
        .filter(|&j| union >> j & 1 == 1)
        .map(|j| j + 1)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_network;

    fn golden_m() -> BoolMatrix {
        BoolMatrix::from_row_strings(&["11", "10"]).unwrap()
    }

    #[test]
    fn fibonacci_counts() {
        let counts: Vec<u64> = (1..=6)
            .map(|j| count_walks(&golden_m(), j).unwrap().to_u64().unwrap())
            .collect();
        assert_eq!(counts, [2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn length_one_counts_states() {
        assert_eq!(
            count_walks(&BoolMatrix::zeros(8, 8), 1).unwrap(),
            BigUint::from(8u32)
        );
        assert!(count_walks(&golden_m(), 0).is_err());
    }

    #[test]
    fn counts_do_not_overflow() {
        // 2 * 2^(j-1) for the all-ones 2x2 matrix, j = 200.
        let c = count_walks(&BoolMatrix::ones(2, 2), 200).unwrap();
        assert_eq!(c, BigUint::from(1u32) << 200u32);
        assert_eq!(log2_big(&c), 200.0);
    }

    #[test]
    fn enumeration_examples() {
        let golden = parse_network("states: X\ninputs: U\nX' = U | !X\n").unwrap();
        assert_eq!(
            enumerate_trajectories(&golden, 3).unwrap(),
            BigUint::from(5u32)
        );
        assert_eq!(
            enumerate_trajectories(&golden, 1).unwrap(),
            BigUint::from(2u32)
        );

        let latch = parse_network(
            "states: X1 X2\ninputs: U\nX1' = X1\nX2' = (!U & X1 & !X2) | (U & X1 & X2)\n",
        )
        .unwrap();
        assert_eq!(
            enumerate_trajectories(&latch, 2).unwrap(),
            BigUint::from(6u32)
        );
    }

    #[test]
    fn enumeration_budget() {
        let net = parse_network("states: A B C\ninputs: U V W\nA' = U\nB' = V\nC' = W\n").unwrap();
        assert!(matches!(
            enumerate_trajectories(&net, 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn ratio_converges_for_golden_mean() {
        let est = entropy_estimate(&golden_m(), 30).unwrap();
        let expected = ((1.0 + 5f64.sqrt()) / 2.0).log2();
        assert!((est.ratio - expected).abs() < 1e-6);
        assert_eq!(est.cesaro.len(), 30);
    }

    #[test]
    fn full_shift_estimates_are_exact() {
        let est = entropy_estimate(&BoolMatrix::ones(2, 2), 10).unwrap();
        assert!(est.cesaro.iter().all(|&b| b == 1.0));
        assert_eq!(est.ratio, 1.0);
        assert!(entropy_estimate(&BoolMatrix::ones(2, 2), 1).is_err());
    }

    #[test]
    fn subset_oracle_examples() {
        let latch = BoolMatrix::from_row_strings(&["1100", "1100", "0000", "0011"]).unwrap();
        assert_eq!(maximal_closed_set_bruteforce(&latch, 2).unwrap(), [1, 2]);
        assert!(maximal_closed_set_bruteforce(&golden_m(), 2)
            .unwrap()
            .is_empty());
        assert_eq!(
            maximal_closed_set_bruteforce(&BoolMatrix::ones(4, 4), 4).unwrap(),
            [1, 2, 3, 4]
        );
        assert!(maximal_closed_set_bruteforce(&BoolMatrix::ones(16, 16), 16).is_err());
    }
}
