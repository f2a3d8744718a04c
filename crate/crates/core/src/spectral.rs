//! Topological entropy and the maximal-entropy decision.
//!
//! The entropy of a network is `log2` of the Perron root of its merged matrix
//! `M`. Whether it equals `log2 v`, with `v` the largest column sum of `M`, is
//! decided exactly: it holds iff there is a non-empty set `Y` of states that
//! each have `v` one-step successors, all inside `Y`. Such sets are closed
//! under union, so [`maximal_closed_set`] computes the largest one by pruning.
//! Entropy is maximal (`m` bits) iff this holds with `v = 2^m`.

use serde::{Deserialize, Serialize};

use crate::assr::AssrModel;
use crate::error::{Error, Result};
use crate::scc;
use crate::stp::BoolMatrix;

/// Successive estimates of the Perron root must agree to this before stopping.
pub const ESTIMATE_TOLERANCE: f64 = 1e-12;
/// Upper minus lower Collatz–Wielandt bound required before stopping.
pub const BRACKET_TOLERANCE: f64 = 1e-10;

/// Largest column sum of `m`; 0 for an empty matrix.
pub fn max_column_sum(m: &BoolMatrix) -> usize {
    (0..m.cols()).map(|j| m.col_sum(j)).max().unwrap_or(0)
}

/// `(min column sum, max column sum)`, which bracket the Perron root.
pub fn perron_bounds(m: &BoolMatrix) -> (usize, usize) {
    let sums = m.col_sums();
    (
        sums.iter().copied().min().unwrap_or(0),
        sums.iter().copied().max().unwrap_or(0),
    )
}

/// Spectral radius of a square 0/1 matrix.
///
/// Each strongly connected component with a cycle is irreducible, so its
/// block plus the identity is primitive and power iteration converges on it.
/// The root is the largest block root; acyclic vertices contribute 0.
pub fn perron_root(m: &BoolMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Perron root needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let mut best = 0.0f64;
    for comp in scc::strongly_connected_components(m) {
        if !scc::is_nontrivial(m, &comp) {
            continue;
        }
        let root = if comp.len() == 1 {
            1.0
        } else {
            component_root(m, &comp)?
        };
        best = best.max(root);
    }
    Ok(best)
}

fn component_root(m: &BoolMatrix, comp: &[usize]) -> Result<f64> {
    let size = comp.len();
    let mut local = vec![usize::MAX; m.rows()];
    for (k, &v) in comp.iter().enumerate() {
        local[v] = k;
    }
    // succ[j] = local rows i with M[i, j] = 1 inside the component.
    let succ: Vec<Vec<usize>> = comp
        .iter()
        .map(|&j| {
            m.column_ones(j)
                .map(|i| local[i])
                .filter(|&i| i != usize::MAX)
                .collect()
        })
        .collect();

    let cap = (100 * m.rows()).max(10_000);
    let mut x = vec![1.0 / size as f64; size];
    let mut y = vec![0.0; size];
    let mut previous = f64::NAN;
    for _ in 0..cap {
        y.copy_from_slice(&x);
        for (j, targets) in succ.iter().enumerate() {
            for &i in targets {
                y[i] += x[j];
            }
        }
        let estimate: f64 = y.iter().sum();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (yi, xi) in y.iter().zip(&x) {
            let ratio = yi / xi;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / estimate;
        }
        if (estimate - previous).abs() < ESTIMATE_TOLERANCE
            && hi - lo < BRACKET_TOLERANCE * estimate.max(1.0)
        {
            return Ok(estimate - 1.0);
        }
        previous = estimate;
    }
    Err(Error::NoConvergence(cap))
}

/// Entropy in bits. `nilpotent` marks a zero Perron root, reported as 0 bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entropy {
    pub bits: f64,
    pub nilpotent: bool,
}

pub fn entropy_from_root(lambda: f64) -> Entropy {
    if lambda == 0.0 {
        Entropy {
            bits: 0.0,
            nilpotent: true,
        }
    } else {
        // Nonzero roots of 0/1 matrices are at least 1.
        Entropy {
            bits: lambda.log2().max(0.0),
            nilpotent: false,
        }
    }
}

/// `log2` of the Perron root of `m`.
pub fn entropy_bits(m: &BoolMatrix) -> Result<Entropy> {
    perron_root(m).map(entropy_from_root)
}

/// Maximum entropy, in bits, of a network with `m` inputs.
pub fn h_max_bits(m: usize) -> f64 {
    m as f64
}

/// Largest set `Y` (1-based, ascending) whose members all have column sum `v`
/// and whose one-step successors all lie in `Y`.
pub fn maximal_closed_set(m: &BoolMatrix, v: usize) -> Vec<usize> {
    assert!(m.is_square(), "closed sets need a square matrix");
    let k = m.rows();
    let mut keep: Vec<bool> = (0..k).map(|j| m.col_sum(j) == v).collect();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); k];
    for j in 0..k {
        for i in m.column_ones(j) {
            preds[i].push(j);
        }
    }
    let mut dropped: Vec<usize> = (0..k).filter(|&j| !keep[j]).collect();
    while let Some(i) = dropped.pop() {
        for &j in &preds[i] {
            if keep[j] {
                keep[j] = false;
                dropped.push(j);
            }
        }
    }
    (0..k).filter(|&j| keep[j]).map(|j| j + 1).collect()
}

/// Block form `P M P' = [B C; 0 D]` witnessing that the entropy is `log2 v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub v: usize,
    pub r: usize,
    /// New position `k` holds original state `permutation[k]` (1-based):
    /// the closed set first, then the remaining states, each ascending.
    pub permutation: Vec<usize>,
    #[serde(skip)]
    pub b: BoolMatrix,
    #[serde(skip)]
    pub c: BoolMatrix,
    #[serde(skip)]
    pub d: BoolMatrix,
}

impl Decomposition {
    /// Column sums of `B`; all equal to `v`.
    pub fn b_column_sums(&self) -> Vec<usize> {
        self.b.col_sums()
    }
}

/// Searches for the block form. `None` iff the entropy is below `log2 v`.
///
/// The blocks are re-verified entrywise on `P M P'`; a failed check means
/// the closed-set computation is wrong and is reported as [`Error::Inconsistent`].
pub fn check_log_v(m: &BoolMatrix) -> Result<Option<Decomposition>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "block form needs a square matrix".into(),
        ));
    }
    let v = max_column_sum(m);
    let closed = maximal_closed_set(m, v);
    if closed.is_empty() {
        return Ok(None);
    }
    let k = m.rows();
    let r = closed.len();
    let mut in_set = vec![false; k];
    closed.iter().for_each(|&s| in_set[s - 1] = true);
    let order: Vec<usize> = closed
        .iter()
        .map(|&s| s - 1)
        .chain((0..k).filter(|&j| !in_set[j]))
        .collect();

    let permuted = m.permute(&order);
    let head: Vec<usize> = (0..r).collect();
    let tail: Vec<usize> = (r..k).collect();
    let b = permuted.submatrix(&head, &head);
    let c = permuted.submatrix(&head, &tail);
    let lower_left = permuted.submatrix(&tail, &head);
    let d = permuted.submatrix(&tail, &tail);

    if let Some(j) = (0..r).find(|&j| b.col_sum(j) != v) {
        return Err(Error::Inconsistent(format!(
            "column {} of B sums to {}, expected {v}",
            j + 1,
            b.col_sum(j)
        )));
    }
    if lower_left.count_ones() != 0 {
        return Err(Error::Inconsistent(
            "lower-left block of PMP' is not zero".into(),
        ));
    }
    if r < v {
        return Err(Error::Inconsistent(format!(
            "closed set has {r} < v = {v} states"
        )));
    }
    Ok(Some(Decomposition {
        v,
        r,
        permutation: order.into_iter().map(|j| j + 1).collect(),
        b,
        c,
        d,
    }))
}

/// Exact decision of whether the network reaches the maximum `m` bits.
pub fn is_max_entropy(model: &AssrModel) -> bool {
    let m = model.merged();
    let full = model.num_inputs();
    max_column_sum(m) == full && !maximal_closed_set(m, full).is_empty()
}

/// Every state reaches every state in one step.
pub fn is_one_step_controllable(m: &BoolMatrix) -> bool {
    m.is_all_ones()
}

/// Everything known about the entropy of one network. State indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub v: usize,
    pub lambda: f64,
    pub entropy_bits: f64,
    pub h_max_bits: f64,
    pub is_log_v: bool,
    pub closed_set: Vec<usize>,
    pub r: usize,
    #[serde(skip)]
    pub permutation: Vec<usize>,
    pub is_max_entropy: bool,
    pub is_one_step_controllable: bool,
    pub nilpotent: bool,
}

/// Full analysis of a compiled network.
pub fn analyze(model: &AssrModel) -> Result<SpectralReport> {
    let m = model.merged();
    let lambda = perron_root(m)?;
    let entropy = entropy_from_root(lambda);
    let (lo, hi) = perron_bounds(m);
    let slack = 1e-9 * (hi as f64).max(1.0);
    if lambda < lo as f64 - slack || lambda > hi as f64 + slack {
        return Err(Error::Inconsistent(format!(
            "Perron root {lambda} outside column-sum bounds [{lo}, {hi}]"
        )));
    }
    let decomposition = check_log_v(m)?;
    let is_max = is_max_entropy(model);
    let (closed_set, permutation) = match &decomposition {
        Some(d) => (d.permutation[..d.r].to_vec(), d.permutation.clone()),
        None => (Vec::new(), Vec::new()),
    };
    if is_max && decomposition.is_none() {
        return Err(Error::Inconsistent(
            "maximal entropy without a block form".into(),
        ));
    }
    Ok(SpectralReport {
        v: hi,
        lambda,
        entropy_bits: entropy.bits,
        h_max_bits: h_max_bits(model.m()),
        is_log_v: decomposition.is_some(),
        r: closed_set.len(),
        closed_set,
        permutation,
        is_max_entropy: is_max,
        is_one_step_controllable: is_one_step_controllable(m),
        nilpotent: entropy.nilpotent,
    })
}
