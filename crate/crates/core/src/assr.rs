//! Algebraic state-space representation `x(k+1) = L ⋉ u(k) ⋉ x(k)`.
//!
//! Column `(iu - 1) 2^n + ix` of `L` (both indices 1-based) holds the
//! successor of state `ix` under input `iu`. The slice `L_iu = L ⋉ e_{2^m}^iu`
//! is the contiguous block of `2^n` columns for that input, and the merged
//! matrix `M` is the entrywise OR of all slices.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Formula, NetworkDef};
use crate::stp::{self, BoolMatrix, LogicalMatrix};
use crate::DEFAULT_CAP_BITS;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssrModel {
    n: usize,
    m: usize,
    transition: LogicalMatrix,
    slices: Vec<LogicalMatrix>,
    merged: BoolMatrix,
    state_names: Vec<String>,
    input_names: Vec<String>,
}

impl AssrModel {
    /// Builds the model from a transition matrix `L` with `2^n` rows and
    /// `2^(n+m)` columns. Variables get default names `X1..Xn`, `U1..Um`.
    pub fn from_transition_matrix(n: usize, m: usize, transition: LogicalMatrix) -> Result<Self> {
        let names = |prefix: &str, k: usize| (1..=k).map(|i| format!("{prefix}{i}")).collect();
        Self::with_names(transition, n, m, names("X", n), names("U", m))
    }

    fn with_names(
        transition: LogicalMatrix,
        n: usize,
        m: usize,
        state_names: Vec<String>,
        input_names: Vec<String>,
    ) -> Result<Self> {
        if n == 0 || m > n {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= n and m <= n, got n={n}, m={m}"
            )));
        }
        if n + m >= usize::BITS as usize - 1 {
            return Err(Error::InvalidArgument(format!(
                "n + m = {} is too large",
                n + m
            )));
        }
        if n > MERGED_MAX_STATE_BITS {
            return Err(Error::CapExceeded {
                what: "state variables for the merged matrix",
                needed: n as u64,
                cap: MERGED_MAX_STATE_BITS as u64,
            });
        }
        let states = 1usize << n;
        if transition.rows() != states || transition.cols() != states << m {
            return Err(Error::DimensionMismatch(format!(
                "L must be {}x{}, got {}x{}",
                states,
                states << m,
                transition.rows(),
                transition.cols()
            )));
        }
        let slices: Vec<LogicalMatrix> = (0..1usize << m)
            .map(|iu| transition.column_block(iu * states, states))
            .collect();
        let mut merged = BoolMatrix::zeros(states, states);
        for slice in &slices {
            for (col, &t) in slice.targets().iter().enumerate() {
                merged.set(t as usize, col, true);
            }
        }
        Ok(AssrModel {
            n,
            m,
            transition,
            slices,
            merged,
            state_names,
            input_names,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_states(&self) -> usize {
        1 << self.n
    }

    pub fn num_inputs(&self) -> usize {
        1 << self.m
    }

    /// The transition matrix `L`.
    pub fn transition(&self) -> &LogicalMatrix {
        &self.transition
    }

    /// `L_1 .. L_{2^m}`.
    pub fn slices(&self) -> &[LogicalMatrix] {
        &self.slices
    }

    /// Slice for input `input` (1-based).
    pub fn slice(&self, input: usize) -> Result<&LogicalMatrix> {
        if input == 0 || input > self.slices.len() {
            return Err(Error::IndexOutOfRange {
                index: input,
                max: self.slices.len(),
            });
        }
        Ok(&self.slices[input - 1])
    }

    /// The merged one-step matrix `M`.
    pub fn merged(&self) -> &BoolMatrix {
        &self.merged
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    /// Successor (1-based) of `state` under `input`.
    pub fn successor(&self, state: usize, input: usize) -> Result<usize> {
        let slice = self.slice(input)?;
        slice.index(state)
    }
}

/// Largest `n` for which the dense `2^n x 2^n` merged matrix is built
/// (32 MiB of bits), whatever the variable cap.
pub const MERGED_MAX_STATE_BITS: usize = 14;

/// Compiles with the default cap of [`DEFAULT_CAP_BITS`] on `n + m`.
pub fn compile(net: &NetworkDef) -> Result<AssrModel> {
    compile_with_cap(net, DEFAULT_CAP_BITS)
}

// Per-position masks for the low six bits of a column offset: bit p of
// LOW_MASKS[s] is set iff bit s of p is 0.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// Bit pattern of one variable across all `2^total` columns: variable at
/// position `slot` (in the order inputs ++ states) is TRUE at column offset
/// `c` iff bit `total - 1 - slot` of `c` is 0.
fn variable_pattern(slot: usize, total: usize, words: usize) -> Vec<u64> {
    let shift = total - 1 - slot;
    (0..words)
        .map(|w| {
            if shift < 6 {
                LOW_MASKS[shift]
            } else if ((w * 64) >> shift) & 1 == 0 {
                !0
            } else {
                0
            }
        })
        .collect()
}

/// Compiles a network into its ASSR, refusing networks with more than
/// `cap_bits` variables in total.
///
/// Each update is evaluated on all `2^(n+m)` assignments at once, 64 columns
/// per machine word.
pub fn compile_with_cap(net: &NetworkDef, cap_bits: u32) -> Result<AssrModel> {
    let (n, m) = (net.n(), net.m());
    let total = n + m;
    if total > cap_bits as usize {
        return Err(Error::CapExceeded {
            what: "state + input variables",
            needed: total as u64,
            cap: cap_bits as u64,
        });
    }
    if n > MERGED_MAX_STATE_BITS {
        return Err(Error::CapExceeded {
            what: "state variables for the merged matrix",
            needed: n as u64,
            cap: MERGED_MAX_STATE_BITS as u64,
        });
    }
    let columns = 1usize << total;
    let words = columns.div_ceil(64);
    let patterns: Vec<Vec<u64>> = (0..total)
        .map(|slot| variable_pattern(slot, total, words))
        .collect();
    let tables: Vec<Vec<u64>> = net
        .bound_updates()
        .iter()
        .map(|f| f.eval_packed(&patterns, words))
        .collect();

    let targets: Vec<u32> = (0..columns)
        .map(|c| {
            let (w, b) = (c / 64, c % 64);
            tables
                .iter()
                .fold(0u32, |acc, t| (acc << 1) | u32::from(t[w] >> b & 1 == 0))
        })
        .collect();
    let transition = LogicalMatrix::from_targets(1 << n, targets);
    AssrModel::with_names(
        transition,
        n,
        m,
        net.state_names().to_vec(),
        net.input_names().to_vec(),
    )
}

/// Recovers a network whose updates are minterm expansions of `L`.
pub fn decompile(model: &AssrModel) -> NetworkDef {
    let n = model.n;
    let names: Vec<String> = model
        .input_names
        .iter()
        .chain(&model.state_names)
        .cloned()
        .collect();
    let targets = model.transition.targets();
    let updates = (0..n)
        .map(|i| Formula::from_truth_table(&names, |c| (targets[c] >> (n - 1 - i)) & 1 == 0))
        .collect();
    NetworkDef::new(
        model.state_names.clone(),
        model.input_names.clone(),
        updates,
    )
    .expect("names and arity come from a valid model")
}

/// States reachable from `state` in one step under some input (1-based, ascending).
pub fn one_step_reachable(model: &AssrModel, state: usize) -> Result<Vec<usize>> {
    let k = model.num_states();
    if state == 0 || state > k {
        return Err(Error::IndexOutOfRange {
            index: state,
            max: k,
        });
    }
    Ok(model.merged.column_ones(state - 1).map(|i| i + 1).collect())
}

/// A transition `from -> to` together with the inputs (1-based) that realise it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub inputs: Vec<usize>,
}

/// State-transition graph of `M`: vertices `1..=2^n`, edge `j -> i` iff `M[i, j] = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionGraph {
    pub n: usize,
    pub num_states: usize,
    /// Sorted by `(from, to)`.
    pub edges: Vec<Edge>,
}

pub fn transition_graph(model: &AssrModel) -> TransitionGraph {
    let mut labels: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (iu, slice) in model.slices.iter().enumerate() {
        for (j, &t) in slice.targets().iter().enumerate() {
            labels
                .entry((j + 1, t as usize + 1))
                .or_default()
                .push(iu + 1);
        }
    }
    let mut edges: Vec<Edge> = labels
        .into_iter()
        .map(|((from, to), inputs)| Edge { from, to, inputs })
        .collect();
    edges.sort_by_key(|e| (e.from, e.to));
    TransitionGraph {
        n: model.n,
        num_states: model.num_states(),
        edges,
    }
}

impl TransitionGraph {
    /// Graphviz rendering. Vertices are labelled with their index and state
    /// bits; edges with the inputs that produce them when there are inputs.
    pub fn to_dot(&self, with_input_labels: bool) -> String {
        let mut out = String::from("digraph bcn {\n    node [shape=circle];\n");
        for s in 1..=self.num_states {
            let bits: String = stp::index_to_bits(s, self.n)
                .expect("vertex in range")
                .into_iter()
                .map(|b| if b { '1' } else { '0' })
                .collect();
            let _ = writeln!(out, "    {s} [label=\"{s}\\n{bits}\"];");
        }
        for e in &self.edges {
            if with_input_labels {
                let inputs: Vec<String> = e.inputs.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    out,
                    "    {} -> {} [label=\"u{}\"];",
                    e.from,
                    e.to,
                    inputs.join(",u")
                );
            } else {
                let _ = writeln!(out, "    {} -> {};", e.from, e.to);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Wire form: `{"n", "m", "L": [1-based column indices], "M": [row bitstrings]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct AssrJson {
    n: usize,
    m: usize,
    #[serde(rename = "L")]
    l: Vec<usize>,
    #[serde(rename = "M")]
    merged: Vec<String>,
}

impl Serialize for AssrModel {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        AssrJson {
            n: self.n,
            m: self.m,
            l: self.transition.indices(),
            merged: (0..self.num_states())
                .map(|i| self.merged.row_string(i))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AssrModel {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = AssrJson::deserialize(deserializer)?;
        if raw.n == 0 || raw.n + raw.m > DEFAULT_CAP_BITS as usize {
            return Err(D::Error::custom(format!(
                "unsupported size n={}, m={}",
                raw.n, raw.m
            )));
        }
        let l = LogicalMatrix::new(1 << raw.n, &raw.l).map_err(D::Error::custom)?;
        let model = AssrModel::from_transition_matrix(raw.n, raw.m, l).map_err(D::Error::custom)?;
        let merged = BoolMatrix::from_row_strings(&raw.merged).map_err(D::Error::custom)?;
        if merged != model.merged {
            return Err(D::Error::custom(
                "M does not match the OR of the slices of L",
            ));
        }
        Ok(model)
    }
}
