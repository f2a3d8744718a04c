//! Boolean control networks in algebraic state-space form.
//!
//! The pipeline is: parse a network from its update formulas ([`formula`]),
//! compile it into the transition matrix `L` and the merged one-step matrix
//! `M` ([`assr`]), then analyse `M` ([`spectral`]): Perron root, topological
//! entropy, and an exact combinatorial decision of whether the entropy is the
//! maximum `m` bits. [`oracle`] holds brute-force counterparts used to
//! cross-check the fast paths, and [`hardness`] builds the SAT-to-maximal-entropy
//! reduction.
//!
//! State and input indices follow the canonical-vector convention: they are
//! 1-based, and the all-TRUE assignment is index 1.

pub mod assr;
pub mod error;
pub mod formula;
pub mod generate;
pub mod hardness;
pub mod oracle;
pub mod scc;
pub mod spectral;
pub mod stp;

pub use assr::{compile, compile_with_cap, decompile, AssrModel, Edge, TransitionGraph};
pub use error::{Error, Result};
pub use formula::{parse_formula, parse_network, Assignment, Formula, NetworkDef};
pub use hardness::{reduce_sat, verify_reduction, ReductionReport, ReductionResult};
pub use oracle::{count_walks, entropy_estimate, enumerate_trajectories, EntropyEstimate};
pub use spectral::{analyze, Decomposition, SpectralReport};
pub use stp::{BoolMatrix, DenseMatrix, LogicalMatrix};

/// Default cap on `n + m`, the number of Boolean variables a network may have
/// before compilation is refused.
pub const DEFAULT_CAP_BITS: u32 = 24;
