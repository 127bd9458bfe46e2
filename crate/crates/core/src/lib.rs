//! Exact subdeterminants of the constraint matrix `M(G) = [I B; Bᵀ I]` of a
//! graph, where `B` is the vertex-edge incidence matrix, together with
//! maximum-weight total matching solvers whose running time depends on the
//! largest subdeterminant `Δ(G)`.
//!
//! Matrix code is generic over [`ExactInt`] (machine integers with checked
//! arithmetic, or `BigInt`); searches run in `i64` and fall back to `BigInt`
//! on overflow.

pub mod error;
pub mod forest;
pub mod graph;
pub mod matching;
pub mod matrix;
pub mod scalar;
pub mod structure;
pub mod subdet;

pub use error::{Error, Result};
pub use forest::{
    bipartition_lower_witness, degree_sequence_bounds, delta_forest_formula, l_tilde, BipartitionWitness,
    DegreeBounds, ForestPair, FormulaResult, LTildeMatrix,
};
pub use graph::{
    generate, parse_graph, with_random_weights, write_graph, Edge, Element, Family, Graph, Subgraph,
};
pub use matching::{
    is_total_matching, solve_brute, solve_fpt, solve_paths_dp, FptConfig, PathInstance, TotalMatching,
};
pub use matrix::{constraint_matrix, incidence_matrix, near_pencil, ExactMatrix, SubmatrixSelector};
pub use scalar::ExactInt;
pub use structure::{
    compute_decomposition, contract_degree2_run, contractible_run, near_pencil_heuristic,
    near_pencil_lower_bound, recognize, shrink_to_core, Certificate, Decomposition, DecompositionOutcome,
    DeltaOutcome,
};
pub use subdet::{
    delta_by_components, max_subdet_auto, max_subdet_brute, max_subdet_forced, max_subdet_principal,
    principal_search, ElementColoring, Engine, SubdetConfig, SubdetMode, SubdetResult,
};

/// Arbitrary-precision matrix; what determinants are reported in.
pub type IntMatrix = ExactMatrix<num_bigint::BigInt>;
/// Machine-word matrix used on the hot paths.
pub type SmallMatrix = ExactMatrix<i64>;
