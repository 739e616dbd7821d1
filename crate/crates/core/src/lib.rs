//! Dissociation sets, independent sets and induced matchings: exact solvers,
//! the bipartite 4/3-approximation, recognition of bipartite graphs where
//! that approximation is tight, and hardness gadgets.
//!
//! A dissociation set induces a subgraph of maximum degree at most one. For
//! a graph `G` write `diss(G)` for the largest such set, `α(G)` for the
//! independence number and `ν_s(G)` for the induced matching number. They
//! satisfy `max(α, 2ν_s) ≤ diss ≤ α + ν_s ≤ 2α`.

pub mod approx;
pub mod bitset;
pub mod canon;
pub mod exact;
pub mod extremal;
pub mod format;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod reductions;
pub mod twosat;

pub use approx::{approx_dissociation_bipartite, ApproxCertificate, ApproxResult};
pub use exact::{
    check_inequality_chain, diss_via_induced_matchings, dissociation_number_exact,
    independence_number_exact, induced_matching_number_exact, is_dissociation_set, Cutoffs,
    EqualityFlags, ExactError, InvariantReport,
};
pub use extremal::{
    recognize_extremal, ExtremalCertificate, NotExtremalReason, RecognitionOutcome,
    RecognizeError, SixLabeling, VertexClass,
};
pub use graph::{bipartition, Bipartition, Edge, Graph, GraphError, Vertex};
pub use matching::{maximum_matching, Matching, MatchingError};
pub use twosat::{solve_2sat, Assignment, Literal, TwoSatFormula, Unsatisfiable};
