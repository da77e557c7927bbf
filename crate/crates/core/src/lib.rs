//! Eigenfunctions of Hamming graphs H(n,q) with eigenvalue `n(q−1) − q`.
//!
//! The crate builds exact rational functions on the vertex set, applies the
//! adjacency operator without materializing the graph, reduces functions to
//! smaller graphs, classifies additive functions of small support, and
//! certifies by exhaustive search that the smallest support of such an
//! eigenfunction is `2(q−1)q^{n−2}` for `q > 2`, attained only by dual-layer
//! functions.

pub mod constructions;
pub mod error;
pub mod function_space;
pub mod hamming;
pub mod oracle;
pub mod reduction;

pub use constructions::{
    classify_additive, construct_dual_layer, construct_single_layer, minimum_support, CanonicalForm,
};
pub use error::{Error, Result};
pub use function_space::{
    eigenbasis_lambda1, eigenvalue, random_eigenfunction, spectrum, vorobev_lower_bound, LowerBound, Rational,
    VertexFunction,
};
pub use hamming::{hamming_distance, GraphParams, Vertex};
pub use oracle::{
    exhaustive_lemma3_check, grid_min_support, verify_main_theorem, CoefficientSet, SearchConfig, SearchReport,
};
pub use reduction::{additive_decompose, is_additive, reduce, ReductionSpec};
