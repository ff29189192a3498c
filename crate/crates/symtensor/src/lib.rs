//! # symtensor
//!
//! Spectral analysis and copositivity certification for real symmetric
//! tensors of order k >= 2.
//!
//! ## What it does
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`tensor`] | Canonical sparse symmetric storage, form/vector evaluation, inner products, completely positive constructions |
//! | [`structure`] | Sign classification, reducibility, weak irreducibility, block partition |
//! | [`spectral`] | Largest/smallest H-eigenvalues via per-block shifted power iteration, variational cross-check, row-sum bounds |
//! | [`copositivity`] | Certification ladder, numeric minimum search, brute-force grid oracle |
//! | [`generate`] | Named constants, seeded random families, hypergraph tensors |
//! | [`io`] | Line-oriented tensor file format |
//!
//! ## Quick start
//!
//! ```
//! use symtensor::{certify, lambda_max, IterationConfig, SearchConfig, SymTensor};
//!
//! let j = SymTensor::all_ones(3, 2).unwrap();
//! let spectral = lambda_max(&j, &IterationConfig::default()).unwrap();
//! assert!((spectral.lambda - 4.0).abs() < 1e-9);
//!
//! let cert = certify(&j, &SearchConfig::default());
//! assert!(cert.verdict.is_certified());
//! ```
//!
//! ## Conventions
//!
//! Indices are 0-based in the API; the file format and reports use 1-based
//! labels. All values are f64, and stored entries are never exactly zero.
//! Tensors and vectors are immutable once built, so evaluations may run
//! concurrently; with the default `parallel` feature the grid oracle, the
//! multi-start searches, and the per-block eigenvalue runs distribute over
//! rayon while producing the same results as the sequential fallback.

pub mod comb;
pub mod copositivity;
mod error;
pub mod generate;
pub mod io;
mod search;
pub mod spectral;
pub mod structure;
pub mod tensor;

pub use copositivity::{
    certify, certify_with_oracle, check_diag_dominance, check_diag_necessary, check_ess_nonpos,
    check_hplus_sign, check_zero_set_gradient, dual_pairing_check, nmin_grid_oracle, nmin_search,
    CopositivityCertificate, DiagDominance, SearchConfig, TestId, Verdict,
    GRID_ORACLE_DIM_LIMIT,
};
pub use error::{Error, Result};
pub use io::{emit_tensor, parse_tensor};
pub use spectral::{
    bounds_row_sums, has_hpp_eigenvalue, lambda_max, lambda_max_variational,
    lambda_min_bounds, lambda_min_ess_nonpos, power_iteration_block, AscentConfig, EigenBounds,
    IterationConfig, SpectralResult,
};
pub use structure::{
    classify, essential_decomposition, is_reducible, is_weakly_irreducible,
    representation_graph, weakly_irreducible_partition, Partition, RepresentationGraph,
    StructureClass,
};
pub use tensor::{power_vec, MultiIndex, Stats, SymTensor};
