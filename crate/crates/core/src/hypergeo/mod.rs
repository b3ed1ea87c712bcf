//! Hypergeometric solutions of the polynomial Hamiltonian system attached
//! to Fuchsian systems with N + 3 singular points.

mod hamiltonian;
mod moments;
mod oracle;
mod params;
mod solutions;

pub use hamiltonian::{hamilton_residual, hamiltonian, CanonPoly, HamiltonReport, ResidualEntry, ResidualKind};
pub use moments::{contiguity_shift_holds, contiguity_sum_holds, f_ln_series, normalized_moment, Moments};
pub use oracle::{vandermonde_oracle, DiscreteMeasure, OracleReport};
pub use params::HGParams;
pub use solutions::{
    canonical_from_system, hgi_build, hgsol_build, hgsol_system, matrix_path, qp_forms, rank_one_factors, working_ctx,
    DeltaPath, HLNSolution, MatrixPath, Provenance, GUARD,
};
