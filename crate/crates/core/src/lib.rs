//! Exact Hermite–Padé approximation of both types, Mahler duality and the
//! Schlesinger multiplier it produces, vector continued fractions, Fuchsian
//! systems with their deformation residuals, and the block-Toeplitz
//! determinant solutions of the isomonodromic Hamiltonian system built from
//! multivariable hypergeometric series.
//!
//! Everything is exact: coefficients are big rationals, truncated power
//! series in one variable, or truncated jets in the deformation variables.
#![no_std]

extern crate alloc;

pub mod duality;
pub mod error;
pub mod fuchsian;
pub mod hypergeo;
pub mod jet;
pub mod local;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod series;
pub mod toeplitz;
pub mod type1;
pub mod type2;
pub mod vcf;

pub use error::{Error, Result};
pub use jet::{hirota, JetCtx, ParamJet};
pub use local::{Factor, LocalFraction, Pole};
pub use matrix::ExactMatrix;
pub use poly::Poly;
pub use rational::{parse_rational, Rational};
pub use ring::Ring;
pub use series::TruncatedSeries;
