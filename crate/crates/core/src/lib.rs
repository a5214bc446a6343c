//! Finite hypergroups and their harmonic analysis.
//!
//! A finite hypergroup is given by structure constants `c[x][y][z]`, the
//! weight of `δ_z` in `δ_x * δ_y`, together with an identity and an
//! involution. This crate validates such data, computes the canonical Haar
//! measure, character tables and hyperdimensions of commutative hypergroups,
//! Fourier transforms, duals, the diagonal and amenability constant of
//! `ℓ¹(H, λ)`, and checks the support uncertainty inequality.
//!
//! Every computation is generic over [`Scalar`]; use [`Rational`] for exact
//! results and `f64` otherwise.

pub mod amen;
pub mod builders;
mod error;
pub mod hypergroup;
pub mod scalar;
pub mod spectra;
pub mod uncertainty;

pub use error::{Error, Result};
pub use hypergroup::{FiniteHypergroup, HFunction, HypergroupData, StructureConstants, ValidationReport};
pub use scalar::{Rational, Scalar};
pub use spectra::{CharacterTable, DualResult};

pub use num_complex::Complex;

/// Hypergroup with exact rational structure constants.
pub type ExactHypergroup = FiniteHypergroup<Rational>;
/// Hypergroup with double-precision structure constants.
pub type FloatHypergroup = FiniteHypergroup<f64>;
/// Character table computed in exact arithmetic.
pub type ExactCharacterTable = CharacterTable<Rational>;
/// Character table computed in double precision.
pub type FloatCharacterTable = CharacterTable<f64>;
