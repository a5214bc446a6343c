//! Characters, hyperdimensions, Fourier analysis and duals of commutative
//! finite hypergroups.

mod characters;
mod dual;
pub mod eigen;
mod fourier;
mod theorems;

pub use characters::{characters, characters_with, CharacterOptions, CharacterTable, MULTIPLICATIVITY_TOLERANCE};
pub use dual::{dual_hypergroup, product_coefficient, DualObstruction, DualResult, DUAL_CLAMP};
pub use fourier::{
    fourier, inverse_fourier, l2_norm_sq, max_abs, minimal_idempotents, parseval_defect, plancherel_norm_sq,
    round_trip_defect,
};
pub use theorems::{
    verify_join_dual, verify_quotient_dual, JoinDualReport, JoinMatch, JoinOperand, QuotientDualReport,
    QuotientMatch,
};
