//! Fixed-point characters of Hirzebruch surfaces and Euler classes of the
//! isotropy representations.

mod euler;
mod index;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use euler::{
    euler_class, euler_class_torus, invariant_vars, rewrite_invariant, torus_vars, verify_euler_nzd,
    EulerClassElement,
};
pub use index::{
    ab_vars, atiyah_bott_index, h01_character_standard, isotropy_rep_name, split_index, xy_to_ab, xy_vars,
    CharacterBasis, IndexSplit, IsotropyRepName, VirtualCharacter,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("n = {n} is below the minimum {min}")]
    TwistTooSmall { n: u32, min: u32 },
    #[error("character has non-integer coefficients")]
    NonIntegral,
    #[error("not invariant under the Weyl group: {0}")]
    NotInvariant(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
