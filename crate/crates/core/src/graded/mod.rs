//! Degreewise linear algebra over graded rings: dimensions of quotients,
//! kernels, fiber products, invariants of involutions and closure of
//! candidate module bases.

use thiserror::Error;

use crate::algebra::AlgebraError;

/// Runs a generic body with `S` bound to the scalar type of a field.
macro_rules! with_scalar {
    ($field:expr, $s:ident => $body:expr) => {
        match $field {
            $crate::graded::Field::Q => {
                type $s = $crate::algebra::Rational;
                $body
            }
            $crate::graded::Field::F2 => {
                type $s = $crate::graded::Fp<2>;
                $body
            }
            $crate::graded::Field::F3 => {
                type $s = $crate::graded::Fp<3>;
                $body
            }
        }
    };
}

mod closure;
mod involution;
mod linalg;
mod map;
mod presentation;

pub use closure::{expand_in_basis, free_module_check, module_closure_check, reduce_mod_monic, ClosureReport, ClosureSpec, Expansion};
pub use involution::{EigenPiece, RingInvolution};
pub use linalg::{kernel_of_columns, rank, Echelon, Field, Fp, Scalar};
pub use map::{fiber_product_dims, joint_kernel_dims, KernelCertificate, RingMap};
pub use presentation::{t_vars, DegreewiseDims, GradedRingPresentation, HilbertSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("bad generator: {0}")]
    BadGenerator(String),
    #[error("not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("{element} is not of degree {expected}")]
    WrongDegree { expected: i64, element: String },
    #[error("coefficient {0} is not defined over the field")]
    CoefficientNotInField(String),
    #[error("series coefficient {value} in degree {degree} is not a dimension")]
    NotADimension { degree: usize, value: String },
    #[error("ill-formed map: {0}")]
    IllFormedMap(String),
    #[error("map is not onto in degree {degree}")]
    SurjectivityFailed { degree: usize },
    #[error("Hilbert series predicts {series} in degree {degree}, found {actual}")]
    RegularityCheckFailed { degree: usize, series: String, actual: usize },
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("not monic: {0}")]
    NotMonic(String),
    #[error("not free on the given basis: {0}")]
    NotFree(String),
    #[error("coefficient violation: {0}")]
    CoefficientViolation(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
