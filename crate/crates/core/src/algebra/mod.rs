//! Exact arithmetic: rationals, Laurent polynomials, rational functions with
//! `(1 - monomial)` denominators, and truncated power series.

mod monomial;
mod parse;
mod poly;
mod rational_function;
mod series;

use num::{BigInt, Integer, One, Signed, ToPrimitive};
use thiserror::Error;

pub use monomial::{Monomial, Vars};
pub use parse::{parse_poly, parse_rational};
pub use poly::LaurentPoly;
pub use rational_function::{sum_all, StructuredRationalFunction};
pub use series::{rational_series_equal, series_of_rational, univariate_coefficients, TruncatedSeries};

/// Arbitrary-precision rational, always stored in lowest terms.
pub type Rational = num::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable lists differ: {left} vs {right}")]
    VariableMismatch { left: String, right: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("factor 1 - m with m = 1")]
    TrivialFactor,
    #[error("not divisible by the given factor")]
    NotDivisible,
    #[error("rational function is not a Laurent polynomial")]
    NotPolynomial,
    #[error("denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("expected a univariate polynomial, found {0} variables")]
    NotUnivariate(usize),
    #[error("negative exponent where a polynomial was required")]
    NegativeExponent,
    #[error("cannot invert a polynomial with more than one term")]
    NotInvertible,
    #[error("parse error: {0}")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Renders a rational as `p` or `p/q`.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r mod p` for a rational whose denominator is prime to `p`.
pub(crate) fn rational_mod(r: &Rational, p: &BigInt) -> Option<u64> {
    let n = r.numer().mod_floor(p);
    let d = r.denom().mod_floor(p);
    let e = d.extended_gcd(p);
    if !e.gcd.abs().is_one() {
        return None;
    }
    let inv = e.x.mod_floor(p);
    (n * inv).mod_floor(p).to_u64()
}

/// Coefficient rings appearing in cohomology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CoefficientRing {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Z1/2")]
    IntegersHalf,
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "F2")]
    F2,
    #[serde(rename = "F3")]
    F3,
}

impl CoefficientRing {
    /// Characteristic of the residue field used to test unit/zero questions.
    pub fn characteristic(self) -> u64 {
        match self {
            CoefficientRing::F2 => 2,
            CoefficientRing::F3 => 3,
            _ => 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CoefficientRing::Integers => "Z",
            CoefficientRing::IntegersHalf => "Z1/2",
            CoefficientRing::Rationals => "Q",
            CoefficientRing::F2 => "F2",
            CoefficientRing::F3 => "F3",
        }
    }
}

impl std::str::FromStr for CoefficientRing {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" => Ok(CoefficientRing::Integers),
            "Z1/2" | "Z[1/2]" => Ok(CoefficientRing::IntegersHalf),
            "Q" => Ok(CoefficientRing::Rationals),
            "F2" => Ok(CoefficientRing::F2),
            "F3" => Ok(CoefficientRing::F3),
            other => Err(AlgebraError::Parse(format!("unknown coefficient ring '{other}'"))),
        }
    }
}
