//! Truncated power series of univariate rational functions.

use num::{One, Zero};

use super::poly::LaurentPoly;
use super::{AlgebraError, Rational};

/// Coefficients of a power series in degrees `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        assert!(!coefficients.is_empty(), "series needs at least a constant term");
        TruncatedSeries { coefficients }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn bound(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, d: usize) -> &Rational {
        &self.coefficients[d]
    }
}

/// Dense coefficient vector of a univariate polynomial with nonnegative exponents.
pub fn univariate_coefficients(p: &LaurentPoly) -> Result<Vec<Rational>, AlgebraError> {
    if p.vars().len() != 1 {
        return Err(AlgebraError::NotUnivariate(p.vars().len()));
    }
    let mut out: Vec<Rational> = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exponents()[0];
        if e < 0 {
            return Err(AlgebraError::NegativeExponent);
        }
        let e = e as usize;
        if out.len() <= e {
            out.resize(e + 1, Rational::zero());
        }
        out[e] = c.clone();
    }
    Ok(out)
}

/// Power series of `num / den` up to degree `bound`.
pub fn series_of_rational(
    num: &LaurentPoly,
    den: &LaurentPoly,
    bound: usize,
) -> Result<TruncatedSeries, AlgebraError> {
    let n = univariate_coefficients(num)?;
    let d = univariate_coefficients(den)?;
    let d0 = d.first().filter(|c| !c.is_zero()).ok_or(AlgebraError::ZeroConstantTerm)?;
    let d0_inv = Rational::one() / d0;
    let mut a: Vec<Rational> = Vec::with_capacity(bound + 1);
    for k in 0..=bound {
        let mut v = n.get(k).cloned().unwrap_or_else(Rational::zero);
        for j in 1..=k.min(d.len() - 1) {
            v -= &d[j] * &a[k - j];
        }
        a.push(v * &d0_inv);
    }
    Ok(TruncatedSeries::new(a))
}

/// Decides `n1/d1 == n2/d2` by cross-multiplication.
pub fn rational_series_equal(
    n1: &LaurentPoly,
    d1: &LaurentPoly,
    n2: &LaurentPoly,
    d2: &LaurentPoly,
) -> Result<bool, AlgebraError> {
    Ok(n1.checked_mul(d2)? == n2.checked_mul(d1)?)
}
