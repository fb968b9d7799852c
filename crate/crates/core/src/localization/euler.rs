use num::{BigInt, One, Zero};

use super::index::h01_character_standard;
use super::LocalizationError;
use crate::algebra::{CoefficientRing, LaurentPoly, Monomial, Rational, Vars};

pub fn torus_vars() -> Vars {
    Vars::new(&["T1", "T2"])
}

/// Invariant generators `A, X` of the cohomology of BK(n), degrees 2 and 4.
pub fn invariant_vars() -> Vars {
    Vars::new(&["A", "X"])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerClassElement {
    pub n: u32,
    /// Polynomial in `A, X`.
    pub value: LaurentPoly,
    /// Smallest of Z, Z[1/2] over which the invariant ring is polynomial in `A, X`.
    pub coefficients: CoefficientRing,
}

impl EulerClassElement {
    /// Cohomological degree, with `|A| = 2` and `|X| = 4`.
    pub fn degree(&self) -> Option<i64> {
        self.value.homogeneous_degree(&[2, 4])
    }
}

/// Product of the weights `s T1 + t T2` over the character `sum a^s b^t`.
pub fn euler_class_torus(n: u32) -> Result<LaurentPoly, LocalizationError> {
    let chi = h01_character_standard(n)?;
    let vars = torus_vars();
    let mut e = LaurentPoly::one(&vars);
    for (m, c) in chi.value().terms() {
        let mult: u32 = c
            .to_integer()
            .try_into()
            .map_err(|_| LocalizationError::NonIntegral)?;
        let [s, t] = [m.exponents()[0], m.exponents()[1]];
        let w = LaurentPoly::from_terms(
            &vars,
            [
                (Monomial::new(vec![1, 0]), Rational::from_integer(s.into())),
                (Monomial::new(vec![0, 1]), Rational::from_integer(t.into())),
            ],
        );
        e = &e * &w.pow(mult);
    }
    Ok(e)
}

/// Rewrites a polynomial in `T1, T2` invariant under the Weyl group of K(n)
/// in terms of `A, X`: for n odd `A = T1 + T2`, `X = T1 T2`; for n even
/// `A = T1`, `X = T2^2`.
pub fn rewrite_invariant(p: &LaurentPoly, n: u32) -> Result<LaurentPoly, LocalizationError> {
    let out_vars = invariant_vars();
    let mut out = LaurentPoly::zero(&out_vars);
    if n % 2 == 0 {
        for (m, c) in p.terms() {
            let [i, j] = [m.exponents()[0], m.exponents()[1]];
            if i < 0 || j < 0 || j % 2 != 0 {
                return Err(LocalizationError::NotInvariant(p.to_string()));
            }
            out = &out + &LaurentPoly::term(&out_vars, Monomial::new(vec![i, j / 2]), c.clone());
        }
        return Ok(out);
    }
    let tv = p.vars().clone();
    let sum = LaurentPoly::from_int_terms(&tv, &[(&[1, 0], 1), (&[0, 1], 1)]);
    let prod = LaurentPoly::from_int_terms(&tv, &[(&[1, 1], 1)]);
    let mut rest = p.clone();
    loop {
        let Some((m, c)) = rest.terms().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
            break;
        };
        let [i, j] = [m.exponents()[0], m.exponents()[1]];
        if i < j || j < 0 {
            return Err(LocalizationError::NotInvariant(p.to_string()));
        }
        let k = (i - j) as u32;
        let sub = (&sum.pow(k) * &prod.pow(j as u32)).scale(&c);
        rest = &rest - &sub;
        out = &out + &LaurentPoly::term(&out_vars, Monomial::new(vec![i - j, j]), c);
    }
    Ok(out)
}

pub fn euler_class(n: u32) -> Result<EulerClassElement, LocalizationError> {
    let torus = euler_class_torus(n)?;
    let value = rewrite_invariant(&torus, n)?;
    let coefficients = if n % 2 == 1 {
        CoefficientRing::Integers
    } else {
        CoefficientRing::IntegersHalf
    };
    Ok(EulerClassElement { n, value, coefficients })
}

/// Whether `e_n` is a non-zero divisor with the given coefficients.
///
/// For n odd the invariant ring is a polynomial ring, so it is enough that
/// `e_n` does not vanish after reduction. For n even the ring retracts onto
/// a polynomial ring in `A`, and the coefficient of `A^(n-1)` must be a unit.
pub fn verify_euler_nzd(n: u32, coefficients: CoefficientRing) -> Result<bool, LocalizationError> {
    let e = euler_class(n)?;
    let p = coefficients.characteristic();
    if n % 2 == 1 {
        if p == 0 {
            return Ok(!e.value.is_zero());
        }
        return Ok(e.value.reduce_mod(p).is_some_and(|t| !t.is_empty()));
    }
    let lead = e
        .value
        .coefficient(&Monomial::new(vec![i64::from(n) - 1, 0]));
    Ok(match coefficients {
        CoefficientRing::Rationals => !lead.is_zero(),
        CoefficientRing::Integers | CoefficientRing::IntegersHalf => {
            lead.is_integer() && (lead.is_one() || lead == -Rational::one())
        }
        CoefficientRing::F2 | CoefficientRing::F3 => {
            let r = crate::algebra::rational_mod(&lead, &BigInt::from(p));
            r.is_some_and(|v| v != 0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn ax(s: &str) -> LaurentPoly {
        parse_poly(s, &invariant_vars()).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(euler_class(2).unwrap().value, ax("A"));
        assert_eq!(euler_class(4).unwrap().value, ax("A*(A^2 - X)"));
        assert_eq!(euler_class(4).unwrap().value.to_string(), "A^3 - A*X");
        assert_eq!(euler_class(5).unwrap().value, ax("X*(9*X - 2*A^2)"));
        assert_eq!(euler_class(3).unwrap().value, ax("X"));
    }

    #[test]
    fn degrees() {
        for n in 2..=12 {
            assert_eq!(euler_class(n).unwrap().degree(), Some(2 * (i64::from(n) - 1)));
        }
    }

    #[test]
    fn non_zero_divisor() {
        assert!(verify_euler_nzd(6, CoefficientRing::F2).unwrap());
        assert!(verify_euler_nzd(7, CoefficientRing::F2).unwrap());
        assert!(verify_euler_nzd(3, CoefficientRing::Rationals).unwrap());
    }

    #[test]
    fn rewrite_rejects_non_invariant() {
        let t = parse_poly("T1", &torus_vars()).unwrap();
        assert!(rewrite_invariant(&t, 3).is_err());
        let t = parse_poly("T2", &torus_vars()).unwrap();
        assert!(rewrite_invariant(&t, 4).is_err());
    }
}
