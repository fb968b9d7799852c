use std::collections::BTreeMap;

use super::monomial::{Monomial, Vars};
use super::poly::LaurentPoly;
use super::AlgebraError;

/// `unit * numerator / prod (1 - m)` over a multiset of monomials `m`.
///
/// Every factor monomial is lex-positive; a factor `1 - m` with `m`
/// lex-negative is rewritten as `-m (1 - 1/m)` when the function is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredRationalFunction {
    numerator: LaurentPoly,
    factors: Vec<Monomial>,
    unit: Monomial,
}

impl StructuredRationalFunction {
    pub fn new<I>(numerator: LaurentPoly, denominators: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let nvars = numerator.vars().len();
        let mut numerator = numerator;
        let mut unit = Monomial::one(nvars);
        let mut factors = Vec::new();
        for m in denominators {
            if m.len() != nvars {
                return Err(AlgebraError::DimensionMismatch {
                    expected: nvars,
                    found: m.len(),
                });
            }
            if m.is_one() {
                return Err(AlgebraError::TrivialFactor);
            }
            if m.is_lex_positive() {
                factors.push(m);
            } else {
                // 1/(1 - m) = -m^{-1} / (1 - m^{-1})
                let inv = m.inverse();
                unit = unit.mul(&inv);
                numerator = -numerator;
                factors.push(inv);
            }
        }
        factors.sort();
        Ok(StructuredRationalFunction {
            numerator,
            factors,
            unit,
        })
    }

    /// A Laurent polynomial viewed as a rational function with no factors.
    pub fn from_poly(p: LaurentPoly) -> Self {
        let nvars = p.vars().len();
        StructuredRationalFunction {
            numerator: p,
            factors: Vec::new(),
            unit: Monomial::one(nvars),
        }
    }

    pub fn vars(&self) -> &Vars {
        self.numerator.vars()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn factors(&self) -> &[Monomial] {
        &self.factors
    }

    pub fn unit(&self) -> &Monomial {
        &self.unit
    }

    fn counts(&self) -> BTreeMap<&Monomial, usize> {
        let mut c = BTreeMap::new();
        for m in &self.factors {
            *c.entry(m).or_insert(0) += 1;
        }
        c
    }

    /// Numerator (with the unit absorbed) rewritten over `common`.
    fn lift_to(&self, common: &BTreeMap<Monomial, usize>) -> LaurentPoly {
        let own = self.counts();
        let vars = self.vars();
        let mut p = self.numerator.mul_monomial(&self.unit);
        for (m, &k) in common {
            let have = own.get(m).copied().unwrap_or(0);
            let one_minus = &LaurentPoly::one(vars) - &LaurentPoly::monomial(vars, m.clone());
            for _ in have..k {
                p = &p * &one_minus;
            }
        }
        p
    }

    /// Sum over the multiset-max of the two factor lists.
    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.vars() != other.vars() {
            return Err(AlgebraError::VariableMismatch {
                left: self.vars().to_string(),
                right: other.vars().to_string(),
            });
        }
        let mut common: BTreeMap<Monomial, usize> = BTreeMap::new();
        for (m, k) in self.counts().into_iter().chain(other.counts()) {
            let e = common.entry(m.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let numerator = self.lift_to(&common).checked_add(&other.lift_to(&common))?;
        let factors = common
            .into_iter()
            .flat_map(|(m, k)| std::iter::repeat_n(m, k))
            .collect();
        Ok(StructuredRationalFunction {
            unit: Monomial::one(numerator.vars().len()),
            numerator,
            factors,
        })
    }

    pub fn neg(&self) -> Self {
        StructuredRationalFunction {
            numerator: -&self.numerator,
            factors: self.factors.clone(),
            unit: self.unit.clone(),
        }
    }

    /// Clears every factor by exact division, failing if the value is not a
    /// Laurent polynomial.
    pub fn to_laurent(&self) -> Result<LaurentPoly, AlgebraError> {
        let mut p = self.numerator.mul_monomial(&self.unit);
        for m in &self.factors {
            p = p.divide_exact(m).map_err(|e| match e {
                AlgebraError::NotDivisible => AlgebraError::NotPolynomial,
                other => other,
            })?;
        }
        Ok(p)
    }
}

/// Sum of a nonempty sequence of rational functions.
pub fn sum_all<I>(vars: &Vars, items: I) -> Result<StructuredRationalFunction, AlgebraError>
where
    I: IntoIterator<Item = StructuredRationalFunction>,
{
    items.into_iter().try_fold(
        StructuredRationalFunction::from_poly(LaurentPoly::zero(vars)),
        |acc, r| acc.checked_add(&r),
    )
}
