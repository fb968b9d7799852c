use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use super::monomial::{Monomial, Vars};
use super::{AlgebraError, Rational};
use crate::torus::LatticeMap;

/// Laurent polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so two equal values always have the
/// same term map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn integer(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, Rational::from_integer(c.into()))
    }

    pub fn term(vars: &Vars, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), vars.len(), "monomial arity does not match variables");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn monomial(vars: &Vars, m: Monomial) -> Self {
        Self::term(vars, m, Rational::one())
    }

    /// The variable called `name`.
    pub fn var(vars: &Vars, name: &str) -> Result<Self, AlgebraError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(Self::monomial(vars, Monomial::var(vars.len(), i)))
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "monomial arity does not match variables");
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from integer exponent vectors and integer coefficients.
    pub fn from_int_terms(vars: &Vars, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(
            vars,
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e.to_vec()), Rational::from_integer((*c).into()))),
        )
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the monomial given by `exponents`.
    pub fn coeff_of(&self, exponents: &[i64]) -> Rational {
        self.coefficient(&Monomial::new(exponents.to_vec()))
    }

    /// The single term of a one-term polynomial.
    pub fn as_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The constant value, if this polynomial has no nonconstant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.as_term().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    /// Sum of coefficients; the dimension of a character.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    fn check_vars(&self, other: &LaurentPoly) -> Result<(), AlgebraError> {
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        self.check_vars(other)?;
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> LaurentPoly {
        self.scale(&Rational::from_integer(c.into()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Product of a sequence of polynomials over `vars`.
    pub fn product<'a, I>(vars: &Vars, factors: I) -> LaurentPoly
    where
        I: IntoIterator<Item = &'a LaurentPoly>,
    {
        factors.into_iter().fold(Self::one(vars), |acc, f| &acc * f)
    }

    /// Exact quotient `q` with `self = (1 - m) * q`.
    ///
    /// Terms are grouped into cosets of the line `Z*m` in the exponent lattice;
    /// within a coset the problem is univariate division by `1 - s`, whose
    /// quotient coefficients are the partial sums of the dividend taken in
    /// increasing multiples of `m`.
    pub fn divide_exact(&self, m: &Monomial) -> Result<LaurentPoly, AlgebraError> {
        if m.len() != self.vars.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.vars.len(),
                found: m.len(),
            });
        }
        let pivot = m
            .exponents()
            .iter()
            .position(|&e| e != 0)
            .ok_or(AlgebraError::TrivialFactor)?;
        let step = m.exponents()[pivot];

        let mut cosets: HashMap<Monomial, BTreeMap<i64, Rational>> = HashMap::new();
        for (mon, c) in &self.terms {
            let k = mon.exponents()[pivot].div_euclid(step);
            let rep = mon.div(&m.pow(k));
            cosets.entry(rep).or_default().insert(k, c.clone());
        }

        let mut q = Self::zero(&self.vars);
        for (rep, coeffs) in cosets {
            let (&lo, _) = coeffs.iter().next().expect("nonempty coset");
            let (&hi, _) = coeffs.iter().next_back().expect("nonempty coset");
            let mut partial = Rational::zero();
            for j in lo..hi {
                if let Some(c) = coeffs.get(&j) {
                    partial += c;
                }
                if !partial.is_zero() {
                    q.add_term(rep.mul(&m.pow(j)), partial.clone());
                }
            }
            partial += &coeffs[&hi];
            if !partial.is_zero() {
                return Err(AlgebraError::NotDivisible);
            }
        }
        Ok(q)
    }

    /// Applies the exponent map `v -> M v` to every monomial.
    pub fn monomial_substitution(&self, map: &LatticeMap, target: &Vars) -> Result<LaurentPoly, AlgebraError> {
        if map.cols() != self.vars.len() || map.rows() != target.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.vars.len(),
                found: map.cols(),
            });
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            out.add_term(Monomial::new(map.apply(m.exponents())), c.clone());
        }
        Ok(out)
    }

    /// Substitutes `images[i]` for the i-th variable.
    ///
    /// A variable occurring with a negative exponent must map to a single
    /// term, which is then inverted.
    pub fn compose(&self, images: &[LaurentPoly], target: &Vars) -> Result<LaurentPoly, AlgebraError> {
        if images.len() != self.vars.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.vars.len(),
                found: images.len(),
            });
        }
        for img in images {
            if img.vars() != target {
                return Err(AlgebraError::VariableMismatch {
                    left: target.to_string(),
                    right: img.vars().to_string(),
                });
            }
        }
        let mut powers: HashMap<(usize, i64), LaurentPoly> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = match powers.entry((i, e)) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(v) => v.insert(if e > 0 {
                        images[i].pow(e as u32)
                    } else {
                        let inv = images[i].invert_term().ok_or(AlgebraError::NotInvertible)?;
                        inv.pow((-e) as u32)
                    }),
                };
                t = &t * p;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    fn invert_term(&self) -> Option<LaurentPoly> {
        let (m, c) = self.as_term()?;
        Some(Self::term(&self.vars, m.inverse(), c.recip()))
    }

    /// Moves the polynomial into a different variable list by name.
    ///
    /// Every variable that occurs must exist in `target`.
    pub fn rename_into(&self, target: &Vars) -> Result<LaurentPoly, AlgebraError> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| AlgebraError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Weighted degree if every term has the same one.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Largest exponent of variable `var` among the terms.
    pub fn degree_in(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|m| m.exponents()[var]).max()
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables
    /// (the exponent of `var` is set to zero).
    pub fn coefficient_in(&self, var: usize, k: i64) -> LaurentPoly {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.exponents()[var] == k {
                let mut e = m.exponents().to_vec();
                e[var] = 0;
                out.add_term(Monomial::new(e), c.clone());
            }
        }
        out
    }

    /// Splits into (positive-coefficient part, negated negative-coefficient part).
    pub fn split_by_sign(&self) -> (LaurentPoly, LaurentPoly) {
        let mut pos = Self::zero(&self.vars);
        let mut neg = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            if c.is_positive() {
                pos.add_term(m.clone(), c.clone());
            } else {
                neg.add_term(m.clone(), -c.clone());
            }
        }
        (pos, neg)
    }

    /// Integer value of every coefficient, reduced mod `p`.
    ///
    /// Returns `None` if some denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<Vec<(Monomial, u64)>> {
        let modulus = BigInt::from(p);
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let v = super::rational_mod(c, &modulus)?;
            if v != 0 {
                out.push((m.clone(), v));
            }
        }
        Some(out)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("polynomial variable lists differ")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("polynomial variable lists differ")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("polynomial variable lists differ")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

// Rendering: polynomials print highest term first, Laurent polynomials with
// negative exponents print in ascending order (constant first).
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<(&Monomial, &Rational)> = if self.is_polynomial() {
            self.terms.iter().rev().collect()
        } else {
            self.terms.iter().collect()
        };
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let body = render_term(self.vars.names(), m, &c.abs());
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

fn render_power(name: &str, e: i64) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

/// Renders `c * m` for positive `c` as `numerator/denominator`, where the
/// numerator collects the coefficient's numerator and the positive powers
/// and the denominator collects the rest.
fn render_term(names: &[String], m: &Monomial, c: &Rational) -> String {
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    if !c.numer().is_one() || m.is_one() {
        num.push(c.numer().to_string());
    }
    if !c.denom().is_one() {
        den.push(c.denom().to_string());
    }
    for (name, &e) in names.iter().zip(m.exponents()) {
        if e > 0 {
            num.push(render_power(name, e));
        } else if e < 0 {
            den.push(render_power(name, -e));
        }
    }
    let numerator = if num.is_empty() { "1".to_string() } else { num.join("*") };
    match den.len() {
        0 => numerator,
        1 => format!("{numerator}/{}", den[0]),
        _ => format!("{numerator}/({})", den.join("*")),
    }
}
