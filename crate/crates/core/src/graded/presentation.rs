use std::collections::HashMap;
use std::fmt;

use num::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::linalg::{Echelon, Field, Scalar};
use super::GradedError;
use crate::algebra::{parse_poly, series_of_rational, LaurentPoly, Monomial, Rational, Vars};

/// Dimensions of the graded pieces in degrees `0..=D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreewiseDims(pub Vec<usize>);

impl DegreewiseDims {
    pub fn max_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn get(&self, d: usize) -> usize {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn truncate(&self, max_degree: usize) -> DegreewiseDims {
        DegreewiseDims(self.0.iter().take(max_degree + 1).copied().collect())
    }

    /// Dims of the coefficient series of `num / den` in degrees `0..=D`.
    pub fn from_series(num: &LaurentPoly, den: &LaurentPoly, max_degree: usize) -> Result<Self, GradedError> {
        let s = series_of_rational(num, den, max_degree)?;
        s.coefficients()
            .iter()
            .enumerate()
            .map(|(d, c)| {
                if !c.is_integer() || c.is_negative() {
                    return Err(GradedError::NotADimension { degree: d, value: c.to_string() });
                }
                Ok(c.to_integer().to_usize().expect("dimension fits"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DegreewiseDims)
    }

    /// Degreewise sum of shifted copies: `sum_i t^{shift_i} * dims_i`.
    pub fn shifted_sum(parts: &[(usize, &DegreewiseDims)], max_degree: usize) -> DegreewiseDims {
        let mut out = vec![0; max_degree + 1];
        for (shift, dims) in parts {
            for (d, slot) in out.iter_mut().enumerate().skip(*shift) {
                *slot += dims.get(d - shift);
            }
        }
        DegreewiseDims(out)
    }
}

impl fmt::Display for DegreewiseDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Commutative graded ring `k[generators] / (relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRingPresentation {
    vars: Vars,
    degrees: Vec<i64>,
    relations: Vec<LaurentPoly>,
    field: Field,
}

impl GradedRingPresentation {
    pub fn new(generators: &[(&str, i64)], relations: Vec<LaurentPoly>, field: Field) -> Result<Self, GradedError> {
        let names: Vec<&str> = generators.iter().map(|(n, _)| *n).collect();
        let vars = Vars::new(&names);
        let degrees: Vec<i64> = generators.iter().map(|(_, d)| *d).collect();
        if let Some(&(name, d)) = generators.iter().find(|(_, d)| *d <= 0) {
            return Err(GradedError::BadGenerator(format!("{name} has degree {d}")));
        }
        let p = GradedRingPresentation {
            vars,
            degrees,
            relations: Vec::new(),
            field,
        };
        p.with_relations(relations)
    }

    pub fn polynomial_ring(generators: &[(&str, i64)], field: Field) -> Result<Self, GradedError> {
        Self::new(generators, Vec::new(), field)
    }

    /// Adds relations, which must be homogeneous polynomials in the generators.
    pub fn with_relations(&self, extra: Vec<LaurentPoly>) -> Result<Self, GradedError> {
        let mut out = self.clone();
        for r in extra {
            let r = if r.vars() == &self.vars {
                r
            } else {
                r.rename_into(&self.vars)?
            };
            if r.is_zero() {
                continue;
            }
            if !r.is_polynomial() {
                return Err(GradedError::NotPolynomial(r.to_string()));
            }
            if r.homogeneous_degree(&self.degrees).is_none() {
                return Err(GradedError::NotHomogeneous(r.to_string()));
            }
            out.relations.push(r);
        }
        Ok(out)
    }

    pub fn with_field(&self, field: Field) -> Self {
        GradedRingPresentation {
            field,
            ..self.clone()
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn relations(&self) -> &[LaurentPoly] {
        &self.relations
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn parse(&self, s: &str) -> Result<LaurentPoly, GradedError> {
        Ok(parse_poly(s, &self.vars)?)
    }

    pub fn generator(&self, name: &str) -> Result<LaurentPoly, GradedError> {
        Ok(LaurentPoly::var(&self.vars, name)?)
    }

    /// Degree of a homogeneous element; `None` for zero or mixed degrees.
    pub fn degree_of(&self, p: &LaurentPoly) -> Option<i64> {
        p.homogeneous_degree(&self.degrees)
    }

    /// All monomials of degree `d` in the generators.
    pub fn monomials(&self, d: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut e = vec![0i64; self.degrees.len()];
        fill(&self.degrees, 0, d, &mut e, &mut out);
        out
    }

    pub(crate) fn piece<S: Scalar>(&self, d: i64) -> Result<Piece<S>, GradedError> {
        Piece::build(self, d)
    }

    /// Standard monomials spanning the degree-`d` piece.
    pub fn monomial_basis(&self, d: i64) -> Result<Vec<Monomial>, GradedError> {
        with_scalar!(self.field, S => {
            let piece = self.piece::<S>(d)?;
            Ok(piece.basis_monomials())
        })
    }

    pub fn dim(&self, d: i64) -> Result<usize, GradedError> {
        Ok(self.monomial_basis(d)?.len())
    }

    pub fn dims(&self, max_degree: usize) -> Result<DegreewiseDims, GradedError> {
        (0..=max_degree as i64)
            .map(|d| self.dim(d))
            .collect::<Result<Vec<_>, _>>()
            .map(DegreewiseDims)
    }

    /// Whether `p` lies in the ideal of relations (degreewise).
    pub fn is_zero(&self, p: &LaurentPoly) -> Result<bool, GradedError> {
        let p = self.coerce(p)?;
        if p.is_zero() {
            return Ok(true);
        }
        let d = self
            .degree_of(&p)
            .ok_or_else(|| GradedError::NotHomogeneous(p.to_string()))?;
        with_scalar!(self.field, S => {
            let piece = self.piece::<S>(d)?;
            Ok(piece.coords(&p)?.iter().all(Scalar::is_zero))
        })
    }

    /// Re-expresses `p` in this ring's variables (matched by name).
    pub fn coerce(&self, p: &LaurentPoly) -> Result<LaurentPoly, GradedError> {
        if p.vars() == &self.vars {
            Ok(p.clone())
        } else {
            Ok(p.rename_into(&self.vars)?)
        }
    }

    /// Hilbert series assuming the relations form a regular sequence:
    /// `prod (1 - t^{deg r}) / prod (1 - t^{deg g})`, checked against the
    /// degreewise dimensions up to `max_degree`.
    pub fn hilbert_series(&self, max_degree: usize) -> Result<HilbertSeries, GradedError> {
        let rel_degrees: Vec<i64> = self
            .relations
            .iter()
            .map(|r| self.degree_of(r).expect("homogeneous relation"))
            .collect();
        let series = HilbertSeries::from_degrees(&self.degrees, &rel_degrees);
        let predicted = series_of_rational(&series.numerator, &series.denominator, max_degree)?;
        let actual = self.dims(max_degree)?;
        for (d, c) in predicted.coefficients().iter().enumerate() {
            if *c != Rational::from_integer(actual.get(d).into()) {
                return Err(GradedError::RegularityCheckFailed {
                    degree: d,
                    series: c.to_string(),
                    actual: actual.get(d),
                });
            }
        }
        Ok(series)
    }
}

impl fmt::Display for GradedRingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .vars
            .names()
            .iter()
            .zip(&self.degrees)
            .map(|(n, d)| format!("{n}:{d}"))
            .collect();
        write!(f, "{}[{}]", self.field, gens.join(", "))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

fn fill(degrees: &[i64], i: usize, remaining: i64, e: &mut Vec<i64>, out: &mut Vec<Monomial>) {
    if i == degrees.len() {
        if remaining == 0 {
            out.push(Monomial::new(e.clone()));
        }
        return;
    }
    let mut k = 0;
    while k * degrees[i] <= remaining {
        e[i] = k;
        fill(degrees, i + 1, remaining - k * degrees[i], e, out);
        k += 1;
    }
    e[i] = 0;
}

/// The degree-`d` piece: monomials, relation span in echelon form, and the
/// standard (non-pivot) monomials that give a basis of the quotient.
pub(crate) struct Piece<S> {
    degree: i64,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: Echelon<S>,
    basis: Vec<usize>,
}

pub(crate) fn to_scalar<S: Scalar>(c: &Rational) -> Result<S, GradedError> {
    S::from_rational(c).ok_or_else(|| GradedError::CoefficientNotInField(c.to_string()))
}

impl<S: Scalar> Piece<S> {
    fn build(p: &GradedRingPresentation, d: i64) -> Result<Self, GradedError> {
        let monomials = if d < 0 { Vec::new() } else { p.monomials(d) };
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut relations = Echelon::new(monomials.len());
        for r in &p.relations {
            let dr = p.degree_of(r).expect("homogeneous relation");
            if dr > d {
                continue;
            }
            for m in p.monomials(d - dr) {
                let mut v = vec![S::zero(); monomials.len()];
                for (t, c) in r.terms() {
                    let i = index[&t.mul(&m)];
                    v[i] = v[i].add(&to_scalar::<S>(c)?);
                }
                relations.insert(v);
            }
        }
        let basis = relations.free_columns();
        Ok(Piece {
            degree: d,
            monomials,
            index,
            relations,
            basis,
        })
    }

    pub(crate) fn dim(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn basis_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&i| self.monomials[i].clone()).collect()
    }

    /// Coordinates of a homogeneous element of this degree in the standard basis.
    pub(crate) fn coords(&self, p: &LaurentPoly) -> Result<Vec<S>, GradedError> {
        let mut v = vec![S::zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            let i = *self.index.get(m).ok_or_else(|| GradedError::WrongDegree {
                expected: self.degree,
                element: p.to_string(),
            })?;
            v[i] = v[i].add(&to_scalar::<S>(c)?);
        }
        self.relations.reduce(&mut v);
        Ok(self.basis.iter().map(|&i| v[i].clone()).collect())
    }

    /// The element with the given coordinates, as a polynomial.
    pub(crate) fn element(&self, coords: &[S], vars: &Vars) -> LaurentPoly {
        LaurentPoly::from_terms(
            vars,
            self.basis
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&i, c)| (self.monomials[i].clone(), c.to_rational())),
        )
    }
}

/// A rational generating function `numerator / denominator` in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
    /// `k` for each factor `1 - t^k` of the numerator, then the denominator.
    pub numerator_factors: Vec<i64>,
    pub denominator_factors: Vec<i64>,
}

pub fn t_vars() -> Vars {
    Vars::new(&["t"])
}

fn one_minus_t(k: i64) -> LaurentPoly {
    let v = t_vars();
    &LaurentPoly::one(&v) - &LaurentPoly::monomial(&v, Monomial::new(vec![k]))
}

impl HilbertSeries {
    pub fn from_degrees(generator_degrees: &[i64], relation_degrees: &[i64]) -> Self {
        let v = t_vars();
        let numerator = relation_degrees
            .iter()
            .fold(LaurentPoly::one(&v), |acc, &k| &acc * &one_minus_t(k));
        let denominator = generator_degrees
            .iter()
            .fold(LaurentPoly::one(&v), |acc, &k| &acc * &one_minus_t(k));
        let sorted = |d: &[i64]| {
            let mut d = d.to_vec();
            d.sort_unstable();
            d
        };
        HilbertSeries {
            numerator,
            denominator,
            numerator_factors: sorted(relation_degrees),
            denominator_factors: sorted(generator_degrees),
        }
    }

    pub fn dims(&self, max_degree: usize) -> Result<DegreewiseDims, GradedError> {
        DegreewiseDims::from_series(&self.numerator, &self.denominator, max_degree)
    }

    /// Exact equality of the two rational functions.
    pub fn same_function(&self, other: &HilbertSeries) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

/// `(1 - t^2)(1 - t^4)^2`, grouping repeated factors.
fn render_factors(degrees: &[i64]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < degrees.len() {
        let k = degrees[i];
        let reps = degrees[i..].iter().take_while(|&&d| d == k).count();
        let base = if k == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{k})") };
        out += &base;
        if reps > 1 {
            out += &format!("^{reps}");
        }
        i += reps;
    }
    out
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = if self.numerator_factors.is_empty() {
            "1".to_string()
        } else {
            render_factors(&self.numerator_factors)
        };
        match self.denominator_factors.len() {
            0 => f.write_str(&num),
            1 => write!(f, "{num}/{}", render_factors(&self.denominator_factors)),
            _ => write!(f, "{num}/({})", render_factors(&self.denominator_factors)),
        }
    }
}
