use std::collections::BTreeMap;

use num::{Integer, One};

use super::linalg::Echelon;
use super::presentation::{DegreewiseDims, GradedRingPresentation};
use super::GradedError;
use crate::algebra::{CoefficientRing, LaurentPoly, Rational};

/// Remainder of `p` on division by `relation`, which must be monic in `var`.
pub fn reduce_mod_monic(p: &LaurentPoly, relation: &LaurentPoly, var: usize) -> Result<LaurentPoly, GradedError> {
    let deg = relation
        .degree_in(var)
        .ok_or_else(|| GradedError::NotMonic(relation.to_string()))?;
    let lead = relation.coefficient_in(var, deg);
    if !lead.is_one() {
        return Err(GradedError::NotMonic(relation.to_string()));
    }
    let vars = p.vars().clone();
    let mut e = vec![0i64; vars.len()];
    let mut rest = p.clone();
    while let Some(k) = rest.degree_in(var).filter(|&k| k >= deg) {
        let c = rest.coefficient_in(var, k);
        e[var] = k - deg;
        let shift = LaurentPoly::monomial(&vars, crate::algebra::Monomial::new(e.clone()));
        rest = &rest - &(&(&c * &shift) * relation);
    }
    Ok(rest)
}

/// A candidate basis of a ring as a module over polynomials in some of its
/// generators, triangular with respect to a designated generator.
#[derive(Clone, Debug)]
pub struct ClosureSpec {
    pub ambient: GradedRingPresentation,
    /// The designated generator; the ambient may carry one relation monic in it.
    pub variable: String,
    /// Coefficient generators as (variable, power): `(V, 1)` allows `V`,
    /// `(v, 2)` allows only even powers of `v`.
    pub coefficient_generators: Vec<(String, i64)>,
    pub basis: Vec<(String, LaurentPoly)>,
    /// `Integers` or `IntegersHalf`.
    pub constraint: CoefficientRing,
    /// Products of the first `pair_bound` basis elements are expanded.
    pub pair_bound: usize,
}

/// A product expanded in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub left: String,
    pub right: String,
    /// Nonzero coefficients, keyed by basis name.
    pub terms: Vec<(String, LaurentPoly)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub products_checked: usize,
    pub expansions: Vec<Expansion>,
}

struct Expander<'a> {
    spec: &'a ClosureSpec,
    var: usize,
    relation: Option<LaurentPoly>,
    by_degree: BTreeMap<i64, usize>,
    allowed: Vec<Option<i64>>,
}

impl<'a> Expander<'a> {
    fn new(spec: &'a ClosureSpec) -> Result<Self, GradedError> {
        let vars = spec.ambient.vars();
        let var = vars
            .index_of(&spec.variable)
            .ok_or_else(|| GradedError::UnknownVariable(spec.variable.clone()))?;
        let relation = match spec.ambient.relations() {
            [] => None,
            [r] => Some(r.clone()),
            _ => return Err(GradedError::NotMonic("more than one relation".into())),
        };
        if let Some(r) = &relation {
            reduce_mod_monic(&LaurentPoly::zero(vars), r, var)?;
        }
        let mut allowed = vec![None; vars.len()];
        for (name, power) in &spec.coefficient_generators {
            let i = vars.index_of(name).ok_or_else(|| GradedError::UnknownVariable(name.clone()))?;
            allowed[i] = Some(*power);
        }
        let mut by_degree = BTreeMap::new();
        for (i, (name, b)) in spec.basis.iter().enumerate() {
            let b = spec.ambient.coerce(b)?;
            let k = b.degree_in(var).unwrap_or(0);
            let lead = b.coefficient_in(var, k);
            if lead.as_constant().is_none() || lead.is_zero() {
                return Err(GradedError::NotFree(format!("{name} has non-constant leading coefficient {lead}")));
            }
            if by_degree.insert(k, i).is_some() {
                return Err(GradedError::NotFree(format!("two basis elements of degree {k} in {}", spec.variable)));
            }
        }
        Ok(Expander {
            spec,
            var,
            relation,
            by_degree,
            allowed,
        })
    }

    fn normal_form(&self, p: &LaurentPoly) -> Result<LaurentPoly, GradedError> {
        let p = self.spec.ambient.coerce(p)?;
        match &self.relation {
            Some(r) => reduce_mod_monic(&p, r, self.var),
            None => Ok(p),
        }
    }

    fn check_coefficient(&self, c: &LaurentPoly, context: &str) -> Result<(), GradedError> {
        for (m, q) in c.terms() {
            let ok_scalar = match self.spec.constraint {
                CoefficientRing::Integers => q.is_integer(),
                CoefficientRing::IntegersHalf => {
                    let mut d = q.denom().clone();
                    while d.is_even() {
                        d /= 2;
                    }
                    d.is_one()
                }
                _ => true,
            };
            if !ok_scalar {
                return Err(GradedError::CoefficientViolation(format!(
                    "{context}: coefficient {q} not in {}",
                    self.spec.constraint.label()
                )));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                let fine = e == 0 || self.allowed[i].is_some_and(|p| e > 0 && e % p == 0);
                if !fine {
                    return Err(GradedError::CoefficientViolation(format!(
                        "{context}: {c} is not a polynomial in the coefficient generators"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Coefficients of `p` in the basis, by triangular elimination.
    fn expand(&self, p: &LaurentPoly, context: &str) -> Result<Vec<(String, LaurentPoly)>, GradedError> {
        let mut rest = self.normal_form(p)?;
        let mut out: Vec<(usize, LaurentPoly)> = Vec::new();
        while !rest.is_zero() {
            let k = rest.degree_in(self.var).expect("nonzero");
            let Some(&i) = self.by_degree.get(&k) else {
                return Err(GradedError::NotFree(format!(
                    "{context}: remainder {rest} has no basis element of degree {k} in {}",
                    self.spec.variable
                )));
            };
            let b = self.spec.ambient.coerce(&self.spec.basis[i].1)?;
            let lead = b.coefficient_in(self.var, k).as_constant().expect("checked");
            let c = rest.coefficient_in(self.var, k).scale(&(Rational::one() / lead));
            self.check_coefficient(&c, context)?;
            rest = &rest - &(&c * &b);
            out.push((i, c));
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out
            .into_iter()
            .map(|(i, c)| (self.spec.basis[i].0.clone(), c))
            .collect())
    }
}

/// Expands every product `b_i b_j` (`i <= j < pair_bound`) in the basis and
/// checks the coefficients satisfy the constraint.
pub fn module_closure_check(spec: &ClosureSpec) -> Result<ClosureReport, GradedError> {
    let ex = Expander::new(spec)?;
    let n = spec.pair_bound.min(spec.basis.len());
    let mut expansions = Vec::new();
    for i in 0..n {
        for j in i..n {
            let (li, bi) = &spec.basis[i];
            let (lj, bj) = &spec.basis[j];
            let context = format!("{li}*{lj}");
            let prod = &spec.ambient.coerce(bi)? * &spec.ambient.coerce(bj)?;
            let terms = ex.expand(&prod, &context)?;
            expansions.push(Expansion {
                left: li.clone(),
                right: lj.clone(),
                terms,
            });
        }
    }
    Ok(ClosureReport {
        products_checked: expansions.len(),
        expansions,
    })
}

/// Expands a single element in the basis of `spec`.
pub fn expand_in_basis(spec: &ClosureSpec, p: &LaurentPoly) -> Result<Vec<(String, LaurentPoly)>, GradedError> {
    Expander::new(spec)?.expand(p, "element")
}

/// Checks that `basis` is a free basis of the ambient ring as a module over
/// the polynomials in `coefficient_vars`, degree by degree: the products of
/// basis elements with coefficient monomials are independent and span.
/// Returns the dimensions of the ambient ring.
pub fn free_module_check(
    ambient: &GradedRingPresentation,
    coefficient_vars: &[&str],
    basis: &[LaurentPoly],
    max_degree: usize,
) -> Result<DegreewiseDims, GradedError> {
    let gens: Vec<(&str, i64)> = coefficient_vars
        .iter()
        .map(|n| {
            let i = ambient
                .vars()
                .index_of(n)
                .ok_or_else(|| GradedError::UnknownVariable(n.to_string()))?;
            Ok((*n, ambient.degrees()[i]))
        })
        .collect::<Result<_, GradedError>>()?;
    let coeff_ring = GradedRingPresentation::polynomial_ring(&gens, ambient.field())?;
    let basis: Vec<(i64, LaurentPoly)> = basis
        .iter()
        .map(|b| {
            let b = ambient.coerce(b)?;
            let d = ambient
                .degree_of(&b)
                .ok_or_else(|| GradedError::NotHomogeneous(b.to_string()))?;
            Ok((d, b))
        })
        .collect::<Result<_, GradedError>>()?;
    let mut dims = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree as i64 {
        let (count, rank, dim) = with_scalar!(ambient.field(), S => {
            let piece = ambient.piece::<S>(d)?;
            let mut e = Echelon::<S>::new(piece.dim());
            let mut count = 0;
            for (bd, b) in &basis {
                for m in coeff_ring.monomials(d - bd) {
                    let c = LaurentPoly::monomial(coeff_ring.vars(), m).rename_into(ambient.vars())?;
                    e.insert(piece.coords(&(&c * b))?);
                    count += 1;
                }
            }
            (count, e.rank(), piece.dim())
        });
        if rank < count {
            return Err(GradedError::NotFree(format!("dependent basis products in degree {d}")));
        }
        if rank < dim {
            return Err(GradedError::NotFree(format!("basis does not span degree {d}")));
        }
        dims.push(dim);
    }
    Ok(DegreewiseDims(dims))
}
