use num::Zero;
use serde::{Deserialize, Serialize};

use super::psi::{kernel_generator, psi_star};
use super::{bfdiff_ring, bk_ring, cross_check, field_for, strata, CatalogError, StrataInfo, SurfaceFamily};
use crate::algebra::{int, rat, CoefficientRing, LaurentPoly, Rational, Vars};
use crate::graded::{fiber_product_dims, DegreewiseDims, Field, GradedRingPresentation, HilbertSeries, RingMap};
use crate::localization::euler_class;

/// `R_l` with its factors and, for each factor, the scalar `c` with
/// `factor = c * kernel_generator(n)` for the matching twist `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationPolynomial {
    pub l: u32,
    pub family: SurfaceFamily,
    pub value: LaurentPoly,
    pub factors: Vec<LaurentPoly>,
    pub scalars: Vec<Rational>,
}

impl RelationPolynomial {
    pub fn degree(&self) -> i64 {
        match self.family {
            SurfaceFamily::Untwisted => 4 * i64::from(self.l) + 2,
            SurfaceFamily::Twisted => 4 * i64::from(self.l) + 4,
        }
    }
}

/// `c` with `p = c q`, if it exists.
pub(crate) fn proportionality(p: &LaurentPoly, q: &LaurentPoly) -> Option<Rational> {
    let (m, c) = q.terms().next()?;
    let ratio = p.coefficient(m) / c;
    (ratio != Rational::zero() && *p == q.scale(&ratio)).then_some(ratio)
}

fn factor(l: u32, family: SurfaceFamily) -> LaurentPoly {
    let r = bfdiff_ring(Field::Q);
    let t = r.generator("T").expect("T");
    let x = r.generator("X").expect("X");
    let y = r.generator("Y").expect("Y");
    let t2 = &t * &t;
    let i = i64::from(l);
    match family {
        SurfaceFamily::Untwisted if l == 0 => t,
        SurfaceFamily::Untwisted => &(&x.scale(&int(i.pow(4))) - &y.scale(&int(i * i))) + &t2,
        SurfaceFamily::Twisted => {
            let u = &x + &y;
            let inner = &u.scale(&rat(i * (i + 1), 2)) - &y;
            &inner.scale(&int((2 * i + 1).pow(2))) - &t2.scale(&rat(i * i * (i + 1) * (i + 1), 2))
        }
    }
}

pub fn relation_polynomial(l: u32, family: SurfaceFamily) -> RelationPolynomial {
    let factors: Vec<LaurentPoly> = (0..=l).map(|k| factor(k, family)).collect();
    let scalars = factors
        .iter()
        .enumerate()
        .map(|(k, f)| proportionality(f, &kernel_generator(family.twist(k as u32))).expect("proportional factor"))
        .collect();
    let value = LaurentPoly::product(&bfdiff_ring(Field::Q).vars().clone(), factors.iter());
    RelationPolynomial {
        l,
        family,
        value,
        factors,
        scalars,
    }
}

/// The substitution `z = T, x = 4U - T^2, y = 4U + 32Y - 2T^2` with
/// `U = X + Y`, under which the twisted factors become
/// `(-z^2 + n^4 x - n^2 y) / 32`, `n = 2k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeOfVariables {
    pub z: LaurentPoly,
    pub x: LaurentPoly,
    pub y: LaurentPoly,
    pub checked: Vec<u32>,
    /// The identity also holds with `k` as a formal variable.
    pub symbolic: bool,
}

fn twisted_sides(vars: &Vars, k: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let g = |n: &str| LaurentPoly::var(vars, n).expect("variable");
    let (t, x, y) = (g("T"), g("X"), g("Y"));
    let one = LaurentPoly::one(vars);
    let n = &k.scale_int(2) + &one;
    let n2 = &n * &n;
    let u = &x + &y;
    let t2 = &t * &t;
    let kk1 = k * &(k + &one);
    let lhs = &(&n2 * &(&(&u * &kk1).scale(&rat(1, 2)) - &y)) - &(&(&kk1 * &kk1) * &t2).scale(&rat(1, 2));
    let z = t.clone();
    let xs = &u.scale_int(4) - &t2;
    let ys = &(&u.scale_int(4) + &y.scale_int(32)) - &t2.scale_int(2);
    let rhs = (&(&(&n2 * &n2) * &xs) - &(&(&z * &z) + &(&n2 * &ys))).scale(&rat(1, 32));
    (lhs, rhs)
}

pub fn twisted_change_of_variables() -> Result<ChangeOfVariables, CatalogError> {
    let r = bfdiff_ring(Field::Q);
    let mut checked = Vec::new();
    for k in 0..=8u32 {
        let (lhs, rhs) = twisted_sides(r.vars(), &LaurentPoly::integer(r.vars(), i64::from(k)));
        if lhs != rhs {
            return Err(CatalogError::IdentityFailed(format!("change of variables at k = {k}: {lhs} vs {rhs}")));
        }
        if lhs != factor(k, SurfaceFamily::Twisted) {
            return Err(CatalogError::IdentityFailed(format!("twisted factor at k = {k}")));
        }
        checked.push(k);
    }
    let kv = Vars::new(&["k", "T", "X", "Y"]);
    let (lhs, rhs) = twisted_sides(&kv, &LaurentPoly::var(&kv, "k")?);
    if lhs != rhs {
        return Err(CatalogError::IdentityFailed("change of variables with symbolic k".into()));
    }
    Ok(ChangeOfVariables {
        z: r.parse("T")?,
        x: r.parse("4*X + 4*Y - T^2")?,
        y: r.parse("4*X + 36*Y - 2*T^2")?,
        checked,
        symbolic: true,
    })
}

/// Additive cohomology of `BG_lambda` from the splitting into suspended
/// copies of `H*(BK(n))`, one per stratum.
pub fn bg_groups_dims(
    lambda: &Rational,
    family: SurfaceFamily,
    coefficients: CoefficientRing,
    max_degree: usize,
) -> Result<DegreewiseDims, CatalogError> {
    let s = strata(lambda, family)?;
    groups_dims_for(s.l, family, field_for(coefficients)?, max_degree)
}

pub(crate) fn groups_dims_for(
    l: u32,
    family: SurfaceFamily,
    field: Field,
    max_degree: usize,
) -> Result<DegreewiseDims, CatalogError> {
    let mut parts = vec![(0usize, bk_ring(family.twist(0), field).dims(max_degree)?)];
    for k in 1..=l {
        let shift = match family {
            SurfaceFamily::Untwisted => 4 * k - 2,
            SurfaceFamily::Twisted => 4 * k,
        };
        parts.push((shift as usize, bk_ring(family.twist(k), field).dims(max_degree)?));
    }
    let refs: Vec<(usize, &DegreewiseDims)> = parts.iter().map(|(s, d)| (*s, d)).collect();
    Ok(DegreewiseDims::shifted_sum(&refs, max_degree))
}

/// The Euler class of K(m) in `bk_ring(m, field)`. Mod 2 and m even, `A`
/// restricts to the circle class `T` and `X` (the Pontryagin class) to `w2^2`.
pub(crate) fn euler_in(m: u32, field: Field) -> Result<LaurentPoly, CatalogError> {
    let e = euler_class(m)?.value;
    let ring = bk_ring(m, field);
    if field == Field::F2 && m % 2 == 0 {
        let images = vec![ring.parse("T")?, ring.parse("w2^2")?];
        return Ok(e.compose(&images, ring.vars())?);
    }
    Ok(ring.coerce(&e)?)
}

/// Dimensions for one gluing step `BG_{l-1} -> BG_l`, which attaches
/// `BK(m)` along the sphere bundle of its isotropy representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageDims {
    pub l: u32,
    pub m: u32,
    pub field: Field,
    pub fiber_product: DegreewiseDims,
    pub expected: DegreewiseDims,
}

impl StageDims {
    pub fn agrees(&self) -> bool {
        self.fiber_product == self.expected
    }
}

/// Over Q the fiber product of `Q[T,X,Y]/(R_{l-1}) -> H*(BK(m))/(e_m)` and
/// the quotient map, compared with `Q[T,X,Y]/(R_l)`. Over F2 and F3 the
/// previous stage enters through its additive dims and the fiber product
/// dims are `a + b - c` (the quotient map is onto).
pub fn mayer_vietoris_stage(
    l: u32,
    family: SurfaceFamily,
    field: Field,
    max_degree: usize,
) -> Result<StageDims, CatalogError> {
    if l == 0 {
        return Err(CatalogError::IdentityFailed("the first stage has no gluing".into()));
    }
    let m = family.twist(l);
    let b = bk_ring(m, field);
    let c = b.with_relations(vec![euler_in(m, field)?])?;
    let (fiber_product, expected) = if field == Field::Q {
        let prev = relation_polynomial(l - 1, family);
        let a = bfdiff_ring(field).with_relations(vec![prev.value])?;
        let f = RingMap::new(a, c.clone(), psi_star(m).images().to_vec())?;
        let g = RingMap::new(b.clone(), c, b.vars().names().iter().map(|n| b.generator(n)).collect::<Result<_, _>>()?)?;
        let fp = fiber_product_dims(&f, &g, max_degree)?;
        let next = bfdiff_ring(field).with_relations(vec![relation_polynomial(l, family).value])?;
        (fp, next.dims(max_degree)?)
    } else {
        let a = groups_dims_for(l - 1, family, field, max_degree)?;
        let bd = b.dims(max_degree)?;
        let cd = c.dims(max_degree)?;
        let fp = DegreewiseDims((0..=max_degree).map(|d| a.get(d) + bd.get(d) - cd.get(d)).collect());
        (fp, groups_dims_for(l, family, field, max_degree)?)
    };
    Ok(StageDims {
        l,
        m,
        field,
        fiber_product,
        expected,
    })
}

/// `H*(BG_lambda; Q) = Q[T, X, Y]/(R_l)` with its cross-checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgPresentation {
    pub strata: StrataInfo,
    pub relation: RelationPolynomial,
    pub presentation: GradedRingPresentation,
    pub hilbert_series: HilbertSeries,
    pub dims: DegreewiseDims,
    pub groups_dims: DegreewiseDims,
    pub fiber_product_dims: Option<DegreewiseDims>,
}

pub fn bg_rational_presentation(
    lambda: &Rational,
    family: SurfaceFamily,
    max_degree: usize,
) -> Result<BgPresentation, CatalogError> {
    let s = strata(lambda, family)?;
    let relation = relation_polynomial(s.l, family);
    let presentation = bfdiff_ring(Field::Q).with_relations(vec![relation.value.clone()])?;
    let hilbert_series = presentation.hilbert_series(max_degree)?;
    cross_check(
        hilbert_series == HilbertSeries::from_degrees(&[2, 4, 4], &[relation.degree()]),
        "hilbert series",
        || hilbert_series.to_string(),
    )?;
    let dims = presentation.dims(max_degree)?;
    let groups_dims = groups_dims_for(s.l, family, Field::Q, max_degree)?;
    cross_check(dims == groups_dims, "additive splitting", || format!("{dims} vs {groups_dims}"))?;
    let fiber_product_dims = if s.l == 0 {
        None
    } else {
        let stage = mayer_vietoris_stage(s.l, family, Field::Q, max_degree)?;
        cross_check(stage.fiber_product == dims, "fiber product", || {
            format!("{} vs {dims}", stage.fiber_product)
        })?;
        Some(stage.fiber_product)
    };
    Ok(BgPresentation {
        strata: s,
        relation,
        presentation,
        hilbert_series,
        dims,
        groups_dims,
        fiber_product_dims,
    })
}

/// Whether the cohomology of `BG_lambda` and `BG_mu` agrees through degree
/// `2m - 4`, `m = m(lambda)`, as the inclusion is `(2m-3)`-connected.
pub fn connectivity_check(
    lambda: &Rational,
    mu: &Rational,
    family: SurfaceFamily,
    coefficients: CoefficientRing,
    max_degree: usize,
) -> Result<bool, CatalogError> {
    if lambda > mu {
        return Err(CatalogError::InadmissibleLambda(format!("{lambda} > {mu}")));
    }
    let s = strata(lambda, family)?;
    let bound = (2 * s.m as usize - 4).min(max_degree);
    let dims = |x: &Rational| -> Result<DegreewiseDims, CatalogError> {
        if field_for(coefficients)? == Field::Q {
            let l = strata(x, family)?.l;
            Ok(bfdiff_ring(Field::Q)
                .with_relations(vec![relation_polynomial(l, family).value])?
                .dims(bound)?)
        } else {
            bg_groups_dims(x, family, coefficients, bound)
        }
    };
    Ok(dims(lambda)? == dims(mu)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_examples() {
        let r = bfdiff_ring(Field::Q);
        let r1 = relation_polynomial(1, SurfaceFamily::Untwisted);
        assert_eq!(r1.value, r.parse("T*(X - Y + T^2)").unwrap());
        assert_eq!(r1.degree(), 6);
        let t0 = relation_polynomial(0, SurfaceFamily::Twisted);
        assert_eq!(t0.value, r.parse("-Y").unwrap());
        let t1 = relation_polynomial(1, SurfaceFamily::Twisted);
        assert_eq!(t1.factors[1], r.parse("9*X - 2*T^2").unwrap());
        for fam in [SurfaceFamily::Untwisted, SurfaceFamily::Twisted] {
            assert!(relation_polynomial(5, fam).scalars.iter().all(|s| *s == int(1)));
        }
    }

    #[test]
    fn change_of_variables() {
        let c = twisted_change_of_variables().unwrap();
        assert!(c.symbolic);
        assert_eq!(c.checked.len(), 9);
    }

    #[test]
    fn presentations() {
        let p = bg_rational_presentation(&int(2), SurfaceFamily::Untwisted, 20).unwrap();
        assert_eq!(p.hilbert_series, HilbertSeries::from_degrees(&[2, 4, 4], &[6]));
        assert_eq!(p.dims.get(4), 3);
        let p = bg_rational_presentation(&int(2), SurfaceFamily::Twisted, 20).unwrap();
        let d: Vec<usize> = (0..=8).step_by(2).map(|d| p.dims.get(d)).collect();
        assert_eq!(d, vec![1, 1, 3, 3, 5]);
    }

    #[test]
    fn groups() {
        let q = bg_groups_dims(&int(1), SurfaceFamily::Twisted, CoefficientRing::Rationals, 8).unwrap();
        assert_eq!(q, DegreewiseDims(vec![1, 0, 1, 0, 2, 0, 2, 0, 3]));
        let q = bg_groups_dims(&int(2), SurfaceFamily::Untwisted, CoefficientRing::Rationals, 4).unwrap();
        assert_eq!(q.get(4), 3);
        let f = bg_groups_dims(&int(2), SurfaceFamily::Untwisted, CoefficientRing::F2, 4).unwrap();
        // F2[w2,w3,w2',w3'] gives 0 in degree 1, 2 in 2, 2 in 3; the shifted
        // F2[T,w2,w3] adds 1 in degree 2 and 0 in degree 3.
        assert_eq!(f.as_slice()[..4], [1, 0, 3, 2]);
    }

    #[test]
    fn stages_mod_two() {
        for fam in [SurfaceFamily::Untwisted, SurfaceFamily::Twisted] {
            for l in 1..=3 {
                assert!(mayer_vietoris_stage(l, fam, Field::F2, 20).unwrap().agrees(), "{fam} {l}");
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        let q = CoefficientRing::Rationals;
        assert!(connectivity_check(&rat(3, 2), &rat(5, 2), SurfaceFamily::Untwisted, q, 30).unwrap());
        assert!(connectivity_check(&rat(1, 2), &rat(3, 2), SurfaceFamily::Twisted, q, 30).unwrap());
        assert!(connectivity_check(&int(2), &int(2), SurfaceFamily::Twisted, CoefficientRing::F2, 30).unwrap());
    }
}
