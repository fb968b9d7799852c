use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use super::psi::{circle_pullback, psi_star};
use super::relations::{groups_dims_for, relation_polynomial};
use super::{bfdiff_ring, bk_ring, cross_check, CatalogError, IsometryGroup, SurfaceFamily};
use crate::algebra::{int, CoefficientRing, LaurentPoly, Monomial, Rational, Vars};
use crate::graded::{
    fiber_product_dims, free_module_check, joint_kernel_dims, module_closure_check, ClosureReport, ClosureSpec,
    DegreewiseDims, Field, GradedRingPresentation, RingInvolution, RingMap,
};
use crate::torus::shear_equivalent_circles;

fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=i64::from(n)).product::<i64>().into())
}

fn product(vars: &Vars, factors: impl IntoIterator<Item = LaurentPoly>) -> LaurentPoly {
    factors.into_iter().fold(LaurentPoly::one(vars), |acc, f| &acc * &f)
}

/// Free basis of `Q[x, y, z]/(z prod_{i<=l} (z^2 + i^4 x - i^2 y))` over
/// `Q[x, y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Main2Basis {
    pub l: u32,
    pub ring: GradedRingPresentation,
    /// `a_0, ..., a_l`.
    pub a: Vec<LaurentPoly>,
    /// `b_0, ..., b_{l-1}`.
    pub b: Vec<LaurentPoly>,
    pub closure: ClosureReport,
    pub dims: DegreewiseDims,
}

fn main2_ring() -> GradedRingPresentation {
    GradedRingPresentation::polynomial_ring(&[("x", 4), ("y", 4), ("z", 2)], Field::Q).expect("ring")
}

fn main2_factor(r: &GradedRingPresentation, i: i64) -> LaurentPoly {
    let g = |n| r.generator(n).expect("generator");
    let z = g("z");
    &(&(&z * &z) + &g("x").scale_int(i.pow(4))) - &g("y").scale_int(i * i)
}

/// `a_k` (k >= 1) and `b_k` in the polynomial ring `Q[x, y, z]`.
fn main2_elements(r: &GradedRingPresentation, count_a: u32, count_b: u32) -> (Vec<LaurentPoly>, Vec<LaurentPoly>) {
    let z = r.generator("z").expect("z");
    let vars = r.vars();
    let prod_to = |k: u32| product(vars, (1..=i64::from(k)).map(|i| main2_factor(r, i)));
    let a = (0..count_a)
        .map(|k| {
            if k == 0 {
                LaurentPoly::one(vars)
            } else {
                (&(&z * &z) * &prod_to(k - 1)).scale(&factorial(2 * k).recip())
            }
        })
        .collect();
    let b = (0..count_b)
        .map(|k| (&z * &prod_to(k)).scale(&factorial(2 * k + 1).recip()))
        .collect();
    (a, b)
}

pub fn main2_generators(l: u32, max_degree: usize) -> Result<Main2Basis, CatalogError> {
    let free = main2_ring();
    let rel = &free.generator("z")? * &product(free.vars(), (1..=i64::from(l)).map(|i| main2_factor(&free, i)));
    let ring = free.with_relations(vec![rel])?;
    let (a, b) = main2_elements(&free, l + 1, l);
    let mut basis: Vec<(String, LaurentPoly)> = Vec::new();
    for (k, e) in a.iter().enumerate() {
        basis.push((format!("a{k}"), e.clone()));
    }
    for (k, e) in b.iter().enumerate() {
        basis.push((format!("b{k}"), e.clone()));
    }
    let elements: Vec<LaurentPoly> = basis.iter().map(|(_, e)| e.clone()).collect();
    let dims = free_module_check(&ring, &["x", "y"], &elements, max_degree)?;
    let pair_bound = basis.len();
    let closure = module_closure_check(&ClosureSpec {
        ambient: ring.clone(),
        variable: "z".into(),
        coefficient_generators: vec![("x".into(), 1), ("y".into(), 1)],
        basis,
        constraint: CoefficientRing::IntegersHalf,
        pair_bound,
    })?;
    let groups = groups_dims_for(l, SurfaceFamily::Untwisted, Field::Q, max_degree)?;
    cross_check(dims == groups, "main2 dims against additive splitting", || {
        format!("{dims} vs {groups}")
    })?;
    Ok(Main2Basis {
        l,
        ring,
        a,
        b,
        closure,
        dims,
    })
}

/// Outcome of one stage of the verification away from 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageResult {
    pub stage: u8,
    pub name: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionAnsatz {
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfdiffReport {
    pub stages: Vec<StageResult>,
    pub ansatz: InvolutionAnsatz,
}

/// `Q[u, v, w]`, all of degree 2.
fn h_ring() -> GradedRingPresentation {
    GradedRingPresentation::polynomial_ring(&[("u", 2), ("v", 2), ("w", 2)], Field::Q).expect("ring")
}

/// `Q[u, V, w]` with `V = v^2`.
fn k_ring() -> GradedRingPresentation {
    GradedRingPresentation::polynomial_ring(&[("u", 2), ("V", 4), ("w", 2)], Field::Q).expect("ring")
}

/// `(w + i^2 u)^2 - 4 i^2 v^2` in `Q[u, v, w]`.
fn h_factor(h: &GradedRingPresentation, i: i64) -> LaurentPoly {
    let g = |n| h.generator(n).expect("generator");
    let s = &g("w") + &g("u").scale_int(i * i);
    let v = g("v");
    &(&s * &s) - &(&v * &v).scale_int(4 * i * i)
}

fn h_prod(h: &GradedRingPresentation, k: u32) -> LaurentPoly {
    product(h.vars(), (1..=i64::from(k)).map(|i| h_factor(h, i)))
}

fn f_k(h: &GradedRingPresentation, k: u32) -> LaurentPoly {
    (&h.generator("w").expect("w") * &h_prod(h, k)).scale(&factorial(2 * k + 1).recip())
}

fn g_k(h: &GradedRingPresentation, k: u32) -> LaurentPoly {
    if k == 0 {
        return LaurentPoly::one(h.vars());
    }
    let g = |n| h.generator(n).expect("generator");
    let kk = i64::from(k);
    let lin = &(&g("w") + &g("u").scale_int(kk * kk)) + &g("v").scale_int(2 * kk);
    (&(&g("w") * &lin) * &h_prod(h, k - 1)).scale(&factorial(2 * k).recip())
}

/// `w^2/(2k)! prod_{i<k} ((w + i^2 u)^2 - 4 i^2 v^2)`, and 1 for k = 0.
fn a_closed(h: &GradedRingPresentation, k: u32) -> LaurentPoly {
    if k == 0 {
        return LaurentPoly::one(h.vars());
    }
    let w = h.generator("w").expect("w");
    (&(&w * &w) * &h_prod(h, k - 1)).scale(&factorial(2 * k).recip())
}

/// Rewrites an element of `Q[u, v, w]` involving only even powers of `v`
/// in `Q[u, V, w]`.
fn to_v_squared(p: &LaurentPoly, k: &GradedRingPresentation) -> Result<LaurentPoly, CatalogError> {
    let mut out = LaurentPoly::zero(k.vars());
    for (m, c) in p.terms() {
        let e = m.exponents();
        if e[1] % 2 != 0 {
            return Err(CatalogError::IdentityFailed(format!("{p} has an odd power of v")));
        }
        out = &out + &LaurentPoly::term(k.vars(), Monomial::new(vec![e[0], e[1] / 2, e[2]]), c.clone());
    }
    Ok(out)
}

fn stage_error(stage: u8, name: &str, detail: impl std::fmt::Display) -> CatalogError {
    CatalogError::CrossCheckFailed {
        check: format!("stage {stage} ({name})"),
        detail: detail.to_string(),
    }
}

fn stage_check(stage: u8, name: &str, ok: bool, detail: impl FnOnce() -> String) -> Result<(), CatalogError> {
    if ok {
        Ok(())
    } else {
        Err(stage_error(stage, name, detail()))
    }
}

/// Solves `tau(V) = -u w + a V + b u^2` for `tau^2 = id` (with
/// `tau(u) = -u`, `tau(w) = w`) by successive linear elimination in the
/// coefficients.
pub fn solve_involution_ansatz() -> Result<InvolutionAnsatz, CatalogError> {
    let vars = Vars::new(&["a", "b", "u", "V", "w"]);
    let g = |n| LaurentPoly::var(&vars, n).expect("variable");
    let (a, b, u, v, w) = (g("a"), g("b"), g("u"), g("V"), g("w"));
    let tau_v = &(&(&a * &v) + &(&b * &(&u * &u))) - &(&u * &w);
    let images = vec![a.clone(), b.clone(), -&u, tau_v.clone(), w.clone()];
    let twice = tau_v.compose(&images, &vars)?;
    let diff = &twice - &v;
    // Coefficients of the monomials in u, V, w, as polynomials in a, b.
    let mut eqs: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
    for (m, c) in diff.terms() {
        let e = m.exponents();
        let key = e[2..].to_vec();
        let coeff = LaurentPoly::term(&vars, Monomial::new(vec![e[0], e[1], 0, 0, 0]), c.clone());
        let slot = eqs.entry(key).or_insert_with(|| LaurentPoly::zero(&vars));
        *slot = &*slot + &coeff;
    }
    let mut eqs: Vec<LaurentPoly> = eqs.into_values().collect();
    let mut solved: [Option<Rational>; 2] = [None, None];
    loop {
        let linear = eqs.iter().find_map(|e| {
            let unknowns: Vec<usize> = (0..2).filter(|&j| e.degree_in(j).is_some_and(|d| d > 0)).collect();
            match unknowns.as_slice() {
                [j] if e.degree_in(*j) == Some(1) => Some((*j, e.clone())),
                _ => None,
            }
        });
        let Some((j, e)) = linear else { break };
        let slope = e.coefficient_in(j, 1).as_constant().expect("single unknown");
        let constant = e.coefficient_in(j, 0).as_constant().unwrap_or_else(Rational::zero);
        let value = -constant / slope;
        let mut images: Vec<LaurentPoly> = (0..5).map(|i| LaurentPoly::var(&vars, &vars.names()[i]).expect("var")).collect();
        images[j] = LaurentPoly::constant(&vars, value.clone());
        eqs = eqs
            .iter()
            .map(|e| e.compose(&images, &vars))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|e| !e.is_zero())
            .collect();
        solved[j] = Some(value);
    }
    if let Some(e) = eqs.first() {
        return Err(CatalogError::IdentityFailed(format!("ansatz leaves the condition {e} = 0")));
    }
    match solved {
        [Some(a), Some(b)] => Ok(InvolutionAnsatz {
            a: crate::algebra::render_rational(&a),
            b: crate::algebra::render_rational(&b),
        }),
        _ => Err(CatalogError::IdentityFailed("ansatz is underdetermined".into())),
    }
}

/// Verifies the description of the rational cohomology away from 2 in six
/// stages; `max_k` bounds the generators checked for closure.
pub fn bfdiff_away_from_2(max_k: u32) -> Result<BfdiffReport, CatalogError> {
    let h = h_ring();
    let kr = k_ring();
    let mut stages = Vec::new();
    let top = 2 * max_k + 1;

    // 1. f_k, g_k and their degrees.
    let fs: Vec<LaurentPoly> = (0..=top).map(|k| f_k(&h, k)).collect();
    let gs: Vec<LaurentPoly> = (0..=top + 1).map(|k| g_k(&h, k)).collect();
    for k in 0..=top as usize {
        let ok = h.degree_of(&fs[k]) == Some(4 * k as i64 + 2) && h.degree_of(&gs[k]) == Some(4 * k as i64);
        stage_check(1, "generators", ok, || format!("degrees at k = {k}"))?;
    }
    let (u, v) = (h.generator("u")?, h.generator("v")?);
    let f0 = &fs[0];
    let rhs = &(&gs[1].scale_int(2) - &(&u * f0)) - &(&v * f0).scale_int(2);
    stage_check(1, "generators", f0 * f0 == rhs, || format!("f0^2 = {}", f0 * f0))?;
    stages.push(StageResult {
        stage: 1,
        name: "generators".into(),
        detail: format!("f_k, g_k for k <= {top}"),
    });

    // 2. The sign involution and its invariant basis.
    let tau2 = RingInvolution::parse(&h, &["u", "-v", "w"])?;
    let degree_bound = (4 * max_k + 4) as usize;
    let pieces = tau2.invariant_subring(degree_bound)?;
    let inv_dims = DegreewiseDims(pieces.iter().map(|p| p.invariant).collect());
    let expected = kr.dims(degree_bound)?;
    stage_check(2, "invariants", inv_dims == expected, || format!("{inv_dims} vs {expected}"))?;
    let mut a_h = vec![gs[0].clone()];
    for k in 1..=top {
        let sym = (&gs[k as usize] + &tau2.apply(&gs[k as usize])?).scale(&Rational::new(1.into(), 2.into()));
        let a = &sym - &(&u * &fs[k as usize - 1]).scale(&Rational::new(i64::from(k).into(), 2.into()));
        stage_check(2, "invariants", a == a_closed(&h, k), || format!("a_{k} = {a}"))?;
        a_h.push(a);
    }
    for p in a_h.iter().chain(&fs) {
        stage_check(2, "invariants", tau2.fixes(p)?, || format!("{p} is not fixed"))?;
    }
    stages.push(StageResult {
        stage: 2,
        name: "invariants".into(),
        detail: format!("invariant dims agree through degree {degree_bound}; a_k closed form for k <= {top}"),
    });

    // 3. formulamod.
    let (w, vv) = (kr.generator("w")?, kr.generator("V")?);
    let ku = kr.generator("u")?;
    for i in 1..=8i64 {
        let lhs = to_v_squared(&h_factor(&h, i), &kr)?;
        let shifted = &vv.scale_int(2) - &(&ku * &w);
        let rhs = &(&(&w * &w) + &(&ku * &ku).scale_int(i.pow(4))) - &shifted.scale_int(2 * i * i);
        stage_check(3, "factor identity", lhs == rhs, || format!("i = {i}"))?;
    }
    stages.push(StageResult {
        stage: 3,
        name: "factor identity".into(),
        detail: "i <= 8".into(),
    });

    // 4. The second involution.
    let tau1 = RingInvolution::parse(&kr, &["-u", "V - u*w", "w"])?;
    let a_k: Vec<LaurentPoly> = a_h.iter().map(|p| to_v_squared(p, &kr)).collect::<Result<_, _>>()?;
    let b_k: Vec<LaurentPoly> = fs.iter().map(|p| to_v_squared(p, &kr)).collect::<Result<_, _>>()?;
    for p in a_k.iter().chain(&b_k) {
        stage_check(4, "involution", tau1.fixes(p)?, || format!("{p} is not fixed"))?;
    }
    let ansatz = solve_involution_ansatz()?;
    stage_check(4, "involution", ansatz.a == "1" && ansatz.b == "0", || format!("{ansatz:?}"))?;
    stages.push(StageResult {
        stage: 4,
        name: "involution".into(),
        detail: format!("fixes a_k, b_k for k <= {top}; ansatz (a, b) = ({}, {})", ansatz.a, ansatz.b),
    });

    // 5. Substitution into the presentation of the quotient.
    let m2 = main2_ring();
    let subst = vec![&ku * &ku, (&vv.scale_int(2) - &(&ku * &w)).scale_int(2), w.clone()];
    for i in 1..=8i64 {
        let img = main2_factor(&m2, i).compose(&subst, kr.vars())?;
        let expected = to_v_squared(&h_factor(&h, i), &kr)?;
        stage_check(5, "substitution", img == expected, || format!("factor {i}"))?;
    }
    let (ma, mb) = main2_elements(&m2, top + 1, top + 1);
    for k in 0..=top as usize {
        let ia = ma[k].compose(&subst, kr.vars())?;
        let ib = mb[k].compose(&subst, kr.vars())?;
        stage_check(5, "substitution", ia == a_k[k] && ib == b_k[k], || format!("k = {k}"))?;
    }
    stages.push(StageResult {
        stage: 5,
        name: "substitution".into(),
        detail: format!("factors i <= 8 and basis k <= {top}"),
    });

    // 6. Integral closure.
    let ordered = |first: &[LaurentPoly], second: &[LaurentPoly], p: &str, q: &str| {
        let mut out = Vec::new();
        for k in 0..=max_k as usize {
            out.push((format!("{p}{k}"), first[k].clone()));
            out.push((format!("{q}{k}"), second[k].clone()));
        }
        for k in max_k as usize + 1..first.len() {
            out.push((format!("{p}{k}"), first[k].clone()));
        }
        for k in max_k as usize + 1..second.len() {
            out.push((format!("{q}{k}"), second[k].clone()));
        }
        out
    };
    let pair_bound = 2 * (max_k as usize + 1);
    let fg = module_closure_check(&ClosureSpec {
        ambient: h.clone(),
        variable: "w".into(),
        coefficient_generators: vec![("u".into(), 1), ("v".into(), 1)],
        basis: ordered(&gs, &fs, "g", "f"),
        constraint: CoefficientRing::Integers,
        pair_bound,
    })
    .map_err(|e| stage_error(6, "closure", e))?;
    let ab = module_closure_check(&ClosureSpec {
        ambient: kr.clone(),
        variable: "w".into(),
        coefficient_generators: vec![("u".into(), 1), ("V".into(), 1)],
        basis: ordered(&a_k, &b_k, "a", "b"),
        constraint: CoefficientRing::IntegersHalf,
        pair_bound,
    })
    .map_err(|e| stage_error(6, "closure", e))?;
    stages.push(StageResult {
        stage: 6,
        name: "closure".into(),
        detail: format!(
            "{} products over Z[u,v], {} products over Z[1/2][u,V]",
            fg.products_checked, ab.products_checked
        ),
    });
    Ok(BfdiffReport { stages, ansatz })
}

/// The second twisted stage as a fiber product over the common circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bg2Twisted {
    /// `(name, passed)` for each component check.
    pub checks: Vec<(String, bool)>,
    pub fiber_product: DegreewiseDims,
    pub expected: DegreewiseDims,
}

impl Bg2Twisted {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok) && self.fiber_product == self.expected
    }
}

pub fn bg2_twisted(max_degree: usize) -> Result<Bg2Twisted, CatalogError> {
    let shared = shear_equivalent_circles(3, 1, &int(2))?;
    let f = circle_pullback(IsometryGroup::U2, shared.on_l.direction());
    let g = circle_pullback(IsometryGroup::U2, shared.on_k.direction());
    let k1 = bk_ring(1, Field::Q);
    let k3 = bk_ring(3, Field::Q);
    let first: Vec<LaurentPoly> = ["A", "X", "0"].iter().map(|s| k1.parse(s)).collect::<Result<_, _>>()?;
    let second: Vec<LaurentPoly> = ["3*A", "2*A^2", "X"].iter().map(|s| k3.parse(s)).collect::<Result<_, _>>()?;
    let mut checks = Vec::new();
    for (i, name) in ["T", "X", "Y"].iter().enumerate() {
        let ok = f.apply(&first[i])? == g.apply(&second[i])?;
        checks.push((format!("{name} lies in the fiber product"), ok));
    }
    let r = bfdiff_ring(Field::Q);
    let relation = r.parse("Y*(9*X - 2*T^2)")?;
    checks.push((
        "relation vanishes on BK(1)".into(),
        relation.compose(&first, k1.vars())?.is_zero(),
    ));
    checks.push((
        "relation vanishes on BK(3)".into(),
        relation.compose(&second, k3.vars())?.is_zero(),
    ));
    let ty3 = r.parse("T*Y/3")?;
    let ty_first = ty3.compose(&first, k1.vars())?;
    let ty_second = ty3.compose(&second, k3.vars())?;
    checks.push((
        "TY/3 = (0, A X) is integral".into(),
        ty_first.is_zero() && ty_second == k3.parse("A*X")? && ty_second.has_integer_coefficients(),
    ));
    checks.push((
        "components are psi_1 and psi_3".into(),
        psi_star(1).images() == first.as_slice() && psi_star(3).images() == second.as_slice(),
    ));
    checks.push((
        "relation is R_1".into(),
        relation == relation_polynomial(1, SurfaceFamily::Twisted).value.scale_int(-1),
    ));
    let fiber_product = fiber_product_dims(&f, &g, max_degree)?;
    let quotient = r.with_relations(vec![relation])?;
    let expected = quotient.dims(max_degree)?;
    // The pair map is onto the fiber product with kernel generated by the relation.
    let p1 = RingMap::new(r.clone(), k1, first)?;
    let p3 = RingMap::new(r.clone(), k3, second)?;
    let joint = joint_kernel_dims(&[p1, p3], max_degree)?;
    let src = r.dims(max_degree)?;
    let ideal = DegreewiseDims((0..=max_degree).map(|d| src.get(d) - expected.get(d)).collect());
    checks.push(("joint kernel is the relation ideal".into(), joint == ideal));
    let image = DegreewiseDims((0..=max_degree).map(|d| src.get(d) - joint.get(d)).collect());
    checks.push(("pair map is onto the fiber product".into(), image == fiber_product));
    Ok(Bg2Twisted {
        checks,
        fiber_product,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main2_examples() {
        let m = main2_generators(2, 20).unwrap();
        let r = main2_ring();
        assert_eq!(m.b[0], r.parse("z").unwrap());
        assert_eq!(m.a[1], r.parse("z^2/2").unwrap());
        assert_eq!(m.ring.degree_of(&m.b[1]), Some(6));
        assert_eq!(m.ring.degree_of(&m.a[2]), Some(8));
        let bb = m
            .closure
            .expansions
            .iter()
            .find(|e| e.left == "b0" && e.right == "b0")
            .unwrap();
        assert_eq!(bb.terms, vec![("a1".to_string(), m.ring.parse("2").unwrap())]);
    }

    #[test]
    fn ansatz() {
        let s = solve_involution_ansatz().unwrap();
        assert_eq!((s.a.as_str(), s.b.as_str()), ("1", "0"));
    }

    #[test]
    fn bfdiff_small() {
        let r = bfdiff_away_from_2(1).unwrap();
        assert_eq!(r.stages.len(), 6);
    }

    #[test]
    fn bg2() {
        let r = bg2_twisted(16).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }
}
