use num::{Integer, One};

use super::{bfdiff_ring, bk_ring, isometry_group, CatalogError, IsometryGroup, SurfaceFamily};
use crate::algebra::{int, rat, LaurentPoly, Rational};
use crate::graded::{t_vars, Echelon, Field, GradedRingPresentation, RingMap};
use crate::torus::shear_equivalent_circles;

fn t_ring() -> GradedRingPresentation {
    GradedRingPresentation::polynomial_ring(&[("t", 2)], Field::Q).expect("positive degree")
}

fn t_pow(c: Rational, k: u32) -> LaurentPoly {
    let t = LaurentPoly::var(&t_vars(), "t").expect("t");
    t.pow(k).scale(&c)
}

/// Restriction of `H*(BK)` to the classifying space of the circle with
/// weight `(a, b)` in the standard torus basis of the group.
///
/// For SO(3)xSO(3) the first factor carries `Y0` and the second `X0`, so
/// `Y0 -> a^2 t^2` and `X0 -> b^2 t^2`.
pub fn circle_pullback(group: IsometryGroup, direction: [i64; 2]) -> RingMap {
    let [a, b] = direction;
    let (ring, images) = match group {
        IsometryGroup::So3xSo3 => (bk_ring(0, Field::Q), vec![t_pow(int(b * b), 2), t_pow(int(a * a), 2)]),
        IsometryGroup::S1xSo3 => (bk_ring(2, Field::Q), vec![t_pow(int(a), 1), t_pow(int(b * b), 2)]),
        IsometryGroup::U2 => (bk_ring(1, Field::Q), vec![t_pow(int(a + b), 1), t_pow(int(a * b), 2)]),
    };
    RingMap::new(ring, t_ring(), images).expect("well-formed circle restriction")
}

/// One wedge summand of the model for the stratum of lowest codimension and
/// the images of `T, X, Y` in its cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeComponent {
    pub name: &'static str,
    pub map: RingMap,
}

/// Classes `T, X, Y` are defined by their pullbacks to the two summands of
/// a wedge: `BK(0) v BS^1` (untwisted) or `BK(1) v BSU(2)` (twisted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationConstants {
    pub family: SurfaceFamily,
    pub group: WedgeComponent,
    pub extra: WedgeComponent,
}

pub fn normalization_constants(family: SurfaceFamily) -> NormalizationConstants {
    let src = bfdiff_ring(Field::Q);
    let component = |name, ring: GradedRingPresentation, images: &[&str]| WedgeComponent {
        name,
        map: RingMap::parse(&src, &ring, images).expect("normalization map"),
    };
    match family {
        SurfaceFamily::Untwisted => NormalizationConstants {
            family,
            group: component("BK(0)", bk_ring(0, Field::Q), &["0", "X0", "Y0"]),
            extra: component(
                "BS1",
                GradedRingPresentation::polynomial_ring(&[("A", 2)], Field::Q).expect("ring"),
                &["A", "0", "A^2"],
            ),
        },
        SurfaceFamily::Twisted => NormalizationConstants {
            family,
            group: component("BK(1)", bk_ring(1, Field::Q), &["A", "X", "0"]),
            extra: component(
                "BSU(2)",
                GradedRingPresentation::polynomial_ring(&[("X", 4)], Field::Q).expect("ring"),
                &["0", "0", "X"],
            ),
        },
    }
}

/// The map `H*(BFDiff) -> H*(BK(n))` induced by the inclusion of the
/// isometry group, in closed form.
pub fn psi_star(n: u32) -> RingMap {
    let src = bfdiff_ring(Field::Q);
    let tgt = bk_ring(n, Field::Q);
    if n == 0 {
        return RingMap::parse(&src, &tgt, &["0", "X0", "Y0"]).expect("psi_0");
    }
    let nn = i64::from(n);
    let a = tgt.generator("A").expect("A");
    let x = tgt.generator("X").expect("X");
    let a2 = &a * &a;
    let images = if n.is_even() {
        vec![a.scale(&rat(nn, 2)), x.clone(), &a2 + &x.scale(&rat(nn * nn, 4))]
    } else {
        let q = nn * nn - 1;
        vec![
            a.scale(&int(nn)),
            &a2.scale(&rat(q, 4)) + &x.scale(&(Rational::one() - rat(q, 8))),
            x.scale(&rat(q, 8)),
        ]
    };
    RingMap::new(src, tgt, images).expect("psi_n")
}

/// A linear condition: restricted to the circle `circle` of K(n), psi must
/// agree with `known`.
struct Constraint {
    circle: [i64; 2],
    known: RingMap,
}

fn t_coefficient(p: &LaurentPoly, k: i64) -> Result<Rational, CatalogError> {
    if p.is_zero() {
        return Ok(Rational::from_integer(0.into()));
    }
    match p.as_term() {
        Some((m, c)) if m.exponents() == [k] => Ok(c.clone()),
        _ => Err(CatalogError::IdentityFailed(format!("{p} is not a multiple of t^{k}"))),
    }
}

fn reference_map(k: u32) -> Result<RingMap, CatalogError> {
    match k {
        0 => Ok(normalization_constants(SurfaceFamily::Untwisted).group.map),
        1 => Ok(normalization_constants(SurfaceFamily::Twisted).group.map),
        _ => derive_psi_star(k),
    }
}

fn shear_constraint(n: u32, k: u32) -> Result<Constraint, CatalogError> {
    // Any class admissible for both surfaces works; the circles do not depend on it.
    let lambda = int(i64::from(n) + 1);
    let shared = shear_equivalent_circles(n, k, &lambda)?;
    let reference = reference_map(k)?;
    let known = reference.then(&circle_pullback(isometry_group(k), shared.on_l.direction()))?;
    Ok(Constraint {
        circle: shared.on_k.direction(),
        known,
    })
}

fn constraints(n: u32) -> Result<Vec<Constraint>, CatalogError> {
    Ok(match n {
        2 => {
            // The circle factor of K(2) is the BS^1 summand of the wedge.
            let extra = normalization_constants(SurfaceFamily::Untwisted).extra.map;
            let s1 = RingMap::parse(extra.target(), &t_ring(), &["t"])?;
            vec![
                Constraint {
                    circle: [1, 0],
                    known: extra.then(&s1)?,
                },
                shear_constraint(2, 0)?,
            ]
        }
        3 => {
            // The maximal torus of SU(2) in U(2) has weights t, -t, so c2 -> -t^2.
            let extra = normalization_constants(SurfaceFamily::Twisted).extra.map;
            let su2 = RingMap::parse(extra.target(), &t_ring(), &["-t^2"])?;
            vec![
                Constraint {
                    circle: [1, -1],
                    known: extra.then(&su2)?,
                },
                shear_constraint(3, 1)?,
            ]
        }
        _ if n.is_even() => vec![shear_constraint(n, 0)?, shear_constraint(n, 2)?],
        _ => vec![shear_constraint(n, 1)?, shear_constraint(n, 3)?],
    })
}

/// Recovers psi for K(n) from its restrictions to circles shared with
/// surfaces of smaller twist. Unknowns: `T -> alpha A`, `X -> b1 A^2 + b2 X`,
/// `Y -> c1 A^2 + c2 X`.
pub fn derive_psi_star(n: u32) -> Result<RingMap, CatalogError> {
    if n < 2 {
        return Err(CatalogError::IdentityFailed(format!("psi is derived only for n >= 2, got {n}")));
    }
    let group = isometry_group(n);
    let mut system: Echelon<Rational> = Echelon::new(6);
    let zero = Rational::from_integer(0.into());
    for c in constraints(n)? {
        let pull = circle_pullback(group, c.circle);
        let pa = t_coefficient(&pull.images()[0], 1)?;
        let px = t_coefficient(&pull.images()[1], 2)?;
        let tau = t_coefficient(&c.known.images()[0], 1)?;
        let xi = t_coefficient(&c.known.images()[1], 2)?;
        let eta = t_coefficient(&c.known.images()[2], 2)?;
        let pa2 = &pa * &pa;
        system.insert(vec![pa.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone(), tau]);
        system.insert(vec![zero.clone(), pa2.clone(), px.clone(), zero.clone(), zero.clone(), xi]);
        system.insert(vec![zero.clone(), zero.clone(), zero.clone(), pa2.clone(), px.clone(), eta]);
    }
    if system.pivots().any(|p| p == 5) {
        return Err(CatalogError::InconsistentSystem { n });
    }
    if system.rank() < 5 {
        return Err(CatalogError::UnderdeterminedSystem { n, rank: system.rank() });
    }
    // Reduced echelon form: the solution is the last column.
    let mut sol = Vec::with_capacity(5);
    for i in 0..5 {
        let mut e = vec![zero.clone(); 6];
        e[i] = Rational::one();
        let mut v = e.clone();
        system.reduce(&mut v);
        // v = e_i - (row with pivot i), so the entry in column 5 is minus the value.
        sol.push(-v[5].clone());
    }
    let tgt = bk_ring(n, Field::Q);
    let a = tgt.generator("A")?;
    let x = tgt.generator("X")?;
    let a2 = &a * &a;
    let images = vec![
        a.scale(&sol[0]),
        &a2.scale(&sol[1]) + &x.scale(&sol[2]),
        &a2.scale(&sol[3]) + &x.scale(&sol[4]),
    ];
    Ok(RingMap::new(bfdiff_ring(Field::Q), tgt, images)?)
}

/// Generator of the kernel of `psi_star(n)`.
pub fn kernel_generator(n: u32) -> LaurentPoly {
    let r = bfdiff_ring(Field::Q);
    let t = r.generator("T").expect("T");
    let x = r.generator("X").expect("X");
    let y = r.generator("Y").expect("Y");
    if n == 0 {
        return t;
    }
    let nn = i64::from(n);
    let n2 = nn * nn;
    let t2 = &t * &t;
    if n.is_even() {
        &(&x.scale(&rat(n2 * n2, 16)) - &y.scale(&rat(n2, 4))) + &t2
    } else {
        let q = n2 - 1;
        let u = &x + &y;
        &(&u.scale(&rat(q * n2, 8)) - &y.scale(&int(n2))) - &t2.scale(&rat(q * q, 32))
    }
}

/// `(coefficient of A in psi(T), coefficient of X in psi(Y))` for K(2k+1).
pub fn dusamistake_coefficients(k: u32) -> (Rational, Rational) {
    let psi = psi_star(2 * k + 1);
    let tgt = psi.target();
    let a = tgt.generator("A").expect("A");
    let x = tgt.generator("X").expect("X");
    let mult = psi.images()[0].coefficient(a.as_term().expect("monomial").0);
    let offset = psi.images()[2].coefficient(x.as_term().expect("monomial").0);
    (mult, offset)
}
