use num::{Integer, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::polygon::{moment_polygon, HirzebruchParams, MomentPolygon};
use super::{standard_basis_change, GeometryError};
use crate::algebra::{render_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircleBasis {
    Moment,
    Standard,
}

/// A circle subgroup of the 2-torus, given by a primitive direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircleAction {
    direction: [i64; 2],
    basis: CircleBasis,
}

impl CircleAction {
    pub fn new(direction: [i64; 2], basis: CircleBasis) -> Result<Self, GeometryError> {
        if direction[0].gcd(&direction[1]) != 1 {
            return Err(GeometryError::NonPrimitiveDirection(direction));
        }
        Ok(CircleAction { direction, basis })
    }

    pub fn direction(&self) -> [i64; 2] {
        self.direction
    }

    pub fn basis(&self) -> CircleBasis {
        self.basis
    }

    /// Re-expresses the circle in the moment map basis of the torus of K(n).
    pub fn to_moment(self, n: u32) -> CircleAction {
        match self.basis {
            CircleBasis::Moment => self,
            CircleBasis::Standard => {
                let inv = standard_basis_change(n).inverse().expect("unimodular basis change");
                let d = inv.apply(&self.direction);
                CircleAction {
                    direction: [d[0], d[1]],
                    basis: CircleBasis::Moment,
                }
            }
        }
    }

    pub fn to_standard(self, n: u32) -> CircleAction {
        match self.basis {
            CircleBasis::Standard => self,
            CircleBasis::Moment => {
                let d = standard_basis_change(n).apply(&self.direction);
                CircleAction {
                    direction: [d[0], d[1]],
                    basis: CircleBasis::Standard,
                }
            }
        }
    }

    /// On F_0 the Weyl group of SO(3)xSO(3) negates either coordinate, so
    /// `(a, b)` and `(-a, b)` are conjugate; pick nonnegative entries.
    pub fn f0_canonical(self) -> CircleAction {
        CircleAction {
            direction: [self.direction[0].abs(), self.direction[1].abs()],
            basis: self.basis,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExtremeComponent {
    Surface { level: String, area: String },
    Point { level: String, weights: [i64; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsolatedPoint {
    pub level: String,
    pub weights: [i64; 2],
}

/// Fixed-point data of a circle action on a toric surface, arranged by
/// moment map level (normalized so the minimum is at level 0).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KarshonGraph {
    pub min: ExtremeComponent,
    pub max: ExtremeComponent,
    pub interior: Vec<IsolatedPoint>,
}

fn pair(v: [i64; 2], c: [i64; 2]) -> i64 {
    v[0] * c[0] + v[1] * c[1]
}

fn sorted(mut w: [i64; 2]) -> [i64; 2] {
    w.sort();
    w
}

pub fn karshon_invariant(p: &MomentPolygon, c: &CircleAction) -> Result<KarshonGraph, GeometryError> {
    if c.basis != CircleBasis::Moment {
        return Err(GeometryError::WrongBasis);
    }
    let c = c.direction;
    if c[0].gcd(&c[1]) != 1 {
        return Err(GeometryError::NonPrimitiveDirection(c));
    }
    p.check_delzant()?;
    let k = p.len();
    let cr = [Rational::from_integer(c[0].into()), Rational::from_integer(c[1].into())];
    let raw: Vec<Rational> = p.vertices().iter().map(|v| &v[0] * &cr[0] + &v[1] * &cr[1]).collect();
    let lo = raw.iter().min().expect("nonempty polygon").clone();
    let hi = raw.iter().max().expect("nonempty polygon").clone();
    let levels: Vec<Rational> = raw.iter().map(|l| l - &lo).collect();
    let top = &hi - &lo;

    let mut on_surface = vec![false; k];
    let mut surfaces: Vec<(Rational, Rational)> = Vec::new();
    for i in 0..k {
        if pair(p.edges()[i], c) == 0 {
            on_surface[i] = true;
            on_surface[(i + 1) % k] = true;
            surfaces.push((levels[i].clone(), p.edge_lengths()[i].clone()));
        }
    }
    let point_weights = |i: usize| {
        let (a, b) = p.outgoing(i);
        sorted([pair(a, c), pair(b, c)])
    };
    let extreme = |target: &Rational| -> ExtremeComponent {
        if let Some((l, a)) = surfaces.iter().find(|(l, _)| l == target) {
            return ExtremeComponent::Surface {
                level: render_rational(l),
                area: render_rational(a),
            };
        }
        let i = (0..k).find(|&i| &levels[i] == target).expect("extreme vertex");
        ExtremeComponent::Point {
            level: render_rational(target),
            weights: point_weights(i),
        }
    };
    let zero = Rational::zero();
    let min = extreme(&zero);
    let max = extreme(&top);
    let mut interior: Vec<(Rational, [i64; 2])> = (0..k)
        .filter(|&i| !on_surface[i] && levels[i].is_positive() && levels[i] < top)
        .map(|i| (levels[i].clone(), point_weights(i)))
        .collect();
    interior.sort();
    Ok(KarshonGraph {
        min,
        max,
        interior: interior
            .into_iter()
            .map(|(l, weights)| IsolatedPoint {
                level: render_rational(&l),
                weights,
            })
            .collect(),
    })
}

/// A circle shared by F_k and F_l at the same cohomology class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedCircle {
    pub on_k: CircleAction,
    pub on_l: CircleAction,
    pub invariant: KarshonGraph,
}

fn standard_shear(from: u32, to: u32) -> [i64; 2] {
    let t = i64::from(to);
    if from % 2 == 1 {
        [(t + 1) / 2, (t - 1) / 2]
    } else {
        [t / 2, 1]
    }
}

fn invariant_on(n: u32, lambda: &Rational, c: CircleAction) -> Result<KarshonGraph, GeometryError> {
    let poly = moment_polygon(&HirzebruchParams::new(n, lambda.clone())?)?;
    let mut m = c.to_moment(n);
    if n == 0 {
        m = m.f0_canonical();
    }
    karshon_invariant(&poly, &m)
}

/// The standard-basis circles of K(k) and K(l) that act equivariantly
/// symplectomorphically, with their common invariant.
pub fn shear_equivalent_circles(k: u32, l: u32, lambda: &Rational) -> Result<SharedCircle, GeometryError> {
    if k % 2 != l % 2 {
        return Err(GeometryError::ParityMismatch(k, l));
    }
    let on_k = CircleAction::new(standard_shear(k, l), CircleBasis::Standard)?;
    let on_l = CircleAction::new(standard_shear(l, k), CircleBasis::Standard)?;
    let gk = invariant_on(k, lambda, on_k)?;
    let gl = invariant_on(l, lambda, on_l)?;
    if gk != gl {
        return Err(GeometryError::InvariantMismatch { k, l });
    }
    Ok(SharedCircle {
        on_k,
        on_l,
        invariant: gk,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn moment(a: i64, b: i64) -> CircleAction {
        CircleAction::new([a, b], CircleBasis::Moment).unwrap()
    }

    #[test]
    fn square_has_two_fixed_spheres() {
        let p = moment_polygon(&HirzebruchParams::new(0, int(1)).unwrap()).unwrap();
        let g = karshon_invariant(&p, &moment(0, 1)).unwrap();
        let s = |l: &str| ExtremeComponent::Surface {
            level: l.into(),
            area: "1".into(),
        };
        assert_eq!(g.min, s("0"));
        assert_eq!(g.max, s("1"));
        assert!(g.interior.is_empty());
    }

    #[test]
    fn trapezoid_f1() {
        let p = moment_polygon(&HirzebruchParams::new(1, int(1)).unwrap()).unwrap();
        let g = karshon_invariant(&p, &moment(0, 1)).unwrap();
        assert_eq!(
            g.min,
            ExtremeComponent::Surface {
                level: "0".into(),
                area: "1".into()
            }
        );
        assert_eq!(
            g.max,
            ExtremeComponent::Point {
                level: "2".into(),
                weights: [-1, -1]
            }
        );
        assert_eq!(
            g.interior,
            vec![IsolatedPoint {
                level: "1".into(),
                weights: [-1, 1]
            }]
        );
    }

    #[test]
    fn rejects_non_primitive() {
        assert!(CircleAction::new([2, 4], CircleBasis::Moment).is_err());
        assert!(CircleAction::new([0, 0], CircleBasis::Moment).is_err());
    }

    #[test]
    fn shear_examples() {
        let l = int(3);
        let s = shear_equivalent_circles(0, 2, &l).unwrap();
        assert_eq!((s.on_k.direction(), s.on_l.direction()), ([1, 1], [0, 1]));
        let s = shear_equivalent_circles(1, 3, &l).unwrap();
        assert_eq!((s.on_k.direction(), s.on_l.direction()), ([2, 1], [1, 0]));
        let s = shear_equivalent_circles(2, 4, &l).unwrap();
        assert_eq!((s.on_k.direction(), s.on_l.direction()), ([2, 1], [1, 1]));
        assert_eq!(shear_equivalent_circles(1, 2, &l), Err(GeometryError::ParityMismatch(1, 2)));
    }

    #[test]
    fn translation_invariance() {
        let p = moment_polygon(&HirzebruchParams::new(3, int(2)).unwrap()).unwrap();
        let q = p
            .transform(&super::super::LatticeMap::identity(2), &[int(5), int(-7)])
            .unwrap();
        let c = moment(1, 2);
        assert_eq!(karshon_invariant(&p, &c).unwrap(), karshon_invariant(&q, &c).unwrap());
    }
}
