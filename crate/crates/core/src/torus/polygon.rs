use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{GeometryError, LatticeMap};
use crate::algebra::{parse_rational, render_rational, LaurentPoly, Monomial, Rational, Vars};

/// Twist `n` and cohomology class parameter `lambda` of a Hirzebruch surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HirzebruchParams {
    n: u32,
    lambda: Rational,
    mu: Rational,
}

impl HirzebruchParams {
    /// Even `n` needs `lambda >= 1`; odd `n` needs `lambda > 0`.
    pub fn new(n: u32, lambda: Rational) -> Result<Self, GeometryError> {
        let ok = if n % 2 == 0 {
            lambda >= Rational::one()
        } else {
            lambda > Rational::zero()
        };
        if !ok {
            return Err(GeometryError::InadmissibleLambda {
                n,
                lambda: render_rational(&lambda),
            });
        }
        let mu = super::moment_level(n, &lambda);
        Ok(HirzebruchParams { n, lambda, mu })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }
}

/// A convex lattice polygon with rational vertices, listed cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentPolygon {
    vertices: Vec<[Rational; 2]>,
    /// Primitive direction of the edge from vertex `i` to vertex `i + 1`.
    edges: Vec<[i64; 2]>,
    /// Affine length of edge `i`.
    lengths: Vec<Rational>,
}

fn primitive(v: &[Rational; 2]) -> Option<([i64; 2], Rational)> {
    if v[0].is_zero() && v[1].is_zero() {
        return None;
    }
    let l = v[0].denom().lcm(v[1].denom());
    let a: BigInt = v[0].numer() * (&l / v[0].denom());
    let b: BigInt = v[1].numer() * (&l / v[1].denom());
    let g = a.gcd(&b);
    let p = [(&a / &g).to_i64()?, (&b / &g).to_i64()?];
    let len = Rational::new(g, l);
    Some((p, len))
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

impl MomentPolygon {
    /// Builds a strictly convex polygon; the Delzant condition is checked
    /// separately so that non-smooth polygons can still be inspected.
    pub fn from_vertices(vertices: Vec<[Rational; 2]>) -> Result<Self, GeometryError> {
        let k = vertices.len();
        if k < 3 {
            return Err(GeometryError::DegeneratePolygon(format!("{k} vertices")));
        }
        let mut edges = Vec::with_capacity(k);
        let mut lengths = Vec::with_capacity(k);
        for i in 0..k {
            let (p, q) = (&vertices[i], &vertices[(i + 1) % k]);
            let e = [&q[0] - &p[0], &q[1] - &p[1]];
            let (dir, len) = primitive(&e)
                .ok_or_else(|| GeometryError::DegeneratePolygon(format!("repeated vertex {i}")))?;
            edges.push(dir);
            lengths.push(len);
        }
        let turns: Vec<i64> = (0..k).map(|i| cross(edges[i], edges[(i + 1) % k]).signum()).collect();
        if turns.iter().any(|&s| s == 0) {
            return Err(GeometryError::DegeneratePolygon("collinear consecutive edges".into()));
        }
        if !turns.iter().all(|&s| s == turns[0]) {
            return Err(GeometryError::NotConvex);
        }
        Ok(MomentPolygon {
            vertices,
            edges,
            lengths,
        })
    }

    pub fn vertices(&self) -> &[[Rational; 2]] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[i64; 2]] {
        &self.edges
    }

    pub fn edge_lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The two primitive edge vectors leaving vertex `i`: towards the next
    /// vertex and towards the previous one.
    pub fn outgoing(&self, i: usize) -> ([i64; 2], [i64; 2]) {
        let k = self.len();
        let prev = self.edges[(i + k - 1) % k];
        (self.edges[i], [-prev[0], -prev[1]])
    }

    pub fn is_delzant_at(&self, i: usize) -> bool {
        let (a, b) = self.outgoing(i);
        cross(a, b).abs() == 1
    }

    pub fn check_delzant(&self) -> Result<(), GeometryError> {
        match (0..self.len()).find(|&i| !self.is_delzant_at(i)) {
            Some(i) => Err(GeometryError::NotDelzant(i)),
            None => Ok(()),
        }
    }

    /// Image under `v -> M v + shift`; `M` must be invertible over the integers.
    pub fn transform(&self, m: &LatticeMap, shift: &[Rational; 2]) -> Result<Self, GeometryError> {
        if m.rows() != 2 || m.cols() != 2 || m.inverse().is_none() {
            return Err(GeometryError::NotUnimodular);
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let w = m.apply_rational(v);
                [&w[0] + &shift[0], &w[1] + &shift[1]]
            })
            .collect();
        Self::from_vertices(vertices)
    }

    pub fn to_record(&self, n: u32, lambda: &Rational) -> PolygonRecord {
        PolygonRecord {
            n,
            lambda: render_rational(lambda),
            vertices: self
                .vertices
                .iter()
                .map(|v| [render_rational(&v[0]), render_rational(&v[1])])
                .collect(),
        }
    }
}

/// The trapezoid with vertices `(0,0), (1,0), (1,mu), (0,mu-n)`.
pub fn moment_polygon(params: &HirzebruchParams) -> Result<MomentPolygon, GeometryError> {
    let n = Rational::from_integer(params.n.into());
    let top = params.mu() - &n;
    if !top.is_positive() {
        return Err(GeometryError::DegeneratePolygon(format!(
            "mu = {} does not exceed n = {}",
            render_rational(params.mu()),
            params.n
        )));
    }
    let z = Rational::zero;
    let o = Rational::one;
    MomentPolygon::from_vertices(vec![[z(), z()], [o(), z()], [o(), params.mu().clone()], [z(), top]])
}

/// Exchange format for polygons; rationals are written `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonRecord {
    pub n: u32,
    pub lambda: String,
    pub vertices: Vec<[String; 2]>,
}

impl PolygonRecord {
    pub fn lambda_value(&self) -> Result<Rational, GeometryError> {
        parse_rational(&self.lambda).map_err(|e| GeometryError::BadRecord(e.to_string()))
    }

    pub fn to_polygon(&self) -> Result<MomentPolygon, GeometryError> {
        let mut vs = Vec::with_capacity(self.vertices.len());
        for [x, y] in &self.vertices {
            let x = parse_rational(x).map_err(|e| GeometryError::BadRecord(e.to_string()))?;
            let y = parse_rational(y).map_err(|e| GeometryError::BadRecord(e.to_string()))?;
            vs.push([x, y]);
        }
        MomentPolygon::from_vertices(vs)
    }
}

/// Isotropy weights at one fixed point, as exponent vectors in `x, y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexWeights {
    pub label: String,
    pub weights: [[i64; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointWeights {
    pub vertices: Vec<VertexWeights>,
}

impl FixedPointWeights {
    pub fn monomials(&self, i: usize) -> [Monomial; 2] {
        let [w1, w2] = self.vertices[i].weights;
        [Monomial::new(w1.to_vec()), Monomial::new(w2.to_vec())]
    }

    /// Weights rendered as monomials in `x, y`.
    pub fn rendered(&self) -> Vec<(String, String, String)> {
        let vars = Vars::new(&["x", "y"]);
        (0..self.vertices.len())
            .map(|i| {
                let [a, b] = self.monomials(i);
                (
                    self.vertices[i].label.clone(),
                    LaurentPoly::monomial(&vars, a).to_string(),
                    LaurentPoly::monomial(&vars, b).to_string(),
                )
            })
            .collect()
    }
}

fn vertex_label(i: usize, k: usize) -> String {
    if k <= 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("P{i}")
    }
}

/// The first weight is the non-vertical edge (the one leaving the fiber
/// direction); ties keep the next-vertex edge first.
pub fn fixed_point_weights(p: &MomentPolygon) -> Result<FixedPointWeights, GeometryError> {
    p.check_delzant()?;
    let k = p.len();
    let vertices = (0..k)
        .map(|i| {
            let (next, prev) = p.outgoing(i);
            let weights = if next[0] == 0 && prev[0] != 0 {
                [prev, next]
            } else {
                [next, prev]
            };
            VertexWeights {
                label: vertex_label(i, k),
                weights,
            }
        })
        .collect();
    Ok(FixedPointWeights { vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn params(n: u32, l: i64) -> HirzebruchParams {
        HirzebruchParams::new(n, int(l)).unwrap()
    }

    fn pts(p: &MomentPolygon) -> Vec<(Rational, Rational)> {
        p.vertices().iter().map(|[a, b]| (a.clone(), b.clone())).collect()
    }

    #[test]
    fn trapezoids() {
        let p = moment_polygon(&params(0, 1)).unwrap();
        assert_eq!(pts(&p), vec![(int(0), int(0)), (int(1), int(0)), (int(1), int(1)), (int(0), int(1))]);
        let p = moment_polygon(&params(1, 1)).unwrap();
        assert_eq!(pts(&p), vec![(int(0), int(0)), (int(1), int(0)), (int(1), int(2)), (int(0), int(1))]);
        let p = moment_polygon(&params(2, 2)).unwrap();
        assert_eq!(pts(&p), vec![(int(0), int(0)), (int(1), int(0)), (int(1), int(3)), (int(0), int(1))]);
    }

    #[test]
    fn degenerate_and_inadmissible() {
        assert!(matches!(
            moment_polygon(&params(2, 1)),
            Err(GeometryError::DegeneratePolygon(_))
        ));
        assert!(HirzebruchParams::new(2, rat(1, 2)).is_err());
        assert!(HirzebruchParams::new(3, rat(1, 2)).is_ok());
        assert!(HirzebruchParams::new(3, int(0)).is_err());
    }

    #[test]
    fn weight_table_f2() {
        let w = fixed_point_weights(&moment_polygon(&params(2, 2)).unwrap()).unwrap();
        let r = w.rendered();
        assert_eq!(r[0], ("A".into(), "x".into(), "y".into()));
        assert_eq!(r[1], ("B".into(), "1/x".into(), "y".into()));
        assert_eq!(r[2], ("C".into(), "1/(x*y^2)".into(), "1/y".into()));
        assert_eq!(r[3], ("D".into(), "x*y^2".into(), "1/y".into()));
    }

    #[test]
    fn non_delzant_corner() {
        let p = MomentPolygon::from_vertices(vec![[int(0), int(0)], [int(2), int(1)], [int(2), int(3)], [int(0), int(3)]])
            .unwrap();
        assert!(matches!(fixed_point_weights(&p), Err(GeometryError::NotDelzant(_))));
    }

    #[test]
    fn record_round_trip() {
        let l = rat(3, 2);
        let p = moment_polygon(&HirzebruchParams::new(1, l.clone()).unwrap()).unwrap();
        let rec = p.to_record(1, &l);
        assert_eq!(rec.vertices[2], ["1".to_string(), "5/2".to_string()]);
        assert_eq!(rec.to_polygon().unwrap(), p);
        assert_eq!(rec.lambda_value().unwrap(), l);
    }

    #[test]
    fn non_convex_rejected() {
        let r = MomentPolygon::from_vertices(vec![
            [int(0), int(0)],
            [int(2), int(0)],
            [int(1), int(1)],
            [int(2), int(2)],
            [int(0), int(2)],
        ]);
        assert_eq!(r, Err(GeometryError::NotConvex));
    }
}
