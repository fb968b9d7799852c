//! JSON shapes emitted by `--json`. Polynomials and rationals are strings in
//! the canonical rendering (`p/q`, explicit `^`).

use ruled_core::catalog::SurfaceFamily;
use ruled_core::torus::{FixedPointWeights, PolygonRecord};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexOutput {
    pub n: u32,
    pub character: String,
    pub positive: String,
    pub negative: String,
    pub positive_dimension: String,
    pub negative_dimension: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerOutput {
    pub n: u32,
    pub euler_class: String,
    pub degree: i64,
    pub coefficients: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonOutput {
    pub record: PolygonRecord,
    pub weights: FixedPointWeights,
    /// `(vertex, first weight, second weight)` as monomials in `x, y`.
    pub rendered: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiOutput {
    pub n: u32,
    pub group: String,
    /// `(generator, image)` in the order T, X, Y.
    pub images: Vec<(String, String)>,
    pub kernel: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationOutput {
    pub l: u32,
    pub family: SurfaceFamily,
    pub relation: String,
    pub degree: i64,
    pub factors: Vec<String>,
    pub scalars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BgOutput {
    pub lambda: String,
    pub family: SurfaceFamily,
    pub coefficients: String,
    pub l: u32,
    pub m: u32,
    pub max_degree: usize,
    /// Ring presentation, given over Q only.
    pub presentation: Option<String>,
    pub hilbert_series: Option<String>,
    pub dims: Vec<usize>,
}
