//! Moment polygons of Hirzebruch surfaces, fixed-point weights, torus basis
//! changes, and circle-action invariants.

mod karshon;
mod lattice;
mod polygon;

use thiserror::Error;

pub use karshon::{
    karshon_invariant, shear_equivalent_circles, CircleAction, CircleBasis, ExtremeComponent, IsolatedPoint,
    KarshonGraph, SharedCircle,
};
pub use lattice::{covering_matrix, moment_level, reduction_data, standard_basis_change, LatticeMap};
pub use polygon::{
    fixed_point_weights, moment_polygon, FixedPointWeights, HirzebruchParams, MomentPolygon, PolygonRecord,
    VertexWeights,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("lambda = {lambda} is not admissible for n = {n}")]
    InadmissibleLambda { n: u32, lambda: String },
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("polygon is not convex")]
    NotConvex,
    #[error("vertex {0} is not smooth")]
    NotDelzant(usize),
    #[error("map is not invertible over the integers")]
    NotUnimodular,
    #[error("direction {0:?} is not primitive")]
    NonPrimitiveDirection([i64; 2]),
    #[error("circle must be given in the moment map basis")]
    WrongBasis,
    #[error("F_{0} and F_{1} have different parity")]
    ParityMismatch(u32, u32),
    #[error("circle invariants of F_{k} and F_{l} differ")]
    InvariantMismatch { k: u32, l: u32 },
    #[error("bad polygon record: {0}")]
    BadRecord(String),
}
