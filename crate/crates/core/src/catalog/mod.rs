//! Constants, presentations and maps specific to the symplectomorphism
//! groups of rational ruled surfaces, with the identities relating them.

mod bases;
mod dump;
mod psi;
mod relations;

use std::fmt;
use std::str::FromStr;

use num::{Integer, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Rational};
use crate::graded::{Field, GradedError, GradedRingPresentation};
use crate::localization::LocalizationError;
use crate::torus::GeometryError;

pub use bases::{
    bfdiff_away_from_2, bg2_twisted, main2_generators, solve_involution_ansatz, Bg2Twisted, BfdiffReport,
    InvolutionAnsatz, Main2Basis, StageResult,
};
pub use dump::{catalog_dump, CatalogRecord};
pub use psi::{
    circle_pullback, derive_psi_star, dusamistake_coefficients, kernel_generator, normalization_constants, psi_star,
    NormalizationConstants, WedgeComponent,
};
pub use relations::{
    bg_groups_dims, bg_rational_presentation, connectivity_check, mayer_vietoris_stage, relation_polynomial,
    twisted_change_of_variables, BgPresentation, ChangeOfVariables, RelationPolynomial, StageDims,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("lambda = {0} is not admissible")]
    InadmissibleLambda(String),
    #[error("constraints on the images of psi for n = {n} have rank {rank} < 5")]
    UnderdeterminedSystem { n: u32, rank: usize },
    #[error("constraints on the images of psi for n = {n} are inconsistent")]
    InconsistentSystem { n: u32 },
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("cross-check '{check}' failed: {detail}")]
    CrossCheckFailed { check: String, detail: String },
    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub(crate) fn cross_check(ok: bool, check: &str, detail: impl FnOnce() -> String) -> Result<(), CatalogError> {
    if ok {
        Ok(())
    } else {
        Err(CatalogError::CrossCheckFailed {
            check: check.into(),
            detail: detail(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceFamily {
    Untwisted,
    Twisted,
}

impl SurfaceFamily {
    pub fn label(self) -> &'static str {
        match self {
            SurfaceFamily::Untwisted => "untwisted",
            SurfaceFamily::Twisted => "twisted",
        }
    }

    /// Twist of the Hirzebruch surface carrying the `k`-th stratum.
    pub fn twist(self, k: u32) -> u32 {
        match self {
            SurfaceFamily::Untwisted => 2 * k,
            SurfaceFamily::Twisted => 2 * k + 1,
        }
    }
}

impl fmt::Display for SurfaceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SurfaceFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "untwisted" | "u" | "s2xs2" => Ok(SurfaceFamily::Untwisted),
            "twisted" | "t" => Ok(SurfaceFamily::Twisted),
            _ => Err(format!("unknown family '{s}' (expected untwisted or twisted)")),
        }
    }
}

/// Strata of the space of compatible almost complex structures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataInfo {
    pub family: SurfaceFamily,
    pub lambda: String,
    /// Number of strata beyond the open one: `l < lambda <= l + 1`.
    pub l: u32,
    /// Twist of the next surface to appear, `2l + 2` or `2l + 3`.
    pub m: u32,
    /// `(k, codim U_k)` for `1 <= k <= l`.
    pub codims: Vec<(u32, u32)>,
    pub link_dimension: u32,
    /// Degree of the Euler class `e_m`, the codimension of the next stratum.
    pub euler_degree: u32,
    /// For the untwisted family at `lambda = 1` the isometry group has a
    /// second component; recorded, not used in any presentation.
    pub disconnected_isometry_group: bool,
}

pub fn strata(lambda: &Rational, family: SurfaceFamily) -> Result<StrataInfo, CatalogError> {
    if !lambda.is_positive() {
        return Err(CatalogError::InadmissibleLambda(lambda.to_string()));
    }
    let l = (lambda.ceil().to_integer() - num::BigInt::from(1))
        .to_u32()
        .ok_or_else(|| CatalogError::InadmissibleLambda(lambda.to_string()))?;
    let m = family.twist(l + 1);
    let codims = (1..=l)
        .map(|k| {
            let c = match family {
                SurfaceFamily::Untwisted => 4 * k - 2,
                SurfaceFamily::Twisted => 4 * k,
            };
            (k, c)
        })
        .collect();
    Ok(StrataInfo {
        family,
        lambda: crate::algebra::render_rational(lambda),
        l,
        m,
        codims,
        link_dimension: 2 * m - 3,
        euler_degree: 2 * m - 2,
        disconnected_isometry_group: family == SurfaceFamily::Untwisted && *lambda == Rational::from_integer(1.into()),
    })
}

/// Identity component of the Kähler isometry group of F_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsometryGroup {
    So3xSo3,
    S1xSo3,
    U2,
}

impl IsometryGroup {
    pub fn label(self) -> &'static str {
        match self {
            IsometryGroup::So3xSo3 => "SO(3)xSO(3)",
            IsometryGroup::S1xSo3 => "S1xSO(3)",
            IsometryGroup::U2 => "U(2)",
        }
    }
}

impl fmt::Display for IsometryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn isometry_group(n: u32) -> IsometryGroup {
    if n == 0 {
        IsometryGroup::So3xSo3
    } else if n.is_even() {
        IsometryGroup::S1xSo3
    } else {
        IsometryGroup::U2
    }
}

/// Cohomology of `BK(n)`.
///
/// Over a field of characteristic other than 2 this is `k[X0, Y0]` for n = 0
/// (`Y0` from the first SO(3) factor) and `k[A, X]` otherwise. Mod 2 the
/// SO(3) factors contribute `w2, w3`: `F2[w2, w3, w2', w3']` for n = 0,
/// `F2[T, w2, w3]` for n even and `F2[A, X]` for n odd.
pub fn bk_ring(n: u32, field: Field) -> GradedRingPresentation {
    let gens: &[(&str, i64)] = match (field, isometry_group(n)) {
        (Field::F2, IsometryGroup::So3xSo3) => &[("w2", 2), ("w3", 3), ("w2'", 2), ("w3'", 3)],
        (Field::F2, IsometryGroup::S1xSo3) => &[("T", 2), ("w2", 2), ("w3", 3)],
        (_, IsometryGroup::So3xSo3) => &[("X0", 4), ("Y0", 4)],
        _ => &[("A", 2), ("X", 4)],
    };
    GradedRingPresentation::polynomial_ring(gens, field).expect("positive degrees")
}

/// Rational cohomology of the classifying space of the diffeomorphism group
/// of the sphere bundle: `Q[T, X, Y]` with degrees 2, 4, 4.
pub fn bfdiff_ring(field: Field) -> GradedRingPresentation {
    GradedRingPresentation::polynomial_ring(&[("T", 2), ("X", 4), ("Y", 4)], field).expect("positive degrees")
}

/// Field used for dimension counts over a coefficient ring. Dimensions over
/// `Z[1/2]` are ranks, equal to those over Q.
pub fn field_for(coefficients: crate::algebra::CoefficientRing) -> Result<Field, CatalogError> {
    use crate::algebra::CoefficientRing as C;
    match coefficients {
        C::Rationals | C::IntegersHalf => Ok(Field::Q),
        C::F2 => Ok(Field::F2),
        C::F3 => Ok(Field::F3),
        C::Integers => Err(CatalogError::UnsupportedCoefficients(
            "integral groups are certified through Q, F2 and F3".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn strata_examples() {
        let s = strata(&rat(5, 2), SurfaceFamily::Untwisted).unwrap();
        assert_eq!((s.l, s.m, s.codims.clone()), (2, 6, vec![(1, 2), (2, 6)]));
        let s = strata(&int(3), SurfaceFamily::Twisted).unwrap();
        assert_eq!((s.l, s.m, s.codims.clone()), (2, 7, vec![(1, 4), (2, 8)]));
        let s = strata(&int(1), SurfaceFamily::Untwisted).unwrap();
        assert_eq!(s.l, 0);
        assert!(s.disconnected_isometry_group);
        let s = strata(&rat(1, 2), SurfaceFamily::Untwisted).unwrap();
        assert_eq!((s.l, s.m), (0, 2));
        assert!(strata(&int(0), SurfaceFamily::Twisted).is_err());
    }

    #[test]
    fn euler_degree_is_next_codimension() {
        for fam in [SurfaceFamily::Untwisted, SurfaceFamily::Twisted] {
            for l in 0..6 {
                let s = strata(&int(i64::from(l) + 1), fam).unwrap();
                let next = strata(&int(i64::from(l) + 2), fam).unwrap();
                assert_eq!(next.codims.last().unwrap().1, s.euler_degree);
            }
        }
    }

    #[test]
    fn groups() {
        assert_eq!(isometry_group(0), IsometryGroup::So3xSo3);
        assert_eq!(isometry_group(4), IsometryGroup::S1xSo3);
        assert_eq!(isometry_group(7), IsometryGroup::U2);
    }
}
