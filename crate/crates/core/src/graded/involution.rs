use super::linalg::{kernel_of_columns, Scalar};
use super::map::RingMap;
use super::presentation::GradedRingPresentation;
use super::GradedError;
use crate::algebra::LaurentPoly;

/// A ring endomorphism squaring to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingInvolution {
    map: RingMap,
}

/// Eigenspace data of an involution in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPiece {
    pub degree: usize,
    pub invariant: usize,
    pub anti_invariant: usize,
    pub invariant_basis: Vec<LaurentPoly>,
}

impl RingInvolution {
    pub fn new(ring: &GradedRingPresentation, images: Vec<LaurentPoly>) -> Result<Self, GradedError> {
        let map = RingMap::new(ring.clone(), ring.clone(), images)?;
        for (name, img) in ring.vars().names().iter().zip(map.images()) {
            let back = map.apply(img)?;
            let diff = &back - &ring.generator(name)?;
            if !ring.is_zero(&diff)? {
                return Err(GradedError::NotInvolution(format!("{name} -> {img} -> {back}")));
            }
        }
        Ok(RingInvolution { map })
    }

    pub fn parse(ring: &GradedRingPresentation, images: &[&str]) -> Result<Self, GradedError> {
        let images = images.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, images)
    }

    pub fn ring(&self) -> &GradedRingPresentation {
        self.map.source()
    }

    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly, GradedError> {
        self.map.apply(p)
    }

    pub fn fixes(&self, p: &LaurentPoly) -> Result<bool, GradedError> {
        let diff = &self.apply(p)? - &self.ring().coerce(p)?;
        self.ring().is_zero(&diff)
    }

    /// Invariant and anti-invariant dimensions per degree, with a basis of
    /// the invariants.
    pub fn invariant_subring(&self, max_degree: usize) -> Result<Vec<EigenPiece>, GradedError> {
        let ring = self.ring();
        (0..=max_degree)
            .map(|d| {
                with_scalar!(ring.field(), S => {
                    let (cols, src, _) = self.map.columns::<S>(d as i64)?;
                    let n = src.dim();
                    let shifted = |sign: &S| -> Vec<Vec<S>> {
                        cols.iter()
                            .enumerate()
                            .map(|(j, c)| {
                                let mut c = c.clone();
                                c[j] = c[j].sub(sign);
                                c
                            })
                            .collect()
                    };
                    let plus = kernel_of_columns(&shifted(&S::one()), n);
                    let minus = kernel_of_columns(&shifted(&S::zero().sub(&S::one())), n);
                    Ok(EigenPiece {
                        degree: d,
                        invariant: plus.len(),
                        anti_invariant: minus.len(),
                        invariant_basis: plus.iter().map(|v| src.element(v, ring.vars())).collect(),
                    })
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Field;

    #[test]
    fn sign_flip() {
        let r = GradedRingPresentation::polynomial_ring(&[("u", 2), ("v", 2)], Field::Q).unwrap();
        let tau = RingInvolution::parse(&r, &["u", "-v"]).unwrap();
        let pieces = tau.invariant_subring(6).unwrap();
        let inv: Vec<usize> = pieces.iter().map(|p| p.invariant).collect();
        let anti: Vec<usize> = pieces.iter().map(|p| p.anti_invariant).collect();
        assert_eq!(inv, vec![1, 0, 1, 0, 2, 0, 2]);
        assert_eq!(anti, vec![0, 0, 1, 0, 1, 0, 2]);
        assert!(tau.fixes(&r.parse("v^2 + u").unwrap()).unwrap());
        for b in &pieces[4].invariant_basis {
            assert!(tau.fixes(b).unwrap());
        }
    }

    #[test]
    fn non_involution_rejected() {
        let r = GradedRingPresentation::polynomial_ring(&[("u", 2), ("v", 2)], Field::Q).unwrap();
        assert!(matches!(
            RingInvolution::parse(&r, &["u + v", "v"]),
            Err(GradedError::NotInvolution(_))
        ));
    }
}
