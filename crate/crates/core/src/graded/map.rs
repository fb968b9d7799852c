use std::fmt;

use super::linalg::{rank, Scalar};
use super::presentation::{DegreewiseDims, GradedRingPresentation, Piece};
use super::GradedError;
use crate::algebra::LaurentPoly;

/// A graded ring homomorphism given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: GradedRingPresentation,
    target: GradedRingPresentation,
    images: Vec<LaurentPoly>,
}

impl RingMap {
    /// Checks that each image is homogeneous of the generator's degree (or
    /// zero) and that every relation of the source maps to zero.
    pub fn new(
        source: GradedRingPresentation,
        target: GradedRingPresentation,
        images: Vec<LaurentPoly>,
    ) -> Result<Self, GradedError> {
        if images.len() != source.vars().len() {
            return Err(GradedError::IllFormedMap(format!(
                "{} images for {} generators",
                images.len(),
                source.vars().len()
            )));
        }
        if source.field() != target.field() {
            return Err(GradedError::IllFormedMap("source and target fields differ".into()));
        }
        let images = images
            .iter()
            .map(|p| target.coerce(p))
            .collect::<Result<Vec<_>, _>>()?;
        for ((name, d), img) in source.vars().names().iter().zip(source.degrees()).zip(&images) {
            if img.is_zero() {
                continue;
            }
            if !img.is_polynomial() || target.degree_of(img) != Some(*d) {
                return Err(GradedError::IllFormedMap(format!("{name} -> {img} is not of degree {d}")));
            }
        }
        let map = RingMap { source, target, images };
        for r in map.source.relations() {
            let img = map.apply_raw(r)?;
            if !map.target.is_zero(&img)? {
                return Err(GradedError::IllFormedMap(format!("relation {r} maps to {img}")));
            }
        }
        Ok(map)
    }

    /// Convenience constructor parsing the images in the target variables.
    pub fn parse(
        source: &GradedRingPresentation,
        target: &GradedRingPresentation,
        images: &[&str],
    ) -> Result<Self, GradedError> {
        let images = images
            .iter()
            .map(|s| target.parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        RingMap::new(source.clone(), target.clone(), images)
    }

    pub fn source(&self) -> &GradedRingPresentation {
        &self.source
    }

    pub fn target(&self) -> &GradedRingPresentation {
        &self.target
    }

    pub fn images(&self) -> &[LaurentPoly] {
        &self.images
    }

    fn apply_raw(&self, p: &LaurentPoly) -> Result<LaurentPoly, GradedError> {
        let p = self.source.coerce(p)?;
        Ok(p.compose(&self.images, self.target.vars())?)
    }

    /// Image of a polynomial in the source generators (as a representative).
    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly, GradedError> {
        self.apply_raw(p)
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap, GradedError> {
        if other.source != self.target {
            return Err(GradedError::IllFormedMap("composable maps need matching rings".into()));
        }
        let images = self
            .images
            .iter()
            .map(|p| other.apply(p))
            .collect::<Result<Vec<_>, _>>()?;
        RingMap::new(self.source.clone(), other.target.clone(), images)
    }

    /// Same map with both rings read over another field.
    pub fn with_field(&self, field: super::Field) -> Result<RingMap, GradedError> {
        RingMap::new(
            self.source.with_field(field),
            self.target.with_field(field),
            self.images.clone(),
        )
    }

    /// Columns of the degree-`d` matrix: images of the source basis in
    /// target coordinates.
    pub(crate) fn columns<S: Scalar>(&self, d: i64) -> Result<(Vec<Vec<S>>, Piece<S>, Piece<S>), GradedError> {
        let src = self.source.piece::<S>(d)?;
        let tgt = self.target.piece::<S>(d)?;
        let vars = self.source.vars();
        let cols = src
            .basis_monomials()
            .into_iter()
            .map(|m| {
                let img = self.apply_raw(&LaurentPoly::monomial(vars, m))?;
                tgt.coords(&img)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((cols, src, tgt))
    }

    pub fn rank_in_degree(&self, d: i64) -> Result<usize, GradedError> {
        with_scalar!(self.source.field(), S => {
            let (cols, _, tgt) = self.columns::<S>(d)?;
            Ok(rank(cols, tgt.dim()))
        })
    }

    pub fn image_dims(&self, max_degree: usize) -> Result<DegreewiseDims, GradedError> {
        (0..=max_degree as i64)
            .map(|d| self.rank_in_degree(d))
            .collect::<Result<Vec<_>, _>>()
            .map(DegreewiseDims)
    }

    pub fn kernel_dims(&self, max_degree: usize) -> Result<DegreewiseDims, GradedError> {
        let src = self.source.dims(max_degree)?;
        let img = self.image_dims(max_degree)?;
        Ok(DegreewiseDims((0..=max_degree).map(|d| src.get(d) - img.get(d)).collect()))
    }

    /// Whether the map is onto in every degree up to `max_degree`; returns
    /// the first degree where it is not.
    pub fn first_non_surjective_degree(&self, max_degree: usize) -> Result<Option<usize>, GradedError> {
        let img = self.image_dims(max_degree)?;
        let tgt = self.target.dims(max_degree)?;
        Ok((0..=max_degree).find(|&d| img.get(d) != tgt.get(d)))
    }

    /// Certifies that `candidates` generate the kernel in degrees up to
    /// `max_degree`.
    pub fn kernel_certificate(
        &self,
        candidates: &[LaurentPoly],
        max_degree: usize,
    ) -> Result<KernelCertificate, GradedError> {
        let mut in_kernel = true;
        for c in candidates {
            if !self.target.is_zero(&self.apply(c)?)? {
                in_kernel = false;
            }
        }
        let kernel = self.kernel_dims(max_degree)?;
        let quotient = self.source.with_relations(candidates.to_vec())?.dims(max_degree)?;
        let src = self.source.dims(max_degree)?;
        let ideal = DegreewiseDims((0..=max_degree).map(|d| src.get(d) - quotient.get(d)).collect());
        Ok(KernelCertificate {
            candidates_in_kernel: in_kernel,
            kernel,
            ideal,
        })
    }
}

impl fmt::Display for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .source
            .vars()
            .names()
            .iter()
            .zip(&self.images)
            .map(|(n, p)| format!("{n} -> {p}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Comparison of the kernel of a map with the ideal spanned by candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate {
    pub candidates_in_kernel: bool,
    pub kernel: DegreewiseDims,
    pub ideal: DegreewiseDims,
}

impl KernelCertificate {
    pub fn holds(&self) -> bool {
        self.candidates_in_kernel && self.kernel == self.ideal
    }
}

/// Dimensions of the fiber product `A ×_C B` of `f: A -> C` and `g: B -> C`,
/// requiring `g` to be onto.
pub fn fiber_product_dims(f: &RingMap, g: &RingMap, max_degree: usize) -> Result<DegreewiseDims, GradedError> {
    if f.target != g.target {
        return Err(GradedError::IllFormedMap("fiber product needs a common target".into()));
    }
    let field = f.source.field();
    (0..=max_degree as i64)
        .map(|d| {
            with_scalar!(field, S => {
                let (cf, a, c) = f.columns::<S>(d)?;
                let (cg, b, _) = g.columns::<S>(d)?;
                if rank(cg.clone(), c.dim()) != c.dim() {
                    return Err(GradedError::SurjectivityFailed { degree: d as usize });
                }
                let r = rank(cf.into_iter().chain(cg), c.dim());
                Ok(a.dim() + b.dim() - r)
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(DegreewiseDims)
}

/// Dimensions of the common kernel of maps out of one source.
pub fn joint_kernel_dims(maps: &[RingMap], max_degree: usize) -> Result<DegreewiseDims, GradedError> {
    let Some(first) = maps.first() else {
        return Err(GradedError::IllFormedMap("no maps".into()));
    };
    if maps.iter().any(|m| m.source != first.source) {
        return Err(GradedError::IllFormedMap("maps need a common source".into()));
    }
    let field = first.source.field();
    (0..=max_degree as i64)
        .map(|d| {
            with_scalar!(field, S => {
                let mut stacked: Vec<Vec<S>> = Vec::new();
                let mut len = 0;
                let mut src_dim = 0;
                for m in maps {
                    let (cols, src, tgt) = m.columns::<S>(d)?;
                    src_dim = src.dim();
                    if stacked.is_empty() {
                        stacked = vec![Vec::new(); cols.len()];
                    }
                    for (s, c) in stacked.iter_mut().zip(cols) {
                        s.extend(c);
                    }
                    len += tgt.dim();
                }
                Ok(src_dim - rank(stacked, len))
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(DegreewiseDims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Field;

    fn ring(gens: &[(&str, i64)]) -> GradedRingPresentation {
        GradedRingPresentation::polynomial_ring(gens, Field::Q).unwrap()
    }

    #[test]
    fn kernel_of_evaluation() {
        let a = ring(&[("A", 2), ("X", 4)]);
        let t = ring(&[("t", 2)]);
        let f = RingMap::parse(&a, &t, &["3*t", "2*t^2"]).unwrap();
        let k = f.kernel_dims(12).unwrap();
        assert_eq!(k, DegreewiseDims(vec![0, 0, 0, 0, 1, 0, 1, 0, 2, 0, 2, 0, 3]));
        let cert = f.kernel_certificate(&[a.parse("9*X - 2*A^2").unwrap()], 16).unwrap();
        assert!(cert.holds());
        let wrong = f.kernel_certificate(&[a.parse("X - A^2").unwrap()], 8).unwrap();
        assert!(!wrong.holds());
    }

    #[test]
    fn ill_formed_maps_are_rejected() {
        let a = ring(&[("A", 2), ("X", 4)]);
        let t = ring(&[("t", 2)]);
        assert!(matches!(RingMap::parse(&a, &t, &["t", "t"]), Err(GradedError::IllFormedMap(_))));
        let q = a.with_relations(vec![a.parse("X").unwrap()]).unwrap();
        assert!(matches!(RingMap::parse(&q, &t, &["t", "t^2"]), Err(GradedError::IllFormedMap(_))));
        assert!(RingMap::parse(&q, &t, &["t", "0"]).is_ok());
    }

    #[test]
    fn fiber_product_of_two_lines() {
        // Q[s] x_Q Q[t] glued in degree 0 is Q[s, t]/(s t).
        let s = ring(&[("s", 2)]);
        let t = ring(&[("t", 2)]);
        let pt = ring(&[("z", 2)]).with_relations(vec![ring(&[("z", 2)]).parse("z").unwrap()]).unwrap();
        let f = RingMap::parse(&s, &pt, &["0"]).unwrap();
        let g = RingMap::parse(&t, &pt, &["0"]).unwrap();
        let fp = fiber_product_dims(&f, &g, 8).unwrap();
        assert_eq!(fp, DegreewiseDims(vec![1, 0, 2, 0, 2, 0, 2, 0, 2]));
        // Not onto: Q[s] -> Q[t] with s -> 0.
        let h = RingMap::parse(&s, &t, &["0"]).unwrap();
        assert!(matches!(
            fiber_product_dims(&h, &h, 4),
            Err(GradedError::SurjectivityFailed { degree: 2 })
        ));
    }

    #[test]
    fn joint_kernel() {
        let a = ring(&[("x", 2), ("y", 2)]);
        let t = ring(&[("t", 2)]);
        let f = RingMap::parse(&a, &t, &["t", "0"]).unwrap();
        let g = RingMap::parse(&a, &t, &["0", "t"]).unwrap();
        let k = joint_kernel_dims(&[f, g], 6).unwrap();
        assert_eq!(k, DegreewiseDims(vec![0, 0, 0, 0, 1, 0, 2]));
    }
}
