use num::Signed;
use serde::{Deserialize, Serialize};

use super::LocalizationError;
use crate::algebra::{int, sum_all, LaurentPoly, Monomial, Rational, StructuredRationalFunction, Vars};
use crate::torus::{fixed_point_weights, moment_polygon, HirzebruchParams, LatticeMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterBasis {
    Xy,
    Ab,
}

/// A formal difference of torus representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualCharacter {
    value: LaurentPoly,
    basis: CharacterBasis,
}

impl VirtualCharacter {
    pub fn value(&self) -> &LaurentPoly {
        &self.value
    }

    pub fn basis(&self) -> CharacterBasis {
        self.basis
    }
}

pub fn xy_vars() -> Vars {
    Vars::new(&["x", "y"])
}

pub fn ab_vars() -> Vars {
    Vars::new(&["a", "b"])
}

/// Sum over the fixed points of `w1 w2 (w1 + w2) / ((1 - w1)(1 - w2))`.
pub fn atiyah_bott_index(n: u32) -> Result<VirtualCharacter, LocalizationError> {
    // The weights do not depend on the class; any admissible level works.
    let params = HirzebruchParams::new(n, int(i64::from(n) + 1)).expect("admissible level");
    let polygon = moment_polygon(&params).expect("nondegenerate polygon");
    let weights = fixed_point_weights(&polygon).expect("smooth polygon");
    let vars = xy_vars();
    let summands = (0..weights.vertices.len()).map(|i| {
        let [m1, m2] = weights.monomials(i);
        let w1 = LaurentPoly::monomial(&vars, m1.clone());
        let w2 = LaurentPoly::monomial(&vars, m2.clone());
        let num = &(&w1 * &w2) * &(&w1 + &w2);
        StructuredRationalFunction::new(num, [m1, m2]).expect("nontrivial weights")
    });
    let value = sum_all(&vars, summands)?.to_laurent()?;
    Ok(VirtualCharacter {
        value,
        basis: CharacterBasis::Xy,
    })
}

/// Positive and (negated) negative parts of a character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSplit {
    pub positive: LaurentPoly,
    pub negative: LaurentPoly,
}

impl IndexSplit {
    pub fn positive_dimension(&self) -> Rational {
        self.positive.coefficient_sum()
    }

    pub fn negative_dimension(&self) -> Rational {
        self.negative.coefficient_sum()
    }
}

pub fn split_index(index: &VirtualCharacter) -> Result<IndexSplit, LocalizationError> {
    if !index.value.has_integer_coefficients() {
        return Err(LocalizationError::NonIntegral);
    }
    let (positive, negative) = index.value.split_by_sign();
    debug_assert!(negative.terms().all(|(_, c)| c.is_positive()));
    Ok(IndexSplit { positive, negative })
}

/// Exponent map taking a monomial in `x, y` to the same character written
/// in `a, b`, inverted from the definitions of `a` and `b` as monomials in
/// `x, y` (`a = x y^((n+1)/2)`, `b = x y^((n-1)/2)` for n odd; `a = x y^(n/2)`,
/// `b = y` for n even).
pub fn xy_to_ab(n: u32) -> Result<LatticeMap, LocalizationError> {
    if n == 0 {
        return Err(LocalizationError::TwistTooSmall { n, min: 1 });
    }
    let n = i64::from(n);
    let (a, b) = if n % 2 == 1 {
        ([1, (n + 1) / 2], [1, (n - 1) / 2])
    } else {
        ([1, n / 2], [0, 1])
    };
    // Columns are the (x, y)-exponents of a and b.
    let ab_in_xy = LatticeMap::new_2x2(a[0], b[0], a[1], b[1]);
    Ok(ab_in_xy.inverse().expect("unimodular change of weights"))
}

/// The character of `H^{0,1}` written in the standard weights `a, b`.
pub fn h01_character_standard(n: u32) -> Result<VirtualCharacter, LocalizationError> {
    if n < 2 {
        return Err(LocalizationError::TwistTooSmall { n, min: 2 });
    }
    let split = split_index(&atiyah_bott_index(n)?)?;
    let value = split.negative.monomial_substitution(&xy_to_ab(n)?, &ab_vars())?;
    Ok(VirtualCharacter {
        value,
        basis: CharacterBasis::Ab,
    })
}

/// `Det^e (x) Sym^k`, named as in the classification of the isotropy
/// representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyRepName {
    pub n: u32,
    /// Exponent of `Det`; always an integer here.
    pub det_exponent: i64,
    pub symmetric_power: u32,
}

impl IsotropyRepName {
    pub fn dimension(&self) -> u32 {
        self.symmetric_power + 1
    }

    /// The torus character computed from the named representation alone.
    ///
    /// For n odd `Det = ab` and `Sym^k` has weights `a^j b^(k-j)`. For n even
    /// `Det = a` is the circle weight and `Sym^k` is the irreducible
    /// representation of SO(3) with weights `b^(-k/2), ..., b^(k/2)`.
    pub fn character(&self) -> LaurentPoly {
        let vars = ab_vars();
        let k = i64::from(self.symmetric_power);
        let e = self.det_exponent;
        let terms: Vec<Monomial> = if self.n % 2 == 1 {
            (0..=k).map(|j| Monomial::new(vec![e + j, e + k - j])).collect()
        } else {
            (-k / 2..=k / 2).map(|j| Monomial::new(vec![e, j])).collect()
        };
        LaurentPoly::from_terms(&vars, terms.into_iter().map(|m| (m, int(1))))
    }
}

impl std::fmt::Display for IsotropyRepName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Det^{} ⊗ Sym^{}", self.det_exponent, self.symmetric_power)
    }
}

pub fn isotropy_rep_name(n: u32) -> Result<IsotropyRepName, LocalizationError> {
    if n <= 1 {
        return Err(LocalizationError::TwistTooSmall { n, min: 2 });
    }
    let det_exponent = if n % 2 == 1 { -(i64::from(n) - 3) / 2 } else { 1 };
    Ok(IsotropyRepName {
        n,
        det_exponent,
        symmetric_power: n - 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn xy(s: &str) -> LaurentPoly {
        parse_poly(s, &xy_vars()).unwrap()
    }

    fn ab(s: &str) -> LaurentPoly {
        parse_poly(s, &ab_vars()).unwrap()
    }

    #[test]
    fn low_indices() {
        assert_eq!(atiyah_bott_index(0).unwrap().value().to_string(), "2 + y + 1/y + x + 1/x");
        assert_eq!(*atiyah_bott_index(1).unwrap().value(), xy("2 + y + 1/y + (1 + y)/(x*y)"));
        assert_eq!(
            *atiyah_bott_index(3).unwrap().value(),
            xy("2 + y + 1/y + (1 + y + y^2 + y^3)/(x*y^3) - x*y*(1 + y)")
        );
    }

    #[test]
    fn splits() {
        let s = split_index(&atiyah_bott_index(1).unwrap()).unwrap();
        assert!(s.negative.is_zero());
        let s = split_index(&atiyah_bott_index(2).unwrap()).unwrap();
        assert_eq!(s.negative, xy("x*y"));
        let s = split_index(&atiyah_bott_index(4).unwrap()).unwrap();
        assert_eq!(s.negative, xy("x*y*(1 + y + y^2)"));
        assert_eq!(s.negative_dimension(), int(3));
        let s = split_index(&atiyah_bott_index(0).unwrap()).unwrap();
        assert_eq!(s.positive_dimension(), int(6));
    }

    #[test]
    fn standard_characters() {
        assert_eq!(*h01_character_standard(2).unwrap().value(), ab("a"));
        assert_eq!(*h01_character_standard(3).unwrap().value(), ab("a + b"));
        assert_eq!(*h01_character_standard(4).unwrap().value(), ab("a*(1/b + 1 + b)"));
        assert!(h01_character_standard(1).is_err());
    }

    #[test]
    fn exponent_map_is_transpose_of_basis_change() {
        for n in 1..=20 {
            let p = xy_to_ab(n).unwrap().inverse().unwrap();
            assert_eq!(p, crate::torus::standard_basis_change(n).transpose(), "n={n}");
        }
    }

    #[test]
    fn names() {
        let r = isotropy_rep_name(3).unwrap();
        assert_eq!((r.det_exponent, r.symmetric_power, r.dimension()), (0, 1, 2));
        let r = isotropy_rep_name(2).unwrap();
        assert_eq!((r.det_exponent, r.symmetric_power), (1, 0));
        let r = isotropy_rep_name(5).unwrap();
        assert_eq!((r.det_exponent, r.symmetric_power, r.dimension()), (-1, 3, 4));
        assert_eq!(r.to_string(), "Det^-1 ⊗ Sym^3");
        assert!(isotropy_rep_name(1).is_err());
    }
}
