mod common;

use common::{displayed_euler, displayed_index, displayed_standard, mono};
use ruled_core::algebra::{int, CoefficientRing, Monomial};
use ruled_core::localization::{
    atiyah_bott_index, euler_class, euler_class_torus, h01_character_standard, isotropy_rep_name, split_index,
    torus_vars, verify_euler_nzd,
};

#[test]
fn index_matches_closed_forms() {
    for n in 0..=12u32 {
        let i = atiyah_bott_index(n).unwrap();
        assert!(i.value().has_integer_coefficients());
        assert_eq!(*i.value(), displayed_index(i64::from(n)), "n={n}");
    }
}

#[test]
fn split_dimensions() {
    for n in 0..=12u32 {
        let s = split_index(&atiyah_bott_index(n).unwrap()).unwrap();
        let n = i64::from(n);
        let (neg, pos) = if n == 0 { (0, 6) } else { (n - 1, n + 5) };
        assert_eq!(s.negative_dimension(), int(neg), "n={n}");
        assert_eq!(s.positive_dimension(), int(pos), "n={n}");
    }
}

#[test]
fn standard_characters_match_display_and_name() {
    for n in 2..=12u32 {
        let chi = h01_character_standard(n).unwrap();
        assert_eq!(*chi.value(), displayed_standard(i64::from(n)), "n={n}");
        let name = isotropy_rep_name(n).unwrap();
        assert_eq!(*chi.value(), name.character(), "n={n}");
        assert_eq!(chi.value().coefficient_sum(), int(i64::from(name.dimension())));
    }
}

#[test]
fn euler_classes_match_closed_forms() {
    for n in 2..=12u32 {
        let e = euler_class(n).unwrap();
        assert_eq!(e.value, displayed_euler(i64::from(n)), "n={n}");
        assert_eq!(e.degree(), Some(2 * (i64::from(n) - 1)));
    }
}

#[test]
fn euler_classes_are_weyl_invariant() {
    let tv = torus_vars();
    for n in 2..=12u32 {
        let e = euler_class_torus(n).unwrap();
        let swap = ruled_core::torus::LatticeMap::new_2x2(0, 1, 1, 0);
        if n % 2 == 1 {
            assert_eq!(e.monomial_substitution(&swap, &tv).unwrap(), e, "n={n}");
        } else {
            let t1 = mono(&tv, &[1, 0]);
            let neg_t2 = mono(&tv, &[0, 1]).scale_int(-1);
            assert_eq!(e.compose(&[t1, neg_t2], &tv).unwrap(), e, "n={n}");
        }
    }
}

#[test]
fn euler_classes_are_non_zero_divisors() {
    for n in 2..=12u32 {
        for r in [CoefficientRing::Rationals, CoefficientRing::F2, CoefficientRing::F3] {
            assert!(verify_euler_nzd(n, r).unwrap(), "n={n} {r:?}");
        }
    }
    let e6 = euler_class(6).unwrap();
    assert_eq!(e6.value.coefficient(&Monomial::new(vec![5, 0])), int(1));
}
