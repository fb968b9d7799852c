//! Closed forms and dimension counts written out term by term, shared by
//! the integration tests as independent oracles.
#![allow(dead_code)]

use ruled_core::algebra::{LaurentPoly, Monomial, Vars};
use ruled_core::catalog::SurfaceFamily;
use ruled_core::localization::{ab_vars, invariant_vars, xy_vars};

pub fn mono(v: &Vars, e: &[i64]) -> LaurentPoly {
    LaurentPoly::monomial(v, Monomial::new(e.to_vec()))
}

/// Closed forms for I(n).
pub fn displayed_index(n: i64) -> LaurentPoly {
    let v = xy_vars();
    let base = &(&LaurentPoly::integer(&v, 2) + &mono(&v, &[0, 1])) + &mono(&v, &[0, -1]);
    match n {
        0 => &(&base + &mono(&v, &[1, 0])) + &mono(&v, &[-1, 0]),
        1 => &(&base + &mono(&v, &[-1, -1])) + &mono(&v, &[-1, 0]),
        _ => {
            let mut out = base;
            for j in 0..=n {
                out = &out + &mono(&v, &[-1, j - n]);
            }
            for j in 0..=n - 2 {
                out = &out - &mono(&v, &[1, 1 + j]);
            }
            out
        }
    }
}

/// Character of H^{0,1} in the standard basis.
pub fn displayed_standard(n: i64) -> LaurentPoly {
    let v = ab_vars();
    let mut out = LaurentPoly::zero(&v);
    if n % 2 == 1 {
        let e = -(n - 3) / 2;
        for j in 0..=n - 2 {
            out = &out + &mono(&v, &[e + j, e + n - 2 - j]);
        }
    } else {
        for j in 1 - n / 2..=n / 2 - 1 {
            out = &out + &mono(&v, &[1, j]);
        }
    }
    out
}

pub fn displayed_euler(n: i64) -> LaurentPoly {
    let v = invariant_vars();
    let a = mono(&v, &[1, 0]);
    let x = mono(&v, &[0, 1]);
    if n % 2 == 1 {
        (1..=(n - 1) / 2).fold(LaurentPoly::one(&v), |acc, i| {
            let f = &x.scale_int((2 * i - 1) * (2 * i - 1)) - &(&a * &a).scale_int(i * (i - 1));
            &acc * &f
        })
    } else {
        (1..n / 2).fold(a.clone(), |acc, i| {
            let f = &(&a * &a) - &x.scale_int(i * i);
            &acc * &f
        })
    }
}

/// Coefficients of prod 1/(1 - t^g), counted directly.
pub fn free_dims(degrees: &[usize], max: usize) -> Vec<usize> {
    let mut out = vec![0usize; max + 1];
    out[0] = 1;
    for &g in degrees {
        for d in g..=max {
            out[d] += out[d - g];
        }
    }
    out
}

/// Coefficients of (1 - t^r) / ((1 - t^2)(1 - t^4)^2).
pub fn one_relation_dims(r: usize, max: usize) -> Vec<usize> {
    let free = free_dims(&[2, 4, 4], max);
    (0..=max).map(|d| free[d] - if d >= r { free[d - r] } else { 0 }).collect()
}

/// Additive splitting computed from generator degrees alone.
pub fn splitting_oracle(l: usize, family: SurfaceFamily, mod_two: bool, max: usize) -> Vec<usize> {
    let base: Vec<usize> = match (family, mod_two) {
        (SurfaceFamily::Untwisted, false) => vec![4, 4],
        (SurfaceFamily::Untwisted, true) => vec![2, 3, 2, 3],
        (SurfaceFamily::Twisted, _) => vec![2, 4],
    };
    let summand: Vec<usize> = match (family, mod_two) {
        (SurfaceFamily::Untwisted, true) => vec![2, 2, 3],
        _ => vec![2, 4],
    };
    let mut out = free_dims(&base, max);
    let s = free_dims(&summand, max);
    for k in 1..=l {
        let shift = match family {
            SurfaceFamily::Untwisted => 4 * k - 2,
            SurfaceFamily::Twisted => 4 * k,
        };
        for d in shift..=max {
            out[d] += s[d - shift];
        }
    }
    out
}

/// Smallest lambda at which both F_k and F_l have nondegenerate polygons,
/// as an integer.
pub fn shared_threshold(k: u32, l: u32) -> i64 {
    let n = k.max(l);
    if n % 2 == 0 {
        i64::from((n / 2).max(1))
    } else {
        i64::from((n - 1) / 2)
    }
}
