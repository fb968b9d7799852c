use std::fmt;

use num::{BigInt, Integer, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;

/// Coefficient fields for degreewise linear algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Q,
    F2,
    F3,
}

impl Field {
    pub fn label(self) -> &'static str {
        match self {
            Field::Q => "Q",
            Field::F2 => "F2",
            Field::F3 => "F3",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self) -> Self;
    /// Image of a rational, if its denominator is invertible.
    fn from_rational(r: &Rational) -> Option<Self>;
    /// A rational representative.
    fn to_rational(&self) -> Rational;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// Residues modulo a small prime `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % P)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp((self.0 + P - other.0) % P)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(self.0 * other.0 % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat: a^(P-2).
        let mut r = 1u64;
        let mut b = self.0;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        Fp(r)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let d = r.denom().mod_floor(&p);
        if d.is_zero() {
            return None;
        }
        let n = r.numer().mod_floor(&p).to_u64()?;
        let d = Fp::<P>(d.to_u64()?);
        Some(Fp::<P>(n).mul(&d.inv()))
    }
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.0.into())
    }
}

/// A row space kept in reduced row echelon form, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    ncols: usize,
    /// Rows sorted by pivot column; each pivot entry is 1 and every other
    /// row is zero in that column.
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    /// Reduces `v` against the current rows in place.
    pub fn reduce(&self, v: &mut [S]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<S>) -> bool {
        assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    pub fn contains(&self, v: &[S]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Columns without a pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the vectors orthogonal to every row, i.e. the null space of
    /// the matrix whose rows span this space.
    pub fn null_space(&self) -> Vec<Vec<S>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![S::zero(); self.ncols];
                v[f] = S::one();
                for (p, row) in &self.rows {
                    if !row[f].is_zero() {
                        v[*p] = S::zero().sub(&row[f]);
                    }
                }
                v
            })
            .collect()
    }
}

/// Rank of a set of vectors of length `len`.
pub fn rank<S: Scalar>(vectors: impl IntoIterator<Item = Vec<S>>, len: usize) -> usize {
    let mut e = Echelon::new(len);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Null space of the map whose columns are `columns` (each of length `rows`).
pub fn kernel_of_columns<S: Scalar>(columns: &[Vec<S>], rows: usize) -> Vec<Vec<S>> {
    let mut e = Echelon::new(columns.len());
    for r in 0..rows {
        e.insert(columns.iter().map(|c| c[r].clone()).collect());
    }
    e.null_space()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn finite_field_arithmetic() {
        type F3 = Fp<3>;
        assert_eq!(F3::new(2).mul(&F3::new(2)), F3::new(1));
        assert_eq!(F3::new(2).inv(), F3::new(2));
        assert_eq!(F3::from_rational(&rat(1, 2)), Some(F3::new(2)));
        assert_eq!(Fp::<2>::from_rational(&rat(1, 2)), None);
        assert_eq!(Fp::<2>::from_rational(&int(-3)), Some(Fp::<2>::new(1)));
    }

    #[test]
    fn echelon_rank_and_kernel() {
        let v = |a: &[i64]| a.iter().map(|&x| int(x)).collect::<Vec<Rational>>();
        let cols = vec![v(&[1, 2]), v(&[2, 4]), v(&[0, 1])];
        assert_eq!(rank(cols.clone(), 2), 2);
        let k = kernel_of_columns(&cols, 2);
        assert_eq!(k, vec![v(&[-2, 1, 0])]);
        let mut e = Echelon::new(3);
        assert!(e.insert(v(&[1, 1, 0])));
        assert!(!e.insert(v(&[2, 2, 0])));
        assert!(e.contains(&v(&[3, 3, 0])));
        assert_eq!(e.free_columns(), vec![1, 2]);
    }

    #[test]
    fn mod_two_rank_drops() {
        let v = |a: &[i64]| a.iter().map(|&x| Fp::<2>::new(x)).collect::<Vec<_>>();
        assert_eq!(rank(vec![v(&[1, 1]), v(&[1, -1])], 2), 1);
    }
}
