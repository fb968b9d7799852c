use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;

/// Integer matrix acting on integer column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeMap {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl LatticeMap {
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        LatticeMap {
            rows: r,
            cols: c,
            entries: rows.iter().flat_map(|row| row.iter().copied()).collect(),
        }
    }

    pub fn new_2x2(a: i64, b: i64, c: i64, d: i64) -> Self {
        LatticeMap {
            rows: 2,
            cols: 2,
            entries: vec![a, b, c, d],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        LatticeMap {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply_rational(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + b * Rational::from_integer((*a).into()))
            })
            .collect()
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &LatticeMap) -> LatticeMap {
        assert_eq!(self.cols, other.rows);
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                entries.push((0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum());
            }
        }
        LatticeMap {
            rows: self.rows,
            cols: other.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> LatticeMap {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        LatticeMap {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    fn rational_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Option<i64> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut m = self.rational_rows();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Some(0);
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                let f = &m[r][col] / &pivot;
                for c in col..n {
                    let v = &m[col][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
        Some(det.to_integer().try_into().expect("determinant fits in i64"))
    }

    /// Integer inverse, defined when the determinant is a unit.
    pub fn inverse(&self) -> Option<LatticeMap> {
        match self.determinant()? {
            1 | -1 => {}
            _ => return None,
        }
        let n = self.rows;
        let mut m = self.rational_rows();
        for (i, row) in m.iter_mut().enumerate() {
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
        }
        for col in 0..n {
            let p = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(p, col);
            let inv = Rational::one() / &m[col][col];
            for v in m[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..2 * n {
                        let v = &m[col][c] * &f;
                        m[r][c] -= v;
                    }
                }
            }
        }
        let entries = m
            .iter()
            .flat_map(|row| row[n..].iter().map(|v| v.to_integer().try_into().expect("entry fits in i64")))
            .collect();
        Some(LatticeMap {
            rows: n,
            cols: n,
            entries,
        })
    }
}

impl fmt::Display for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Inclusion of the reduction torus into the standard 4-torus, and the
/// reduction level for the n-th Hirzebruch surface at parameter `lambda`.
pub fn reduction_data(n: u32, lambda: &Rational) -> (LatticeMap, [Rational; 2]) {
    let n_i = i64::from(n);
    let inclusion = LatticeMap::from_rows(&[&[n_i, 1], &[0, 1], &[1, 0], &[1, 0]]);
    (inclusion, [moment_level(n, lambda), Rational::one()])
}

/// `lambda + n/2` for n even, `lambda + (n+1)/2` for n odd.
pub fn moment_level(n: u32, lambda: &Rational) -> Rational {
    let shift = if n % 2 == 0 { n / 2 } else { n.div_ceil(2) };
    lambda + Rational::from_integer(shift.into())
}

/// Change of basis for the maximal torus of K(n), taking circle vectors in
/// the moment map basis to the standard basis.
pub fn standard_basis_change(n: u32) -> LatticeMap {
    let n = i64::from(n);
    if n == 0 {
        LatticeMap::new_2x2(-1, 0, 0, 1)
    } else if n % 2 == 1 {
        LatticeMap::new_2x2(1, (n + 1) / 2, 1, (n - 1) / 2)
    } else {
        LatticeMap::new_2x2(1, n / 2, 0, 1)
    }
}

/// The n-fold covering `U(2) -> K(n)` on maximal tori, in standard bases.
pub fn covering_matrix(n: u32) -> LatticeMap {
    assert!(n >= 1, "covering matrix needs n >= 1");
    let n = i64::from(n);
    if n % 2 == 1 {
        LatticeMap::new_2x2((n + 1) / 2, (n - 1) / 2, (n - 1) / 2, (n + 1) / 2)
    } else {
        LatticeMap::new_2x2(n / 2, n / 2, 1, -1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn reduction_inclusion_rows() {
        let (m, _) = reduction_data(0, &int(1));
        assert_eq!(m.to_rows(), vec![vec![0, 1], vec![0, 1], vec![1, 0], vec![1, 0]]);
        let (m, _) = reduction_data(2, &int(1));
        assert_eq!(m.to_rows(), vec![vec![2, 1], vec![0, 1], vec![1, 0], vec![1, 0]]);
        let (_, level) = reduction_data(1, &int(1));
        assert_eq!(level, [int(2), int(1)]);
    }

    #[test]
    fn basis_change_matrices() {
        assert_eq!(standard_basis_change(3), LatticeMap::new_2x2(1, 2, 1, 1));
        assert_eq!(standard_basis_change(4), LatticeMap::new_2x2(1, 2, 0, 1));
        assert_eq!(standard_basis_change(0), LatticeMap::new_2x2(-1, 0, 0, 1));
        for n in 0..=100 {
            let d = standard_basis_change(n).determinant().unwrap();
            assert!(d == 1 || d == -1, "n={n} det={d}");
        }
    }

    #[test]
    fn covering_determinants() {
        assert_eq!(covering_matrix(3), LatticeMap::new_2x2(2, 1, 1, 2));
        assert_eq!(covering_matrix(4), LatticeMap::new_2x2(2, 2, 1, -1));
        for n in 1..=100u32 {
            assert_eq!(covering_matrix(n).determinant().unwrap().abs(), i64::from(n));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = LatticeMap::new_2x2(2, 3, 1, 2);
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), LatticeMap::identity(2));
        assert!(LatticeMap::new_2x2(2, 0, 0, 1).inverse().is_none());
        assert_eq!(LatticeMap::from_rows(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]).determinant(), Some(1));
    }
}
