//! Dense exact linear algebra over `Rat`.
//!
//! Rank, right kernels and linear solves go through fraction-free
//! Bareiss elimination on a denominator-cleared integer copy, so
//! intermediate entries stay integral with bounded growth.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{clear_denominators, Rat};

/// Row-major dense matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Mat { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<Vec<Rat>>) -> Self {
        Mat::from_rows(cols).transpose()
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "mat {}x{} times vector of length {}",
                self.rows, self.cols, v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Appends `col` on the right.
    pub fn augment_col(&self, col: &[Rat]) -> Result<Mat> {
        if col.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "augmenting {}x{} with column of length {}",
                self.rows, self.cols, col.len()
            )));
        }
        let mut m = Mat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            *m.at_mut(i, self.cols) = col[i].clone();
        }
        Ok(m)
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row mismatch".into()));
        }
        let mut m = Mat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                *m.at_mut(i, self.cols + j) = other.at(i, j).clone();
            }
        }
        Ok(m)
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("matmul shape mismatch".into()));
        }
        let mut m = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Rat::zero();
                for l in 0..self.cols {
                    s += self.at(i, l) * other.at(l, j);
                }
                *m.at_mut(i, j) = s;
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel. The zero matrix yields the standard basis;
    /// a full-column-rank matrix yields the empty list.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let ech = self.echelon();
        let pivots = &ech.pivots;
        let is_pivot: Vec<bool> = {
            let mut b = vec![false; self.cols];
            for &(_, c) in pivots {
                b[c] = true;
            }
            b
        };
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            // back-substitute pivot coordinates, bottom row first
            for &(r, c) in pivots.iter().rev() {
                if c > f {
                    continue;
                }
                let mut s = Rat::zero();
                for j in (c + 1)..self.cols {
                    if !ech.m[r * self.cols + j].is_zero() && !v[j].is_zero() {
                        s += Rat::from_integer(ech.m[r * self.cols + j].clone()) * &v[j];
                    }
                }
                v[c] = -s / Rat::from_integer(ech.m[r * self.cols + c].clone());
            }
            basis.push(v);
        }
        basis
    }

    /// Exact solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {}x{} system with rhs of length {}",
                self.rows, self.cols, b.len()
            )));
        }
        let neg_b: Vec<Rat> = b.iter().map(|x| -x).collect();
        let aug = self.augment_col(&neg_b)?;
        // a kernel vector of [A | -b] with last coordinate 1 is a solution
        for v in aug.kernel() {
            if v[self.cols].is_one() {
                return Ok(Some(v[..self.cols].to_vec()));
            }
        }
        Ok(None)
    }

    fn echelon(&self) -> Echelon {
        // per-row denominator clearing keeps kernel and rank unchanged
        let mut m: Vec<BigInt> = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            m.extend(clear_denominators(self.row(i)));
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.swap(r * cols + j, p * cols + j);
                }
            }
            let pivot = m[r * cols + c].clone();
            for i in (r + 1)..rows {
                let head = m[i * cols + c].clone();
                for j in (c + 1)..cols {
                    let t = &pivot * &m[i * cols + j] - &head * &m[r * cols + j];
                    m[i * cols + j] = t / &prev; // exact by Bareiss
                }
                m[i * cols + c] = BigInt::zero();
            }
            prev = pivot;
            pivots.push((r, c));
            r += 1;
        }
        Echelon { m, pivots }
    }
}

struct Echelon {
    m: Vec<BigInt>,
    pivots: Vec<(usize, usize)>,
}

/// Right-kernel basis of `m`.
pub fn mat_kernel(m: &Mat) -> Vec<Vec<Rat>> {
    m.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i64};

    fn m(rows: Vec<Vec<i64>>) -> Mat {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat_i64).collect()).collect())
    }

    #[test]
    fn kernel_identity_is_empty() {
        assert!(mat_kernel(&Mat::identity(2)).is_empty());
    }

    #[test]
    fn kernel_equal_rows() {
        let k = mat_kernel(&m(vec![vec![1, 1], vec![1, 1]]));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(&v[0] + &v[1], Rat::zero());
        assert!(!v[0].is_zero());
    }

    #[test]
    fn kernel_proportional_rows() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let k = mat_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn zero_matrix_full_basis() {
        let k = mat_kernel(&Mat::zero(3, 4));
        assert_eq!(k.len(), 4);
    }

    #[test]
    fn rank_plus_nullity() {
        let a = m(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(a.rank() + a.kernel().len(), 3);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(vec![vec![1, 1], vec![1, -1]]);
        let x = a.solve(&[rat_i64(3), rat_i64(1)]).unwrap().unwrap();
        assert_eq!(x, vec![rat_i64(2), rat_i64(1)]);

        let b = m(vec![vec![1, 0], vec![2, 0]]);
        assert!(b.solve(&[rat_i64(1), rat_i64(1)]).unwrap().is_none());
    }

    #[test]
    fn solve_rational_entries() {
        let a = Mat::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(-1, 6)]]);
        let x = a.solve(&[rat_i64(1), rat_i64(0)]).unwrap().unwrap();
        let back = a.mul_vec(&x).unwrap();
        assert_eq!(back, vec![rat_i64(1), rat_i64(0)]);
    }
}
