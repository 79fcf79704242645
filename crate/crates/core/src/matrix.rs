//! Exact integer matrices: fraction-free determinant and inverse, and rank
//! over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::Coeff;
use crate::error::{Error, Result};

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    /// Sets entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i`.
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rows as vectors.
    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Matrix product.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Matrix(format!("shape {}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Transposed matrix.
    pub fn transpose(&self) -> IntMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Whether the matrix equals its transpose.
    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(Error::Matrix(format!("not square: {}x{}", self.rows, self.cols)))
        }
    }

    /// Fraction-free forward elimination of `[self | extra]`. Returns the
    /// reduced rows and the sign of the row permutation, or `None` when the
    /// left block is singular.
    fn bareiss(&self, extra: Option<&IntMatrix>) -> Option<(Vec<Vec<BigInt>>, i32)> {
        let n = self.rows;
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                if let Some(e) = extra {
                    r.extend_from_slice(e.row(i));
                }
                r
            })
            .collect();
        let width = m.first().map_or(0, Vec::len);
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let pivot = (k + 1..n).find(|&i| !m[i][k].is_zero())?;
                m.swap(k, pivot);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..width {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Some((m, sign))
    }

    /// Determinant by Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        Ok(match self.bareiss(None) {
            None => BigInt::zero(),
            Some((m, sign)) => &m[n - 1][n - 1] * BigInt::from(sign),
        })
    }

    /// Exact inverse of a matrix with determinant ±1.
    ///
    /// Fails if the matrix is singular or its inverse is not integral.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(IntMatrix::zeros(0, 0));
        }
        let (m, _) = self.bareiss(Some(&IntMatrix::identity(n))).ok_or_else(|| Error::Matrix("singular".into()))?;
        let d = m[n - 1][n - 1].clone();
        let mut out = IntMatrix::zeros(n, n);
        for c in 0..n {
            let mut x = vec![BigInt::zero(); n];
            for i in (0..n).rev() {
                let mut acc = &d * &m[i][n + c];
                for (j, xj) in x.iter().enumerate().skip(i + 1) {
                    acc -= &m[i][j] * xj;
                }
                let (q, r) = acc.div_rem(&m[i][i]);
                debug_assert!(r.is_zero(), "fraction-free back substitution is exact");
                x[i] = q;
            }
            for (i, xi) in x.into_iter().enumerate() {
                let (q, r) = xi.div_rem(&d);
                if !r.is_zero() {
                    return Err(Error::Matrix(format!("inverse not integral (determinant {d})")));
                }
                out.set(i, c, q);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Aligned plain-text grid.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Rank of a rational matrix given by rows.
pub fn rank(mut rows: Vec<Vec<Coeff>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = &rows[i][c] / &pivot;
            for j in c..cols {
                let v = &rows[i][j] - &factor * &rows[r][j];
                rows[i][j] = v;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
