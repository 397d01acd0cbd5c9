use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};

use super::scalar::Scalar;
use super::ExactError;

/// Dense row-major matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution<T> {
    Unique(T),
    /// Consistent with a free parameter space of the given dimension; the
    /// contained value is the particular solution with free variables zero.
    Underdetermined(T, usize),
    Inconsistent,
}

impl<T> Solution<T> {
    pub fn particular(self) -> Option<T> {
        match self {
            Solution::Unique(x) | Solution::Underdetermined(x, _) => Some(x),
            Solution::Inconsistent => None,
        }
    }
}

/// Reduced row echelon form with the pivot column of each nonzero row.
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Ragged);
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer-entry convenience constructor; panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row with the lightest nonzero entry in `col` among rows `from..`.
    fn choose_pivot(&self, col: usize, from: usize) -> Option<usize> {
        (from..self.rows)
            .filter(|&r| !self[(r, col)].is_zero())
            .min_by_key(|&r| self[(r, col)].height())
    }

    /// Reduced row echelon form by rational Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = m.choose_pivot(col, row) else { continue };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv();
            for j in col..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in col..m.cols {
                    if m[(row, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] - &(&factor * &m[(row, j)]);
                    m[(r, j)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = m.choose_pivot(col, row) else { continue };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv();
            for r in row + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for j in col..m.cols {
                    let v = &m[(r, j)] - &(&factor * &m[(row, j)]);
                    m[(r, j)] = v;
                }
            }
            row += 1;
        }
        row
    }

    pub fn det(&self) -> Result<Scalar, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::ONE;
        for col in 0..n {
            let Some(p) = m.choose_pivot(col, col) else { return Ok(Scalar::ZERO) };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for j in col..n {
                    let v = &m[(r, j)] - &(&factor * &m[(col, j)]);
                    m[(r, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Scalar::ZERO; self.cols];
                x[f] = Scalar::ONE;
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -&matrix[(r, f)];
                }
                x
            })
            .collect()
    }

    /// Solves `M x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Solution<Vec<Scalar>>, ExactError> {
        if b.len() != self.rows {
            return Err(ExactError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let rhs = Matrix { rows: self.rows, cols: 1, data: b.to_vec() };
        Ok(match self.solve_many(&rhs)? {
            Solution::Unique(x) => Solution::Unique(x.data),
            Solution::Underdetermined(x, d) => Solution::Underdetermined(x.data, d),
            Solution::Inconsistent => Solution::Inconsistent,
        })
    }

    /// Solves `M X = B` for every column of `B` at once.
    pub fn solve_many(&self, rhs: &Matrix) -> Result<Solution<Matrix>, ExactError> {
        if rhs.rows != self.rows {
            return Err(ExactError::DimensionMismatch { expected: self.rows, found: rhs.rows });
        }
        let n = self.cols;
        let k = rhs.cols;
        let aug = Matrix::from_fn(self.rows, n + k, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - n)].clone()
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = Matrix::zeros(n, k);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..k {
                x[(p, j)] = matrix[(r, n + j)].clone();
            }
        }
        let free = n - pivots.len();
        Ok(if free == 0 { Solution::Unique(x) } else { Solution::Underdetermined(x, free) })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|l| &self[(i, l)] * &rhs[(l, j)]).sum()
        }))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.debug_list().entries(self.row(i)).finish()?;
        }
        f.write_str("]")
    }
}
