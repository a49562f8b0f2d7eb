//! Dense row-major matrices over Gaussian rationals.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use super::{LinalgError, Rational, Scalar};

/// A column vector; matrices are built from and decomposed into these.
pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Places `columns` side by side in an `n × columns.len()` matrix.
    pub fn from_columns(n: usize, columns: &[Vector]) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(n, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(LinalgError::DimensionMismatch {
                    expected: n,
                    found: col.len(),
                });
            }
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::int(v)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
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

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn adjoint(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(c, r)] = self[(r, c)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.scale(r)).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        rhs: &Matrix,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Matrix, LinalgError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Stacks `self` on top of `lower`.
    pub fn vstack(&self, lower: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != lower.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: lower.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&lower.data);
        Ok(Matrix {
            rows: self.rows + lower.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    ///
    /// Pivots are chosen as the first nonzero entry at or below the current
    /// row; there is no magnitude-based pivoting since arithmetic is exact.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let inv = a[(row, col)].inv().expect("pivot is nonzero");
            for c in col..a.cols {
                a[(row, c)] = &a[(row, c)] * &inv;
            }
            for r in 0..a.rows {
                if r == row || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in col..a.cols {
                    let sub = &factor * &a[(row, c)];
                    a[(r, c)] -= &sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{v : self·v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[fc] = Scalar::one();
                for (prow, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(prow, fc)];
                }
                v
            })
            .collect()
    }

    /// The pivot columns of `self`, which form a basis of its column space.
    pub fn column_space_basis(&self) -> Vec<Vector> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Scalar::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// `A·B − B·A`.
    pub fn commutator(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.checked_mul(rhs)?.checked_sub(&rhs.checked_mul(self)?)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    /// Panics on a shape mismatch; use [`Matrix::checked_mul`] otherwise.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix shape mismatch")
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Hermitian inner product `⟨u, v⟩ = Σ conj(uᵢ)·vᵢ`.
pub fn inner(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).map(|(a, b)| &a.conj() * b).sum()
}

/// Gram–Schmidt without normalization: returns mutually orthogonal nonzero
/// vectors spanning the same space as `vectors`; dependent inputs are dropped.
pub fn orthogonal_basis(vectors: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            let coeff = &inner(u, &w) / &inner(u, u);
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= &(&coeff * ui);
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            out.push(w);
        }
    }
    out
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub fn int_vector(entries: &[i64]) -> Vector {
    entries.iter().map(|&v| Scalar::int(v)).collect()
}
