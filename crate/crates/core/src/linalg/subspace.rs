use std::fmt;

use super::{LinalgError, Matrix, Scalar, Vector};

/// A linear subspace of ℂⁿ, stored as its orthogonal projection matrix.
///
/// The projection is unique, so structural equality of two `Subspace`
/// values is equality of the subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    proj: Matrix,
}

impl Subspace {
    /// The projection onto `span(vectors)` inside ℂⁿ.
    ///
    /// Computed as `V (V*V)⁻¹ V*` on a column basis `V` of the span, which
    /// stays rational for rational input.
    pub fn projection_of(n: usize, vectors: &[Vector]) -> Result<Self, LinalgError> {
        if n == 0 {
            return Err(LinalgError::EmptyAmbient);
        }
        let spanning = Matrix::from_columns(n, vectors)?;
        let basis = spanning.column_space_basis();
        if basis.is_empty() {
            return Ok(Subspace::zero(n));
        }
        let v = Matrix::from_columns(n, &basis)?;
        let v_adj = v.adjoint();
        let gram_inv = (&v_adj * &v)
            .inverse()
            .expect("Gram matrix of independent columns is invertible");
        Ok(Subspace {
            proj: &(&v * &gram_inv) * &v_adj,
        })
    }

    /// Wraps a matrix after checking that it is an orthogonal projection.
    /// Wraps a matrix already known to be an orthogonal projection.
    pub(crate) fn from_projection_unchecked(proj: Matrix) -> Self {
        Subspace { proj }
    }

    pub fn from_projection(proj: Matrix) -> Result<Self, LinalgError> {
        if !proj.is_square() || proj.rows() == 0 {
            return Err(LinalgError::NotAProjection);
        }
        if !proj.is_hermitian() || &proj * &proj != proj {
            return Err(LinalgError::NotAProjection);
        }
        Ok(Subspace { proj })
    }

    pub fn zero(n: usize) -> Self {
        Subspace {
            proj: Matrix::zeros(n, n),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            proj: Matrix::identity(n),
        }
    }

    pub fn line(v: &[Scalar]) -> Result<Self, LinalgError> {
        let s = Subspace::projection_of(v.len(), &[v.to_vec()])?;
        if s.dim() != 1 {
            return Err(LinalgError::ZeroVector);
        }
        Ok(s)
    }

    /// `span(e_i : i ∈ indices)` in ℂⁿ.
    pub fn coordinate(n: usize, indices: &[usize]) -> Self {
        let mut proj = Matrix::zeros(n, n);
        for &i in indices {
            proj[(i, i)] = Scalar::one();
        }
        Subspace { proj }
    }

    pub fn proj(&self) -> &Matrix {
        &self.proj
    }

    pub fn ambient_dim(&self) -> usize {
        self.proj.rows()
    }

    /// `trace(P)`, which equals `rank(P)` for a projection.
    pub fn dim(&self) -> usize {
        let t = self.proj.trace();
        debug_assert!(t.is_real() && t.re.is_integer());
        t.re.to_integer().try_into().expect("trace of a projection is a small nonnegative integer")
    }

    pub fn is_zero(&self) -> bool {
        self.proj.is_zero()
    }

    /// A basis drawn from the columns of the projection.
    pub fn basis(&self) -> Vec<Vector> {
        self.proj.column_space_basis()
    }

    /// Some nonzero vector of the subspace, if any.
    pub fn representative(&self) -> Option<Vector> {
        self.basis().into_iter().next()
    }

    fn check_same(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        Ok(())
    }

    fn from_kernel(n: usize, stacked: &Matrix) -> Result<Self, LinalgError> {
        Subspace::projection_of(n, &stacked.kernel())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same(other)?;
        let n = self.ambient_dim();
        let id = Matrix::identity(n);
        let stacked = (&id - &self.proj).vstack(&(&id - &other.proj))?;
        Subspace::from_kernel(n, &stacked)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same(other)?;
        let mut vectors = self.basis();
        vectors.extend(other.basis());
        Subspace::projection_of(self.ambient_dim(), &vectors)
    }

    /// `X^⟂ ∩ Y` for `X = self`.
    pub fn complement_within(&self, y: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same(y)?;
        let n = self.ambient_dim();
        let stacked = self.proj.vstack(&(&Matrix::identity(n) - &y.proj))?;
        Subspace::from_kernel(n, &stacked)
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        let n = self.ambient_dim();
        Subspace {
            proj: &Matrix::identity(n) - &self.proj,
        }
    }

    /// `P_X P_Y = 0`.
    pub fn is_orthogonal_to(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_same(other)?;
        Ok((&self.proj * &other.proj).is_zero())
    }

    /// `other ⊆ self`, i.e. `P_X P_Y = P_Y`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_same(other)?;
        Ok(&self.proj * &other.proj == other.proj)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        Ok(self.proj.apply(v)? == v)
    }

    /// The image `U(X)` under an invertible matrix `U`.
    pub fn transform(&self, u: &Matrix) -> Result<Subspace, LinalgError> {
        if u.rows() != self.ambient_dim() || u.cols() != self.ambient_dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: u.rows(),
            });
        }
        let images = self
            .basis()
            .iter()
            .map(|v| u.apply(v))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::projection_of(self.ambient_dim(), &images)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.basis().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}} ⊂ ℂ^{}", self.ambient_dim())
    }
}

/// Sum of an arbitrary collection of subspaces of ℂⁿ.
pub fn sum_all<'a>(n: usize, parts: impl IntoIterator<Item = &'a Subspace>) -> Result<Subspace, LinalgError> {
    let mut vectors = Vec::new();
    for p in parts {
        if p.ambient_dim() != n {
            return Err(LinalgError::AmbientMismatch {
                left: n,
                right: p.ambient_dim(),
            });
        }
        vectors.extend(p.basis());
    }
    Subspace::projection_of(n, &vectors)
}
