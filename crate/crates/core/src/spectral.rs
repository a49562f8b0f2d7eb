//! Conjugacy classes of finite-rank self-adjoint operators and their members
//! in spectral form.
//!
//! A class is fixed by its distinct nonzero eigenvalues `α₁..α_m` and the
//! dimensions `d₁..d_m` of the corresponding maximal eigenspaces. A member
//! is stored as the list of those eigenspaces, in class order; the kernel
//! is never stored.

use std::fmt;
use std::sync::Arc;

use num::Zero;
use thiserror::Error;

use crate::compat::is_compatible;
use crate::linalg::{sum_all, LinalgError, Matrix, Rational, Scalar, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("a class needs at least one eigenvalue")]
    NoEigenvalues,
    #[error("{alphas} eigenvalues but {dims} dimensions")]
    LengthMismatch { alphas: usize, dims: usize },
    #[error("eigenvalue {0} is zero")]
    ZeroEigenvalue(usize),
    #[error("eigenvalues {0} and {1} coincide")]
    RepeatedEigenvalue(usize, usize),
    #[error("eigenspace dimension {0} is zero")]
    ZeroDimension(usize),
    #[error("rank {k} exceeds ambient dimension {n}")]
    RankTooLarge { k: usize, n: usize },
    #[error("expected {expected} eigenspaces, got {found}")]
    EigenspaceCount { expected: usize, found: usize },
    #[error("eigenspace {index} has dimension {found}, class requires {expected}")]
    EigenspaceDim {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("eigenspaces {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("operators belong to different ambient spaces")]
    AmbientMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The conjugacy class `(α, d)` in ℂⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassDescriptor {
    n: usize,
    alphas: Vec<Rational>,
    dims: Vec<usize>,
}

impl ClassDescriptor {
    pub fn new(n: usize, alphas: Vec<Rational>, dims: Vec<usize>) -> Result<Self, ClassError> {
        if alphas.is_empty() {
            return Err(ClassError::NoEigenvalues);
        }
        if alphas.len() != dims.len() {
            return Err(ClassError::LengthMismatch {
                alphas: alphas.len(),
                dims: dims.len(),
            });
        }
        for (i, a) in alphas.iter().enumerate() {
            if a.is_zero() {
                return Err(ClassError::ZeroEigenvalue(i));
            }
            if let Some(j) = alphas[..i].iter().position(|b| b == a) {
                return Err(ClassError::RepeatedEigenvalue(j, i));
            }
        }
        if let Some(i) = dims.iter().position(|&d| d == 0) {
            return Err(ClassError::ZeroDimension(i));
        }
        let k: usize = dims.iter().sum();
        if k > n {
            return Err(ClassError::RankTooLarge { k, n });
        }
        Ok(ClassDescriptor { n, alphas, dims })
    }

    /// Class with eigenvalues `1, 2, …, m` for the given dimensions.
    pub fn with_dims(n: usize, dims: &[usize]) -> Result<Self, ClassError> {
        let alphas = (1..=dims.len() as i64)
            .map(|a| Rational::from_integer(a.into()))
            .collect();
        ClassDescriptor::new(n, alphas, dims.to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of distinct nonzero eigenvalues.
    pub fn m(&self) -> usize {
        self.alphas.len()
    }

    /// Rank `k = Σ dᵢ` of every member.
    pub fn rank(&self) -> usize {
        self.dims.iter().sum()
    }

    /// True iff all eigenspace dimensions are pairwise distinct. This is
    /// informational; nothing refuses to work when it is false.
    pub fn distinct_dims(&self) -> bool {
        self.dims
            .iter()
            .enumerate()
            .all(|(i, d)| !self.dims[..i].contains(d))
    }

    /// The class consists of rank-k projections (single eigenvalue 1).
    pub fn is_projection_class(&self) -> bool {
        self.m() == 1 && self.alphas[0] == Rational::from_integer(1.into())
    }

    pub fn with_ambient(&self, n: usize) -> Result<Self, ClassError> {
        ClassDescriptor::new(n, self.alphas.clone(), self.dims.clone())
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphas: Vec<String> = self.alphas.iter().map(ToString::to_string).collect();
        write!(f, "n={} α={{{}}} d={:?}", self.n, alphas.join(","), self.dims)
    }
}

/// `A = Σ αᵢ P_{Xᵢ}` with `Xᵢ` the maximal eigenspace for `αᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpectralOperator {
    class: Arc<ClassDescriptor>,
    eigenspaces: Vec<Subspace>,
}

impl SpectralOperator {
    pub fn new(class: Arc<ClassDescriptor>, eigenspaces: Vec<Subspace>) -> Result<Self, ClassError> {
        if eigenspaces.len() != class.m() {
            return Err(ClassError::EigenspaceCount {
                expected: class.m(),
                found: eigenspaces.len(),
            });
        }
        for (i, x) in eigenspaces.iter().enumerate() {
            if x.ambient_dim() != class.n() {
                return Err(ClassError::AmbientMismatch);
            }
            if x.dim() != class.dims()[i] {
                return Err(ClassError::EigenspaceDim {
                    index: i,
                    expected: class.dims()[i],
                    found: x.dim(),
                });
            }
        }
        for i in 0..eigenspaces.len() {
            for j in i + 1..eigenspaces.len() {
                if !eigenspaces[i].is_orthogonal_to(&eigenspaces[j])? {
                    return Err(ClassError::NotOrthogonal(i, j));
                }
            }
        }
        Ok(SpectralOperator { class, eigenspaces })
    }

    /// Builds an operator from spanning vectors of each eigenspace.
    pub fn from_spanning(
        class: Arc<ClassDescriptor>,
        spanning: &[Vec<Vector>],
    ) -> Result<Self, ClassError> {
        let n = class.n();
        let eigenspaces = spanning
            .iter()
            .map(|vs| Subspace::projection_of(n, vs))
            .collect::<Result<Vec<_>, _>>()?;
        SpectralOperator::new(class, eigenspaces)
    }

    pub fn class(&self) -> &ClassDescriptor {
        &self.class
    }

    pub fn class_arc(&self) -> &Arc<ClassDescriptor> {
        &self.class
    }

    pub fn n(&self) -> usize {
        self.class.n()
    }

    pub fn eigenspaces(&self) -> &[Subspace] {
        &self.eigenspaces
    }

    /// `(αᵢ, Xᵢ)` pairs in class order.
    pub fn spectrum(&self) -> impl Iterator<Item = (&Rational, &Subspace)> {
        self.class.alphas().iter().zip(&self.eigenspaces)
    }

    pub fn materialize(&self) -> Matrix {
        let n = self.n();
        self.spectrum().fold(Matrix::zeros(n, n), |acc, (a, x)| {
            &acc + &x.proj().scale_rational(a)
        })
    }

    pub fn image(&self) -> Subspace {
        sum_all(self.n(), &self.eigenspaces).expect("eigenspaces share the ambient space")
    }

    fn check_ambient(&self, other: &SpectralOperator) -> Result<(), ClassError> {
        if self.n() != other.n() {
            return Err(ClassError::AmbientMismatch);
        }
        Ok(())
    }

    /// `AB = BA`, decided eigenspace by eigenspace: every `Xᵢ` compatible with
    /// every `Yⱼ`.
    pub fn commutes(&self, other: &SpectralOperator) -> Result<bool, ClassError> {
        self.check_ambient(other)?;
        for x in &self.eigenspaces {
            for y in &other.eigenspaces {
                if !is_compatible(x, y)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `AB = BA = 0`, i.e. the images are orthogonal.
    pub fn orthogonal(&self, other: &SpectralOperator) -> Result<bool, ClassError> {
        self.check_ambient(other)?;
        Ok(self.image().is_orthogonal_to(&other.image())?)
    }

    /// Hilbert–Schmidt pairing `tr(AB) = Σᵢⱼ αᵢ βⱼ tr(P_{Xᵢ} P_{Yⱼ})`.
    pub fn hs_inner(&self, other: &SpectralOperator) -> Result<Rational, ClassError> {
        self.check_ambient(other)?;
        let mut total = Scalar::zero();
        for (a, x) in self.spectrum() {
            for (b, y) in other.spectrum() {
                let t = (x.proj() * y.proj()).trace();
                total += &t.scale(&(a * b));
            }
        }
        debug_assert!(total.is_real());
        Ok(total.re)
    }

    /// Index of the eigenspace equal to `y`, if `y` is one.
    pub fn eigenspace_index(&self, y: &Subspace) -> Option<usize> {
        self.eigenspaces.iter().position(|x| x == y)
    }

    /// `U A U*` for a unitary `U`: every eigenspace is mapped through `U`.
    pub fn conjugate_by(&self, u: &Matrix) -> Result<SpectralOperator, ClassError> {
        let eigenspaces = self
            .eigenspaces
            .iter()
            .map(|x| x.transform(u))
            .collect::<Result<Vec<_>, _>>()?;
        SpectralOperator::new(self.class.clone(), eigenspaces)
    }
}

impl fmt::Display for SpectralOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, x)) in self.spectrum().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{a}·P[{x}]")?;
        }
        Ok(())
    }
}
