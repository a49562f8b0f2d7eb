//! JSON file formats.
//!
//! Scalars are strings in `p/q` or `p/q+r/s i` form. Vectors are arrays of
//! scalars, matrices are row-major arrays of vectors.
//!
//! * class: `{"n": 4, "alphas": ["1", "2"], "dims": [1, 1]}`
//! * operator: `{"class": {..}, "eigenspaces": [[v, ..], ..]}` with one
//!   list of spanning vectors per eigenvalue, in class order
//! * family: `[[v, ..], ..]`, or `{"n": 3, "family": [..]}` when the
//!   family may be empty
//! * frame: `{"schema_version": 1, "n": 2, "lines": [v, v]}`
//! * member set: `{"class": {..}, "members": [[null, 0, 1, ..], ..]}`, one
//!   slot (or `null` for kernel lines) per frame line

use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::apartment::Labeling;
use crate::compat::{CompatError, Frame};
use crate::linalg::{LinalgError, Matrix, Rational, Scalar, Subspace, Vector};
use crate::spectral::{ClassDescriptor, ClassError, SpectralOperator};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("eigenvalue {0} is not real")]
    ComplexEigenvalue(String),
    #[error("cannot infer the ambient dimension of an empty family")]
    UnknownAmbient,
    #[error("vector {index} has length {found}, expected {expected}")]
    VectorLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Compat(#[from] CompatError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub n: usize,
    pub alphas: Vec<Scalar>,
    pub dims: Vec<usize>,
}

impl ClassJson {
    pub fn to_class(&self) -> Result<ClassDescriptor, IoError> {
        let alphas = self
            .alphas
            .iter()
            .map(|a| {
                if a.is_real() {
                    Ok(a.re.clone())
                } else {
                    Err(IoError::ComplexEigenvalue(a.to_string()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ClassDescriptor::new(self.n, alphas, self.dims.clone())?)
    }
}

impl From<&ClassDescriptor> for ClassJson {
    fn from(c: &ClassDescriptor) -> Self {
        ClassJson {
            n: c.n(),
            alphas: c.alphas().iter().cloned().map(Scalar::real).collect(),
            dims: c.dims().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub class: ClassJson,
    pub eigenspaces: Vec<Vec<Vector>>,
}

impl OperatorJson {
    pub fn to_operator(&self) -> Result<SpectralOperator, IoError> {
        let class = Arc::new(self.class.to_class()?);
        Ok(SpectralOperator::from_spanning(class, &self.eigenspaces)?)
    }
}

impl From<&SpectralOperator> for OperatorJson {
    fn from(op: &SpectralOperator) -> Self {
        OperatorJson {
            class: op.class().into(),
            eigenspaces: op.eigenspaces().iter().map(Subspace::basis).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyJson {
    Sized { n: usize, family: Vec<Vec<Vector>> },
    Bare(Vec<Vec<Vector>>),
}

impl FamilyJson {
    /// Ambient dimension and the subspaces of the family.
    pub fn to_family(&self) -> Result<(usize, Vec<Subspace>), IoError> {
        let (n, family) = match self {
            FamilyJson::Sized { n, family } => (*n, family),
            FamilyJson::Bare(family) => {
                let n = family
                    .iter()
                    .flatten()
                    .map(Vec::len)
                    .next()
                    .ok_or(IoError::UnknownAmbient)?;
                (n, family)
            }
        };
        let subspaces = family
            .iter()
            .map(|vs| Subspace::projection_of(n, vs))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((n, subspaces))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameJson {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub n: usize,
    pub lines: Vec<Vector>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

impl FrameJson {
    pub fn to_frame(&self) -> Result<Frame, IoError> {
        if let Some((index, v)) = self.lines.iter().enumerate().find(|(_, v)| v.len() != self.n) {
            return Err(IoError::VectorLength {
                index,
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(Frame::from_vectors(self.lines.clone())?)
    }
}

impl From<&Frame> for FrameJson {
    fn from(f: &Frame) -> Self {
        FrameJson {
            schema_version: SCHEMA_VERSION,
            n: f.ambient_dim(),
            lines: f.vectors().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberSetJson {
    pub class: ClassJson,
    pub members: Vec<Vec<Option<usize>>>,
}

impl MemberSetJson {
    pub fn labelings(&self) -> Vec<Labeling> {
        self.members.iter().map(|m| Labeling::from_slots(m)).collect()
    }
}

pub fn labeling_json(l: &Labeling) -> Vec<Option<usize>> {
    l.slots()
}

pub fn matrix_json(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.to_rows()
}

pub fn matrix_from_json(rows: Vec<Vec<Scalar>>) -> Result<Matrix, IoError> {
    Ok(Matrix::from_rows(rows)?)
}
