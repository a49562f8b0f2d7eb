//! Compatibility of subspaces and the refinement of a compatible family
//! into a common orthogonal frame.
//!
//! Two subspaces `X`, `Y` are compatible when `(X∩Y)^⟂∩X` and `(X∩Y)^⟂∩Y`
//! are orthogonal; equivalently their projections commute. A pairwise
//! compatible family of subspaces of ℂⁿ always sits inside one orthogonal
//! apartment, and [`refine_to_frame`] finds such a frame.

use thiserror::Error;

use crate::linalg::{orthogonal_basis, sum_all, unit_vector, LinalgError, Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompatError {
    #[error("family members {first} and {second} are not compatible")]
    IncompatibleFamily { first: usize, second: usize },
    #[error("frame line {0} is not one-dimensional")]
    NotALine(usize),
    #[error("frame lines {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("a frame of ℂ^{n} needs {n} lines, got {found}")]
    WrongLineCount { n: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Compatibility by definition: `(X∩Y)^⟂∩X ⟂ (X∩Y)^⟂∩Y`.
pub fn is_compatible(x: &Subspace, y: &Subspace) -> Result<bool, LinalgError> {
    let meet = x.intersect(y)?;
    let x_rest = meet.complement_within(x)?;
    let y_rest = meet.complement_within(y)?;
    x_rest.is_orthogonal_to(&y_rest)
}

/// `n` mutually orthogonal lines spanning ℂⁿ: an orthogonal basis recorded
/// up to scalars. Frames compare by their lines.
#[derive(Clone, Debug)]
pub struct Frame {
    lines: Vec<Subspace>,
    vectors: Vec<Vector>,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.lines == other.lines
    }
}

impl Eq for Frame {}

impl Frame {
    pub fn standard(n: usize) -> Self {
        let vectors: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        let lines = (0..n).map(|i| Subspace::coordinate(n, &[i])).collect();
        Frame { lines, vectors }
    }

    /// Builds a frame from `n` pairwise orthogonal nonzero vectors of ℂⁿ.
    pub fn from_vectors(vectors: Vec<Vector>) -> Result<Self, CompatError> {
        let n = vectors.len();
        let lines = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.len() != n {
                    return Err(CompatError::WrongLineCount { n: v.len(), found: n });
                }
                Subspace::line(v).map_err(|_| CompatError::NotALine(i))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let frame = Frame { lines, vectors };
        frame.validate()?;
        Ok(frame)
    }

    fn validate(&self) -> Result<(), CompatError> {
        let n = self.lines.len();
        for (i, l) in self.lines.iter().enumerate() {
            if l.ambient_dim() != n {
                return Err(CompatError::WrongLineCount {
                    n: l.ambient_dim(),
                    found: n,
                });
            }
            if l.dim() != 1 {
                return Err(CompatError::NotALine(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if !self.lines[i].is_orthogonal_to(&self.lines[j])? {
                    return Err(CompatError::NotOrthogonal(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Subspace] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &Subspace {
        &self.lines[i]
    }

    /// A spanning vector for each line (orthogonal, not normalized).
    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// `span(line_i : i ∈ indices)`.
    pub fn span_of(&self, indices: impl IntoIterator<Item = usize>) -> Subspace {
        // frame lines are orthogonal, so their projections simply add up
        let n = self.ambient_dim();
        let proj = indices
            .into_iter()
            .fold(Matrix::zeros(n, n), |acc, i| &acc + self.lines[i].proj());
        Subspace::from_projection_unchecked(proj)
    }

    /// Indices of the frame lines contained in `x`.
    pub fn lines_within(&self, x: &Subspace) -> Result<Vec<usize>, LinalgError> {
        let mut out = Vec::new();
        for (i, v) in self.vectors.iter().enumerate() {
            if x.contains_vector(v)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// If `x` is spanned by frame lines, returns those line indices.
    pub fn decompose(&self, x: &Subspace) -> Result<Option<Vec<usize>>, LinalgError> {
        let within = self.lines_within(x)?;
        Ok((within.len() == x.dim()).then_some(within))
    }
}

/// Finds a frame such that every member of `family` is the sum of the frame
/// lines it contains.
///
/// Keeps a partition of ℂⁿ into mutually orthogonal blocks, starting from
/// the whole space. Whenever a family member `X` meets a block `Y` in a
/// proper nonzero subspace, `Y` is replaced by `Y∩X` and `(Y∩X)^⟂∩Y`. Once
/// no block can be split, each block is cut into orthogonal lines by
/// Gram–Schmidt on a basis of the block. Scan order is family order, then
/// block order, so the result is deterministic.
///
/// Zero members are ignored and duplicates are dropped. Reports the first
/// incompatible pair (by original index) if the family is not compatible.
pub fn refine_to_frame(n: usize, family: &[Subspace]) -> Result<Frame, CompatError> {
    if n == 0 {
        return Err(LinalgError::EmptyAmbient.into());
    }
    let mut members: Vec<(usize, &Subspace)> = Vec::new();
    for (idx, x) in family.iter().enumerate() {
        if x.ambient_dim() != n {
            return Err(LinalgError::AmbientMismatch {
                left: n,
                right: x.ambient_dim(),
            }
            .into());
        }
        if x.is_zero() || members.iter().any(|(_, m)| *m == x) {
            continue;
        }
        members.push((idx, x));
    }
    for (a, &(ia, x)) in members.iter().enumerate() {
        for &(ib, y) in &members[a + 1..] {
            if !is_compatible(x, y)? {
                return Err(CompatError::IncompatibleFamily {
                    first: ia,
                    second: ib,
                });
            }
        }
    }

    let mut blocks = vec![Subspace::full(n)];
    loop {
        let mut split = None;
        'scan: for (_, x) in &members {
            for (b, y) in blocks.iter().enumerate() {
                let meet = y.intersect(x)?;
                if !meet.is_zero() && meet != *y {
                    split = Some((b, meet));
                    break 'scan;
                }
            }
        }
        let Some((b, meet)) = split else { break };
        let rest = meet.complement_within(&blocks[b])?;
        blocks[b] = meet;
        blocks.insert(b + 1, rest);
    }

    let vectors: Vec<Vector> = blocks
        .iter()
        .flat_map(|block| orthogonal_basis(&block.basis()))
        .collect();
    Frame::from_vectors(vectors)
}

/// Checks that `x` equals the sum of the frame lines it contains.
pub fn is_sum_of_lines(frame: &Frame, x: &Subspace) -> Result<bool, LinalgError> {
    let within = frame.lines_within(x)?;
    Ok(sum_all(frame.ambient_dim(), within.iter().map(|&i| frame.line(i)))? == *x)
}
