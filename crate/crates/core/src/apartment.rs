//! Orthogonal apartments of a conjugacy class and the combinatorics of
//! orthocomplementary subsets.
//!
//! An apartment is determined by a frame (an orthogonal basis up to scalars)
//! and consists of the class members whose eigenspaces are spanned by frame
//! lines. Such a member is recorded as a [`Labeling`]: for each frame line,
//! the eigenvalue slot it belongs to, or nothing when the line lies in the
//! kernel. All the subset predicates and counts here are label comparisons.

use std::fmt;
use std::sync::Arc;

use num::{BigUint, One};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compat::{CompatError, Frame};
use crate::linalg::{LinalgError, Rational, Scalar, Subspace, Vector};
use crate::spectral::{ClassDescriptor, ClassError, SpectralOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApartmentError {
    #[error("frame index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("a pair needs two distinct indices, got {0} twice")]
    SameIndex(usize),
    #[error("labeling is not a member of the apartment: {0}")]
    NotAMember(String),
    #[error("n = {n} < 4k = {} : counting does not characterize orthogonality", 4 * k)]
    ThresholdViolation { n: usize, k: usize },
    #[error("arguments out of range: need 0 ≤ m ≤ k ≤ n, got k={k}, m={m}, n={n}")]
    ArgumentRange { k: usize, m: usize, n: usize },
    #[error("frame has {frame} lines but the class lives in ℂ^{class}")]
    AmbientMismatch { frame: usize, class: usize },
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Compat(#[from] CompatError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// An unordered pair `{i, j}` of distinct frame indices, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairIndex {
    i: usize,
    j: usize,
}

impl PairIndex {
    pub fn new(i: usize, j: usize) -> Result<Self, ApartmentError> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Ok(PairIndex { i, j }),
            std::cmp::Ordering::Greater => Ok(PairIndex { i: j, j: i }),
            std::cmp::Ordering::Equal => Err(ApartmentError::SameIndex(i)),
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// All `n(n−1)/2` pairs in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = PairIndex> {
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| PairIndex { i, j }))
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.i, self.j)
    }
}

/// Slot assignment of the frame lines: `code[i] = 0` when line `i` is in the
/// kernel, `t + 1` when it lies in the eigenspace of slot `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    codes: Vec<u8>,
}

impl Labeling {
    pub fn from_slots(slots: &[Option<usize>]) -> Self {
        let codes = slots
            .iter()
            .map(|s| match s {
                None => 0,
                Some(t) => u8::try_from(*t + 1).expect("at most 254 eigenvalue slots"),
            })
            .collect();
        Labeling { codes }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn slot(&self, i: usize) -> Option<usize> {
        match self.codes[i] {
            0 => None,
            c => Some(c as usize - 1),
        }
    }

    pub fn slots(&self) -> Vec<Option<usize>> {
        (0..self.len()).map(|i| self.slot(i)).collect()
    }

    /// Frame indices in the eigenspace of `slot`.
    pub fn slot_indices(&self, slot: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.slot(i) == Some(slot)).collect()
    }

    /// Frame indices spanning the image.
    pub fn image_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.codes[i] != 0).collect()
    }

    /// `dim(Im A ∩ Im B)`: number of lines labeled by both.
    pub fn overlap(&self, other: &Labeling) -> usize {
        self.codes
            .iter()
            .zip(&other.codes)
            .filter(|(a, b)| **a != 0 && **b != 0)
            .count()
    }

    pub fn is_orthogonal_to(&self, other: &Labeling) -> bool {
        self.overlap(other) == 0
    }

    fn check(&self, i: usize) -> Result<(), ApartmentError> {
        if i >= self.len() {
            return Err(ApartmentError::IndexOutOfRange { index: i, n: self.len() });
        }
        Ok(())
    }

    fn check_pair(&self, p: PairIndex) -> Result<(), ApartmentError> {
        self.check(p.i)?;
        self.check(p.j)
    }

    /// `𝒜(+i,+j)`: some eigenspace contains both `eᵢ` and `eⱼ`.
    pub fn in_plus_plus(&self, p: PairIndex) -> Result<bool, ApartmentError> {
        self.check_pair(p)?;
        Ok(self.codes[p.i] != 0 && self.codes[p.i] == self.codes[p.j])
    }

    /// `𝒜(−i,−j)`: the image is orthogonal to `span(eᵢ, eⱼ)`.
    pub fn in_minus_minus(&self, p: PairIndex) -> Result<bool, ApartmentError> {
        self.check_pair(p)?;
        Ok(self.codes[p.i] == 0 && self.codes[p.j] == 0)
    }

    /// `𝒜(+i,−j)`: some eigenspace contains `eᵢ` but not `eⱼ`. Ordered in
    /// `i`, `j`.
    pub fn in_plus_minus(&self, i: usize, j: usize) -> Result<bool, ApartmentError> {
        self.check(i)?;
        self.check(j)?;
        Ok(plus_minus(self.codes[i], self.codes[j]))
    }

    /// Membership in the orthocomplementary subset `C_ij = 𝒜(+i,−j) ∪ 𝒜(+j,−i)`.
    pub fn in_orthocomplementary(&self, p: PairIndex) -> Result<bool, ApartmentError> {
        self.check_pair(p)?;
        Ok(self.in_c(p))
    }

    #[inline]
    fn in_c(&self, p: PairIndex) -> bool {
        let (a, b) = (self.codes[p.i], self.codes[p.j]);
        plus_minus(a, b) || plus_minus(b, a)
    }

    /// Eigenspaces equal: same slot on both lines (kernel included).
    #[inline]
    fn agrees(&self, i: usize, j: usize) -> bool {
        self.codes[i] == self.codes[j]
    }
}

#[inline]
fn plus_minus(a: u8, b: u8) -> bool {
    a != 0 && a != b
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.codes.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match c {
                0 => write!(f, "·")?,
                c => write!(f, "{}", c - 1)?,
            }
        }
        write!(f, "]")
    }
}

/// Members of an apartment in lexicographic order of their codes, produced
/// by stepping through the permutations of one multiset.
pub struct Members {
    next: Option<Vec<u8>>,
}

impl Iterator for Members {
    type Item = Labeling;

    fn next(&mut self) -> Option<Labeling> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Labeling { codes: current })
    }
}

/// Advances to the lexicographically next arrangement; false at the last one.
fn next_permutation(v: &mut [u8]) -> bool {
    let Some(pivot) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]).map(|i| i - 1) else {
        return false;
    };
    let succ = (pivot + 1..v.len())
        .rev()
        .find(|&i| v[i] > v[pivot])
        .expect("a larger element exists right of the pivot");
    v.swap(pivot, succ);
    v[pivot + 1..].reverse();
    true
}

/// The orthogonal apartment of a class defined by a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Apartment {
    frame: Frame,
    class: Arc<ClassDescriptor>,
}

impl Apartment {
    pub fn new(frame: Frame, class: Arc<ClassDescriptor>) -> Result<Self, ApartmentError> {
        if frame.ambient_dim() != class.n() {
            return Err(ApartmentError::AmbientMismatch {
                frame: frame.ambient_dim(),
                class: class.n(),
            });
        }
        Ok(Apartment { frame, class })
    }

    /// The apartment of the standard coordinate frame.
    pub fn standard(class: Arc<ClassDescriptor>) -> Self {
        Apartment {
            frame: Frame::standard(class.n()),
            class,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn class(&self) -> &Arc<ClassDescriptor> {
        &self.class
    }

    pub fn n(&self) -> usize {
        self.class.n()
    }

    pub fn k(&self) -> usize {
        self.class.rank()
    }

    /// `n! / (d₁!···d_m!·(n−k)!)`.
    pub fn member_count(&self) -> BigUint {
        let mut remaining = self.n();
        let mut total = BigUint::one();
        for &d in self.class.dims() {
            total *= binomial(remaining, d);
            remaining -= d;
        }
        total
    }

    pub fn members(&self) -> Members {
        let mut codes = vec![0u8; self.n() - self.k()];
        for (t, &d) in self.class.dims().iter().enumerate() {
            codes.extend(std::iter::repeat_n(t as u8 + 1, d));
        }
        Members { next: Some(codes) }
    }

    pub fn check_member(&self, l: &Labeling) -> Result<(), ApartmentError> {
        if l.len() != self.n() {
            return Err(ApartmentError::NotAMember(format!(
                "labeling has length {}, apartment has n = {}",
                l.len(),
                self.n()
            )));
        }
        let mut counts = vec![0usize; self.class.m()];
        for i in 0..l.len() {
            if let Some(t) = l.slot(i) {
                if t >= counts.len() {
                    return Err(ApartmentError::NotAMember(format!("slot {t} at line {i} does not exist")));
                }
                counts[t] += 1;
            }
        }
        if counts != self.class.dims() {
            return Err(ApartmentError::NotAMember(format!(
                "slot sizes {counts:?} differ from class dimensions {:?}",
                self.class.dims()
            )));
        }
        Ok(())
    }

    /// The operator encoded by a member labeling.
    pub fn operator(&self, l: &Labeling) -> Result<SpectralOperator, ApartmentError> {
        self.check_member(l)?;
        let eigenspaces = (0..self.class.m())
            .map(|t| self.frame.span_of(l.slot_indices(t)))
            .collect();
        Ok(SpectralOperator::new(self.class.clone(), eigenspaces)?)
    }

    /// The labeling of `op` if it belongs to this apartment.
    pub fn labeling_of(&self, op: &SpectralOperator) -> Result<Option<Labeling>, ApartmentError> {
        if op.class() != &*self.class {
            return Err(ApartmentError::NotAMember(format!("operator belongs to class {}", op.class())));
        }
        let mut slots = vec![None; self.n()];
        for (t, x) in op.eigenspaces().iter().enumerate() {
            let Some(lines) = self.frame.decompose(x)? else {
                return Ok(None);
            };
            for i in lines {
                slots[i] = Some(t);
            }
        }
        Ok(Some(Labeling::from_slots(&slots)))
    }

    /// The apartment of the frame with lines `i`, `j` replaced by two
    /// orthogonal lines of their span that are neither of them.
    ///
    /// For frame vectors `vᵢ`, `vⱼ` the new lines are spanned by `vᵢ + vⱼ`
    /// and `|vⱼ|² vᵢ − |vᵢ|² vⱼ`, which for a standard frame are `eᵢ ± eⱼ`.
    pub fn rotated(&self, p: PairIndex) -> Result<Apartment, ApartmentError> {
        let n = self.n();
        if p.j >= n {
            return Err(ApartmentError::IndexOutOfRange { index: p.j, n });
        }
        let mut vectors: Vec<Vector> = self.frame.vectors().to_vec();
        let (vi, vj) = (&vectors[p.i], &vectors[p.j]);
        let ni = Scalar::real(vi.iter().map(Scalar::norm_sqr).sum::<Rational>());
        let nj = Scalar::real(vj.iter().map(Scalar::norm_sqr).sum::<Rational>());
        let plus: Vector = vi.iter().zip(vj).map(|(a, b)| a + b).collect();
        let minus: Vector = vi.iter().zip(vj).map(|(a, b)| &(&nj * a) - &(&ni * b)).collect();
        vectors[p.i] = plus;
        vectors[p.j] = minus;
        Apartment::new(Frame::from_vectors(vectors)?, self.class.clone())
    }

    /// `n_𝒜(A, B)`: the number of orthocomplementary subsets `C_ij`
    /// containing both members.
    pub fn n_count(&self, a: &Labeling, b: &Labeling) -> Result<u64, ApartmentError> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(n_count_unchecked(a, b))
    }

    /// Decides orthogonality of two members from `n_𝒜(A, B) = k²`; only
    /// valid when `n ≥ 4k`.
    pub fn decide_orthogonality_by_count(&self, a: &Labeling, b: &Labeling) -> Result<bool, ApartmentError> {
        let (n, k) = (self.n(), self.k());
        if n < 4 * k {
            return Err(ApartmentError::ThresholdViolation { n, k });
        }
        Ok(self.n_count(a, b)? == (k * k) as u64)
    }

    /// The type-(+,+)/(−,−) set `𝒜(+i,+j) ∪ 𝒜(−i,−j)`.
    pub fn plus_plus_or_minus_minus(&self, p: PairIndex) -> Result<Vec<Labeling>, ApartmentError> {
        if p.j >= self.n() {
            return Err(ApartmentError::IndexOutOfRange { index: p.j, n: self.n() });
        }
        Ok(self.members().filter(|l| l.agrees(p.i, p.j)).collect())
    }

    /// `S_i`, computed as an intersection of subspaces: every eigenspace of a
    /// member of `set` that contains line `i`, and `Im(A)^⟂` for every member
    /// `A` whose image is orthogonal to line `i`.
    pub fn compute_s(&self, i: usize, set: &[Labeling]) -> Result<Subspace, ApartmentError> {
        if i >= self.n() {
            return Err(ApartmentError::IndexOutOfRange { index: i, n: self.n() });
        }
        let mut s = Subspace::full(self.n());
        for a in set {
            self.check_member(a)?;
            let x = match a.slot(i) {
                Some(t) => self.frame.span_of(a.slot_indices(t)),
                None => self.frame.span_of(a.image_indices()).orthogonal_complement(),
            };
            s = s.intersect(&x)?;
        }
        Ok(s)
    }

    /// The frame lines spanning `S_i`: indices `j` carrying the same label as
    /// `i` in every member of `set`.
    pub fn s_indices(&self, i: usize, set: &[Labeling]) -> Result<Vec<usize>, ApartmentError> {
        if i >= self.n() {
            return Err(ApartmentError::IndexOutOfRange { index: i, n: self.n() });
        }
        for a in set {
            self.check_member(a)?;
        }
        Ok((0..self.n()).filter(|&j| set.iter().all(|a| a.agrees(i, j))).collect())
    }

    /// Decides whether `set` lies in some other apartment.
    ///
    /// The set is inexact iff some `S_i` has dimension at least two. Returns
    /// the witness pair `{i, j}` with `e_j ∈ S_i` (smallest such `i`, then `j`),
    /// for which `set ⊆ 𝒜(+i,+j) ∪ 𝒜(−i,−j)`; `None` when `𝒜` is the only
    /// apartment containing `set`.
    pub fn is_orthogonally_inexact(&self, set: &[Labeling]) -> Result<Option<PairIndex>, ApartmentError> {
        for a in set {
            self.check_member(a)?;
        }
        Ok(AgreementTable::new(self.n(), set).witness())
    }

    /// Checks that `𝒜(+i,+j) ∪ 𝒜(−i,−j)` is orthogonally inexact and that
    /// adding any other member makes it exact.
    pub fn verify_maximal_inexact(&self, p: PairIndex) -> Result<bool, ApartmentError> {
        let set = self.plus_plus_or_minus_minus(p)?;
        let table = AgreementTable::new(self.n(), &set);
        if table.witness().is_none() {
            return Ok(false);
        }
        Ok(self
            .members()
            .filter(|b| !b.agrees(p.i, p.j))
            .all(|b| table.with(&b).witness().is_none()))
    }
}

pub(crate) fn n_count_unchecked(a: &Labeling, b: &Labeling) -> u64 {
    PairIndex::all(a.len()).filter(|&p| a.in_c(p) && b.in_c(p)).count() as u64
}

/// `agree[i][j]` iff every member of a set gives lines `i` and `j` the same
/// label. Row `i` is then `S_i`.
struct AgreementTable {
    n: usize,
    agree: Vec<bool>,
}

impl AgreementTable {
    fn new(n: usize, set: &[Labeling]) -> Self {
        let mut agree = vec![true; n * n];
        for i in 0..n {
            for j in 0..n {
                agree[i * n + j] = set.iter().all(|a| a.agrees(i, j));
            }
        }
        AgreementTable { n, agree }
    }

    fn with(&self, extra: &Labeling) -> Self {
        let n = self.n;
        let agree = (0..n * n)
            .map(|idx| self.agree[idx] && extra.agrees(idx / n, idx % n))
            .collect();
        AgreementTable { n, agree }
    }

    fn witness(&self) -> Option<PairIndex> {
        let n = self.n;
        (0..n).find_map(|i| {
            (0..n)
                .find(|&j| j != i && self.agree[i * n + j])
                .map(|j| PairIndex::new(i, j).expect("i ≠ j"))
        })
    }
}

fn binomial(n: usize, r: usize) -> BigUint {
    (0..r).fold(BigUint::one(), |acc, t| acc * BigUint::from(n - t) / BigUint::from(t + 1))
}

/// The lower bound `(k−m)² + m(n−2k+m)` on `n_𝒜(A, B)` for members whose
/// images meet in dimension `m`.
pub fn lemma3_bound(k: usize, m: usize, n: usize) -> Result<i64, ApartmentError> {
    if !(m <= k && k <= n) {
        return Err(ApartmentError::ArgumentRange { k, m, n });
    }
    let (k, m, n) = (k as i64, m as i64, n as i64);
    Ok((k - m).pow(2) + m * (n - 2 * k + m))
}

/// `c(x) = 2x² − (4k−n)x + k²`.
pub fn c_eval(x: &Rational, k: usize, n: usize) -> Rational {
    let k = Rational::from_integer(k.into());
    let n = Rational::from_integer(n.into());
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    &two * x * x - (&four * &k - &n) * x + &k * &k
}

/// Where `c` attains its minimum: `(4k − n)/4`.
pub fn c_minimizer(k: usize, n: usize) -> Rational {
    Rational::new((4 * k as i64 - n as i64).into(), 4.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;

    fn ap(n: usize, dims: &[usize]) -> Apartment {
        Apartment::standard(Arc::new(ClassDescriptor::with_dims(n, dims).unwrap()))
    }

    fn lab(slots: &[Option<usize>]) -> Labeling {
        Labeling::from_slots(slots)
    }

    fn p(i: usize, j: usize) -> PairIndex {
        PairIndex::new(i, j).unwrap()
    }

    #[test]
    fn member_count_examples() {
        assert_eq!(ap(4, &[1, 1]).member_count(), BigUint::from(12u32));
        assert_eq!(ap(4, &[2]).member_count(), BigUint::from(6u32));
        assert_eq!(ap(3, &[3]).member_count(), BigUint::one());
        assert_eq!(ap(12, &[1, 2]).member_count(), BigUint::from(660u32));
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let two: Vec<_> = ap(2, &[1]).members().collect();
        assert_eq!(two, vec![lab(&[None, Some(0)]), lab(&[Some(0), None])]);

        let a = ap(4, &[1, 1]);
        let all: Vec<_> = a.members().collect();
        assert_eq!(all.len(), 12);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for l in &all {
            a.check_member(l).unwrap();
        }
    }

    #[test]
    fn pair_index_is_unordered() {
        assert_eq!(p(3, 1), p(1, 3));
        assert_eq!(PairIndex::new(2, 2), Err(ApartmentError::SameIndex(2)));
        assert_eq!(PairIndex::all(5).count(), 10);
    }

    #[test]
    fn subset_predicates() {
        let proj = lab(&[Some(0), Some(0), None]);
        assert!(proj.in_plus_plus(p(0, 1)).unwrap());
        assert!(!proj.in_plus_plus(p(0, 2)).unwrap());
        let two_slots = lab(&[Some(0), Some(1), None, None]);
        assert!(PairIndex::all(4).all(|q| !two_slots.in_plus_plus(q).unwrap()));

        assert!(two_slots.in_minus_minus(p(2, 3)).unwrap());
        assert!(!two_slots.in_minus_minus(p(1, 2)).unwrap());
        assert!(!two_slots.in_minus_minus(p(0, 1)).unwrap());

        assert!(two_slots.in_plus_minus(0, 1).unwrap());
        assert!(two_slots.in_plus_minus(0, 2).unwrap());
        assert!(!two_slots.in_plus_minus(2, 0).unwrap());

        assert!(two_slots.in_orthocomplementary(p(0, 1)).unwrap());
        assert!(!proj.in_orthocomplementary(p(0, 1)).unwrap());
        assert!(!two_slots.in_orthocomplementary(p(2, 3)).unwrap());

        assert!(matches!(
            two_slots.in_plus_plus(p(0, 4)),
            Err(ApartmentError::IndexOutOfRange { index: 4, n: 4 })
        ));
        assert!(two_slots.in_plus_minus(9, 0).is_err());
    }

    #[test]
    fn projection_class_has_no_split_pairs() {
        let a = ap(5, &[2]);
        for l in a.members() {
            for q in PairIndex::all(5) {
                assert!(!(l.in_plus_minus(q.i(), q.j()).unwrap() && l.in_plus_minus(q.j(), q.i()).unwrap()));
            }
        }
    }

    #[test]
    fn n_count_swapped_labels() {
        let a = ap(8, &[1, 1]);
        let mut sa = vec![None; 8];
        sa[0] = Some(0);
        sa[1] = Some(1);
        let mut sb = vec![None; 8];
        sb[0] = Some(1);
        sb[1] = Some(0);
        assert_eq!(a.n_count(&lab(&sa), &lab(&sb)).unwrap(), 13);
        assert!(a.n_count(&lab(&sa), &lab(&[None; 8])).is_err());
    }

    #[test]
    fn lemma3_bound_and_c() {
        assert_eq!(lemma3_bound(3, 0, 12).unwrap(), 9);
        assert_eq!(lemma3_bound(3, 1, 10).unwrap(), 9);
        assert_eq!(lemma3_bound(3, 1, 12).unwrap(), 11);
        assert!(lemma3_bound(3, 4, 12).is_err());
        assert!(lemma3_bound(5, 0, 4).is_err());
        for (k, n) in [(1, 4), (3, 10), (3, 12), (4, 9)] {
            for m in 0..=k {
                let c = c_eval(&Rational::from_integer((m as i64).into()), k, n);
                assert_eq!(c, Rational::from_integer(lemma3_bound(k, m, n).unwrap().into()));
            }
        }
        assert_eq!(c_minimizer(3, 10), rational(1, 2));
    }

    #[test]
    fn decide_by_count_threshold() {
        let a = ap(10, &[3]);
        let l = a.members().next().unwrap();
        assert_eq!(
            a.decide_orthogonality_by_count(&l, &l),
            Err(ApartmentError::ThresholdViolation { n: 10, k: 3 })
        );
    }

    #[test]
    fn compute_s_examples() {
        let a = ap(5, &[1, 1]);
        let all: Vec<_> = a.members().collect();
        for i in 0..5 {
            assert_eq!(a.compute_s(i, &all).unwrap(), Subspace::coordinate(5, &[i]));
            assert_eq!(a.compute_s(i, &[]).unwrap(), Subspace::full(5));
        }
        let set = a.plus_plus_or_minus_minus(p(0, 1)).unwrap();
        let s0 = a.compute_s(0, &set).unwrap();
        assert!(s0.dim() >= 2);
        assert!(s0.contains(&Subspace::coordinate(5, &[1])).unwrap());
    }

    #[test]
    fn inexact_decisions() {
        let a = ap(6, &[2]);
        let all: Vec<_> = a.members().collect();
        assert_eq!(a.is_orthogonally_inexact(&all).unwrap(), None);
        assert_eq!(a.is_orthogonally_inexact(&[]).unwrap(), Some(p(0, 1)));
        let set = a.plus_plus_or_minus_minus(p(2, 4)).unwrap();
        assert_eq!(a.is_orthogonally_inexact(&set).unwrap(), Some(p(2, 4)));
        assert_eq!(ap(1, &[1]).is_orthogonally_inexact(&[]).unwrap(), None);
    }

    #[test]
    fn maximal_inexact_small() {
        let a = ap(6, &[2]);
        for q in PairIndex::all(6) {
            assert!(a.verify_maximal_inexact(q).unwrap(), "{q}");
        }
    }

    #[test]
    fn rotation_meets_in_type_one_set() {
        let a = ap(4, &[1, 1]);
        let q = p(1, 3);
        let rot = a.rotated(q).unwrap();
        let mut common = Vec::new();
        for l in a.members() {
            if rot.labeling_of(&a.operator(&l).unwrap()).unwrap().is_some() {
                common.push(l);
            }
        }
        assert_eq!(common, a.plus_plus_or_minus_minus(q).unwrap());
    }
}
