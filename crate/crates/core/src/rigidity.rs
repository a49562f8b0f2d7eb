//! Finite transformations of a conjugacy class: the swap counterexamples,
//! preservation checks, the trace-pairing obstruction to being induced by a
//! unitary or anti-unitary operator, and the commuting witness operator
//! that pins down one-dimensional eigenspaces.

use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::apartment::{Apartment, ApartmentError};
use crate::compat::{refine_to_frame, CompatError};
use crate::linalg::{orthogonal_basis, LinalgError, Matrix, Rational, Subspace};
use crate::spectral::{ClassDescriptor, ClassError, SpectralOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigidityError {
    #[error("a projection class has one operator per image; nothing to swap")]
    ProjectionClass,
    #[error("subspace has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the two eigenspaces must be orthogonal")]
    NotOrthogonal,
    #[error("ℂ^{n} has no room for a witness of rank {k} (need n ≥ 2k − 1)")]
    NoRoom { n: usize, k: usize },
    #[error("subspace is not a line inside an eigenspace of the operator")]
    NotAnEigenline,
    #[error("mapping is not a permutation of the domain")]
    NotABijection,
    #[error("domain operators {0} and {1} coincide")]
    DuplicateOperator(usize, usize),
    #[error("domain operator {0} is not in the class of operator 0")]
    ClassMismatch(usize),
    #[error("image of domain operator {0} is outside the domain")]
    NotClosed(usize),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Compat(#[from] CompatError),
    #[error(transparent)]
    Apartment(#[from] ApartmentError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `AB = BA`
    Commute,
    /// `AB = BA = 0`
    Orthogonal,
}

/// A bijection of a finite set of operators from one class.
#[derive(Clone, Debug)]
pub struct FiniteTransformation {
    domain: Vec<SpectralOperator>,
    mapping: Vec<usize>,
    facts: OnceLock<PairFacts>,
}

/// Per unordered pair `s ≤ t`: whether `A_s A_t` commutes, vanishes, and
/// its trace. One product suffices since `A_t A_s = (A_s A_t)*`.
#[derive(Clone, Debug)]
struct PairFacts {
    n: usize,
    commute: Vec<bool>,
    orthogonal: Vec<bool>,
    trace: Vec<Rational>,
}

impl PairFacts {
    fn new(domain: &[SpectralOperator]) -> Self {
        let mats: Vec<Matrix> = domain.iter().map(SpectralOperator::materialize).collect();
        let n = mats.len();
        let mut facts = PairFacts {
            n,
            commute: Vec::with_capacity(n * (n + 1) / 2),
            orthogonal: Vec::with_capacity(n * (n + 1) / 2),
            trace: Vec::with_capacity(n * (n + 1) / 2),
        };
        for s in 0..n {
            for t in s..n {
                let ab = &mats[s] * &mats[t];
                let trace = ab.trace();
                debug_assert!(trace.is_real());
                facts.orthogonal.push(ab.is_zero());
                facts.commute.push(ab.is_hermitian());
                facts.trace.push(trace.re);
            }
        }
        facts
    }

    fn index(&self, s: usize, t: usize) -> usize {
        let (s, t) = if s <= t { (s, t) } else { (t, s) };
        s * self.n - s * (s + 1) / 2 + t
    }

    fn holds(&self, relation: Relation, s: usize, t: usize) -> bool {
        let i = self.index(s, t);
        match relation {
            Relation::Commute => self.commute[i],
            Relation::Orthogonal => self.orthogonal[i],
        }
    }

    fn trace(&self, s: usize, t: usize) -> &Rational {
        &self.trace[self.index(s, t)]
    }
}

impl FiniteTransformation {
    pub fn new(domain: Vec<SpectralOperator>, mapping: Vec<usize>) -> Result<Self, RigidityError> {
        let n = domain.len();
        let mut seen = vec![false; n];
        if mapping.len() != n {
            return Err(RigidityError::NotABijection);
        }
        for &t in &mapping {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(RigidityError::NotABijection);
            }
        }
        for (s, op) in domain.iter().enumerate().skip(1) {
            if op.class() != domain[0].class() {
                return Err(RigidityError::ClassMismatch(s));
            }
        }
        for s in 0..n {
            for t in s + 1..n {
                if domain[s] == domain[t] {
                    return Err(RigidityError::DuplicateOperator(s, t));
                }
            }
        }
        Ok(FiniteTransformation {
            domain,
            mapping,
            facts: OnceLock::new(),
        })
    }

    pub fn identity(domain: Vec<SpectralOperator>) -> Result<Self, RigidityError> {
        let mapping = (0..domain.len()).collect();
        FiniteTransformation::new(domain, mapping)
    }

    /// Transposes `a` and `b`, fixing everything else.
    pub fn swap(domain: Vec<SpectralOperator>, a: usize, b: usize) -> Result<Self, RigidityError> {
        let mut mapping: Vec<usize> = (0..domain.len()).collect();
        if a >= mapping.len() || b >= mapping.len() {
            return Err(RigidityError::NotABijection);
        }
        mapping.swap(a, b);
        FiniteTransformation::new(domain, mapping)
    }

    /// The restriction of `f` to `domain`, which must map the domain onto
    /// itself.
    pub fn from_map(
        domain: Vec<SpectralOperator>,
        f: impl Fn(&SpectralOperator) -> Result<SpectralOperator, RigidityError>,
    ) -> Result<Self, RigidityError> {
        let mut mapping = Vec::with_capacity(domain.len());
        for (s, op) in domain.iter().enumerate() {
            let image = f(op)?;
            let t = domain
                .iter()
                .position(|o| *o == image)
                .ok_or(RigidityError::NotClosed(s))?;
            mapping.push(t);
        }
        FiniteTransformation::new(domain, mapping)
    }

    pub fn domain(&self) -> &[SpectralOperator] {
        &self.domain
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    /// `f(A_s)`.
    pub fn image(&self, s: usize) -> &SpectralOperator {
        &self.domain[self.mapping[s]]
    }

    pub fn class(&self) -> Option<&ClassDescriptor> {
        self.domain.first().map(SpectralOperator::class)
    }

    fn facts(&self) -> &PairFacts {
        self.facts.get_or_init(|| PairFacts::new(&self.domain))
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.len();
        (0..n).flat_map(move |s| (s + 1..n).map(move |t| (s, t)))
    }

    /// The first pair `(s, t)` where the relation holds for exactly one of
    /// `(A_s, A_t)` and `(f(A_s), f(A_t))`.
    pub fn preservation_violation(&self, relation: Relation) -> Option<(usize, usize)> {
        let facts = self.facts();
        self.pairs()
            .find(|&(s, t)| facts.holds(relation, s, t) != facts.holds(relation, self.mapping[s], self.mapping[t]))
    }

    /// `R(A, B) ⟺ R(f(A), f(B))` over all domain pairs.
    pub fn check_preservation(&self, relation: Relation) -> bool {
        self.preservation_violation(relation).is_none()
    }

    /// A pair whose trace pairing changes under the map. Unitary and
    /// anti-unitary conjugations both preserve `tr(AB)` on self-adjoint
    /// operators, so a witness rules them out.
    pub fn gram_obstruction(&self) -> Option<GramWitness> {
        let facts = self.facts();
        self.pairs().find_map(|(s, t)| {
            let lhs = facts.trace(s, t);
            let rhs = facts.trace(self.mapping[s], self.mapping[t]);
            (lhs != rhs).then(|| GramWitness {
                s,
                t,
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            })
        })
    }

    /// If every domain operator lies in `ap`, looks for a permutation `σ` of
    /// frame lines with `f(A) = U A U*` for any unitary `U` sending line `i`
    /// onto line `σ(i)`. Returns `σ` when one exists.
    pub fn frame_permutation_certificate(&self, ap: &Apartment) -> Result<Option<Vec<usize>>, RigidityError> {
        let labels = self
            .domain
            .iter()
            .map(|op| ap.labeling_of(op)?.ok_or_else(|| ApartmentError::NotAMember(op.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let n = ap.n();
        // line i must go to a line whose labels under f(A_s) match those of i under A_s
        let source: Vec<Vec<Option<usize>>> = (0..n)
            .map(|i| labels.iter().map(|l| l.slot(i)).collect())
            .collect();
        let target: Vec<Vec<Option<usize>>> = (0..n)
            .map(|j| (0..self.len()).map(|s| labels[self.mapping[s]].slot(j)).collect())
            .collect();
        let mut used = vec![false; n];
        let mut sigma = Vec::with_capacity(n);
        for sig in &source {
            let Some(j) = (0..n).find(|&j| !used[j] && target[j] == *sig) else {
                return Ok(None);
            };
            used[j] = true;
            sigma.push(j);
        }
        Ok(Some(sigma))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramWitness {
    pub s: usize,
    pub t: usize,
    /// `tr(A_s A_t)`
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub lhs: Rational,
    /// `tr(f(A_s) f(A_t))`
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub rhs: Rational,
}

/// Extra operators placed in the domain of a swap construction.
#[derive(Clone, Debug, Default)]
pub enum Bystanders {
    /// Every member of the apartment of `refine_to_frame` applied to the
    /// eigenspaces of the swapped pair.
    #[default]
    Apartment,
    Explicit(Vec<SpectralOperator>),
    None,
}

/// A swap of two operators `a`, `b` inside a finite domain.
#[derive(Clone, Debug)]
pub struct SwapExample {
    pub transformation: FiniteTransformation,
    pub a: usize,
    pub b: usize,
}

impl SwapExample {
    pub fn a(&self) -> &SpectralOperator {
        &self.transformation.domain()[self.a]
    }

    pub fn b(&self) -> &SpectralOperator {
        &self.transformation.domain()[self.b]
    }
}

fn swap_with_bystanders(a: SpectralOperator, b: SpectralOperator, bystanders: Bystanders) -> Result<SwapExample, RigidityError> {
    let extra = match bystanders {
        Bystanders::None => Vec::new(),
        Bystanders::Explicit(ops) => ops,
        Bystanders::Apartment => {
            let family: Vec<Subspace> = a.eigenspaces().iter().chain(b.eigenspaces()).cloned().collect();
            let frame = refine_to_frame(a.n(), &family)?;
            let ap = Apartment::new(frame, a.class_arc().clone())?;
            ap.members().map(|l| ap.operator(&l)).collect::<Result<Vec<_>, _>>()?
        }
    };
    let mut domain = vec![a, b];
    for op in extra {
        if !domain.contains(&op) {
            domain.push(op);
        }
    }
    Ok(SwapExample {
        transformation: FiniteTransformation::swap(domain, 0, 1)?,
        a: 0,
        b: 1,
    })
}

/// Two distinct operators with the same image `x`, swapped.
///
/// `x` is cut into orthogonal lines `l₁..l_k`; `A` fills the eigenvalue
/// slots with the lines in order and `B` with the lines in reverse order.
/// Any operator orthogonal to one of them is orthogonal to the other, since
/// orthogonality only sees the image.
pub fn example_orth_swap(
    class: Arc<ClassDescriptor>,
    x: &Subspace,
    bystanders: Bystanders,
) -> Result<SwapExample, RigidityError> {
    if class.m() < 2 {
        return Err(RigidityError::ProjectionClass);
    }
    let k = class.rank();
    if x.dim() != k {
        return Err(RigidityError::DimensionMismatch {
            expected: k,
            found: x.dim(),
        });
    }
    if x.ambient_dim() != class.n() {
        return Err(LinalgError::AmbientMismatch {
            left: class.n(),
            right: x.ambient_dim(),
        }
        .into());
    }
    let lines = orthogonal_basis(&x.basis());
    let fill = |order: &[usize]| -> Result<SpectralOperator, RigidityError> {
        let mut next = order.iter();
        let spanning: Vec<_> = class
            .dims()
            .iter()
            .map(|&d| next.by_ref().take(d).map(|&i| lines[i].clone()).collect())
            .collect();
        Ok(SpectralOperator::from_spanning(class.clone(), &spanning)?)
    };
    let forward: Vec<usize> = (0..k).collect();
    let backward: Vec<usize> = (0..k).rev().collect();
    swap_with_bystanders(fill(&forward)?, fill(&backward)?, bystanders)
}

/// `A = αP_X + βP_Y` and `B = αP_Y + βP_X` for orthogonal `X`, `Y` of
/// dimension `m_dim`, swapped. Any operator commuting with one commutes with
/// the other, since they share their eigenspaces.
pub fn example_comm_swap(
    alpha: Rational,
    beta: Rational,
    m_dim: usize,
    x: &Subspace,
    y: &Subspace,
    bystanders: Bystanders,
) -> Result<SwapExample, RigidityError> {
    for s in [x, y] {
        if s.dim() != m_dim {
            return Err(RigidityError::DimensionMismatch {
                expected: m_dim,
                found: s.dim(),
            });
        }
    }
    if !x.is_orthogonal_to(y)? {
        return Err(RigidityError::NotOrthogonal);
    }
    let class = Arc::new(ClassDescriptor::new(x.ambient_dim(), vec![alpha, beta], vec![m_dim, m_dim])?);
    let a = SpectralOperator::new(class.clone(), vec![x.clone(), y.clone()])?;
    let b = SpectralOperator::new(class, vec![y.clone(), x.clone()])?;
    swap_with_bystanders(a, b, bystanders)
}

/// An operator `B` of the same class commuting with `A` whose image meets
/// `Im(A)` exactly in the line `y`, which must lie in an eigenspace of `A`
/// (typically a one-dimensional eigenspace, but lines inside larger ones
/// work the same way).
///
/// `Im(B) = y + W` where `W` is spanned by the first `k − 1` Gram–Schmidt
/// vectors of `Im(A)^⟂`. The line `y` goes into the slot of smallest
/// dimension (first one on ties), filled up from `W`; the remaining slots
/// take the rest of `W` in order.
pub fn witness_commuting_operator(a: &SpectralOperator, y: &Subspace) -> Result<SpectralOperator, RigidityError> {
    let class = a.class_arc();
    let (n, k) = (class.n(), class.rank());
    if y.ambient_dim() != n {
        return Err(LinalgError::AmbientMismatch {
            left: n,
            right: y.ambient_dim(),
        }
        .into());
    }
    if y.dim() != 1 {
        return Err(RigidityError::NotAnEigenline);
    }
    let mut inside = false;
    for e in a.eigenspaces() {
        inside |= e.contains(y)?;
    }
    if !inside {
        return Err(RigidityError::NotAnEigenline);
    }
    if n + 1 < 2 * k {
        return Err(RigidityError::NoRoom { n, k });
    }
    let complement = orthogonal_basis(&a.image().orthogonal_complement().basis());
    let mut fill = complement.into_iter().take(k - 1);
    let y_vec = y.representative().expect("y is a line");
    let dims = class.dims();
    let target = (0..dims.len()).min_by_key(|&t| dims[t]).expect("class has a slot");
    let spanning: Vec<Vec<_>> = dims
        .iter()
        .enumerate()
        .map(|(t, &d)| {
            if t == target {
                std::iter::once(y_vec.clone()).chain(fill.by_ref().take(d - 1)).collect()
            } else {
                fill.by_ref().take(d).collect()
            }
        })
        .collect();
    Ok(SpectralOperator::from_spanning(class.clone(), &spanning)?)
}
