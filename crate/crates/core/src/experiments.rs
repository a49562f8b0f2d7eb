//! Exhaustive verification drivers. Each returns a serializable report; the
//! CLI only parses arguments and writes these out.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::apartment::{c_eval, lemma3_bound, n_count_unchecked, Apartment, ApartmentError, Labeling, PairIndex};
use crate::compat::{is_sum_of_lines, refine_to_frame, CompatError, Frame};
use crate::io::{labeling_json, ClassJson, SCHEMA_VERSION};
use crate::linalg::{LinalgError, Rational, Subspace};
use crate::random::{random_compatible_family, random_frame};
use crate::rigidity::{FiniteTransformation, GramWitness, Relation, RigidityError};
use crate::spectral::{ClassDescriptor, ClassError, SpectralOperator};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("n = {n} must exceed 2k = {}", 2 * k)]
    NoRoom { n: usize, k: usize },
    #[error("n = {n} is outside the open range (2k, 4k) = ({}, {})", 2 * k, 4 * k)]
    OutsideBoundary { n: usize, k: usize },
    #[error("empty dimension range")]
    EmptyRange,
    #[error(transparent)]
    Apartment(#[from] ApartmentError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Compat(#[from] CompatError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
}

/// All ordered compositions of `k`, i.e. every dims list with sum `k`.
pub fn compositions(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=k {
        for mut rest in compositions(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairRecord {
    pub a: Vec<Option<usize>>,
    pub b: Vec<Option<usize>>,
    /// `dim(Im A ∩ Im B)`
    pub m: usize,
    pub count: u64,
}

impl PairRecord {
    fn new(a: &Labeling, b: &Labeling, count: u64) -> Self {
        PairRecord {
            a: labeling_json(a),
            b: labeling_json(b),
            m: a.overlap(b),
            count,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Lemma3Violation {
    pub kind: &'static str,
    pub pair: PairRecord,
    pub expected: i64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Lemma3Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub n: usize,
    pub k: usize,
    pub class: ClassJson,
    pub members: usize,
    pub pairs_checked: u64,
    pub orthogonal_pairs: u64,
    /// count → number of orthogonal pairs attaining it
    pub orthogonal_counts: BTreeMap<u64, u64>,
    /// m → (count → number of pairs)
    pub counts_histogram: BTreeMap<usize, BTreeMap<u64, u64>>,
    pub violations: Vec<Lemma3Violation>,
}

/// Scans all pairs of distinct members: every pair must satisfy
/// `n_count ≥ (k−m)² + m(n−2k+m)`, and orthogonal pairs must count exactly
/// `k²`.
pub fn verify_lemma3(ap: &Apartment) -> Result<Lemma3Report, ExperimentError> {
    let (n, k) = (ap.n(), ap.k());
    if n <= 2 * k {
        return Err(ExperimentError::NoRoom { n, k });
    }
    let members: Vec<Labeling> = ap.members().collect();
    let bounds: Vec<i64> = (0..=k).map(|m| lemma3_bound(k, m, n)).collect::<Result<_, _>>()?;
    let k2 = (k * k) as u64;
    let mut report = Lemma3Report {
        schema_version: SCHEMA_VERSION,
        command: "verify-lemma3",
        n,
        k,
        class: ap.class().as_ref().into(),
        members: members.len(),
        pairs_checked: 0,
        orthogonal_pairs: 0,
        orthogonal_counts: BTreeMap::new(),
        counts_histogram: BTreeMap::new(),
        violations: Vec::new(),
    };
    for (s, a) in members.iter().enumerate() {
        for b in &members[s + 1..] {
            let count = n_count_unchecked(a, b);
            let m = a.overlap(b);
            report.pairs_checked += 1;
            *report.counts_histogram.entry(m).or_default().entry(count).or_default() += 1;
            if (count as i64) < bounds[m] {
                report.violations.push(Lemma3Violation {
                    kind: "below_bound",
                    pair: PairRecord::new(a, b, count),
                    expected: bounds[m],
                });
            }
            if m == 0 {
                report.orthogonal_pairs += 1;
                *report.orthogonal_counts.entry(count).or_default() += 1;
                if count != k2 {
                    report.violations.push(Lemma3Violation {
                        kind: "orthogonal_count",
                        pair: PairRecord::new(a, b, count),
                        expected: k2 as i64,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Lemma4Disagreement {
    pub pair: PairRecord,
    pub orthogonal: bool,
    pub decided: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Lemma4Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub n: usize,
    pub k: usize,
    pub class: ClassJson,
    pub members: usize,
    pub pairs_checked: u64,
    pub orthogonal_pairs: u64,
    pub violations: Vec<Lemma4Disagreement>,
}

/// Compares the count-based orthogonality decision with the direct one on
/// every pair of members (including each member with itself).
pub fn verify_lemma4(ap: &Apartment) -> Result<Lemma4Report, ExperimentError> {
    let (n, k) = (ap.n(), ap.k());
    if n < 4 * k {
        return Err(ApartmentError::ThresholdViolation { n, k }.into());
    }
    let members: Vec<Labeling> = ap.members().collect();
    let mut report = Lemma4Report {
        schema_version: SCHEMA_VERSION,
        command: "verify-lemma4",
        n,
        k,
        class: ap.class().as_ref().into(),
        members: members.len(),
        pairs_checked: 0,
        orthogonal_pairs: 0,
        violations: Vec::new(),
    };
    let k2 = (k * k) as u64;
    for (s, a) in members.iter().enumerate() {
        for b in &members[s..] {
            let count = n_count_unchecked(a, b);
            let decided = count == k2;
            let orthogonal = a.is_orthogonal_to(b);
            report.pairs_checked += 1;
            report.orthogonal_pairs += orthogonal as u64;
            if decided != orthogonal {
                report.violations.push(Lemma4Disagreement {
                    pair: PairRecord::new(a, b, count),
                    orthogonal,
                    decided,
                });
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassScan {
    pub dims: Vec<usize>,
    pub pairs_checked: u64,
    /// Non-orthogonal pairs with `n_count = k²`.
    pub non_orthogonal_at_k_squared: u64,
    pub first_example: Option<PairRecord>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BoundaryRow {
    pub n: usize,
    /// `(4k − n)/2` when it is an integer.
    pub m: Option<usize>,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub c0: Rational,
    pub cm: Option<String>,
    pub c_equal: Option<bool>,
    /// `c(x)` for `x = 0..=k`.
    pub c_table: Vec<String>,
    pub scans: Vec<ClassScan>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BoundaryReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub k: usize,
    pub rows: Vec<BoundaryRow>,
}

/// Scans `2k < n < 4k`. For each `n` the values of `c` are tabulated; when
/// `m = (4k−n)/2` is an integer, `c(0)` is compared with `c(m)` and every
/// member pair of every class in `dims_list` is searched for non-orthogonal
/// pairs whose count equals `k²`. Findings are reported, not judged.
pub fn scan_boundary(
    k: usize,
    ns: impl IntoIterator<Item = usize>,
    dims_list: &[Vec<usize>],
) -> Result<BoundaryReport, ExperimentError> {
    let ns: Vec<usize> = ns.into_iter().collect();
    if ns.is_empty() {
        return Err(ExperimentError::EmptyRange);
    }
    let int = |v: usize| Rational::from_integer(v.into());
    let k2 = (k * k) as u64;
    let mut rows = Vec::new();
    for n in ns {
        if !(2 * k < n && n < 4 * k) {
            return Err(ExperimentError::OutsideBoundary { n, k });
        }
        let m = (n % 2 == 0).then(|| (4 * k - n) / 2);
        let c0 = c_eval(&int(0), k, n);
        let cm = m.map(|m| c_eval(&int(m), k, n));
        let mut scans = Vec::new();
        if m.is_some() {
            for dims in dims_list {
                if dims.iter().sum::<usize>() != k {
                    return Err(ClassError::RankTooLarge { k: dims.iter().sum(), n }.into());
                }
                let ap = Apartment::standard(Arc::new(ClassDescriptor::with_dims(n, dims)?));
                let members: Vec<Labeling> = ap.members().collect();
                let mut scan = ClassScan {
                    dims: dims.clone(),
                    pairs_checked: 0,
                    non_orthogonal_at_k_squared: 0,
                    first_example: None,
                };
                for (s, a) in members.iter().enumerate() {
                    for b in &members[s + 1..] {
                        scan.pairs_checked += 1;
                        if a.is_orthogonal_to(b) {
                            continue;
                        }
                        let count = n_count_unchecked(a, b);
                        if count == k2 {
                            scan.non_orthogonal_at_k_squared += 1;
                            scan.first_example.get_or_insert_with(|| PairRecord::new(a, b, count));
                        }
                    }
                }
                scans.push(scan);
            }
        }
        rows.push(BoundaryRow {
            n,
            m,
            c_equal: cm.as_ref().map(|cm| *cm == c0),
            cm: cm.map(|c| c.to_string()),
            c0,
            c_table: (0..=k).map(|x| c_eval(&int(x), k, n).to_string()).collect(),
            scans,
        });
    }
    Ok(BoundaryReport {
        schema_version: SCHEMA_VERSION,
        command: "scan-boundary",
        k,
        rows,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Preserves {
    pub commute: bool,
    pub orthogonal: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Certificate {
    pub schema_version: u32,
    pub command: &'static str,
    pub name: String,
    pub class: ClassJson,
    pub domain_size: usize,
    pub swapped: [usize; 2],
    pub preserves: Preserves,
    /// Relation the construction is meant to preserve.
    pub expected: Relation,
    pub witness: Option<GramWitness>,
    /// Line permutation of an apartment holding the whole domain that
    /// induces the map, when one exists.
    pub frame_permutation: Option<Vec<usize>>,
}

impl Certificate {
    pub fn new(name: &str, t: &FiniteTransformation, swapped: [usize; 2], expected: Relation) -> Self {
        Certificate {
            schema_version: SCHEMA_VERSION,
            command: "counterexample",
            name: name.to_string(),
            class: t.class().map(ClassJson::from).unwrap_or(ClassJson {
                n: 0,
                alphas: Vec::new(),
                dims: Vec::new(),
            }),
            domain_size: t.len(),
            swapped,
            preserves: Preserves {
                commute: t.check_preservation(Relation::Commute),
                orthogonal: t.check_preservation(Relation::Orthogonal),
            },
            expected,
            witness: t.gram_obstruction(),
            frame_permutation: None,
        }
    }

    pub fn with_frame_permutation(mut self, t: &FiniteTransformation, ap: &Apartment) -> Result<Self, ExperimentError> {
        self.frame_permutation = t.frame_permutation_certificate(ap)?;
        Ok(self)
    }

    /// The construction preserves its relation and is certified
    /// non-inducible.
    pub fn holds(&self) -> bool {
        let preserved = match self.expected {
            Relation::Commute => self.preserves.commute,
            Relation::Orthogonal => self.preserves.orthogonal,
        };
        preserved && self.witness.is_some()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RefineTrial {
    pub n: usize,
    pub family_size: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RefineReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub seed: u64,
    pub trials: Vec<RefineTrial>,
    pub failures: usize,
}

/// Refines one family and checks the result: a valid frame in which each
/// member is the sum of the lines it contains.
pub fn refine_and_check(n: usize, family: &[Subspace]) -> Result<(Frame, bool), ExperimentError> {
    let frame = refine_to_frame(n, family)?;
    let mut ok = true;
    for x in family {
        ok &= is_sum_of_lines(&frame, x)?;
    }
    Ok((frame, ok))
}

/// Generates `count` random compatible families in dimensions `2..=max_n`
/// from `seed` and refines each.
pub fn random_refinements(seed: u64, count: usize, max_n: usize) -> Result<RefineReport, ExperimentError> {
    use rand::Rng;
    let mut rng = crate::random::rng(seed);
    let mut trials = Vec::with_capacity(count);
    for _ in 0..count {
        let n = rng.gen_range(2..=max_n.max(2));
        let frame = random_frame(&mut rng, n);
        let size = rng.gen_range(0..=4);
        let family = random_compatible_family(&mut rng, &frame, size);
        let (refined, ok) = refine_and_check(n, &family)?;
        let ok = ok && refined.ambient_dim() == n && refined.lines().len() == n;
        trials.push(RefineTrial {
            n,
            family_size: family.len(),
            ok,
        });
    }
    let failures = trials.iter().filter(|t| !t.ok).count();
    Ok(RefineReport {
        schema_version: SCHEMA_VERSION,
        command: "refine",
        seed,
        trials,
        failures,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InexactReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub class: ClassJson,
    pub members: usize,
    pub inexact: bool,
    pub witness: Option<PairIndex>,
    /// `dim S_i` for each frame index.
    pub s_dims: Vec<usize>,
}

pub fn inexact_report(ap: &Apartment, set: &[Labeling]) -> Result<InexactReport, ExperimentError> {
    let witness = ap.is_orthogonally_inexact(set)?;
    let s_dims = (0..ap.n())
        .map(|i| ap.s_indices(i, set).map(|s| s.len()))
        .collect::<Result<_, _>>()?;
    Ok(InexactReport {
        schema_version: SCHEMA_VERSION,
        command: "inexact",
        class: ap.class().as_ref().into(),
        members: set.len(),
        inexact: witness.is_some(),
        witness,
        s_dims,
    })
}

/// `n_𝒜(A, B)` in several apartments containing both `a` and `b`: the one
/// from refining their joint eigenspaces, then every apartment obtained from
/// it by rotating a pair of lines that keeps both operators inside.
pub fn apartment_invariance(a: &SpectralOperator, b: &SpectralOperator) -> Result<Vec<u64>, ExperimentError> {
    let family: Vec<Subspace> = a.eigenspaces().iter().chain(b.eigenspaces()).cloned().collect();
    let base = Apartment::new(refine_to_frame(a.n(), &family)?, a.class_arc().clone())?;
    let mut counts = Vec::new();
    let mut apartments = vec![base.clone()];
    let la = base.labeling_of(a)?.ok_or_else(|| ApartmentError::NotAMember(a.to_string()))?;
    let lb = base.labeling_of(b)?.ok_or_else(|| ApartmentError::NotAMember(b.to_string()))?;
    for p in PairIndex::all(base.n()) {
        let keeps = |l: &Labeling| l.slot(p.i()) == l.slot(p.j());
        if keeps(&la) && keeps(&lb) {
            apartments.push(base.rotated(p)?);
        }
    }
    for ap in &apartments {
        let la = ap.labeling_of(a)?.ok_or_else(|| ApartmentError::NotAMember(a.to_string()))?;
        let lb = ap.labeling_of(b)?.ok_or_else(|| ApartmentError::NotAMember(b.to_string()))?;
        counts.push(ap.n_count(&la, &lb)?);
    }
    Ok(counts)
}
