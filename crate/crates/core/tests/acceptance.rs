//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use orthapart::apartment::{c_eval, Apartment, Labeling, PairIndex};
use orthapart::compat::{refine_to_frame, CompatError, Frame};
use orthapart::experiments::{compositions, scan_boundary, verify_lemma3, verify_lemma4};
use orthapart::linalg::{int_vector, rational, sum_all, Rational, Subspace};
use orthapart::random::{random_compatible_family, random_dims, random_frame, random_operator, random_unitary, rng, signed_permutation};
use orthapart::rigidity::{example_comm_swap, example_orth_swap, witness_commuting_operator, Bystanders, Relation};
use orthapart::{ClassDescriptor, SpectralOperator};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn class(n: usize, alphas: &[i64], dims: &[usize]) -> Arc<ClassDescriptor> {
    let alphas = alphas.iter().map(|&a| rational(a, 1)).collect();
    Arc::new(ClassDescriptor::new(n, alphas, dims.to_vec()).unwrap())
}

/// Counts orthocomplementary pairs straight from the slot vectors: a member
/// avoids `C_ij` when lines `i`, `j` share an eigenspace or both lie in the
/// kernel.
fn oracle_count(a: &[Option<usize>], b: &[Option<usize>]) -> u64 {
    let n = a.len();
    let outside = |x: &[Option<usize>], i: usize, j: usize| !(x[i] == x[j]);
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            if outside(a, i, j) && outside(b, i, j) {
                count += 1;
            }
        }
    }
    count
}

fn oracle_overlap(a: &[Option<usize>], b: &[Option<usize>]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x.is_some() && y.is_some()).count()
}

fn bound(k: usize, m: usize, n: usize) -> i64 {
    let (k, m, n) = (k as i64, m as i64, n as i64);
    (k - m) * (k - m) + m * (n - 2 * k + m)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (n, k) = (12, 3);
    let ap = Apartment::standard(class(n, &[1, 2], &[1, 2]));
    let members: Vec<Vec<Option<usize>>> = ap.members().map(|l| l.slots()).collect();
    let mut orthogonal = 0u64;
    for (s, a) in members.iter().enumerate() {
        for b in &members[s + 1..] {
            if oracle_overlap(a, b) == 0 {
                orthogonal += 1;
                let count = oracle_count(a, b);
                ensure(count == (k * k) as u64, || format!("oracle count {count} for {a:?} / {b:?}"))?;
            }
        }
    }
    let report = verify_lemma3(&ap).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.orthogonal_pairs == orthogonal, || {
        format!("library saw {} orthogonal pairs, oracle {orthogonal}", report.orthogonal_pairs)
    })?;
    let expected: BTreeMap<u64, u64> = [(9, orthogonal)].into();
    ensure(report.orthogonal_counts == expected, || format!("orthogonal counts {:?}", report.orthogonal_counts))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} members, {orthogonal} orthogonal pairs, all count 9, {:.2?}",
        members.len(),
        elapsed
    ))
}

fn criterion_2() -> Outcome {
    let mut classes = 0;
    let mut pairs = 0u64;
    for n in [8, 10, 12] {
        for k in 1..=3 {
            for dims in compositions(k) {
                let ap = Apartment::standard(Arc::new(ClassDescriptor::with_dims(n, &dims).unwrap()));
                let report = verify_lemma3(&ap).map_err(|e| e.to_string())?;
                ensure(report.violations.is_empty(), || {
                    format!("n={n} d={dims:?}: {} violations, first {:?}", report.violations.len(), report.violations[0])
                })?;
                // the histogram must sit above the independently computed bound
                for (&m, counts) in &report.counts_histogram {
                    let low = *counts.keys().next().unwrap() as i64;
                    ensure(low >= bound(k, m, n), || format!("n={n} d={dims:?} m={m}: min count {low}"))?;
                }
                classes += 1;
                pairs += report.pairs_checked;
            }
        }
    }
    Ok(format!("{classes} classes, {pairs} member pairs, 0 violations"))
}

fn criterion_3() -> Outcome {
    let mut pairs = 0u64;
    for (n, k) in [(8, 2), (12, 3)] {
        for dims in compositions(k) {
            let ap = Apartment::standard(Arc::new(ClassDescriptor::with_dims(n, &dims).unwrap()));
            let report = verify_lemma4(&ap).map_err(|e| e.to_string())?;
            ensure(report.violations.is_empty(), || {
                format!("n={n} d={dims:?}: {} disagreements", report.violations.len())
            })?;
            pairs += report.pairs_checked;
        }
    }
    // the labeling predicate against operator products on a sample
    let ap = Apartment::standard(Arc::new(ClassDescriptor::with_dims(8, &[1, 1]).unwrap()));
    let mut r = rng(3);
    let members: Vec<Labeling> = ap.members().collect();
    for _ in 0..200 {
        let a = &members[r.gen_range(0..members.len())];
        let b = &members[r.gen_range(0..members.len())];
        let product = &ap.operator(a).unwrap().materialize() * &ap.operator(b).unwrap().materialize();
        ensure(ap.decide_orthogonality_by_count(a, b).unwrap() == product.is_zero(), || {
            format!("{a:?} / {b:?}")
        })?;
    }
    Ok(format!("{pairs} member pairs agree"))
}

fn criterion_4() -> Outcome {
    let int = |v: i64| Rational::from_integer(v.into());
    let c = |x: i64, k: i64, n: i64| int(2 * x * x - (4 * k - n) * x + k * k);
    ensure(c_eval(&int(0), 3, 10) == int(9) && c_eval(&int(1), 3, 10) == int(9), || "c(0), c(1) at (3,10)".into())?;
    ensure(c(0, 3, 10) == c(1, 3, 10), || "oracle c(0) != c(1)".into())?;
    for x in 0..=3 {
        ensure(c_eval(&int(x), 3, 10) == c(x, 3, 10), || format!("c({x}) at (3,10)"))?;
    }
    let odd = scan_boundary(2, [7], &compositions(2)).map_err(|e| e.to_string())?;
    ensure(odd.rows[0].m.is_none() && odd.rows[0].scans.is_empty(), || "n=7 should not be searched".into())?;
    let first = scan_boundary(3, [10], &compositions(3)).map_err(|e| e.to_string())?;
    let second = scan_boundary(3, [10], &compositions(3)).map_err(|e| e.to_string())?;
    let (a, b) = (serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
    ensure(a == b, || "scan report is not deterministic".into())?;
    let row = &first.rows[0];
    ensure(row.c_equal == Some(true), || "report does not record c(0) = c(1)".into())?;
    let found: Vec<String> = row
        .scans
        .iter()
        .map(|s| format!("d={:?}: {}", s.dims, s.non_orthogonal_at_k_squared))
        .collect();
    Ok(format!(
        "c(0)=c(1)=9 at (3,10); n=7 non-integral; non-orthogonal pairs at k²=9: {}",
        found.join(", ")
    ))
}

fn criterion_5() -> Outcome {
    let ap = Apartment::standard(Arc::new(ClassDescriptor::with_dims(8, &[1, 1]).unwrap()));
    let members: Vec<Labeling> = ap.members().collect();
    for p in PairIndex::all(8) {
        ensure(ap.verify_maximal_inexact(p).unwrap(), || format!("pair {p:?} fails"))?;
        let set = ap.plus_plus_or_minus_minus(p).unwrap();
        // S_i as an honest subspace intersection
        let s = ap.compute_s(p.i(), &set).unwrap();
        ensure(s.dim() >= 2, || format!("dim S_{} = {} for {p:?}", p.i(), s.dim()))?;
        let rotated = ap.rotated(p).unwrap();
        for l in &set {
            ensure(rotated.labeling_of(&ap.operator(l).unwrap()).unwrap().is_some(), || {
                format!("{l:?} missing from the rotated apartment")
            })?;
        }
        for extra in members.iter().filter(|b| !set.contains(b)) {
            let mut bigger = set.clone();
            bigger.push(extra.clone());
            for i in 0..8 {
                let dim = ap.s_indices(i, &bigger).unwrap().len();
                ensure(dim == 1, || format!("{p:?} + {extra:?}: dim S_{i} = {dim}"))?;
            }
        }
    }
    Ok("all 28 pairs maximal inexact, every extension exact".into())
}

fn check_refinement(generator: &Frame, family: &[Subspace], frame: &Frame) -> Result<(), String> {
    let n = generator.ambient_dim();
    ensure(frame.lines().len() == n, || "wrong line count".into())?;
    for (i, a) in frame.lines().iter().enumerate() {
        ensure(a.dim() == 1, || format!("line {i} is not a line"))?;
        for b in &frame.lines()[i + 1..] {
            ensure(a.is_orthogonal_to(b).unwrap(), || "lines not orthogonal".into())?;
        }
    }
    for x in family {
        let within = frame.lines_within(x).unwrap();
        let sum = sum_all(n, within.iter().map(|&i| frame.line(i))).unwrap();
        ensure(sum == *x, || "member is not a sum of frame lines".into())?;
    }
    // each refined line sits in the generator atom with the same signature
    let signature = |l: &Subspace| -> Vec<bool> { family.iter().map(|x| x.contains(l).unwrap()).collect() };
    for l in frame.lines() {
        let sig = signature(l);
        let atom = sum_all(n, generator.lines().iter().filter(|g| signature(g) == sig)).unwrap();
        ensure(atom.contains(l).unwrap(), || "refined line crosses a generator atom".into())?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut r = rng(2024);
    let mut sizes = BTreeMap::new();
    for _ in 0..100 {
        let n = r.gen_range(1..=10);
        let generator = random_frame(&mut r, n);
        let count = r.gen_range(0..=4);
        let family = random_compatible_family(&mut r, &generator, count);
        let frame = refine_to_frame(n, &family).map_err(|e| e.to_string())?;
        check_refinement(&generator, &family, &frame)?;
        *sizes.entry(n).or_insert(0) += 1;
    }
    // only span(e₁) and span(e₁+e₂) fail to be compatible
    let family = vec![
        Subspace::coordinate(5, &[2, 3]),
        Subspace::coordinate(5, &[0]),
        Subspace::coordinate(5, &[3, 4]),
        Subspace::line(&int_vector(&[1, 1, 0, 0, 0])).unwrap(),
    ];
    match refine_to_frame(5, &family) {
        Err(CompatError::IncompatibleFamily { first: 1, second: 3 }) => {}
        other => return Err(format!("planted pair not reported: {:?}", other.map(|_| ()))),
    }
    Ok(format!("100 families refined (dimensions {sizes:?}), planted pair (1, 3) reported"))
}

fn criterion_7() -> Outcome {
    let c = SpectralOperator::new(
        class(4, &[1, 2], &[1, 1]),
        vec![Subspace::coordinate(4, &[0]), Subspace::coordinate(4, &[2])],
    )
    .unwrap();
    let x = Subspace::coordinate(4, &[0, 1]);
    let orth = example_orth_swap(class(4, &[1, 2], &[1, 1]), &x, Bystanders::Apartment).map_err(|e| e.to_string())?;
    ensure(orth.transformation.check_preservation(Relation::Orthogonal), || "orth swap breaks orthogonality".into())?;
    let w = orth.transformation.gram_obstruction().ok_or("orth swap has no witness")?;
    let orth_c = example_orth_swap(class(4, &[1, 2], &[1, 1]), &x, Bystanders::Explicit(vec![c.clone()])).unwrap();
    ensure(orth_c.transformation.check_preservation(Relation::Orthogonal), || "orth swap with C".into())?;
    let wc = orth_c.transformation.gram_obstruction().ok_or("orth swap with C has no witness")?;
    ensure(wc.lhs == rational(1, 1) && wc.rhs == rational(2, 1), || format!("orth witness {wc:?}"))?;

    let (ex, ey) = (Subspace::coordinate(4, &[0]), Subspace::coordinate(4, &[1]));
    let comm = example_comm_swap(rational(1, 1), rational(2, 1), 1, &ex, &ey, Bystanders::Explicit(vec![c])).unwrap();
    ensure(comm.transformation.check_preservation(Relation::Commute), || "comm swap breaks commutativity".into())?;
    let cw = comm.transformation.gram_obstruction().ok_or("comm swap has no witness")?;
    ensure(cw.lhs == rational(1, 1) && cw.rhs == rational(2, 1), || format!("comm witness {cw:?}"))?;
    let comm_ap = example_comm_swap(rational(1, 1), rational(2, 1), 1, &ex, &ey, Bystanders::Apartment).unwrap();
    ensure(comm_ap.transformation.check_preservation(Relation::Commute), || "comm swap over the apartment".into())?;
    ensure(comm_ap.transformation.gram_obstruction().is_some(), || "comm swap over the apartment: no witness".into())?;
    Ok(format!(
        "orth: witness {} vs {} (apartment), 1 vs 2 (with C); comm: tr(AC)=1 vs tr(BC)=2",
        w.lhs, w.rhs
    ))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let (mut commuting, mut orthogonal, mut total) = (0, 0, 0);
    while total < 1200 {
        let n = r.gen_range(1..=5);
        let k = r.gen_range(1..=n);
        let dims = random_dims(&mut r, k);
        let alphas: Vec<Rational> = (0..dims.len()).map(|t| rational(2 * t as i64 + 1, 1 + (t as i64 % 2))).collect();
        let cls = Arc::new(ClassDescriptor::new(n, alphas, dims).unwrap());
        let frame = random_frame(&mut r, n);
        let a = random_operator(&mut r, &cls, &frame);
        // a shared frame, a signed-permuted one, or an unrelated one
        let b = match r.gen_range(0..3) {
            0 => random_operator(&mut r, &cls, &frame),
            1 => random_operator(&mut r, &cls, &frame).conjugate_by(&signed_permutation(&mut r, n)).unwrap(),
            _ => random_operator(&mut r, &cls, &frame).conjugate_by(&random_unitary(&mut r, n, 1, true)).unwrap(),
        };
        let (ma, mb) = (a.materialize(), b.materialize());
        let (ab, ba) = (&ma * &mb, &mb * &ma);
        let c = a.commutes(&b).unwrap();
        let o = a.orthogonal(&b).unwrap();
        ensure(c == (ab == ba), || format!("commutes disagrees on\n{ma}\n{mb}"))?;
        ensure(o == (ab.is_zero() && ba.is_zero()), || format!("orthogonal disagrees on\n{ma}\n{mb}"))?;
        commuting += c as usize;
        orthogonal += o as usize;
        total += 1;
    }
    Ok(format!("{total} pairs agree ({commuting} commuting, {orthogonal} orthogonal)"))
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let mut lines = 0;
    for _ in 0..50 {
        let k = r.gen_range(1..=4);
        let n = r.gen_range(2 * k..=2 * k + 2);
        let dims = loop {
            let d = random_dims(&mut r, k);
            if d.contains(&1) {
                break d;
            }
        };
        let alphas: Vec<Rational> = (0..dims.len()).map(|t| rational(-(t as i64) - 1, 1)).collect();
        let cls = Arc::new(ClassDescriptor::new(n, alphas, dims).unwrap());
        let frame = random_frame(&mut r, n);
        let a = random_operator(&mut r, &cls, &frame);
        let ma = a.materialize();
        for y in a.eigenspaces().iter().filter(|e| e.dim() == 1) {
            let b = witness_commuting_operator(&a, y).map_err(|e| e.to_string())?;
            ensure(b.class() == a.class(), || "witness left the class".into())?;
            let mb = b.materialize();
            ensure(&ma * &mb == &mb * &ma, || "witness does not commute".into())?;
            let meet = a.image().intersect(&b.image()).unwrap();
            ensure(meet.dim() == 1 && meet == *y, || format!("images meet in dimension {}", meet.dim()))?;
            lines += 1;
        }
    }
    Ok(format!("{lines} eigenlines of 50 operators"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("orthogonal pairs count k² (n=12, d={1,2})", criterion_1),
        ("count lower bound, k ≤ 3, n ∈ {8,10,12}", criterion_2),
        ("count decides orthogonality, n ≥ 4k", criterion_3),
        ("boundary values of c and deterministic scan", criterion_4),
        ("maximal inexact subsets, n=8, d={1,1}", criterion_5),
        ("refinement of 100 random compatible families", criterion_6),
        ("swap counterexamples and trace witnesses", criterion_7),
        ("commutes/orthogonal match matrix products", criterion_8),
        ("commuting witness operators", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} PASS [{name}] {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL [{name}] {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
