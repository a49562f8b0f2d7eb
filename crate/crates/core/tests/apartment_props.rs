use std::collections::HashSet;
use std::sync::Arc;

use num::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use orthapart::apartment::{lemma3_bound, Apartment, Labeling, PairIndex};
use orthapart::experiments::apartment_invariance;
use orthapart::linalg::Subspace;
use orthapart::random::{random_dims, random_frame, random_member, rng};
use orthapart::{ClassDescriptor, SpectralOperator};

/// A random apartment with `n ≤ max_n` over a random frame.
fn random_apartment(seed: u64, min_n: usize, max_n: usize) -> Apartment {
    let mut r = rng(seed);
    let n = r.gen_range(min_n..=max_n);
    let k = r.gen_range(1..=n);
    let dims = random_dims(&mut r, k);
    let class = Arc::new(ClassDescriptor::with_dims(n, &dims).unwrap());
    let frame = random_frame(&mut r, n);
    Apartment::new(frame, class).unwrap()
}

fn pair_plane(ap: &Apartment, p: PairIndex) -> Subspace {
    ap.frame().line(p.i()).sum(ap.frame().line(p.j())).unwrap()
}

/// Membership in `𝒜(+i,+j)` read off the operator's eigenspaces.
fn oracle_plus_plus(ap: &Apartment, op: &SpectralOperator, p: PairIndex) -> bool {
    let plane = pair_plane(ap, p);
    op.eigenspaces().iter().any(|e| e.contains(&plane).unwrap())
}

fn oracle_minus_minus(ap: &Apartment, op: &SpectralOperator, p: PairIndex) -> bool {
    op.image().is_orthogonal_to(&pair_plane(ap, p)).unwrap()
}

/// `𝒜(+i,−j)`: line `i` sits in an eigenspace that misses line `j`.
fn oracle_plus_minus(ap: &Apartment, op: &SpectralOperator, i: usize, j: usize) -> bool {
    let (li, lj) = (ap.frame().line(i), ap.frame().line(j));
    op.eigenspaces()
        .iter()
        .any(|e| e.contains(li).unwrap() && !e.contains(lj).unwrap())
}

fn oracle_count(ap: &Apartment, a: &SpectralOperator, b: &SpectralOperator) -> u64 {
    PairIndex::all(ap.n())
        .filter(|&p| {
            let outside = |op| !(oracle_plus_plus(ap, op, p) || oracle_minus_minus(ap, op, p));
            outside(a) && outside(b)
        })
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subset_predicates_match_subspace_oracles(seed in any::<u64>()) {
        let ap = random_apartment(seed, 2, 5);
        let mut r = rng(seed);
        let l = random_member(&mut r, &ap);
        let op = ap.operator(&l).unwrap();
        for p in PairIndex::all(ap.n()) {
            let pp = oracle_plus_plus(&ap, &op, p);
            let mm = oracle_minus_minus(&ap, &op, p);
            prop_assert_eq!(l.in_plus_plus(p).unwrap(), pp);
            prop_assert_eq!(l.in_minus_minus(p).unwrap(), mm);
            prop_assert_eq!(l.in_plus_minus(p.i(), p.j()).unwrap(), oracle_plus_minus(&ap, &op, p.i(), p.j()));
            // union form against complement form
            prop_assert_eq!(l.in_orthocomplementary(p).unwrap(), !(pp || mm));
            let union = oracle_plus_minus(&ap, &op, p.i(), p.j()) || oracle_plus_minus(&ap, &op, p.j(), p.i());
            prop_assert_eq!(union, !(pp || mm));
        }
    }

    #[test]
    fn count_matches_oracle(seed in any::<u64>()) {
        let ap = random_apartment(seed, 2, 5);
        let mut r = rng(seed);
        let (la, lb) = (random_member(&mut r, &ap), random_member(&mut r, &ap));
        let (a, b) = (ap.operator(&la).unwrap(), ap.operator(&lb).unwrap());
        let count = ap.n_count(&la, &lb).unwrap();
        prop_assert_eq!(count, oracle_count(&ap, &a, &b));
        prop_assert_eq!(count, ap.n_count(&lb, &la).unwrap());
        prop_assert_eq!(la.overlap(&lb), a.image().intersect(&b.image()).unwrap().dim());
        prop_assert_eq!(la.is_orthogonal_to(&lb), a.orthogonal(&b).unwrap());
    }

    #[test]
    fn enumeration_is_complete_and_distinct(seed in any::<u64>()) {
        let ap = random_apartment(seed, 1, 5);
        let members: Vec<Labeling> = ap.members().collect();
        prop_assert_eq!(BigUint::from(members.len()), ap.member_count());
        let distinct: HashSet<_> = members.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), members.len());
        for l in members.iter().take(20) {
            ap.check_member(l).unwrap();
            let op = ap.operator(l).unwrap();
            prop_assert_eq!(ap.labeling_of(&op).unwrap(), Some(l.clone()));
        }
    }

    #[test]
    fn apartment_members_commute(seed in any::<u64>()) {
        let ap = random_apartment(seed, 1, 4);
        let mut r = rng(seed);
        let ops: Vec<_> = (0..4).map(|_| ap.operator(&random_member(&mut r, &ap)).unwrap()).collect();
        for a in &ops {
            for b in &ops {
                prop_assert!(a.commutes(b).unwrap());
            }
        }
    }

    #[test]
    fn bound_and_orthogonal_count(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=3);
        let n = r.gen_range(2 * k + 1..=2 * k + 4);
        let class = Arc::new(ClassDescriptor::with_dims(n, &random_dims(&mut r, k)).unwrap());
        let ap = Apartment::standard(class);
        for _ in 0..50 {
            let (a, b) = (random_member(&mut r, &ap), random_member(&mut r, &ap));
            let count = ap.n_count(&a, &b).unwrap() as i64;
            let m = a.overlap(&b);
            prop_assert!(count >= lemma3_bound(k, m, n).unwrap());
            if a.is_orthogonal_to(&b) {
                prop_assert_eq!(count, (k * k) as i64);
            }
        }
    }

    #[test]
    fn count_decides_orthogonality_from_four_k(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=3);
        let n = r.gen_range(4 * k..=4 * k + 2);
        let class = Arc::new(ClassDescriptor::with_dims(n, &random_dims(&mut r, k)).unwrap());
        let ap = Apartment::standard(class);
        for _ in 0..50 {
            let (a, b) = (random_member(&mut r, &ap), random_member(&mut r, &ap));
            prop_assert_eq!(ap.decide_orthogonality_by_count(&a, &b).unwrap(), a.is_orthogonal_to(&b));
        }
    }

    #[test]
    fn rotation_meets_apartment_in_agreeing_members(seed in any::<u64>()) {
        let ap = random_apartment(seed, 2, 4);
        let mut r = rng(seed);
        let pairs: Vec<_> = PairIndex::all(ap.n()).collect();
        let p = *pairs.choose(&mut r).unwrap();
        let rotated = ap.rotated(p).unwrap();
        prop_assert_ne!(rotated.frame(), ap.frame());
        let expected: HashSet<Labeling> = ap.plus_plus_or_minus_minus(p).unwrap().into_iter().collect();
        for l in ap.members() {
            let op = ap.operator(&l).unwrap();
            let shared = rotated.labeling_of(&op).unwrap().is_some();
            prop_assert_eq!(shared, expected.contains(&l));
        }
    }

    #[test]
    fn s_sets_agree_and_witnesses_rotate(seed in any::<u64>()) {
        let ap = random_apartment(seed, 2, 5);
        let mut r = rng(seed);
        let size = r.gen_range(0..=4);
        let set: Vec<Labeling> = (0..size).map(|_| random_member(&mut r, &ap)).collect();
        for i in 0..ap.n() {
            let indices = ap.s_indices(i, &set).unwrap();
            let s = ap.compute_s(i, &set).unwrap();
            prop_assert_eq!(s, ap.frame().span_of(indices));
        }
        match ap.is_orthogonally_inexact(&set).unwrap() {
            Some(p) => {
                let rotated = ap.rotated(p).unwrap();
                for l in &set {
                    let op = ap.operator(l).unwrap();
                    prop_assert!(rotated.labeling_of(&op).unwrap().is_some());
                }
            }
            None => {
                for p in PairIndex::all(ap.n()) {
                    let rotated = ap.rotated(p).unwrap();
                    let all_in = set.iter().all(|l| rotated.labeling_of(&ap.operator(l).unwrap()).unwrap().is_some());
                    prop_assert!(!all_in);
                }
            }
        }
    }

    #[test]
    fn agreeing_sets_are_maximal_inexact(seed in any::<u64>()) {
        let ap = random_apartment(seed, 2, 5);
        for p in PairIndex::all(ap.n()) {
            prop_assert!(ap.verify_maximal_inexact(p).unwrap());
        }
    }

    #[test]
    fn count_does_not_depend_on_the_apartment(seed in any::<u64>()) {
        let ap = random_apartment(seed, 2, 5);
        let mut r = rng(seed);
        let a = ap.operator(&random_member(&mut r, &ap)).unwrap();
        let b = ap.operator(&random_member(&mut r, &ap)).unwrap();
        let counts = apartment_invariance(&a, &b).unwrap();
        let here = ap.n_count(&ap.labeling_of(&a).unwrap().unwrap(), &ap.labeling_of(&b).unwrap().unwrap()).unwrap();
        prop_assert!(counts.iter().all(|&c| c == here), "{:?} vs {}", counts, here);
    }
}

/// A pair with one-dimensional image overlap, with `e_i ∈ Im A ∩ Im B` and
/// `e_j ∈ Im A ∖ Im B` in different eigenspaces of `A`, that counts strictly
/// more than the bound.
#[test]
fn bound_is_not_tight_for_unequal_dims() {
    let (n, k) = (12, 3);
    let ap = Apartment::standard(Arc::new(ClassDescriptor::with_dims(n, &[1, 2]).unwrap()));
    let members: Vec<Labeling> = ap.members().collect();
    let bound = lemma3_bound(k, 1, n).unwrap() as u64;
    let found = members.iter().find_map(|a| {
        members.iter().find(|b| {
            if a.overlap(b) != 1 || ap.n_count(a, b).unwrap() <= bound {
                false
            } else {
                (0..n).any(|i| {
                    a.slot(i).is_some()
                        && b.slot(i).is_some()
                        && (0..n).any(|j| a.slot(j).is_some() && b.slot(j).is_none() && a.slot(j) != a.slot(i))
                })
            }
        }).map(|b| (a.clone(), b.clone()))
    });
    let (a, b) = found.expect("a pair above the bound");
    assert!(ap.n_count(&a, &b).unwrap() > bound);
}

/// With one eigenvalue of multiplicity three the m = 1 bound is attained.
#[test]
fn bound_is_attained_for_projections() {
    let (n, k) = (12, 3);
    let ap = Apartment::standard(Arc::new(ClassDescriptor::with_dims(n, &[3]).unwrap()));
    let a = Labeling::from_slots(&[Some(0), Some(0), Some(0), None, None, None, None, None, None, None, None, None]);
    let b = Labeling::from_slots(&[Some(0), None, None, Some(0), Some(0), None, None, None, None, None, None, None]);
    assert_eq!(ap.n_count(&a, &b).unwrap(), lemma3_bound(k, 1, n).unwrap() as u64);
    assert_eq!(lemma3_bound(k, 1, n).unwrap(), 11);
}
