//! Seeded generators for rational unitaries, frames, compatible families
//! and class members. Everything is driven by a `ChaCha8Rng`, so a seed
//! fixes the output on every platform.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apartment::{Apartment, Labeling};
use crate::compat::Frame;
use crate::linalg::{inner, sum_all, Matrix, Scalar, Subspace, Vector};
use crate::spectral::{ClassDescriptor, SpectralOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_gaussian<R: Rng>(rng: &mut R, complex: bool) -> Scalar {
    let re = rng.gen_range(-2..=2);
    let im = if complex { rng.gen_range(-1..=1) } else { 0 };
    Scalar::gaussian(re, im)
}

/// Signed permutation matrix: a rational unitary.
pub fn signed_permutation<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(n, n);
    for (c, &r) in perm.iter().enumerate() {
        m[(r, c)] = if rng.gen_bool(0.5) { Scalar::one() } else { -Scalar::one() };
    }
    m
}

/// Householder reflection `I − 2vv*/(v*v)` for a random small Gaussian
/// integer vector `v`.
pub fn householder<R: Rng>(rng: &mut R, n: usize, complex: bool) -> Matrix {
    let v: Vector = loop {
        let v: Vector = (0..n).map(|_| small_gaussian(rng, complex)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            break v;
        }
    };
    let norm = inner(&v, &v);
    let factor = &Scalar::int(2) / &norm;
    let mut h = Matrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            let t = &(&v[r] * &v[c].conj()) * &factor;
            h[(r, c)] -= &t;
        }
    }
    h
}

/// A random rational unitary: a signed permutation followed by up to
/// `reflections` Householder reflections.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize, reflections: usize, complex: bool) -> Matrix {
    let mut u = signed_permutation(rng, n);
    for _ in 0..reflections {
        u = &householder(rng, n, complex) * &u;
    }
    u
}

/// The frame formed by the columns of a random rational unitary.
pub fn random_frame<R: Rng>(rng: &mut R, n: usize) -> Frame {
    let complex = rng.gen_bool(0.5);
    let reflections = rng.gen_range(0..=2);
    let u = random_unitary(rng, n, reflections, complex);
    Frame::from_vectors(u.columns()).expect("columns of a unitary form a frame")
}

/// `count` random sums of frame lines; the family is compatible because all
/// of its members lie in the apartment of `frame`.
pub fn random_compatible_family<R: Rng>(rng: &mut R, frame: &Frame, count: usize) -> Vec<Subspace> {
    let n = frame.ambient_dim();
    (0..count)
        .map(|_| {
            let picked: Vec<&Subspace> = (0..n).filter(|_| rng.gen_bool(0.4)).map(|i| frame.line(i)).collect();
            sum_all(n, picked).expect("frame lines share the ambient space")
        })
        .collect()
}

/// A uniformly random apartment member.
pub fn random_member<R: Rng>(rng: &mut R, ap: &Apartment) -> Labeling {
    let mut slots: Vec<Option<usize>> = vec![None; ap.n() - ap.k()];
    for (t, &d) in ap.class().dims().iter().enumerate() {
        slots.extend(std::iter::repeat_n(Some(t), d));
    }
    slots.shuffle(rng);
    Labeling::from_slots(&slots)
}

pub fn random_operator<R: Rng>(rng: &mut R, class: &Arc<ClassDescriptor>, frame: &Frame) -> SpectralOperator {
    let ap = Apartment::new(frame.clone(), class.clone()).expect("frame matches class");
    ap.operator(&random_member(rng, &ap)).expect("random member is valid")
}

/// A random composition of `k` (ordered eigenspace dimensions).
pub fn random_dims<R: Rng>(rng: &mut R, k: usize) -> Vec<usize> {
    let mut dims = Vec::new();
    let mut left = k;
    while left > 0 {
        let d = rng.gen_range(1..=left);
        dims.push(d);
        left -= d;
    }
    dims
}
