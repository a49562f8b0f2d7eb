#![allow(dead_code)]

use proptest::prelude::*;

use orthapart::linalg::{Scalar, Subspace, Vector};

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-2i64..=2, -1i64..=1).prop_map(|(re, im)| Scalar::gaussian(re, im))
}

pub fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(scalar(), n), 0..=max)
}

/// A subspace of ℂⁿ spanned by up to `n` small Gaussian integer vectors.
pub fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    vectors(n, n).prop_map(move |vs| Subspace::projection_of(n, &vs).unwrap())
}

pub fn dim_and_pair() -> impl Strategy<Value = (usize, Subspace, Subspace)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), subspace(n), subspace(n)))
}
