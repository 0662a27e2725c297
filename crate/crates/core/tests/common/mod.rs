#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ylocal_core::localmem::{check_free_rank, LinearSubspace};
use ylocal_core::polymat::ScalarMatrix;
use ylocal_core::{Field, FieldScalar, Monomial, Polynomial};

pub const Q: Field = Field::Rationals;

/// Polynomials in `n` variables with up to `terms` terms of degree at most
/// `deg` and small integer coefficients.
pub fn poly(field: Field, n: usize, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), -5i64..=5), 0..=terms).prop_map(
        move |ts| {
            Polynomial::from_terms(
                field,
                n,
                ts.into_iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= deg)
                    .map(|(e, c)| (Monomial::new(e), field.from_i64(c))),
            )
        },
    )
}

pub fn nonzero_poly(
    field: Field,
    n: usize,
    deg: u32,
    terms: usize,
) -> impl Strategy<Value = Polynomial> {
    poly(field, n, deg, terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Homogeneous polynomial of degree exactly `deg` (possibly zero).
pub fn homogeneous(
    field: Field,
    n: usize,
    deg: u32,
    terms: usize,
) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), -3i64..=3), 0..=terms).prop_map(
        move |ts| {
            Polynomial::from_terms(
                field,
                n,
                ts.into_iter().filter_map(|(mut e, c)| {
                    // push the exponent vector onto degree `deg` by adjusting the last slot
                    let head: u32 = e[..n - 1].iter().sum();
                    if head > deg {
                        return None;
                    }
                    e[n - 1] = deg - head;
                    Some((Monomial::new(e), field.from_i64(c)))
                }),
            )
        },
    )
}

pub fn scalars(field: Field, len: usize) -> impl Strategy<Value = Vec<FieldScalar>> {
    prop::collection::vec(-6i64..=6, len)
        .prop_map(move |v| v.into_iter().map(|x| field.from_i64(x)).collect())
}

pub fn scalar_matrix(
    field: Field,
    rows: usize,
    cols: usize,
    range: i64,
) -> impl Strategy<Value = ScalarMatrix> {
    prop::collection::vec(-range..=range, rows * cols).prop_map(move |v| {
        ScalarMatrix::new(
            field,
            rows,
            cols,
            v.into_iter().map(|x| field.from_i64(x)).collect(),
        )
        .unwrap()
    })
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: Field, n: usize) -> ScalarMatrix {
    let mut m = ScalarMatrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            // sparse-ish so that degenerate strata actually occur
            if rng.gen_bool(0.5) {
                m.set(i, j, field.from_i64(rng.gen_range(-2..=2)));
            }
        }
    }
    m
}

/// Random `V` of dimension `d` with a free basis. With `contains_y`, the
/// identity is planted in the span of the coefficient matrices.
pub fn random_subspace(
    seed: u64,
    field: Field,
    n: usize,
    d: usize,
    contains_y: bool,
) -> LinearSubspace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut mats: Vec<ScalarMatrix> =
            (0..d).map(|_| random_matrix(&mut rng, field, n)).collect();
        if contains_y {
            let mut planted = ScalarMatrix::identity(field, n);
            for m in &mats[1..] {
                planted = planted
                    .add(&m.scale(&field.from_i64(rng.gen_range(-2..=2))))
                    .unwrap();
            }
            let k = rng.gen_range(0..d);
            mats[0] = planted;
            mats.swap(0, k);
        }
        if mats.iter().any(ScalarMatrix::is_zero) {
            continue;
        }
        let v = LinearSubspace::from_matrices(field, n, &mats).unwrap();
        if check_free_rank(&v) {
            return v;
        }
    }
}
