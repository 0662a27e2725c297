mod common;

use common::*;
use proptest::prelude::*;
use ylocal_core::polymat::{nullspace_over_field, solve_over_field, PolyMatrix, ScalarMatrix};
use ylocal_core::{FieldScalar, Polynomial};

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<FieldScalar>]) -> FieldScalar {
    let field = Q;
    if m.is_empty() {
        return field.one();
    }
    let mut acc = field.zero();
    for j in 0..m.len() {
        let sub: Vec<Vec<FieldScalar>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor_det(&sub);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

fn cofactor_poly_det(m: &PolyMatrix) -> Polynomial {
    let n = m.rows();
    if n == 0 {
        return Polynomial::one(m.field(), m.nvars());
    }
    let mut acc = Polynomial::zero(m.field(), m.nvars());
    for j in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&k| k != j).collect();
        let rows: Vec<usize> = (1..n).collect();
        let term = m.get(0, j) * &cofactor_poly_det(&m.submatrix(&rows, &cols));
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

fn poly_matrix(n: usize, rows: usize, cols: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(Q, n, 1, 2), rows * cols)
        .prop_map(move |e| PolyMatrix::new(Q, n, rows, cols, e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_det_matches_cofactor(n in 1usize..=4, seed in prop::collection::vec(-4i64..=4, 16)) {
        let rows: Vec<Vec<FieldScalar>> = (0..n).map(|i| (0..n).map(|j| Q.from_i64(seed[i * 4 + j])).collect()).collect();
        let m = ScalarMatrix::from_rows(Q, rows.clone()).unwrap();
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&rows));
    }

    #[test]
    fn poly_det_matches_cofactor_and_evaluation(m in (1usize..=3).prop_flat_map(|k| poly_matrix(3, k, k)), p in scalars(Q, 3)) {
        let det = m.det().unwrap();
        prop_assert_eq!(&det, &cofactor_poly_det(&m));
        prop_assert_eq!(m.evaluate(&p).unwrap().det().unwrap(), det.evaluate(&p).unwrap());
    }

    #[test]
    fn rank_over_l_is_largest_nonzero_minor(m in poly_matrix(3, 3, 2)) {
        let largest = (1..=2)
            .filter(|&s| m.minors(s).unwrap().iter().any(|mi| !mi.value.is_zero()))
            .max()
            .unwrap_or(0);
        prop_assert_eq!(m.rank_over_l(), largest);
    }

    #[test]
    fn solve_and_nullspace(a in scalar_matrix(Q, 3, 4, 3), x in scalars(Q, 4), b in scalars(Q, 3)) {
        // consistent by construction
        let rhs = a.mul_vec(&x).unwrap();
        let sol = solve_over_field(&a, &rhs).unwrap().expect("consistent");
        prop_assert_eq!(a.mul_vec(&sol).unwrap(), rhs);
        if let Some(s) = solve_over_field(&a, &b).unwrap() {
            prop_assert_eq!(a.mul_vec(&s).unwrap(), b);
        }
        let ns = nullspace_over_field(&a);
        prop_assert_eq!(ns.len(), 4 - a.rank());
        for v in &ns {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(FieldScalar::is_zero));
        }
    }
}
