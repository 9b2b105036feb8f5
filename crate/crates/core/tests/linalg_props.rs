mod common;

use defcoh_core::field::Rational;
use defcoh_core::linalg::{self, RowOp};
use defcoh_core::{Field, Matrix, Scalar};
use proptest::prelude::*;

/// Textbook Gauss–Jordan over ℚ, written without any of the library's elimination code.
fn naive_rref(m: &Matrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.as_rational().unwrap().clone()).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols() {
        let Some(p) = (r..m.rows()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][col].recip().unwrap();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.rows() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..m.cols() {
                    let sub = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-4i64..=4, r * c)))
}

fn build(field: Field, (r, c, xs): &(usize, usize, Vec<i64>)) -> Matrix {
    Matrix::from_fn(field, *r, *c, |i, j| field.from_i64(xs[i * c + j]))
}

proptest! {
    #[test]
    fn elimination_agrees_with_textbook(entries in matrix_strategy(6)) {
        let m = build(Field::RATIONAL, &entries);
        let ours = linalg::rref(&m);
        let (theirs, pivots) = naive_rref(&m);
        prop_assert_eq!(&ours.pivot_cols, &pivots);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                prop_assert_eq!(ours.reduced.get(i, j).as_rational().unwrap(), &theirs[i][j]);
            }
        }
    }

    #[test]
    fn rank_nullity_and_transpose(spec in matrix_strategy(7), p in prop::sample::select(vec![0u32, 2, 3, 5, 7])) {
        let field = if p == 0 { Field::RATIONAL } else { Field::prime(p).unwrap() };
        let m = build(field, &spec);
        let k = linalg::kernel_basis(&m);
        prop_assert_eq!(linalg::rank(&m) + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(linalg::rank(&k), k.cols());
        prop_assert_eq!(linalg::rank(&m), linalg::rank(&m.transpose()));
    }

    #[test]
    fn rref_is_idempotent(spec in matrix_strategy(6)) {
        let m = build(Field::RATIONAL, &spec);
        let once = linalg::rref(&m);
        let twice = linalg::rref(&once.reduced);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn image_basis_spans_columns(spec in matrix_strategy(6)) {
        let m = build(Field::RATIONAL, &spec);
        let b = linalg::image_basis(&m);
        prop_assert_eq!(b.cols(), linalg::rank(&m));
        let coords = linalg::solve_in_span(&b, &m).unwrap();
        prop_assert_eq!(b.mul(&coords), m);
    }

    #[test]
    fn field_axioms(a in -50i64..50, b in -50i64..50, c in 1i64..50, d in -50i64..50, p in prop::sample::select(vec![0u32, 2, 3, 5, 7, 101])) {
        let field = if p == 0 { Field::RATIONAL } else { Field::prime(p).unwrap() };
        let q = |n: i64, m: i64| -> Scalar {
            let num = field.from_i64(n);
            let den = field.from_i64(m);
            match den.inverse() { Some(inv) => &num * &inv, None => num }
        };
        let (x, y, z) = (q(a, c), q(b, c + 1), q(d, 3));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x + &(-&x), field.zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), field.one());
        }
    }
}

#[test]
fn row_operations_replay_over_f5() {
    let f5 = Field::prime(5).unwrap();
    let mut rng = common::rng(5);
    for _ in 0..30 {
        let m = common::random_matrix(&mut rng, f5, 4, 4, 0, 4);
        let (r, ops) = linalg::rref_with_ops(&m);
        let mut forward = m.clone();
        for op in &ops {
            op.apply(&mut forward);
        }
        assert_eq!(forward, r.reduced);
        let mut back = r.reduced.clone();
        for op in ops.iter().rev() {
            op.inverse().apply(&mut back);
        }
        assert_eq!(back, m);
    }
}

#[test]
fn row_op_inverse_round_trip() {
    let q = Field::RATIONAL;
    let mut m = Matrix::from_i64(q, &[&[1, 2], &[3, 4]]);
    let orig = m.clone();
    let op = RowOp::AddMultiple { target: 0, source: 1, factor: q.from_i64(-3) };
    op.apply(&mut m);
    op.inverse().apply(&mut m);
    assert_eq!(m, orig);
}

#[test]
fn span_membership_examples() {
    let q = Field::RATIONAL;
    let id = Matrix::identity(q, 3);
    let v = common::scalars(q, &[4, -1, 7]);
    assert_eq!(linalg::coordinates_in_span(&id, &v).unwrap(), v);
    let b = Matrix::from_i64(q, &[&[1], &[1]]);
    assert_eq!(linalg::coordinates_in_span(&b, &common::scalars(q, &[2, 2])).unwrap(), common::scalars(q, &[2]));
    let b = Matrix::from_i64(q, &[&[1], &[0]]);
    assert_eq!(linalg::coordinates_in_span(&b, &common::scalars(q, &[0, 1])), Err(linalg::LinAlgError::NotInSpan));
}

#[test]
fn large_entries_stay_exact() {
    let q = Field::RATIONAL;
    let big = i64::MAX / 3;
    let m = Matrix::from_i64(q, &[&[big, big - 1, 7], &[big - 2, big, 11], &[3, 5, big]]);
    let inv = linalg::inverse(&m).unwrap();
    assert!(m.mul(&inv).is_identity());
}
