mod common;

use defcoh_core::van_est::{self, r_op, r_op0, r_op0_via_jets, van_est_chain_map, van_est_matrix, AffineField, AffineSection};
use defcoh_core::{linalg, Field, LinearCochain, Matrix, Scalar, TwoVectorSpace};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_section(rng: &mut ChaCha8Rng, t: &TwoVectorSpace) -> AffineSection {
    let q = Field::RATIONAL;
    AffineSection {
        linear: common::random_matrix(rng, q, t.c_dim(), t.v_dim(), -3, 3),
        constant: (0..t.c_dim()).map(|_| q.from_i64(rng.gen_range(-3..=3))).collect(),
    }
}

fn random_field(rng: &mut ChaCha8Rng, n: usize) -> AffineField {
    let q = Field::RATIONAL;
    AffineField {
        matrix: common::random_matrix(rng, q, n, n, -3, 3),
        offset: (0..n).map(|_| q.from_i64(rng.gen_range(-3..=3))).collect(),
    }
}

fn random_degree_one(rng: &mut ChaCha8Rng, t: &TwoVectorSpace) -> LinearCochain {
    let q = Field::RATIONAL;
    let x: Vec<Scalar> = (0..t.cochain_dim(1)).map(|_| q.from_i64(rng.gen_range(-2..=2))).collect();
    LinearCochain::from_vector(t, 1, &x).unwrap()
}

#[test]
fn van_est_is_the_identity_chain_map() {
    let mut rng = common::rng(31);
    for _ in 0..20 {
        let t = common::random_two_vector(&mut rng, 3);
        for k in -1..=1 {
            let m = van_est_matrix(&t, k).unwrap();
            assert!(m.is_identity(), "degree {k}, ∂ = {:?}", t.partial());
            assert_eq!(linalg::rank(&m), m.rows());
        }
        van_est_chain_map(&t).unwrap();
    }
}

#[test]
fn bracket_routes_agree() {
    let mut rng = common::rng(32);
    for _ in 0..20 {
        let t = common::random_two_vector(&mut rng, 3);
        let x = random_field(&mut rng, t.c_dim() + t.v_dim());
        let alpha = random_section(&mut rng, &t);
        assert_eq!(r_op0(&t, &x, &alpha), r_op0_via_jets(&t, &x, &alpha));
    }
}

#[test]
fn r_operators_are_bilinear() {
    let q = Field::RATIONAL;
    let mut rng = common::rng(33);
    let two = q.from_i64(2);
    for _ in 0..10 {
        let t = common::random_two_vector(&mut rng, 3);
        let (a, b) = (random_section(&mut rng, &t), random_section(&mut rng, &t));
        let (x, y) = (random_field(&mut rng, t.c_dim() + t.v_dim()), random_field(&mut rng, t.c_dim() + t.v_dim()));
        let xy = AffineField {
            matrix: x.matrix.add(&y.matrix.scale(&two)),
            offset: x.offset.iter().zip(&y.offset).map(|(p, r)| p + &(r * &two)).collect(),
        };
        assert_eq!(r_op0(&t, &xy, &a), r_op0(&t, &x, &a).add(&r_op0(&t, &y, &a).scale(&two)));
        assert_eq!(r_op0(&t, &x, &a.add(&b.scale(&two))), r_op0(&t, &x, &a).add(&r_op0(&t, &x, &b).scale(&two)));

        let (c1, c2) = (random_degree_one(&mut rng, &t), random_degree_one(&mut rng, &t));
        let sum = LinearCochain::from_vector(
            &t,
            1,
            &c1.to_vector().iter().zip(c2.to_vector()).map(|(p, r)| p + &r).collect::<Vec<_>>(),
        )
        .unwrap();
        let lhs = r_op(&t, &sum, &a).unwrap();
        let (f1, f2) = (r_op(&t, &c1, &a).unwrap(), r_op(&t, &c2, &a).unwrap());
        assert_eq!(lhs.matrix, f1.matrix.add(&f2.matrix));
        let lhs = r_op(&t, &c1, &a.add(&b)).unwrap();
        let (g1, g2) = (r_op(&t, &c1, &a).unwrap(), r_op(&t, &c1, &b).unwrap());
        assert_eq!(lhs.matrix, g1.matrix.add(&g2.matrix));
        assert_eq!(lhs.offset, g1.offset.iter().zip(&g2.offset).map(|(p, r)| p + r).collect::<Vec<_>>());
    }
}

#[test]
fn r_op_vanishes_on_zero_inputs() {
    let mut rng = common::rng(34);
    let t = common::random_two_vector(&mut rng, 3);
    let c = random_degree_one(&mut rng, &t);
    let zero_section = AffineSection::zero(&t);
    let f = r_op(&t, &LinearCochain::zero(&t, 1), &random_section(&mut rng, &t)).unwrap();
    assert!(f.matrix.is_zero() && f.offset.iter().all(Scalar::is_zero));
    // A normalized cochain vanishes on units, so a constant flow contributes nothing.
    let normalized = t.normalized_inclusion(2).unwrap();
    let d = normalized.component(1).unwrap().col(0);
    let d = LinearCochain::from_vector(&t, 1, &d).unwrap();
    let f = r_op(&t, &d, &zero_section).unwrap();
    assert!(f.matrix.is_zero() && f.offset.iter().all(Scalar::is_zero));
    assert!(matches!(r_op(&t, &LinearCochain::zero(&t, 0), &zero_section), Err(van_est::VanEstError::DegreeUnsupported(0))));
    let _ = c;
}

#[test]
fn flow_inverse_source_is_first_order_flow() {
    let q = Field::RATIONAL;
    let t = TwoVectorSpace::new(Matrix::from_i64(q, &[&[1, 2], &[3, 4]]));
    let alpha = AffineSection { linear: Matrix::from_i64(q, &[&[1, 0], &[0, 1]]), constant: common::scalars(q, &[1, 1]) };
    let v = common::scalars(q, &[1, -1]);
    let h = van_est::flow_inverse_jet(&t, &alpha, &v);
    // α(v) = (2, 0), ∂α(v) = (2, 6)
    let src: Vec<(Scalar, Scalar)> = t.source(&h).into_iter().map(|j| (j.value, j.eps)).collect();
    assert_eq!(src, vec![(q.from_i64(1), q.from_i64(2)), (q.from_i64(-1), q.from_i64(6))]);
}
