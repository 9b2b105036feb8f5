mod common;

use defcoh_core::complex::check_splitting;
use defcoh_core::field::Rational;
use defcoh_core::poly_cochains::{self, core_part, homothety_pullback, linearization, poly_complex};
use defcoh_core::{Field, Scalar};
use rand::Rng;

fn q() -> Field {
    Field::RATIONAL
}

#[test]
fn polynomial_complex_splits_off_the_linear_part() {
    let mut rng = common::rng(21);
    for _ in 0..3 {
        let t = common::random_two_vector(&mut rng, 2);
        let g = poly_complex(&t, 2, 3).unwrap();
        g.total().validate().unwrap();
        for b in g.blocks() {
            b.validate().unwrap();
        }
        let full = t.build_full_complex(2).unwrap();
        assert_eq!(g.block(1).differentials(), full.differentials());
        let incl = g.inclusion(1).unwrap();
        let lin = g.linearization_map().unwrap();
        assert!(check_splitting(&incl, &lin));
        for k in -1..=1 {
            assert!(lin.compose_after(&incl).unwrap().component(k).unwrap().is_identity());
        }
    }
}

#[test]
fn linearization_commutes_with_the_differential() {
    let mut rng = common::rng(22);
    let t = common::random_two_vector(&mut rng, 2);
    let g = poly_complex(&t, 2, 3).unwrap();
    for k in -1..=1 {
        let b = g.basis(k);
        for _ in 0..5 {
            let x: Vec<Scalar> = (0..b.dim()).map(|_| q().from_i64(rng.gen_range(-3..=3))).collect();
            let x = b.from_vector(&x).unwrap();
            let lhs = poly_cochains::differential(&t, &linearization(&x)).unwrap();
            let rhs = linearization(&poly_cochains::differential(&t, &x).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn homothety_is_a_cochain_automorphism() {
    let mut rng = common::rng(23);
    let t = common::random_two_vector(&mut rng, 2);
    let g = poly_complex(&t, 2, 3).unwrap();
    let lambdas = [q().from_i64(2), q().from_i64(3), q().from_rational(&Rational::new(1, 2).unwrap()).unwrap()];
    for lambda in &lambdas {
        for k in -1..=1 {
            let h_k = g.homothety_matrix(k, lambda).unwrap();
            let h_next = g.homothety_matrix(k + 1, lambda).unwrap();
            let d = g.total().differential(k).unwrap();
            assert_eq!(h_next.mul(d), d.mul(&h_k));
            assert_eq!(defcoh_core::linalg::rank(&h_k), h_k.rows());
        }
    }
}

#[test]
fn linear_cochains_are_homothety_invariant() {
    let mut rng = common::rng(24);
    let t = common::random_two_vector(&mut rng, 2);
    let g = poly_complex(&t, 1, 3).unwrap();
    let b = g.basis(0);
    for j in b.block(1) {
        let x = b.basis_cochain(j);
        assert_eq!(homothety_pullback(&x, &q().from_i64(5)).unwrap(), x);
        assert_eq!(linearization(&x), x);
        assert!(core_part(&x).is_zero());
    }
    for e in [0u32, 2, 3] {
        for j in b.block(e) {
            assert!(linearization(&b.basis_cochain(j)).is_zero());
        }
    }
}

#[test]
fn works_over_a_prime_field() {
    let f = Field::prime(3).unwrap();
    let t = defcoh_core::TwoVectorSpace::new(defcoh_core::Matrix::from_i64(f, &[&[1, 2]]));
    let g = poly_complex(&t, 2, 2).unwrap();
    assert!(check_splitting(&g.inclusion(1).unwrap(), &g.linearization_map().unwrap()));
}
