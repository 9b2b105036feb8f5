mod common;

use defcoh_core::complex::{ChainMap, CochainComplex};
use defcoh_core::{Field, Matrix, TwoVectorSpace};
use rand::Rng;

fn betti_below_top(c: &CochainComplex) -> Vec<usize> {
    (c.kmin()..c.kmax()).map(|k| c.betti(k).unwrap()).collect()
}

#[test]
fn full_complex_matches_closed_form() {
    let mut rng = common::rng(11);
    for _ in 0..25 {
        let t = common::random_two_vector(&mut rng, 3);
        let full = t.build_full_complex(4).unwrap();
        let (h0, h1, h2) = t.closed_form_betti();
        assert_eq!(betti_below_top(&full), vec![h0, h1, h2, 0, 0], "∂ = {:?}", t.partial());
    }
}

#[test]
fn oracle_matches_closed_form_differential() {
    let mut rng = common::rng(12);
    for _ in 0..10 {
        let t = common::random_two_vector(&mut rng, 3);
        for k in -1..=3 {
            assert_eq!(t.oracle_differential(k).unwrap(), t.full_differential(k), "k = {k}, ∂ = {:?}", t.partial());
        }
    }
}

#[test]
fn oracle_squares_to_zero() {
    let mut rng = common::rng(13);
    for _ in 0..5 {
        let t = common::random_two_vector(&mut rng, 2);
        for k in -1..=2 {
            let d = t.oracle_differential(k).unwrap();
            let e = t.oracle_differential(k + 1).unwrap();
            assert!(e.mul(&d).is_zero());
        }
    }
}

#[test]
fn oracle_matches_over_prime_fields() {
    let mut rng = common::rng(14);
    for p in [2u32, 3, 5] {
        let f = Field::prime(p).unwrap();
        let t = TwoVectorSpace::new(common::random_matrix(&mut rng, f, 2, 2, 0, p as i64 - 1));
        for k in -1..=2 {
            assert_eq!(t.oracle_differential(k).unwrap(), t.full_differential(k));
        }
        let full = t.build_full_complex(3).unwrap();
        let (a, b, c) = t.closed_form_betti();
        assert_eq!(betti_below_top(&full), vec![a, b, c, 0]);
    }
}

#[test]
fn normalized_inclusion_is_quasi_isomorphism() {
    let mut rng = common::rng(15);
    for _ in 0..10 {
        let t = common::random_two_vector(&mut rng, 3);
        let incl = t.normalized_inclusion(4).unwrap();
        assert!(incl.is_quasi_iso(-1..=3).unwrap());
    }
}

#[test]
fn normalized_cochains_satisfy_vanishing_conditions() {
    let t = TwoVectorSpace::new(Matrix::from_i64(Field::RATIONAL, &[&[1, 2], &[0, 1], &[1, 1]]));
    let incl = t.normalized_inclusion(2).unwrap();
    let q = Field::RATIONAL;
    let (c, v) = (t.c_dim(), t.v_dim());
    for k in 0..=1i32 {
        let f = incl.component(k).unwrap();
        for j in 0..f.cols() {
            let x = defcoh_core::LinearCochain::from_vector(&t, k, &f.col(j)).unwrap();
            // γ1 vanishes whenever some C-argument is zero; γ2 whenever some c_i, i ≥ 1, is zero.
            for zero_slot in 0..=(k as usize) {
                let mut cs: Vec<Vec<_>> = (0..=(k as usize)).map(|i| common::scalars(q, &vec![i as i64 + 2; c])).collect();
                cs[zero_slot] = vec![q.zero(); c];
                let (g1, g2) = x.evaluate(&t, &cs, &common::scalars(q, &vec![3; v]));
                assert!(g1.iter().all(|s| s.is_zero()));
                if zero_slot >= 1 {
                    assert!(g2.iter().all(|s| s.is_zero()));
                }
            }
        }
    }
}

#[test]
fn duality_preserves_betti_numbers() {
    let mut rng = common::rng(16);
    for _ in 0..20 {
        let t = common::random_two_vector(&mut rng, 3);
        let a = betti_below_top(&t.build_full_complex(2).unwrap());
        let b = betti_below_top(&t.dual().build_full_complex(2).unwrap());
        assert_eq!(a, b);
        assert_eq!(t.dual().kernel_dim(), t.cokernel_dim());
    }
}

#[test]
fn betti_depends_only_on_kernel_and_cokernel() {
    let mut rng = common::rng(17);
    for _ in 0..10 {
        let c = rng.gen_range(1..=3);
        let v = rng.gen_range(1..=3);
        let r = rng.gen_range(0..=c.min(v));
        let t1 = TwoVectorSpace::new(common::random_of_rank(&mut rng, v, c, r));
        let t2 = TwoVectorSpace::new(common::random_of_rank(&mut rng, v, c, r));
        assert_eq!(
            betti_below_top(&t1.build_full_complex(3).unwrap()),
            betti_below_top(&t2.build_full_complex(3).unwrap())
        );
    }
}

#[test]
fn betti_is_independent_of_basis_order() {
    let mut rng = common::rng(18);
    let t = common::random_two_vector(&mut rng, 3);
    let full = t.build_full_complex(3).unwrap();
    // Reverse the basis in every degree: conjugate each differential by the reversal permutation.
    let rev = |n: usize| Matrix::from_fn(Field::RATIONAL, n, n, |i, j| if i + j + 1 == n { Field::RATIONAL.one() } else { Field::RATIONAL.zero() });
    let dims = full.dims().to_vec();
    let diffs: Vec<Matrix> = full
        .differentials()
        .iter()
        .enumerate()
        .map(|(i, d)| rev(dims[i + 1]).mul(d).mul(&rev(dims[i])))
        .collect();
    let reversed = CochainComplex::new(Field::RATIONAL, -1, dims.clone(), diffs).unwrap();
    assert_eq!(betti_below_top(&full), betti_below_top(&reversed));
    let iso = ChainMap::new(full.clone(), reversed, dims.iter().map(|&n| rev(n)).collect()).unwrap();
    assert!(iso.is_quasi_iso(-1..=2).unwrap());
}

#[test]
fn representatives_are_independent_cocycles() {
    let mut rng = common::rng(19);
    for _ in 0..5 {
        let t = common::random_two_vector(&mut rng, 2);
        let full = t.build_full_complex(3).unwrap();
        for d in full.cohomology().degrees {
            if let Some(diff) = full.differential(d.degree) {
                assert!(diff.mul(&d.representatives).is_zero());
            }
            let combined = d.boundaries.hstack(&d.representatives);
            assert_eq!(defcoh_core::linalg::rank(&combined), d.boundaries.cols() + d.betti);
        }
    }
}
