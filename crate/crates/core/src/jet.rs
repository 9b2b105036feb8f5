//! First-order jets `a + bε` with `ε² = 0`, over any coefficient ring used by
//! the groupoid evaluators.

use core::fmt::Debug;

use alloc::vec::Vec;

use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// The arithmetic the groupoid operations need from a coordinate type.
///
/// Implemented by plain scalars, by polynomials (for symbolic evaluation), and
/// by jets of either.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero(field: Field) -> Self;
    fn from_scalar(s: Scalar) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
}

impl Coefficient for Scalar {
    fn zero(field: Field) -> Self {
        field.zero()
    }

    fn from_scalar(s: Scalar) -> Self {
        s
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

/// `m · x` for a column of coefficients.
pub fn apply_matrix<T: Coefficient>(m: &Matrix, x: &[T]) -> Vec<T> {
    assert_eq!(m.cols(), x.len(), "shape mismatch applying a matrix");
    (0..m.rows())
        .map(|i| {
            let mut acc = T::zero(m.field());
            for (a, xi) in m.row(i).iter().zip(x) {
                if !a.is_zero() {
                    acc = acc.add(&xi.scale(a));
                }
            }
            acc
        })
        .collect()
}

/// `value + eps·ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet<T> {
    pub value: T,
    pub eps: T,
}

impl<T: Coefficient> Jet<T> {
    pub fn new(value: T, eps: T) -> Self {
        Jet { value, eps }
    }

    pub fn constant(value: T, field: Field) -> Self {
        Jet { value, eps: T::zero(field) }
    }
}

impl Jet<Scalar> {
    pub fn mul(&self, rhs: &Self) -> Self {
        Jet {
            value: &self.value * &rhs.value,
            eps: &(&self.value * &rhs.eps) + &(&rhs.value * &self.eps),
        }
    }

    /// `1 / (a + bε) = 1/a − (b/a²)ε`; `None` when `a = 0`.
    pub fn inverse(&self) -> Option<Self> {
        let inv = self.value.inverse()?;
        let eps = -&(&(&self.eps * &inv) * &inv);
        Some(Jet { value: inv, eps })
    }
}

impl<T: Coefficient> Coefficient for Jet<T> {
    fn zero(field: Field) -> Self {
        Jet {
            value: T::zero(field),
            eps: T::zero(field),
        }
    }

    fn from_scalar(s: Scalar) -> Self {
        let field = s.field();
        Jet {
            value: T::from_scalar(s),
            eps: T::zero(field),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        Jet {
            value: self.value.add(&rhs.value),
            eps: self.eps.add(&rhs.eps),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Jet {
            value: self.value.sub(&rhs.value),
            eps: self.eps.sub(&rhs.eps),
        }
    }

    fn neg(&self) -> Self {
        Jet {
            value: self.value.neg(),
            eps: self.eps.neg(),
        }
    }

    fn scale(&self, s: &Scalar) -> Self {
        Jet {
            value: self.value.scale(s),
            eps: self.eps.scale(s),
        }
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.eps.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(a: i64, b: i64) -> Jet<Scalar> {
        let q = Field::RATIONAL;
        Jet::new(q.from_i64(a), q.from_i64(b))
    }

    #[test]
    fn dual_number_laws() {
        assert_eq!(j(2, 3).mul(&j(5, 7)), j(10, 29));
        assert_eq!(j(0, 1).mul(&j(0, 1)), j(0, 0));
        let x = j(3, 4);
        assert_eq!(x.mul(&x.inverse().unwrap()), j(1, 0));
        assert!(j(0, 5).inverse().is_none());
    }

    #[test]
    fn ring_laws_over_a_prime_field() {
        let f = Field::prime(7).unwrap();
        let mk = |a: i64, b: i64| Jet::new(f.from_i64(a), f.from_i64(b));
        for a in 0..7 {
            for b in 0..7 {
                let x = mk(a, b);
                let y = mk(b + 1, a + 2);
                let z = mk(a * b, 3);
                assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
                assert_eq!(x.mul(&y), y.mul(&x));
                assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            }
        }
    }
}
