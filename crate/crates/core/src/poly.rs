//! Sparse multivariate polynomials with exact coefficients.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Field, Scalar};
use crate::jet::Coefficient;

/// Exponent vector with trailing zeros trimmed, so the number of variables is
/// never part of a polynomial's identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut exps = vec![0; i + 1];
        exps[i] = 1;
        Monomial(exps)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of leading variables this monomial could mention.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let n = self.0.len().max(rhs.0.len());
        Monomial((0..n).map(|i| self.exponent(i) + rhs.exponent(i)).collect())
    }

    /// Exponents padded to `n` variables.
    pub fn exponents(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exponent(i)).collect()
    }
}

/// All monomials of total degree exactly `degree` in `nvars` variables, in
/// descending lexicographic order of exponents (so `x0^degree` comes first and
/// the degree-one list is `x0, x1, …`).
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.push(left);
            out.push(Monomial::new(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(i + 1, nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(field: Field, i: usize) -> Self {
        Self::term(Monomial::var(i), field.one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn homogeneous_part(&self, e: u32) -> Poly {
        Poly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == e)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Whether some term has a positive exponent on a variable in `vars`.
    pub fn depends_on(&self, vars: core::ops::Range<usize>) -> bool {
        self.terms.keys().any(|m| vars.clone().any(|i| m.exponent(i) > 0))
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(self.field.one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes `args[i]` for variable `i`; variables beyond `args` must not occur.
    pub fn compose<T: Substitutable>(&self, args: &[T]) -> T {
        let field = self.field;
        let mut powers: Vec<Vec<T>> = args.iter().map(|a| vec![T::one(field), a.clone()]).collect();
        let mut acc = T::zero(field);
        for (m, c) in &self.terms {
            assert!(m.support_len() <= args.len(), "polynomial mentions an unbound variable");
            let mut value = T::one(field).scale(c);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw[pw.len() - 1].mul(&args[i]);
                    pw.push(next);
                }
                value = value.mul(&pw[e]);
            }
            acc = acc.add(&value);
        }
        acc
    }
}

impl Coefficient for Poly {
    fn zero(field: Field) -> Self {
        Poly::zero(field)
    }

    fn from_scalar(s: Scalar) -> Self {
        Poly::constant(s)
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    fn neg(&self) -> Self {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Coefficient rings that polynomials can be evaluated in.
pub trait Substitutable: Coefficient {
    fn one(field: Field) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
}

impl Substitutable for Scalar {
    fn one(field: Field) -> Self {
        field.one()
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Substitutable for Poly {
    fn one(field: Field) -> Self {
        Poly::constant(field.one())
    }

    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
}
