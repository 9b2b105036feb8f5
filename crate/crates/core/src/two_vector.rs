//! 2-vector spaces `∂: C → V0`, their action groupoid `C ⋉ V0 ⇉ V0`, and the
//! linear deformation complex in its full and normalized forms.
//!
//! An arrow `(c, v)` goes from `v` to `∂c + v`. A composable tuple
//! `(g_0, …, g_k)` is parametrized by `(c_0, …, c_k, v)` with `g_k = (c_k, v)`
//! and `g_i = (c_i, t(g_{i+1}))`.
//!
//! A linear cochain of degree `k ≥ 0` is a pair `(γ1, γ2)` with
//! `γ1: C^{k+1} ⊕ V0 → C` and `γ2: C^k ⊕ V0 → V0`; in degree −1 it is a single
//! map `V0 → C`. Coordinates list the entries of `γ1` row by row, then those of
//! `γ2`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{ChainMap, CochainComplex, ComplexError};
use crate::field::{Field, Scalar};
use crate::jet::{apply_matrix, Coefficient, Jet};
use crate::linalg;
use crate::matrix::Matrix;
use crate::poly::{Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoVectorError {
    /// The matching equation `s(x) = t(y)` (or `s(x) = s(y)` for division) failed.
    NotComposable,
    /// A cochain's vector has the wrong length for its degree.
    Shape { degree: i32, expected: usize, found: usize },
    /// The `V0` component of a computed cochain depends on the first arrow.
    FirstArrowDependence,
    /// A symbolic evaluation that should be linear produced other terms.
    NotLinear,
    UnsupportedDegree(i32),
    Complex(ComplexError),
}

impl fmt::Display for TwoVectorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoVectorError::NotComposable => f.write_str("arrows are not composable"),
            TwoVectorError::Shape { degree, expected, found } => {
                write!(f, "degree-{degree} cochain needs {expected} coordinates, found {found}")
            }
            TwoVectorError::FirstArrowDependence => {
                f.write_str("source projection of the cochain depends on the first arrow")
            }
            TwoVectorError::NotLinear => f.write_str("expected a linear expression"),
            TwoVectorError::UnsupportedDegree(k) => write!(f, "degree {k} is not supported here"),
            TwoVectorError::Complex(e) => write!(f, "{e}"),
        }
    }
}

impl From<ComplexError> for TwoVectorError {
    fn from(e: ComplexError) -> Self {
        TwoVectorError::Complex(e)
    }
}

/// An arrow `(c, v)` of the action groupoid, with coordinates in any coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidElement<T> {
    pub c: Vec<T>,
    pub v: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVectorSpace {
    partial: Matrix,
}

impl TwoVectorSpace {
    /// `partial` is `dim V0 × dim C`.
    pub fn new(partial: Matrix) -> Self {
        TwoVectorSpace { partial }
    }

    pub fn partial(&self) -> &Matrix {
        &self.partial
    }

    pub fn field(&self) -> Field {
        self.partial.field()
    }

    pub fn c_dim(&self) -> usize {
        self.partial.cols()
    }

    pub fn v_dim(&self) -> usize {
        self.partial.rows()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.partial)
    }

    pub fn kernel_dim(&self) -> usize {
        self.c_dim() - self.rank()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.v_dim() - self.rank()
    }

    /// The dual 2-vector space `∂ᵀ: V0* → C*`.
    pub fn dual(&self) -> TwoVectorSpace {
        TwoVectorSpace::new(self.partial.transpose())
    }

    pub fn boundary<T: Coefficient>(&self, c: &[T]) -> Vec<T> {
        apply_matrix(&self.partial, c)
    }

    pub fn source<T: Coefficient>(&self, g: &GroupoidElement<T>) -> Vec<T> {
        g.v.clone()
    }

    pub fn target<T: Coefficient>(&self, g: &GroupoidElement<T>) -> Vec<T> {
        add_vec(&self.boundary(&g.c), &g.v)
    }

    pub fn unit<T: Coefficient>(&self, v: Vec<T>) -> GroupoidElement<T> {
        GroupoidElement {
            c: vec![T::zero(self.field()); self.c_dim()],
            v,
        }
    }

    /// `(c1, ∂c2 + v) · (c2, v) = (c1 + c2, v)`.
    pub fn multiply<T: Coefficient>(
        &self,
        x: &GroupoidElement<T>,
        y: &GroupoidElement<T>,
    ) -> Result<GroupoidElement<T>, TwoVectorError> {
        if self.source(x) != self.target(y) {
            return Err(TwoVectorError::NotComposable);
        }
        Ok(GroupoidElement {
            c: add_vec(&x.c, &y.c),
            v: y.v.clone(),
        })
    }

    /// `(c, v)⁻¹ = (−c, ∂c + v)`.
    pub fn invert<T: Coefficient>(&self, x: &GroupoidElement<T>) -> GroupoidElement<T> {
        GroupoidElement {
            c: x.c.iter().map(T::neg).collect(),
            v: self.target(x),
        }
    }

    /// `x · y⁻¹`, defined when `s(x) = s(y)`.
    pub fn divide<T: Coefficient>(
        &self,
        x: &GroupoidElement<T>,
        y: &GroupoidElement<T>,
    ) -> Result<GroupoidElement<T>, TwoVectorError> {
        self.multiply(x, &self.invert(y))
    }

    /// The composable tuple with parameters `(c_0, …, c_k, v)`.
    pub fn nerve_tuple<T: Coefficient>(&self, cs: &[Vec<T>], v: &[T]) -> Vec<GroupoidElement<T>> {
        let mut out: Vec<GroupoidElement<T>> = Vec::with_capacity(cs.len());
        let mut base = v.to_vec();
        for c in cs.iter().rev() {
            let g = GroupoidElement { c: c.clone(), v: base };
            base = self.target(&g);
            out.push(g);
        }
        out.reverse();
        out
    }

    /// Inverse of [`nerve_tuple`](Self::nerve_tuple); fails on a non-composable tuple.
    pub fn nerve_params<T: Coefficient>(
        &self,
        tuple: &[GroupoidElement<T>],
    ) -> Result<(Vec<Vec<T>>, Vec<T>), TwoVectorError> {
        for pair in tuple.windows(2) {
            if self.source(&pair[0]) != self.target(&pair[1]) {
                return Err(TwoVectorError::NotComposable);
            }
        }
        let last = tuple.last().ok_or(TwoVectorError::NotComposable)?;
        Ok((tuple.iter().map(|g| g.c.clone()).collect(), last.v.clone()))
    }

    /// Dimension of the degree-`k` linear cochains (`k ≥ −1`).
    pub fn cochain_dim(&self, k: i32) -> usize {
        let (c, v) = (self.c_dim(), self.v_dim());
        match k {
            k if k < -1 => 0,
            -1 => c * v,
            k => {
                let k = k as usize;
                c * ((k + 1) * c + v) + v * (k * c + v)
            }
        }
    }

    pub fn cochain_labels(&self, k: i32) -> Vec<String> {
        let (c, v) = (self.c_dim(), self.v_dim());
        if k == -1 {
            return matrix_labels("a", c, v);
        }
        let k = k as usize;
        let mut out = matrix_labels("g1", c, (k + 1) * c + v);
        out.extend(matrix_labels("g2", v, k * c + v));
        out
    }

    /// The full linear deformation complex on degrees `−1..=kmax`, built from the
    /// closed-form differential.
    pub fn build_full_complex(&self, kmax: i32) -> Result<CochainComplex, TwoVectorError> {
        if kmax < 0 {
            return Err(TwoVectorError::UnsupportedDegree(kmax));
        }
        let dims = (-1..=kmax).map(|k| self.cochain_dim(k)).collect();
        let labels = (-1..=kmax).map(|k| self.cochain_labels(k)).collect();
        let differentials = (-1..kmax).map(|k| self.full_differential(k)).collect();
        Ok(CochainComplex::with_labels(self.field(), -1, dims, differentials, labels)?)
    }

    /// Matrix of the closed-form differential out of degree `k ≥ −1`.
    pub fn full_differential(&self, k: i32) -> Matrix {
        let columns: Vec<Vec<Scalar>> = (0..self.cochain_dim(k))
            .map(|i| {
                let x = LinearCochain::basis(self, k, i);
                self.apply_full_differential(&x).to_vector()
            })
            .collect();
        Matrix::from_columns(self.field(), self.cochain_dim(k + 1), &columns)
    }

    /// The closed-form differential applied to one cochain.
    pub fn apply_full_differential(&self, x: &LinearCochain) -> LinearCochain {
        let (c, v) = (self.c_dim(), self.v_dim());
        match x {
            LinearCochain::Section(gamma) => {
                let g1 = gamma.mul(&self.partial).hstack(&Matrix::zeros(self.field(), c, v));
                LinearCochain::Cochain {
                    degree: 0,
                    gamma1: g1,
                    gamma2: self.partial.mul(gamma),
                }
            }
            LinearCochain::Cochain { degree, gamma1, gamma2 } => {
                let k = *degree;
                let sign = |e: usize| if e % 2 == 0 { self.field().one() } else { -&self.field().one() };

                // Γ1 on (c_0, …, c_{k+1}, v); slots refer to input blocks c_0..c_{k+1}.
                let first: Vec<Vec<usize>> = (0..=k).map(|j| if j == 0 { vec![0] } else { vec![] }).collect();
                let mut big1 = gamma1.mul(&self.substitution(k + 2, &first, VSlot::Zero)).neg();
                for i in 1..=k {
                    let slots = merged_slots(k + 1, i);
                    let term = gamma1.mul(&self.substitution(k + 2, &slots, VSlot::Keep));
                    big1 = big1.add(&term.scale(&sign(i - 1)));
                }
                let last: Vec<Vec<usize>> = (0..=k).map(|j| vec![j]).collect();
                let term = gamma1.mul(&self.substitution(k + 2, &last, VSlot::BoundaryPlus(k + 1)));
                big1 = big1.add(&term.scale(&sign(k)));

                // Γ2 on (c_1, …, c_{k+1}, v); input block p holds c_{p+1}.
                let shifted: Vec<Vec<usize>> = (0..k).map(|p| vec![p + 1]).collect();
                let product = self
                    .partial
                    .mul(gamma1)
                    .add(&gamma2.mul(&self.substitution(k + 1, &shifted, VSlot::Keep)));
                let mut big2 = product.neg();
                for i in 1..=k {
                    let slots = merged_slots(k, i - 1);
                    let term = gamma2.mul(&self.substitution(k + 1, &slots, VSlot::Keep));
                    big2 = big2.add(&term.scale(&sign(i - 1)));
                }
                let last: Vec<Vec<usize>> = (0..k).map(|p| vec![p]).collect();
                let term = gamma2.mul(&self.substitution(k + 1, &last, VSlot::BoundaryPlus(k)));
                big2 = big2.add(&term.scale(&sign(k)));

                debug_assert_eq!((big1.rows(), big1.cols()), (c, (k + 2) * c + v));
                LinearCochain::Cochain {
                    degree: k + 1,
                    gamma1: big1,
                    gamma2: big2,
                }
            }
        }
    }

    /// Linear map `(C^{in_blocks} ⊕ V0) → (C^{slots.len()} ⊕ V0)` whose output
    /// block `j` is the sum of the listed input blocks.
    fn substitution(&self, in_blocks: usize, slots: &[Vec<usize>], v_slot: VSlot) -> Matrix {
        let (c, v) = (self.c_dim(), self.v_dim());
        let field = self.field();
        let mut m = Matrix::zeros(field, slots.len() * c + v, in_blocks * c + v);
        for (j, sources) in slots.iter().enumerate() {
            for &b in sources {
                for r in 0..c {
                    m.add_to(j * c + r, b * c + r, &field.one());
                }
            }
        }
        let (row0, col0) = (slots.len() * c, in_blocks * c);
        match v_slot {
            VSlot::Zero => {}
            VSlot::Keep => {
                for r in 0..v {
                    m.add_to(row0 + r, col0 + r, &field.one());
                }
            }
            VSlot::BoundaryPlus(b) => {
                for r in 0..v {
                    m.add_to(row0 + r, col0 + r, &field.one());
                    for s in 0..c {
                        m.add_to(row0 + r, b * c + s, self.partial.get(r, s));
                    }
                }
            }
        }
        m
    }

    /// Matrix of the deformation differential out of degree `k ≥ −1`, computed
    /// independently of the closed form: each basis cochain is evaluated
    /// symbolically on a generic composable tuple through the groupoid
    /// operations, with the division term differentiated via jets.
    pub fn oracle_differential(&self, k: i32) -> Result<Matrix, TwoVectorError> {
        if k < -1 {
            return Err(TwoVectorError::UnsupportedDegree(k));
        }
        let (c, v) = (self.c_dim(), self.v_dim());
        let field = self.field();
        let mut columns = Vec::with_capacity(self.cochain_dim(k));
        for i in 0..self.cochain_dim(k) {
            let (out1, out2) = match LinearCochain::basis(self, k, i) {
                LinearCochain::Section(gamma) => {
                    let alpha = linear_polys(&gamma);
                    self.symbolic_section_differential(&alpha)
                }
                LinearCochain::Cochain { gamma1, gamma2, .. } => {
                    let k = k as usize;
                    self.symbolic_differential(k, &linear_polys(&gamma1), &linear_polys(&gamma2))?
                }
            };
            let n1 = ((k + 2) as usize) * c + v;
            let n2 = ((k + 1) as usize) * c + v;
            let g1 = linear_coefficients(field, &out1, n1)?;
            let g2 = linear_coefficients(field, &out2, n2)?;
            let mut col: Vec<Scalar> = g1.entries().to_vec();
            col.extend(g2.entries().iter().cloned());
            columns.push(col);
        }
        Ok(Matrix::from_columns(field, self.cochain_dim(k + 1), &columns))
    }

    /// `δ` of a (possibly nonlinear) cochain `(P1, P2)` of degree `k ≥ 0`.
    ///
    /// `p1` has one polynomial per coordinate of `C` in the variables of
    /// `(c_0, …, c_k, v)`; `p2` has one per coordinate of `V0` in the variables of
    /// `(c_1, …, c_k, v)`. The result is given the same way in degree `k + 1`.
    pub fn symbolic_differential(
        &self,
        k: usize,
        p1: &[Poly],
        p2: &[Poly],
    ) -> Result<(Vec<Poly>, Vec<Poly>), TwoVectorError> {
        let (c, v) = (self.c_dim(), self.v_dim());
        let field = self.field();
        let block = |b: usize| -> Vec<Poly> { (0..c).map(|r| Poly::var(field, b * c + r)).collect() };
        let cs: Vec<Vec<Poly>> = (0..k + 2).map(block).collect();
        let vv: Vec<Poly> = (0..v).map(|r| Poly::var(field, (k + 2) * c + r)).collect();
        let g = self.nerve_tuple(&cs, &vv);

        let eval = |tuple: &[GroupoidElement<Poly>]| -> Result<(Vec<Poly>, Vec<Poly>), TwoVectorError> {
            let (params, w) = self.nerve_params(tuple)?;
            let mut args1: Vec<Poly> = params.iter().flatten().cloned().collect();
            args1.extend(w.iter().cloned());
            let args2 = &args1[c..];
            Ok((
                p1.iter().map(|p| p.compose(&args1)).collect(),
                p2.iter().map(|p| p.compose(args2)).collect(),
            ))
        };

        // −T m̄(c(g_0 g_1, g_2, …), c(g_1, …))
        let mut head = vec![self.multiply(&g[0], &g[1])?];
        head.extend(g[2..].iter().cloned());
        let xi = eval(&head)?;
        let eta = eval(&g[1..])?;
        let x = jet_element(&head[0], &xi);
        let y = jet_element(&g[1], &eta);
        let quotient = self.divide(&x, &y)?;
        let mut out_c: Vec<Poly> = quotient.c.iter().map(|j| j.eps.neg()).collect();
        let mut out_v: Vec<Poly> = quotient.v.iter().map(|j| j.eps.neg()).collect();

        for i in 1..=k {
            let mut merged: Vec<GroupoidElement<Poly>> = g[..i].to_vec();
            merged.push(self.multiply(&g[i], &g[i + 1])?);
            merged.extend(g[i + 2..].iter().cloned());
            let (tc, tv) = eval(&merged)?;
            let odd = (i - 1) % 2 == 1;
            accumulate(&mut out_c, &tc, odd);
            accumulate(&mut out_v, &tv, odd);
        }
        let (tc, tv) = eval(&g[..=k])?;
        accumulate(&mut out_c, &tc, k % 2 == 1);
        accumulate(&mut out_v, &tv, k % 2 == 1);

        if out_v.iter().any(|p| p.depends_on(0..c)) {
            return Err(TwoVectorError::FirstArrowDependence);
        }
        let mut shift: Vec<Poly> = vec![Poly::zero(field); c];
        shift.extend((0..(k + 1) * c + v).map(|i| Poly::var(field, i)));
        let out_v = out_v.iter().map(|p| p.compose(&shift)).collect();
        Ok((out_c, out_v))
    }

    /// `δα = ←α + →α` for a section `α: V0 → C` given by one polynomial per
    /// coordinate of `C` in the variables of `v`. Returns the degree-0 pair in
    /// the variables of `(c_0, v)` and of `v`.
    pub fn symbolic_section_differential(&self, alpha: &[Poly]) -> (Vec<Poly>, Vec<Poly>) {
        let (c, v) = (self.c_dim(), self.v_dim());
        let field = self.field();
        let g = GroupoidElement {
            c: (0..c).map(|r| Poly::var(field, r)).collect(),
            v: (0..v).map(|r| Poly::var(field, c + r)).collect(),
        };
        let lift = |g: &GroupoidElement<Poly>| -> GroupoidElement<Jet<Poly>> {
            GroupoidElement {
                c: g.c.iter().map(|x| Jet::constant(x.clone(), field)).collect(),
                v: g.v.iter().map(|x| Jet::constant(x.clone(), field)).collect(),
            }
        };
        // Unit at x moved infinitesimally along α(x) inside its source fiber.
        let unit_flow = |x: &[Poly]| -> GroupoidElement<Jet<Poly>> {
            GroupoidElement {
                c: alpha
                    .iter()
                    .map(|a| Jet::new(Poly::zero(field), a.compose(x)))
                    .collect(),
                v: x.iter().map(|p| Jet::constant(p.clone(), field)).collect(),
            }
        };
        let gj = lift(&g);
        let right = self
            .multiply(&unit_flow(&self.target(&g)), &gj)
            .expect("unit at the target composes");
        let left = self
            .multiply(&gj, &self.invert(&unit_flow(&g.v)))
            .expect("inverse unit at the source composes");
        let out_c: Vec<Poly> = right.c.iter().zip(&left.c).map(|(a, b)| a.eps.add(&b.eps)).collect();
        let out_v: Vec<Poly> = right.v.iter().zip(&left.v).map(|(a, b)| a.eps.add(&b.eps)).collect();
        assert!(
            !out_v.iter().any(|p| p.depends_on(0..c)),
            "source projection of δα depends on the arrow"
        );
        let mut shift: Vec<Poly> = vec![Poly::zero(field); c];
        shift.extend((0..v).map(|i| Poly::var(field, i)));
        let out_v = out_v.iter().map(|p| p.compose(&shift)).collect();
        (out_c, out_v)
    }

    /// The normalized complex `Hom(V0, C) → End C ⊕ End V0 → Hom(C, V0)` on
    /// degrees −1..=1, followed by a zero space in degree 2.
    pub fn build_normalized_complex(&self) -> CochainComplex {
        let (c, v) = (self.c_dim(), self.v_dim());
        let field = self.field();
        let d0_cols: Vec<Vec<Scalar>> = (0..c * v)
            .map(|i| {
                let g = unit_matrix(field, c, v, i);
                let mut col = g.mul(&self.partial).entries().to_vec();
                col.extend(self.partial.mul(&g).entries().iter().cloned());
                col
            })
            .collect();
        let d0 = Matrix::from_columns(field, c * c + v * v, &d0_cols);
        let d1_cols: Vec<Vec<Scalar>> = (0..c * c + v * v)
            .map(|i| {
                let (a, b) = if i < c * c {
                    (unit_matrix(field, c, c, i), Matrix::zeros(field, v, v))
                } else {
                    (Matrix::zeros(field, c, c), unit_matrix(field, v, v, i - c * c))
                };
                b.mul(&self.partial).sub(&self.partial.mul(&a)).entries().to_vec()
            })
            .collect();
        let d1 = Matrix::from_columns(field, v * c, &d1_cols);
        let d2 = Matrix::zeros(field, 0, v * c);
        let mut l0 = matrix_labels("A", c, c);
        l0.extend(matrix_labels("B", v, v));
        let labels = vec![matrix_labels("a", c, v), l0, matrix_labels("D", v, c), Vec::new()];
        CochainComplex::with_labels(
            field,
            -1,
            vec![c * v, c * c + v * v, v * c, 0],
            vec![d0, d1, d2],
            labels,
        )
        .expect("normalized differentials compose to zero")
    }

    /// Inclusion of the normalized complex (padded with zero spaces up to `kmax`)
    /// into the full complex on degrees `−1..=kmax`.
    pub fn normalized_inclusion(&self, kmax: i32) -> Result<ChainMap, TwoVectorError> {
        if kmax < 2 {
            return Err(TwoVectorError::UnsupportedDegree(kmax));
        }
        let (c, v) = (self.c_dim(), self.v_dim());
        let field = self.field();
        let source = self.build_normalized_complex().extend_to(kmax);
        let target = self.build_full_complex(kmax)?;
        let mut maps = vec![Matrix::identity(field, c * v)];
        let f0_cols: Vec<Vec<Scalar>> = (0..c * c + v * v)
            .map(|i| {
                let (a, b) = if i < c * c {
                    (unit_matrix(field, c, c, i), Matrix::zeros(field, v, v))
                } else {
                    (Matrix::zeros(field, c, c), unit_matrix(field, v, v, i - c * c))
                };
                LinearCochain::Cochain {
                    degree: 0,
                    gamma1: a.hstack(&Matrix::zeros(field, c, v)),
                    gamma2: b,
                }
                .to_vector()
            })
            .collect();
        maps.push(Matrix::from_columns(field, self.cochain_dim(0), &f0_cols));
        let f1_cols: Vec<Vec<Scalar>> = (0..v * c)
            .map(|i| {
                let d = unit_matrix(field, v, c, i);
                LinearCochain::Cochain {
                    degree: 1,
                    gamma1: Matrix::zeros(field, c, 2 * c + v),
                    gamma2: d.hstack(&Matrix::zeros(field, v, v)),
                }
                .to_vector()
            })
            .collect();
        maps.push(Matrix::from_columns(field, self.cochain_dim(1), &f1_cols));
        for k in 2..=kmax {
            maps.push(Matrix::zeros(field, self.cochain_dim(k), 0));
        }
        Ok(ChainMap::new(source, target, maps)?)
    }

    /// `(q·k0, q² + k0², k0·q)` with `k0 = dim ker ∂`, `q = dim coker ∂`.
    pub fn closed_form_betti(&self) -> (usize, usize, usize) {
        let (k0, q) = (self.kernel_dim(), self.cokernel_dim());
        (q * k0, q * q + k0 * k0, k0 * q)
    }
}

#[derive(Clone, Copy)]
enum VSlot {
    Zero,
    Keep,
    BoundaryPlus(usize),
}

/// Slots `0..n` reading input blocks `0..=n`, with slot `i` receiving blocks `i` and `i + 1`.
fn merged_slots(n: usize, i: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|j| match j.cmp(&i) {
            core::cmp::Ordering::Less => vec![j],
            core::cmp::Ordering::Equal => vec![j, j + 1],
            core::cmp::Ordering::Greater => vec![j + 1],
        })
        .collect()
}

fn add_vec<T: Coefficient>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn accumulate(acc: &mut [Poly], term: &[Poly], negate: bool) {
    for (a, t) in acc.iter_mut().zip(term) {
        *a = if negate { a.sub(t) } else { a.add(t) };
    }
}

fn jet_element(base: &GroupoidElement<Poly>, tangent: &(Vec<Poly>, Vec<Poly>)) -> GroupoidElement<Jet<Poly>> {
    GroupoidElement {
        c: base.c.iter().zip(&tangent.0).map(|(x, e)| Jet::new(x.clone(), e.clone())).collect(),
        v: base.v.iter().zip(&tangent.1).map(|(x, e)| Jet::new(x.clone(), e.clone())).collect(),
    }
}

/// Row `r` of `m` as the linear form `Σ_j m[r, j] x_j`.
fn linear_polys(m: &Matrix) -> Vec<Poly> {
    let field = m.field();
    (0..m.rows())
        .map(|r| {
            let mut p = Poly::zero(field);
            for (j, a) in m.row(r).iter().enumerate() {
                p = p.add(&Poly::term(Monomial::var(j), a.clone()));
            }
            p
        })
        .collect()
}

/// Inverse of [`linear_polys`] on `n` variables; fails on any non-linear term.
fn linear_coefficients(field: Field, polys: &[Poly], n: usize) -> Result<Matrix, TwoVectorError> {
    let mut m = Matrix::zeros(field, polys.len(), n);
    for (r, p) in polys.iter().enumerate() {
        for (mono, a) in p.terms() {
            if mono.degree() != 1 || mono.support_len() > n {
                return Err(TwoVectorError::NotLinear);
            }
            let j = mono.support_len() - 1;
            m.set(r, j, a.clone());
        }
    }
    Ok(m)
}

fn unit_matrix(field: Field, rows: usize, cols: usize, index: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    m.set(index / cols, index % cols, field.one());
    m
}

fn matrix_labels(name: &str, rows: usize, cols: usize) -> Vec<String> {
    (0..rows)
        .flat_map(|r| (0..cols).map(move |j| format!("{name}[{r},{j}]")))
        .collect()
}

/// A linear deformation cochain of a fixed 2-vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearCochain {
    /// Degree −1: a linear section `V0 → C`.
    Section(Matrix),
    /// Degree `k ≥ 0`.
    Cochain { degree: usize, gamma1: Matrix, gamma2: Matrix },
}

impl LinearCochain {
    pub fn degree(&self) -> i32 {
        match self {
            LinearCochain::Section(_) => -1,
            LinearCochain::Cochain { degree, .. } => *degree as i32,
        }
    }

    pub fn zero(t: &TwoVectorSpace, k: i32) -> Self {
        Self::from_vector(t, k, &vec![t.field().zero(); t.cochain_dim(k)]).expect("zero vector has the right length")
    }

    /// The `i`-th coordinate basis cochain of degree `k`.
    pub fn basis(t: &TwoVectorSpace, k: i32, i: usize) -> Self {
        let mut x = vec![t.field().zero(); t.cochain_dim(k)];
        x[i] = t.field().one();
        Self::from_vector(t, k, &x).expect("basis vector has the right length")
    }

    pub fn from_vector(t: &TwoVectorSpace, k: i32, x: &[Scalar]) -> Result<Self, TwoVectorError> {
        let expected = t.cochain_dim(k);
        if k < -1 || x.len() != expected {
            return Err(TwoVectorError::Shape {
                degree: k,
                expected,
                found: x.len(),
            });
        }
        let (c, v) = (t.c_dim(), t.v_dim());
        let field = t.field();
        let block = |rows: usize, cols: usize, off: usize| Matrix::from_fn(field, rows, cols, |i, j| x[off + i * cols + j].clone());
        if k == -1 {
            return Ok(LinearCochain::Section(block(c, v, 0)));
        }
        let k = k as usize;
        let n1 = (k + 1) * c + v;
        Ok(LinearCochain::Cochain {
            degree: k,
            gamma1: block(c, n1, 0),
            gamma2: block(v, k * c + v, c * n1),
        })
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        match self {
            LinearCochain::Section(g) => g.entries().to_vec(),
            LinearCochain::Cochain { gamma1, gamma2, .. } => {
                let mut out = gamma1.entries().to_vec();
                out.extend(gamma2.entries().iter().cloned());
                out
            }
        }
    }

    /// Value on the tuple with parameters `(c_0, …, c_k, v)`: the tangent vector
    /// `(γ1(c_0, …, c_k, v), γ2(c_1, …, c_k, v))` at `g_0`.
    pub fn evaluate(&self, t: &TwoVectorSpace, cs: &[Vec<Scalar>], v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        match self {
            LinearCochain::Section(g) => (g.mul_vec(v), vec![t.field().zero(); t.v_dim()]),
            LinearCochain::Cochain { gamma1, gamma2, .. } => {
                let mut args: Vec<Scalar> = cs.iter().flatten().cloned().collect();
                args.extend(v.iter().cloned());
                let tail = &args[t.c_dim().min(args.len())..];
                (gamma1.mul_vec(&args), gamma2.mul_vec(tail))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::RATIONAL
    }

    fn tv(rows: &[&[i64]]) -> TwoVectorSpace {
        TwoVectorSpace::new(Matrix::from_i64(q(), rows))
    }

    fn s(n: i64) -> Scalar {
        q().from_i64(n)
    }

    #[test]
    fn groupoid_laws() {
        let t = tv(&[&[1, 2], &[0, 3]]);
        let g = GroupoidElement { c: vec![s(1), s(-1)], v: vec![s(4), s(5)] };
        let unit = t.unit(t.source(&g));
        assert_eq!(t.multiply(&g, &unit).unwrap(), g);
        assert_eq!(t.multiply(&t.unit(t.target(&g)), &g).unwrap(), g);
        assert_eq!(t.invert(&t.invert(&g)), g);
        let h = GroupoidElement { c: vec![s(2), s(7)], v: vec![s(4), s(5)] };
        let d = t.divide(&g, &h).unwrap();
        assert_eq!(d.c, vec![s(-1), s(-8)]);
        assert_eq!(d.v, t.target(&h));
        assert_eq!(t.multiply(&g, &g), Err(TwoVectorError::NotComposable));
    }

    #[test]
    fn nerve_round_trip() {
        let t = tv(&[&[2]]);
        let cs = vec![vec![s(1)], vec![s(3)], vec![s(-2)]];
        let tuple = t.nerve_tuple(&cs, &[s(5)]);
        assert_eq!(tuple[2].v, vec![s(5)]);
        assert_eq!(tuple[1].v, vec![s(1)]);
        assert_eq!(tuple[0].v, vec![s(7)]);
        assert_eq!(t.nerve_params(&tuple).unwrap(), (cs, vec![s(5)]));
    }

    #[test]
    fn dimensions_in_the_scalar_case() {
        let t = tv(&[&[1]]);
        let dims: Vec<usize> = (-1..=3).map(|k| t.cochain_dim(k)).collect();
        assert_eq!(dims, vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn degree_minus_one_differential_vanishes_for_zero_partial() {
        let t = tv(&[&[0, 0]]);
        assert!(t.full_differential(-1).is_zero());
    }

    #[test]
    fn oracle_matches_closed_form_small_case() {
        for rows in [&[&[0i64][..]][..], &[&[1][..]], &[&[3][..]]] {
            let t = tv(rows);
            for k in -1..=2 {
                assert_eq!(t.oracle_differential(k).unwrap(), t.full_differential(k), "k = {k}");
            }
        }
    }

    #[test]
    fn oracle_section_differential_on_identity() {
        let t = tv(&[&[5]]);
        let d = t.oracle_differential(-1).unwrap();
        // γ1(c0, v) = 5 c0 (coefficient of c0, then of v), γ2(v) = 5 v
        assert_eq!(d, Matrix::from_i64(q(), &[&[5], &[0], &[5]]));
    }

    #[test]
    fn normalized_examples() {
        let t = tv(&[&[1, 0], &[0, 0]]);
        let n = t.build_normalized_complex();
        let b: Vec<usize> = (-1..=1).map(|k| n.betti(k).unwrap()).collect();
        assert_eq!(b, vec![1, 2, 1]);
        assert_eq!(t.closed_form_betti(), (1, 2, 1));
        let z = tv(&[&[0, 0]]);
        assert_eq!(z.closed_form_betti(), (2, 5, 2));
        let n = z.build_normalized_complex();
        let b: Vec<usize> = (-1..=1).map(|k| n.betti(k).unwrap()).collect();
        assert_eq!(b, vec![2, 5, 2]);
    }

    #[test]
    fn inclusion_is_a_quasi_isomorphism_in_small_cases() {
        for rows in [&[&[0i64][..]][..], &[&[1, 0], &[0, 0]]] {
            let t = tv(rows);
            let incl = t.normalized_inclusion(3).unwrap();
            assert!(incl.component(-1).unwrap().is_identity());
            assert!(incl.is_quasi_iso(-1..=2).unwrap());
        }
    }

    #[test]
    fn dual_is_an_involution() {
        let t = tv(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(t.dual().dual(), t);
        assert_eq!(t.dual().kernel_dim(), t.cokernel_dim());
    }
}
