//! The van Est map of a 2-vector space, from normalized groupoid cochains to
//! deformation cochains of its Lie algebroid, computed with first-order jets.
//!
//! Sections of the algebroid are affine maps `α(v) = Λv + a` from `V0` to `C`;
//! the linear ones and the constant (core) ones together detect every linear
//! algebroid cochain. Algebroid cochains are identified with the normalized
//! complex as follows:
//!
//! * degree −1: a linear section `Λ`;
//! * degree 0: `(A, B)` is the derivation `β ↦ βB − Aβ` with symbol `v ↦ Bv`;
//! * degree 1: `K` is the bracket deformation `(α0, α1) ↦ Λ1 K α0 − Λ0 K α1`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{ChainMap, ComplexError};
use crate::field::{Field, Scalar};
use crate::jet::{apply_matrix, Coefficient, Jet};
use crate::matrix::Matrix;
use crate::two_vector::{GroupoidElement, LinearCochain, TwoVectorError, TwoVectorSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VanEstError {
    DegreeUnsupported(i32),
    /// The computed algebroid cochain is not of the form the identification expects.
    Inconsistent(&'static str),
    TwoVector(TwoVectorError),
    Complex(ComplexError),
}

impl fmt::Display for VanEstError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanEstError::DegreeUnsupported(k) => write!(f, "van Est operator not available in degree {k}"),
            VanEstError::Inconsistent(what) => write!(f, "van Est image is inconsistent: {what}"),
            VanEstError::TwoVector(e) => write!(f, "{e}"),
            VanEstError::Complex(e) => write!(f, "{e}"),
        }
    }
}

impl From<TwoVectorError> for VanEstError {
    fn from(e: TwoVectorError) -> Self {
        VanEstError::TwoVector(e)
    }
}

impl From<ComplexError> for VanEstError {
    fn from(e: ComplexError) -> Self {
        VanEstError::Complex(e)
    }
}

/// `α(v) = linear · v + constant`, a section of the algebroid `C × V0 → V0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSection {
    pub linear: Matrix,
    pub constant: Vec<Scalar>,
}

impl AffineSection {
    pub fn linear(m: Matrix) -> Self {
        let constant = vec![m.field().zero(); m.rows()];
        AffineSection { linear: m, constant }
    }

    pub fn constant(field: Field, v_dim: usize, a: Vec<Scalar>) -> Self {
        AffineSection {
            linear: Matrix::zeros(field, a.len(), v_dim),
            constant: a,
        }
    }

    pub fn zero(t: &TwoVectorSpace) -> Self {
        Self::linear(Matrix::zeros(t.field(), t.c_dim(), t.v_dim()))
    }

    pub fn eval<T: Coefficient>(&self, v: &[T]) -> Vec<T> {
        apply_matrix(&self.linear, v)
            .into_iter()
            .zip(&self.constant)
            .map(|(x, a)| x.add(&T::from_scalar(a.clone())))
            .collect()
    }

    pub fn add(&self, rhs: &AffineSection) -> AffineSection {
        AffineSection {
            linear: self.linear.add(&rhs.linear),
            constant: self.constant.iter().zip(&rhs.constant).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &AffineSection) -> AffineSection {
        AffineSection {
            linear: self.linear.sub(&rhs.linear),
            constant: self.constant.iter().zip(&rhs.constant).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> AffineSection {
        AffineSection {
            linear: self.linear.scale(s),
            constant: self.constant.iter().map(|a| a * s).collect(),
        }
    }

    /// Augmented `(n+1) × (n+1)` matrix of the right-invariant field
    /// `(c, v) ↦ (α(∂c + v), 0)` on `C ⊕ V0`.
    fn right_invariant_matrix(&self, t: &TwoVectorSpace) -> Matrix {
        let (c, v) = (t.c_dim(), t.v_dim());
        let field = t.field();
        let n = c + v;
        let lp = self.linear.mul(t.partial());
        Matrix::from_fn(field, n + 1, n + 1, |i, j| {
            if i >= c {
                field.zero()
            } else if j < c {
                lp.get(i, j).clone()
            } else if j < n {
                self.linear.get(i, j - c).clone()
            } else {
                self.constant[i].clone()
            }
        })
    }
}

/// An affine vector field `p ↦ Mp + b` on `V1 = C ⊕ V0`; degree-0 groupoid
/// cochains are of this form when evaluated on affine data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineField {
    pub matrix: Matrix,
    pub offset: Vec<Scalar>,
}

impl AffineField {
    pub fn eval<T: Coefficient>(&self, p: &[T]) -> Vec<T> {
        apply_matrix(&self.matrix, p)
            .into_iter()
            .zip(&self.offset)
            .map(|(x, b)| x.add(&T::from_scalar(b.clone())))
            .collect()
    }

    /// Recovers the field from its values at `0` and at the coordinate vectors.
    pub fn from_samples(field: Field, n: usize, mut f: impl FnMut(&[Scalar]) -> Vec<Scalar>) -> Self {
        let origin = vec![field.zero(); n];
        let offset = f(&origin);
        let columns: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                let mut e = origin.clone();
                e[j] = field.one();
                f(&e).iter().zip(&offset).map(|(x, b)| x - b).collect()
            })
            .collect();
        AffineField {
            matrix: Matrix::from_columns(field, offset.len(), &columns),
            offset,
        }
    }

    /// The degree-0 cochain `(γ1, γ2)` read as the vector field `g ↦ c(g)`.
    pub fn from_cochain(t: &TwoVectorSpace, x: &LinearCochain) -> Result<Self, VanEstError> {
        if x.degree() != 0 {
            return Err(VanEstError::DegreeUnsupported(x.degree()));
        }
        let c = t.c_dim();
        Ok(Self::from_samples(t.field(), c + t.v_dim(), |p| {
            let (xc, xv) = x.evaluate(t, &[p[..c].to_vec()], &p[c..]);
            xc.into_iter().chain(xv).collect()
        }))
    }

    fn augmented(&self) -> Matrix {
        let n = self.matrix.rows();
        let field = self.matrix.field();
        Matrix::from_fn(field, n + 1, n + 1, |i, j| {
            if i == n {
                field.zero()
            } else if j == n {
                self.offset[i].clone()
            } else {
                self.matrix.get(i, j).clone()
            }
        })
    }
}

/// `Φ_ε(v)⁻¹` to first order, where `Φ_ε(v)` is the flow of the right-invariant
/// field of `α` through the unit at `v`: `(−εα(v), v + ε∂α(v))`.
pub fn flow_inverse_jet(t: &TwoVectorSpace, alpha: &AffineSection, v: &[Scalar]) -> GroupoidElement<Jet<Scalar>> {
    let field = t.field();
    let a = alpha.eval(v);
    let flow = GroupoidElement {
        c: a.into_iter().map(|x| Jet::new(field.zero(), x)).collect(),
        v: v.iter().map(|x| Jet::constant(x.clone(), field)).collect(),
    };
    t.invert(&flow)
}

/// `→α(g) = T R_g α(t g)`, computed by translating a jet at the unit.
pub fn right_invariant<T: Coefficient>(
    t: &TwoVectorSpace,
    alpha: &AffineSection,
    g: &GroupoidElement<T>,
) -> (Vec<T>, Vec<T>) {
    let field = t.field();
    let base = t.target(g);
    let unit = GroupoidElement {
        c: alpha
            .eval(&base)
            .into_iter()
            .map(|x| Jet::new(T::zero(field), x))
            .collect(),
        v: base.into_iter().map(|x| Jet::constant(x, field)).collect(),
    };
    let lift = GroupoidElement {
        c: g.c.iter().map(|x| Jet::constant(x.clone(), field)).collect(),
        v: g.v.iter().map(|x| Jet::constant(x.clone(), field)).collect(),
    };
    let moved = t.multiply(&unit, &lift).expect("unit at the target composes");
    (
        moved.c.into_iter().map(|j| j.eps).collect(),
        moved.v.into_iter().map(|j| j.eps).collect(),
    )
}

/// `R_α c = [c, →α]|_{units}` for a degree-0 cochain, via the commutator of
/// augmented matrices.
pub fn r_op0(t: &TwoVectorSpace, x: &AffineField, alpha: &AffineSection) -> AffineSection {
    let (c, v) = (t.c_dim(), t.v_dim());
    let n = c + v;
    let xh = x.augmented();
    let q = alpha.right_invariant_matrix(t);
    let bracket = q.mul(&xh).sub(&xh.mul(&q));
    AffineSection {
        linear: bracket.submatrix(0..c, c..n),
        constant: (0..c).map(|i| bracket.get(i, n).clone()).collect(),
    }
}

/// [`r_op0`] computed instead from jets: `[X, Y] = DY·X − DX·Y` with both
/// directional derivatives taken by evaluating at `p + ε·(field)`, and
/// `Y = →α` evaluated through the groupoid multiplication.
pub fn r_op0_via_jets(t: &TwoVectorSpace, x: &AffineField, alpha: &AffineSection) -> AffineSection {
    let (c, v) = (t.c_dim(), t.v_dim());
    let field = t.field();
    let bracket_at_unit = |w: &[Scalar]| -> Vec<Scalar> {
        let p: Vec<Scalar> = vec![field.zero(); c].into_iter().chain(w.iter().cloned()).collect();
        let g = GroupoidElement {
            c: p[..c].to_vec(),
            v: p[c..].to_vec(),
        };
        let (yc, yv) = right_invariant(t, alpha, &g);
        let y: Vec<Scalar> = yc.into_iter().chain(yv).collect();
        let xp = x.eval(&p);
        let shifted = |dir: &[Scalar]| -> Vec<Jet<Scalar>> {
            p.iter().zip(dir).map(|(a, b)| Jet::new(a.clone(), b.clone())).collect()
        };
        let dx_y: Vec<Scalar> = x.eval(&shifted(&y)).into_iter().map(|j| j.eps).collect();
        let px = shifted(&xp);
        let gj = GroupoidElement {
            c: px[..c].to_vec(),
            v: px[c..].to_vec(),
        };
        let (dyc, dyv) = right_invariant(t, alpha, &gj);
        let dy_x: Vec<Scalar> = dyc.into_iter().chain(dyv).map(|j| j.eps).collect();
        dy_x.iter().zip(&dx_y).take(c).map(|(a, b)| a - b).collect()
    };
    let sampled = AffineField::from_samples(field, v, bracket_at_unit);
    AffineSection {
        linear: sampled.matrix,
        constant: sampled.offset,
    }
}

/// `R_α c (g) = −d/dε c(g, Φ_ε(s g)⁻¹)` for a degree-1 cochain, as a vector field on `V1`.
pub fn r_op(t: &TwoVectorSpace, x: &LinearCochain, alpha: &AffineSection) -> Result<AffineField, VanEstError> {
    let (gamma1, gamma2) = match x {
        LinearCochain::Cochain { degree: 1, gamma1, gamma2 } => (gamma1, gamma2),
        other => return Err(VanEstError::DegreeUnsupported(other.degree())),
    };
    let c = t.c_dim();
    let field = t.field();
    let mut failure = None;
    let value = |p: &[Scalar]| -> Vec<Scalar> {
        let g = GroupoidElement {
            c: p[..c].iter().map(|s| Jet::constant(s.clone(), field)).collect(),
            v: p[c..].iter().map(|s| Jet::constant(s.clone(), field)).collect(),
        };
        let h = flow_inverse_jet(t, alpha, &p[c..]);
        if t.source(&g) != t.target(&h) {
            failure = Some(VanEstError::TwoVector(TwoVectorError::NotComposable));
        }
        let mut args1: Vec<Jet<Scalar>> = g.c.clone();
        args1.extend(h.c.iter().cloned());
        args1.extend(h.v.iter().cloned());
        let v1 = apply_matrix(gamma1, &args1);
        let v2 = apply_matrix(gamma2, &args1[c..]);
        v1.into_iter().chain(v2).map(|j| -&j.eps).collect()
    };
    let field_out = AffineField::from_samples(field, c + t.v_dim(), value);
    match failure {
        Some(e) => Err(e),
        None => Ok(field_out),
    }
}

/// `VE(c)(α0, α1) = R_{α1} R_{α0} c − R_{α0} R_{α1} c` for a degree-1 cochain.
pub fn van_est_degree1(
    t: &TwoVectorSpace,
    x: &LinearCochain,
    alpha0: &AffineSection,
    alpha1: &AffineSection,
) -> Result<AffineSection, VanEstError> {
    let a = r_op0(t, &r_op(t, x, alpha0)?, alpha1);
    let b = r_op0(t, &r_op(t, x, alpha1)?, alpha0);
    Ok(a.sub(&b))
}

fn unit_matrix(field: Field, rows: usize, cols: usize, r: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    m.set(r, j, field.one());
    m
}

fn unit_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![field.zero(); n];
    e[i] = field.one();
    e
}

/// Constant sections `e_i`, then linear sections `E_{rj}` (row-major).
fn probe_sections(t: &TwoVectorSpace) -> Vec<AffineSection> {
    let (c, v) = (t.c_dim(), t.v_dim());
    let field = t.field();
    let mut out: Vec<AffineSection> = (0..c)
        .map(|i| AffineSection::constant(field, v, unit_vector(field, c, i)))
        .collect();
    for r in 0..c {
        for j in 0..v {
            out.push(AffineSection::linear(unit_matrix(field, c, v, r, j)));
        }
    }
    out
}

/// The degree-0 normalized cochain `(A, B)` as a full cochain.
fn embed_pair(t: &TwoVectorSpace, a: &Matrix, b: &Matrix) -> LinearCochain {
    LinearCochain::Cochain {
        degree: 0,
        gamma1: a.hstack(&Matrix::zeros(t.field(), t.c_dim(), t.v_dim())),
        gamma2: b.clone(),
    }
}

/// The degree-1 normalized cochain `D` as a full cochain.
fn embed_hom(t: &TwoVectorSpace, d: &Matrix) -> LinearCochain {
    let (c, v) = (t.c_dim(), t.v_dim());
    LinearCochain::Cochain {
        degree: 1,
        gamma1: Matrix::zeros(t.field(), c, 2 * c + v),
        gamma2: d.hstack(&Matrix::zeros(t.field(), v, v)),
    }
}

/// `VE` of the degree-0 normalized cochain `(A, B)`, read back as `(A', B')`.
pub fn van_est_pair(t: &TwoVectorSpace, a: &Matrix, b: &Matrix) -> Result<(Matrix, Matrix), VanEstError> {
    let (c, v) = (t.c_dim(), t.v_dim());
    let field = t.field();
    let x = AffineField::from_cochain(t, &embed_pair(t, a, b))?;
    // Core sections: D(e_i) = −A' e_i.
    let cols: Vec<Vec<Scalar>> = (0..c)
        .map(|i| {
            let d = r_op0(t, &x, &AffineSection::constant(field, v, unit_vector(field, c, i)));
            d.constant.iter().map(|s| -s).collect()
        })
        .collect();
    let a_out = Matrix::from_columns(field, c, &cols);
    // Symbol: the source projection of the cochain along the units.
    let b_out = x.matrix.submatrix(c..c + v, c..c + v);
    for r in 0..c {
        for j in 0..v {
            let e = unit_matrix(field, c, v, r, j);
            let got = r_op0(t, &x, &AffineSection::linear(e.clone()));
            let expected = e.mul(&b_out).sub(&a_out.mul(&e));
            if got.linear != expected || !got.constant.iter().all(Scalar::is_zero) {
                return Err(VanEstError::Inconsistent("derivation on linear sections"));
            }
        }
    }
    Ok((a_out, b_out))
}

/// `VE` of the degree-1 normalized cochain `D`, read back as `K`.
pub fn van_est_hom(t: &TwoVectorSpace, d: &Matrix) -> Result<Matrix, VanEstError> {
    let (c, v) = (t.c_dim(), t.v_dim());
    let field = t.field();
    let x = embed_hom(t, d);
    let mut k = Matrix::zeros(field, v, c);
    if c > 0 {
        for i in 0..c {
            let a0 = AffineSection::constant(field, v, unit_vector(field, c, i));
            for j in 0..v {
                let a1 = AffineSection::linear(unit_matrix(field, c, v, 0, j));
                let value = van_est_degree1(t, &x, &a0, &a1)?;
                k.set(j, i, value.constant[0].clone());
            }
        }
    }
    let probes = probe_sections(t);
    for a0 in &probes {
        for a1 in &probes {
            let got = van_est_degree1(t, &x, a0, a1)?;
            let expected = bracket_deformation(&k, a0, a1);
            if got != expected {
                return Err(VanEstError::Inconsistent("bracket deformation"));
            }
        }
    }
    Ok(k)
}

/// `(α0, α1) ↦ Λ1 K α0 − Λ0 K α1`.
pub fn bracket_deformation(k: &Matrix, a0: &AffineSection, a1: &AffineSection) -> AffineSection {
    let term = |x: &AffineSection, y: &AffineSection| AffineSection {
        linear: x.linear.mul(k).mul(&y.linear),
        constant: x.linear.mul(k).mul_vec(&y.constant),
    };
    term(a1, a0).sub(&term(a0, a1))
}

/// Matrix of `VE` in degree `k ∈ {−1, 0, 1}`, in the bases of the normalized complex.
pub fn van_est_matrix(t: &TwoVectorSpace, k: i32) -> Result<Matrix, VanEstError> {
    let (c, v) = (t.c_dim(), t.v_dim());
    let field = t.field();
    match k {
        -1 => Ok(Matrix::identity(field, c * v)),
        0 => {
            let mut columns = Vec::with_capacity(c * c + v * v);
            for i in 0..c * c + v * v {
                let (a, b) = if i < c * c {
                    (unit_matrix(field, c, c, i / c, i % c), Matrix::zeros(field, v, v))
                } else {
                    let i = i - c * c;
                    (Matrix::zeros(field, c, c), unit_matrix(field, v, v, i / v, i % v))
                };
                let (a2, b2) = van_est_pair(t, &a, &b)?;
                let mut col = a2.entries().to_vec();
                col.extend(b2.entries().iter().cloned());
                columns.push(col);
            }
            Ok(Matrix::from_columns(field, c * c + v * v, &columns))
        }
        1 => {
            let mut columns = Vec::with_capacity(v * c);
            for i in 0..v * c {
                let d = unit_matrix(field, v, c, i / c, i % c);
                columns.push(van_est_hom(t, &d)?.entries().to_vec());
            }
            Ok(Matrix::from_columns(field, v * c, &columns))
        }
        other => Err(VanEstError::DegreeUnsupported(other)),
    }
}

/// `VE` as a chain map from the normalized complex to itself (degrees −1..=2).
pub fn van_est_chain_map(t: &TwoVectorSpace) -> Result<ChainMap, VanEstError> {
    let n = t.build_normalized_complex();
    let maps = vec![
        van_est_matrix(t, -1)?,
        van_est_matrix(t, 0)?,
        van_est_matrix(t, 1)?,
        Matrix::zeros(t.field(), 0, 0),
    ];
    Ok(ChainMap::new(n.clone(), n, maps)?)
}
