//! Polynomial (not necessarily linear) deformation cochains of a 2-vector
//! space, truncated at a maximal polynomial degree, together with the
//! homogeneity action and the linearization projection.
//!
//! A cochain of degree `k ≥ 0` is a pair `(P1, P2)` with `P1: C^{k+1} ⊕ V0 → C`
//! and `P2: C^k ⊕ V0 → V0`; in degree −1 it is a map `V0 → C`. Coordinates are
//! ordered by homogeneous degree `e`, then `P1` before `P2`, then output
//! coordinate, then monomial (see [`monomials_of_degree`]). For `e = 1` this is
//! exactly the coordinate order of [`LinearCochain`](crate::two_vector::LinearCochain).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::complex::{ChainMap, CochainComplex, ComplexError};
use crate::field::{Field, Scalar};
use crate::jet::Coefficient;
use crate::matrix::Matrix;
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::two_vector::{TwoVectorError, TwoVectorSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyCochainError {
    ZeroLambda,
    /// The differential mixes homogeneous degrees `from → to` out of cochain degree `degree`.
    OffDiagonal { degree: i32, from: u32, to: u32 },
    /// The cochain has a term of degree above the truncation bound.
    DegreeTooHigh { max: u32, found: u32 },
    Shape { degree: i32, expected: usize, found: usize },
    TwoVector(TwoVectorError),
    Complex(ComplexError),
}

impl fmt::Display for PolyCochainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyCochainError::ZeroLambda => f.write_str("homothety factor must be nonzero"),
            PolyCochainError::OffDiagonal { degree, from, to } => write!(
                f,
                "differential out of degree {degree} maps polynomial degree {from} into {to}"
            ),
            PolyCochainError::DegreeTooHigh { max, found } => {
                write!(f, "polynomial degree {found} exceeds the bound {max}")
            }
            PolyCochainError::Shape { degree, expected, found } => {
                write!(f, "degree-{degree} cochain needs {expected} components, found {found}")
            }
            PolyCochainError::TwoVector(e) => write!(f, "{e}"),
            PolyCochainError::Complex(e) => write!(f, "{e}"),
        }
    }
}

impl From<TwoVectorError> for PolyCochainError {
    fn from(e: TwoVectorError) -> Self {
        PolyCochainError::TwoVector(e)
    }
}

impl From<ComplexError> for PolyCochainError {
    fn from(e: ComplexError) -> Self {
        PolyCochainError::Complex(e)
    }
}

/// A polynomial cochain: `p1` has one polynomial per coordinate of `C`, `p2` one
/// per coordinate of `V0` (empty in degree −1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCochain {
    pub degree: i32,
    pub p1: Vec<Poly>,
    pub p2: Vec<Poly>,
}

impl PolyCochain {
    pub fn zero(t: &TwoVectorSpace, k: i32) -> Self {
        let field = t.field();
        PolyCochain {
            degree: k,
            p1: vec![Poly::zero(field); t.c_dim()],
            p2: if k >= 0 { vec![Poly::zero(field); t.v_dim()] } else { Vec::new() },
        }
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        PolyCochain {
            degree: self.degree,
            p1: self.p1.iter().map(&f).collect(),
            p2: self.p2.iter().map(&f).collect(),
        }
    }

    pub fn add(&self, rhs: &PolyCochain) -> PolyCochain {
        PolyCochain {
            degree: self.degree,
            p1: self.p1.iter().zip(&rhs.p1).map(|(a, b)| a.add(b)).collect(),
            p2: self.p2.iter().zip(&rhs.p2).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &PolyCochain) -> PolyCochain {
        PolyCochain {
            degree: self.degree,
            p1: self.p1.iter().zip(&rhs.p1).map(|(a, b)| a.sub(b)).collect(),
            p2: self.p2.iter().zip(&rhs.p2).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p1.iter().chain(&self.p2).all(Poly::is_zero)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.p1.iter().chain(&self.p2).filter_map(Poly::degree).max()
    }

    pub fn homogeneous_part(&self, e: u32) -> PolyCochain {
        self.map(|p| p.homogeneous_part(e))
    }
}

/// `h_λ^* x = λ⁻¹ · x(λ ·)`: scales the homogeneous degree-`e` part by `λ^{e−1}`.
pub fn homothety_pullback(x: &PolyCochain, lambda: &Scalar) -> Result<PolyCochain, PolyCochainError> {
    if lambda.is_zero() {
        return Err(PolyCochainError::ZeroLambda);
    }
    let scale_terms = |p: &Poly| {
        let mut out = Poly::zero(p.field());
        for (m, c) in p.terms() {
            let factor = lambda.pow(m.degree() as i32 - 1).expect("λ is invertible");
            out = out.add(&Poly::term(m.clone(), c * &factor));
        }
        out
    };
    Ok(x.map(scale_terms))
}

/// The part fixed by `λ · h_λ^*` as `λ → 0`: the constant terms.
pub fn core_part(x: &PolyCochain) -> PolyCochain {
    x.homogeneous_part(0)
}

/// The homogeneous degree-one part.
pub fn linearization(x: &PolyCochain) -> PolyCochain {
    x.homogeneous_part(1)
}

/// `δx`, computed by symbolic evaluation of the groupoid formula.
pub fn differential(t: &TwoVectorSpace, x: &PolyCochain) -> Result<PolyCochain, PolyCochainError> {
    if x.degree == -1 {
        let (p1, p2) = t.symbolic_section_differential(&x.p1);
        return Ok(PolyCochain { degree: 0, p1, p2 });
    }
    let (p1, p2) = t.symbolic_differential(x.degree as usize, &x.p1, &x.p2)?;
    Ok(PolyCochain {
        degree: x.degree + 1,
        p1,
        p2,
    })
}

/// Coordinate system for polynomial cochains of degree `k` and polynomial degree `≤ d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyBasis {
    pub degree: i32,
    pub max_poly_degree: u32,
    /// `(in_p2, output coordinate, monomial)` per coordinate.
    entries: Vec<(bool, usize, Monomial)>,
    /// `block_starts[e]..block_starts[e + 1]` holds the homogeneous degree-`e` coordinates.
    block_starts: Vec<usize>,
    field: Field,
    c_dim: usize,
    v_dim: usize,
}

impl PolyBasis {
    pub fn new(t: &TwoVectorSpace, k: i32, d: u32) -> Self {
        let (c, v) = (t.c_dim(), t.v_dim());
        let n1 = if k < 0 { v } else { (k as usize + 1) * c + v };
        let n2 = if k < 0 { 0 } else { k as usize * c + v };
        let mut entries = Vec::new();
        let mut block_starts = vec![0];
        for e in 0..=d {
            let m1 = monomials_of_degree(n1, e);
            for r in 0..c {
                entries.extend(m1.iter().map(|m| (false, r, m.clone())));
            }
            if k >= 0 {
                let m2 = monomials_of_degree(n2, e);
                for r in 0..v {
                    entries.extend(m2.iter().map(|m| (true, r, m.clone())));
                }
            }
            block_starts.push(entries.len());
        }
        PolyBasis {
            degree: k,
            max_poly_degree: d,
            entries,
            block_starts,
            field: t.field(),
            c_dim: c,
            v_dim: v,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn block(&self, e: u32) -> Range<usize> {
        self.block_starts[e as usize]..self.block_starts[e as usize + 1]
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|(in_p2, r, m)| {
                let part = if *in_p2 { "P2" } else { "P1" };
                let exps: Vec<String> = m.exponents(m.support_len()).iter().map(|e| format!("{e}")).collect();
                format!("{part}[{r}]x^({})", exps.join(","))
            })
            .collect()
    }

    pub fn basis_cochain(&self, i: usize) -> PolyCochain {
        let mut x = vec![self.field.zero(); self.dim()];
        x[i] = self.field.one();
        self.from_vector(&x).expect("basis vector has the right length")
    }

    pub fn from_vector(&self, x: &[Scalar]) -> Result<PolyCochain, PolyCochainError> {
        if x.len() != self.dim() {
            return Err(PolyCochainError::Shape {
                degree: self.degree,
                expected: self.dim(),
                found: x.len(),
            });
        }
        let mut out = PolyCochain {
            degree: self.degree,
            p1: vec![Poly::zero(self.field); self.c_dim],
            p2: if self.degree >= 0 { vec![Poly::zero(self.field); self.v_dim] } else { Vec::new() },
        };
        for ((in_p2, r, m), a) in self.entries.iter().zip(x) {
            if a.is_zero() {
                continue;
            }
            let slot = if *in_p2 { &mut out.p2[*r] } else { &mut out.p1[*r] };
            *slot = slot.add(&Poly::term(m.clone(), a.clone()));
        }
        Ok(out)
    }

    pub fn to_vector(&self, x: &PolyCochain) -> Result<Vec<Scalar>, PolyCochainError> {
        if let Some(found) = x.max_degree().filter(|&e| e > self.max_poly_degree) {
            return Err(PolyCochainError::DegreeTooHigh {
                max: self.max_poly_degree,
                found,
            });
        }
        Ok(self
            .entries
            .iter()
            .map(|(in_p2, r, m)| if *in_p2 { x.p2[*r].coeff(m) } else { x.p1[*r].coeff(m) })
            .collect())
    }
}

/// The truncated polynomial complex: the total complex on degrees `−1..=kmax`
/// and its summands of fixed homogeneous degree.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    total: CochainComplex,
    blocks: Vec<CochainComplex>,
    bases: Vec<PolyBasis>,
}

/// Builds the polynomial complex of `t` for cochain degrees `−1..=kmax` and
/// polynomial degree `≤ d`, certifying that the differential preserves
/// homogeneous degree.
pub fn poly_complex(t: &TwoVectorSpace, kmax: i32, d: u32) -> Result<GradedComplex, PolyCochainError> {
    let field = t.field();
    let bases: Vec<PolyBasis> = (-1..=kmax).map(|k| PolyBasis::new(t, k, d)).collect();
    let mut differentials = Vec::new();
    for (i, k) in (-1..kmax).enumerate() {
        let (src, tgt) = (&bases[i], &bases[i + 1]);
        let mut columns = Vec::with_capacity(src.dim());
        for j in 0..src.dim() {
            let image = differential(t, &src.basis_cochain(j))?;
            columns.push(tgt.to_vector(&image)?);
        }
        let m = Matrix::from_columns(field, tgt.dim(), &columns);
        for from in 0..=d {
            for to in (0..=d).filter(|&to| to != from) {
                if !m.submatrix(tgt.block(to), src.block(from)).is_zero() {
                    return Err(PolyCochainError::OffDiagonal { degree: k, from, to });
                }
            }
        }
        differentials.push(m);
    }
    let dims = bases.iter().map(PolyBasis::dim).collect();
    let labels = bases.iter().map(PolyBasis::labels).collect();
    let total = CochainComplex::with_labels(field, -1, dims, differentials, labels)?;
    let mut blocks = Vec::new();
    for e in 0..=d {
        let dims = bases.iter().map(|b| b.block(e).len()).collect();
        let diffs = total
            .differentials()
            .iter()
            .zip(bases.windows(2))
            .map(|(m, w)| m.submatrix(w[1].block(e), w[0].block(e)))
            .collect();
        let labels = bases
            .iter()
            .map(|b| b.labels()[b.block(e)].to_vec())
            .collect();
        blocks.push(CochainComplex::with_labels(field, -1, dims, diffs, labels)?);
    }
    Ok(GradedComplex { total, blocks, bases })
}

impl GradedComplex {
    pub fn total(&self) -> &CochainComplex {
        &self.total
    }

    pub fn block(&self, e: u32) -> &CochainComplex {
        &self.blocks[e as usize]
    }

    pub fn blocks(&self) -> &[CochainComplex] {
        &self.blocks
    }

    pub fn basis(&self, k: i32) -> &PolyBasis {
        &self.bases[(k + 1) as usize]
    }

    pub fn max_poly_degree(&self) -> u32 {
        self.blocks.len() as u32 - 1
    }

    /// Inclusion of the homogeneous degree-`e` summand into the total complex.
    pub fn inclusion(&self, e: u32) -> Result<ChainMap, ComplexError> {
        let maps = self
            .bases
            .iter()
            .map(|b| {
                let r = b.block(e);
                Matrix::from_fn(self.total.field(), b.dim(), r.len(), |i, j| {
                    if i == r.start + j {
                        self.total.field().one()
                    } else {
                        self.total.field().zero()
                    }
                })
            })
            .collect();
        ChainMap::new(self.block(e).clone(), self.total.clone(), maps)
    }

    /// Projection of the total complex onto the homogeneous degree-`e` summand.
    pub fn projection(&self, e: u32) -> Result<ChainMap, ComplexError> {
        let maps = self
            .bases
            .iter()
            .map(|b| {
                let r = b.block(e);
                Matrix::from_fn(self.total.field(), r.len(), b.dim(), |i, j| {
                    if j == r.start + i {
                        self.total.field().one()
                    } else {
                        self.total.field().zero()
                    }
                })
            })
            .collect();
        ChainMap::new(self.total.clone(), self.block(e).clone(), maps)
    }

    /// The linearization map as a chain map onto the linear summand.
    pub fn linearization_map(&self) -> Result<ChainMap, ComplexError> {
        self.projection(1)
    }

    /// Matrix of `h_λ^*` on the total complex in degree `k`.
    pub fn homothety_matrix(&self, k: i32, lambda: &Scalar) -> Result<Matrix, PolyCochainError> {
        let b = self.basis(k);
        let mut columns = Vec::with_capacity(b.dim());
        for j in 0..b.dim() {
            columns.push(b.to_vector(&homothety_pullback(&b.basis_cochain(j), lambda)?)?);
        }
        Ok(Matrix::from_columns(self.total.field(), b.dim(), &columns))
    }
}
