//! Finite groups given by multiplication tables, their matrix representations,
//! the bar complex with coefficients, and the deformation complex of the
//! associated trivial-core VB-group `G ⋉ E`.
//!
//! A `k`-cochain is a function `G^k → E`. Its coordinate vector lists the
//! values on tuples in lexicographic order (first entry most significant), each
//! value written in the basis of `E`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{CochainComplex, ComplexError};
use crate::field::{Field, Scalar};
use crate::linalg;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    NotAGroup(String),
    UnknownPreset(String),
    NotARepresentation(String),
    Complex(ComplexError),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotAGroup(r) => write!(f, "not a group: {r}"),
            GroupError::UnknownPreset(p) => write!(f, "unknown group preset {p}"),
            GroupError::NotARepresentation(r) => write!(f, "not a representation: {r}"),
            GroupError::Complex(e) => write!(f, "{e}"),
        }
    }
}

impl From<ComplexError> for GroupError {
    fn from(e: ComplexError) -> Self {
        GroupError::Complex(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// `table[a][b]` is the index of `a·b`. Checks closure, identity, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::NotAGroup(format!("entry {x} in row {a} is out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| GroupError::NotAGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
        })
    }

    /// Integers mod `n` under addition.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::UnknownPreset("cyclic(0)".into()));
        }
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// Two-bit vectors under XOR.
    pub fn klein_four() -> Self {
        Self::from_table((0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()).expect("Z2 x Z2")
    }

    /// Permutations of `0..n` in lexicographic order of their images, with
    /// `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 4 {
            return Err(GroupError::UnknownPreset(format!("symmetric({n})")));
        }
        let perms = permutations(n);
        let index: BTreeMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index[&t.iter().map(|&i| s[i]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    /// Looks up `cyclic`, `klein_four` or `symmetric` by name.
    pub fn preset(name: &str, n: Option<usize>) -> Result<Self, GroupError> {
        match (name, n) {
            ("cyclic", Some(n)) => Self::cyclic(n),
            ("klein_four", None) => Ok(Self::klein_four()),
            ("symmetric", Some(n)) => Self::symmetric(n),
            _ => Err(GroupError::UnknownPreset(match n {
                Some(n) => format!("{name}({n})"),
                None => String::from(name),
            })),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = vec![false; self.order()];
        reached[self.identity] = true;
        for g in 0..self.order() {
            if !reached[g] {
                gens.push(g);
                reached = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut reached = vec![false; self.order()];
        reached[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !reached[b] {
                    reached[b] = true;
                    queue.push_back(b);
                }
            }
        }
        reached
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// A homomorphism `ρ: G → GL(E)`, with `rho[g]` the matrix of element `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    group: FiniteGroup,
    field: Field,
    dim: usize,
    rho: Vec<Matrix>,
}

impl Representation {
    pub fn new(group: FiniteGroup, field: Field, rho: Vec<Matrix>) -> Result<Self, GroupError> {
        if rho.len() != group.order() {
            return Err(GroupError::NotARepresentation(format!(
                "{} matrices for a group of order {}",
                rho.len(),
                group.order()
            )));
        }
        let dim = rho[0].rows();
        for (g, m) in rho.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim || m.field() != field {
                return Err(GroupError::NotARepresentation(format!(
                    "matrix of element {g} is not a {dim}x{dim} matrix over {field}"
                )));
            }
        }
        if !rho[group.identity()].is_identity() {
            return Err(GroupError::NotARepresentation("identity element acts nontrivially".into()));
        }
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                if rho[group.mul(a, b)] != rho[a].mul(&rho[b]) {
                    return Err(GroupError::NotARepresentation(format!("ρ({a}·{b}) ≠ ρ({a})ρ({b})")));
                }
            }
        }
        Ok(Representation { group, field, dim, rho })
    }

    pub fn trivial(group: FiniteGroup, field: Field, dim: usize) -> Self {
        let rho = vec![Matrix::identity(field, dim); group.order()];
        Representation { group, field, dim, rho }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, g: usize) -> &Matrix {
        &self.rho[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.rho
    }

    /// `φ ↦ ρ(g) φ ρ(g)⁻¹` on `End E`, in the row-major basis of matrix entries.
    pub fn end_rep(&self) -> Representation {
        let rho = (0..self.group.order())
            .map(|g| {
                let inv_t = self.rho[self.group.inv(g)].transpose();
                self.rho[g].kronecker(&inv_t)
            })
            .collect();
        Representation::new(self.group.clone(), self.field, rho).expect("conjugation is a representation")
    }

    /// `ρ*(g) = ρ(g⁻¹)ᵀ`.
    pub fn dual_rep(&self) -> Representation {
        let rho = (0..self.group.order())
            .map(|g| self.rho[self.group.inv(g)].transpose())
            .collect();
        Representation::new(self.group.clone(), self.field, rho).expect("dual is a representation")
    }

    /// Block direct sum `ρ ⊕ σ`.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, GroupError> {
        if self.group != other.group || self.field != other.field {
            return Err(GroupError::NotARepresentation("summands over different groups or fields".into()));
        }
        let (a, b) = (self.dim, other.dim);
        let rho = self
            .rho
            .iter()
            .zip(&other.rho)
            .map(|(x, y)| {
                Matrix::from_fn(self.field, a + b, a + b, |i, j| match (i < a, j < a) {
                    (true, true) => x.get(i, j).clone(),
                    (false, false) => y.get(i - a, j - a).clone(),
                    _ => self.field.zero(),
                })
            })
            .collect();
        Representation::new(self.group.clone(), self.field, rho)
    }

    /// `dim E^G`, the common kernel of all `ρ(g) − I`.
    pub fn invariants_dim(&self) -> usize {
        let id = Matrix::identity(self.field, self.dim);
        let stacked = self
            .rho
            .iter()
            .fold(Matrix::zeros(self.field, 0, self.dim), |acc, m| acc.vstack(&m.sub(&id)));
        self.dim - linalg::rank(&stacked)
    }

    /// Dimension of `k`-cochains `G^k → E`.
    pub fn cochain_dim(&self, k: usize) -> usize {
        self.group.order().pow(k as u32) * self.dim
    }

    /// The bar complex `C(G, E)` on degrees `0..=kmax`, with
    /// `δu(g_1, …, g_{k+1}) = g_1·u(g_2, …) + Σ (−1)^i u(…, g_i g_{i+1}, …) + (−1)^{k+1} u(g_1, …, g_k)`.
    pub fn bar_complex(&self, kmax: usize) -> CochainComplex {
        let differentials = (0..kmax).map(|k| self.bar_differential(k)).collect();
        let dims = (0..=kmax).map(|k| self.cochain_dim(k)).collect();
        let labels = (0..=kmax).map(|k| self.cochain_labels(k, self.dim, "u")).collect();
        CochainComplex::with_labels(self.field, 0, dims, differentials, labels).expect("bar differential squares to zero")
    }

    pub fn bar_differential(&self, k: usize) -> Matrix {
        let n = self.group.order();
        let d = self.dim;
        let one = self.field.one();
        let mut m = Matrix::zeros(self.field, self.cochain_dim(k + 1), self.cochain_dim(k));
        let add_identity = |m: &mut Matrix, row_t: usize, col_t: usize, s: &Scalar| {
            for a in 0..d {
                m.add_to(row_t * d + a, col_t * d + a, s);
            }
        };
        for (row_t, tuple) in tuples(n, k + 1).enumerate() {
            let tail = tuple_index(n, &tuple[1..]);
            let g1 = &self.rho[tuple[0]];
            for a in 0..d {
                for b in 0..d {
                    let x = g1.get(a, b);
                    if !x.is_zero() {
                        m.add_to(row_t * d + a, tail * d + b, x);
                    }
                }
            }
            for i in 1..=k {
                let merged = merge_at(&self.group, &tuple, i);
                let sign = if i % 2 == 0 { one.clone() } else { -&one };
                add_identity(&mut m, row_t, tuple_index(n, &merged), &sign);
            }
            let sign = if (k + 1) % 2 == 0 { one.clone() } else { -&one };
            add_identity(&mut m, row_t, tuple_index(n, &tuple[..k]), &sign);
        }
        m
    }

    /// The linear deformation complex of `G ⋉ E` on degrees `0..=kmax`: cochains
    /// `G^k → End E` with
    /// `δc(g_1, …, g_{k+1}) = −ρ(g_1) c(g_2, …) ρ(g_1)⁻¹ + Σ (−1)^{i−1} c(…, g_i g_{i+1}, …) + (−1)^k c(g_1, …, g_k)`.
    pub fn trivialcore_def_complex(&self, kmax: usize) -> CochainComplex {
        let e = self.dim * self.dim;
        let n = self.group.order();
        let dim = |k: usize| n.pow(k as u32) * e;
        let differentials = (0..kmax).map(|k| self.trivialcore_differential(k)).collect();
        let dims = (0..=kmax).map(dim).collect();
        let labels = (0..=kmax).map(|k| self.cochain_labels(k, e, "c")).collect();
        CochainComplex::with_labels(self.field, 0, dims, differentials, labels)
            .expect("trivial-core differential squares to zero")
    }

    pub fn trivialcore_differential(&self, k: usize) -> Matrix {
        let n = self.group.order();
        let d = self.dim;
        let e = d * d;
        let one = self.field.one();
        // Conjugation ρ(g)·E_{ab}·ρ(g)⁻¹ of each matrix unit, for every g.
        let conj: Vec<Vec<Matrix>> = (0..n)
            .map(|g| {
                let inv = &self.rho[self.group.inv(g)];
                (0..e)
                    .map(|ab| {
                        let mut unit = Matrix::zeros(self.field, d, d);
                        unit.set(ab / d, ab % d, one.clone());
                        self.rho[g].mul(&unit).mul(inv)
                    })
                    .collect()
            })
            .collect();
        let rows = n.pow(k as u32 + 1) * e;
        let cols = n.pow(k as u32) * e;
        let mut m = Matrix::zeros(self.field, rows, cols);
        for (row_t, tuple) in tuples(n, k + 1).enumerate() {
            let tail = tuple_index(n, &tuple[1..]);
            for (ab, image) in conj[tuple[0]].iter().enumerate() {
                for (ij, x) in image.entries().iter().enumerate() {
                    if !x.is_zero() {
                        m.add_to(row_t * e + ij, tail * e + ab, &-x);
                    }
                }
            }
            for i in 1..=k {
                let merged = merge_at(&self.group, &tuple, i);
                let sign = if (i - 1) % 2 == 0 { one.clone() } else { -&one };
                let col_t = tuple_index(n, &merged);
                for a in 0..e {
                    m.add_to(row_t * e + a, col_t * e + a, &sign);
                }
            }
            let sign = if k % 2 == 0 { one.clone() } else { -&one };
            let col_t = tuple_index(n, &tuple[..k]);
            for a in 0..e {
                m.add_to(row_t * e + a, col_t * e + a, &sign);
            }
        }
        m
    }

    fn cochain_labels(&self, k: usize, width: usize, name: &str) -> Vec<String> {
        let n = self.group.order();
        let mut out = Vec::with_capacity(n.pow(k as u32) * width);
        for t in tuples(n, k) {
            let args: Vec<String> = t.iter().map(|g| format!("{g}")).collect();
            for a in 0..width {
                out.push(format!("{name}({})[{a}]", args.join(",")));
            }
        }
        out
    }
}

/// All `k`-tuples of `0..n` in lexicographic order.
fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(k as u32);
    (0..total).map(move |mut idx| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        t
    })
}

fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * n + g)
}

/// Replaces entries `i − 1, i` (1-based `g_i, g_{i+1}`) by their product.
fn merge_at(group: &FiniteGroup, t: &[usize], i: usize) -> Vec<usize> {
    let mut out = t[..i - 1].to_vec();
    out.push(group.mul(t[i - 1], t[i]));
    out.extend_from_slice(&t[i + 1..]);
    out
}

/// Rational representations of dimension `≤ 2` of the preset groups, one per
/// isomorphism class: irreducibles and their direct sums.
pub mod catalog {
    use super::*;

    /// Irreducible rational representations of dimension `≤ 2`, or `None` when
    /// the group is not one this catalog knows.
    pub fn small_rational_irreps(name: &str, n: Option<usize>) -> Option<Vec<Representation>> {
        let q = Field::RATIONAL;
        match (name, n) {
            ("cyclic", Some(n)) if n >= 1 => {
                let group = FiniteGroup::cyclic(n).ok()?;
                // Companion matrices of the cyclotomic polynomials of degree ≤ 2.
                let companions: [(usize, &[&[i64]]); 5] = [
                    (1, &[&[1]]),
                    (2, &[&[-1]]),
                    (3, &[&[0, -1], &[1, -1]]),
                    (4, &[&[0, -1], &[1, 0]]),
                    (6, &[&[0, -1], &[1, 1]]),
                ];
                let mut out = Vec::new();
                for (m, rows) in companions {
                    if n % m != 0 {
                        continue;
                    }
                    let gen = Matrix::from_i64(q, rows);
                    let mut rho = vec![Matrix::identity(q, gen.rows())];
                    for j in 1..n {
                        rho.push(rho[j - 1].mul(&gen));
                    }
                    out.push(Representation::new(group.clone(), q, rho).ok()?);
                }
                Some(out)
            }
            ("klein_four", None) => {
                let group = FiniteGroup::klein_four();
                let chars = (0..4)
                    .map(|ab: usize| {
                        let rho = (0..4usize)
                            .map(|g| {
                                let parity = ((ab & g) as u32).count_ones() % 2;
                                Matrix::from_i64(q, &[&[if parity == 0 { 1 } else { -1 }]])
                            })
                            .collect();
                        Representation::new(group.clone(), q, rho).expect("character")
                    })
                    .collect();
                Some(chars)
            }
            ("symmetric", Some(3)) => {
                let group = FiniteGroup::symmetric(3).ok()?;
                let perms = permutations(3);
                let sign = perms
                    .iter()
                    .map(|p| {
                        let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                        Matrix::from_i64(q, &[&[if inversions % 2 == 0 { 1 } else { -1 }]])
                    })
                    .collect();
                // Permutation action on the sum-zero plane with basis e0 − e1, e1 − e2.
                let basis = Matrix::from_i64(q, &[&[1, 0], &[-1, 1], &[0, -1]]);
                let standard = perms
                    .iter()
                    .map(|p| {
                        let perm = Matrix::from_fn(q, 3, 3, |i, j| if p[j] == i { q.one() } else { q.zero() });
                        linalg::solve_in_span(&basis, &perm.mul(&basis)).expect("plane is invariant")
                    })
                    .collect();
                Some(vec![
                    Representation::trivial(group.clone(), q, 1),
                    Representation::new(group.clone(), q, sign).ok()?,
                    Representation::new(group, q, standard).ok()?,
                ])
            }
            _ => None,
        }
    }

    /// All isomorphism classes of rational representations of dimension `1..=2`.
    pub fn rational_reps_up_to_dim_two(name: &str, n: Option<usize>) -> Option<Vec<Representation>> {
        let irreps = small_rational_irreps(name, n)?;
        let lines: Vec<&Representation> = irreps.iter().filter(|r| r.dim() == 1).collect();
        let mut out: Vec<Representation> = lines.iter().map(|r| (*r).clone()).collect();
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i..] {
                out.push(a.direct_sum(b).expect("same group"));
            }
        }
        out.extend(irreps.iter().filter(|r| r.dim() == 2).cloned());
        Some(out)
    }

    /// Every homomorphism `G → GL(dim, p)`, by brute force over generator images.
    pub fn all_modular_reps(group: &FiniteGroup, field: Field, dim: usize) -> Vec<Representation> {
        let p = match field.modulus() {
            Some(p) => p as usize,
            None => return Vec::new(),
        };
        let gl: Vec<Matrix> = all_matrices(field, p, dim)
            .into_iter()
            .filter(|m| linalg::rank(m) == dim)
            .collect();
        let gens = group.generators();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            if let Some(rho) = extend_from_generators(group, field, dim, &gens, &choice.iter().map(|&i| gl[i].clone()).collect::<Vec<_>>()) {
                if let Ok(r) = Representation::new(group.clone(), field, rho) {
                    out.push(r);
                }
            }
            let mut slot = 0;
            loop {
                if slot == choice.len() {
                    return out;
                }
                choice[slot] += 1;
                if choice[slot] < gl.len() {
                    break;
                }
                choice[slot] = 0;
                slot += 1;
            }
        }
    }

    fn all_matrices(field: Field, p: usize, dim: usize) -> Vec<Matrix> {
        let cells = dim * dim;
        let total = p.pow(cells as u32);
        (0..total)
            .map(|mut idx| {
                let mut vals = vec![0i64; cells];
                for v in vals.iter_mut() {
                    *v = (idx % p) as i64;
                    idx /= p;
                }
                Matrix::from_fn(field, dim, dim, |i, j| field.from_i64(vals[i * dim + j]))
            })
            .collect()
    }

    /// Breadth-first extension of generator images along right multiplication;
    /// `None` when two words for the same element disagree.
    fn extend_from_generators(
        group: &FiniteGroup,
        field: Field,
        dim: usize,
        gens: &[usize],
        images: &[Matrix],
    ) -> Option<Vec<Matrix>> {
        let mut rho: Vec<Option<Matrix>> = vec![None; group.order()];
        rho[group.identity()] = Some(Matrix::identity(field, dim));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(a) = queue.pop_front() {
            let ma = rho[a].clone().expect("visited");
            for (&g, mg) in gens.iter().zip(images) {
                let b = group.mul(a, g);
                let mb = ma.mul(mg);
                match &rho[b] {
                    Some(existing) if *existing != mb => return None,
                    Some(_) => {}
                    None => {
                        rho[b] = Some(mb);
                        queue.push_back(b);
                    }
                }
            }
        }
        rho.into_iter().collect()
    }
}
