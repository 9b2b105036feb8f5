//! Row reduction and the subspaces it exposes: rank, kernel, image, span membership.
//!
//! Forward elimination skips rows that are already zero in the pivot column, then
//! back-substitution finishes the reduced form. Pivots are always the leftmost nonzero column and the
//! topmost candidate row, so every result is a pure function of the input.

use alloc::vec::Vec;
use core::fmt;


use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_cols: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinAlgError {
    /// The vector is not a combination of the basis columns.
    NotInSpan,
    /// The supplied basis columns are linearly dependent.
    DependentBasis,
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::NotInSpan => f.write_str("vector is not in the span of the basis"),
            LinAlgError::DependentBasis => f.write_str("basis columns are linearly dependent"),
        }
    }
}

/// An elementary row operation, as recorded by [`rref_with_ops`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOp {
    Swap(usize, usize),
    Scale { row: usize, factor: Scalar },
    /// `row[target] += factor * row[source]`
    AddMultiple { target: usize, source: usize, factor: Scalar },
}

impl RowOp {
    pub fn apply(&self, m: &mut Matrix) {
        match self {
            RowOp::Swap(a, b) => {
                for j in 0..m.cols() {
                    let x = m.get(*a, j).clone();
                    let y = m.get(*b, j).clone();
                    m.set(*a, j, y);
                    m.set(*b, j, x);
                }
            }
            RowOp::Scale { row, factor } => {
                for j in 0..m.cols() {
                    let x = m.get(*row, j) * factor;
                    m.set(*row, j, x);
                }
            }
            RowOp::AddMultiple { target, source, factor } => {
                for j in 0..m.cols() {
                    let x = m.get(*source, j) * factor;
                    if !x.is_zero() {
                        m.add_to(*target, j, &x);
                    }
                }
            }
        }
    }

    /// The operation undoing `self`.
    pub fn inverse(&self) -> RowOp {
        match self {
            RowOp::Swap(a, b) => RowOp::Swap(*a, *b),
            RowOp::Scale { row, factor } => RowOp::Scale {
                row: *row,
                factor: factor.inverse().expect("recorded scale factors are units"),
            },
            RowOp::AddMultiple { target, source, factor } => RowOp::AddMultiple {
                target: *target,
                source: *source,
                factor: -factor,
            },
        }
    }
}

type Rows = Vec<Vec<Scalar>>;

fn to_rows(m: &Matrix) -> Rows {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn from_rows(field: Field, cols: usize, rows: Rows) -> Matrix {
    Matrix::from_rows(field, cols, rows).expect("row reduction preserves shape")
}

/// Plain Gauss–Jordan, optionally recording the operations performed.
fn gauss_jordan(rows: &mut Rows, cols: usize, mut log: Option<&mut Vec<RowOp>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            if let Some(log) = log.as_deref_mut() {
                log.push(RowOp::Swap(p, r));
            }
        }
        let inv = rows[r][col].inverse().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r][col..].iter_mut() {
                *x = &*x * &inv;
            }
            if let Some(log) = log.as_deref_mut() {
                log.push(RowOp::Scale { row: r, factor: inv });
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
            if let Some(log) = log.as_deref_mut() {
                log.push(RowOp::AddMultiple {
                    target: i,
                    source: r,
                    factor: -f,
                });
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Forward elimination with unit pivots; rows with a zero in the pivot column are
/// left untouched, which keeps sparse coboundary matrices cheap.
/// Afterwards the first `pivots.len()` rows are an echelon form and the rest are zero.
fn forward_eliminate(rows: &mut Rows, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &mut head[r];
        let inv = pivot_row[col].inverse().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in pivot_row[col..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let support: Vec<usize> = (col + 1..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = core::mem::replace(&mut row[col], inv.field().zero());
            for &j in &support {
                row[j] = &row[j] - &(&f * &pivot_row[j]);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn back_substitute(rows: &mut Rows, pivots: &[usize]) {
    for (i, &col) in pivots.iter().enumerate().rev() {
        let inv = rows[i][col].inverse().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[i][col..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[i].clone();
        for row in rows[..i].iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
}

fn echelon(m: &Matrix) -> (Rows, Vec<usize>) {
    let mut rows = to_rows(m);
    let pivots = forward_eliminate(&mut rows, m.cols());
    (rows, pivots)
}

/// The unique reduced row echelon form of `m`.
pub fn rref(m: &Matrix) -> Rref {
    let (mut rows, pivot_cols) = echelon(m);
    back_substitute(&mut rows, &pivot_cols);
    Rref {
        reduced: from_rows(m.field(), m.cols(), rows),
        pivot_cols,
    }
}

/// Gauss–Jordan reduction that also returns the elementary operations applied, in order.
pub fn rref_with_ops(m: &Matrix) -> (Rref, Vec<RowOp>) {
    let mut rows = to_rows(m);
    let mut log = Vec::new();
    let pivot_cols = gauss_jordan(&mut rows, m.cols(), Some(&mut log));
    (
        Rref {
            reduced: from_rows(m.field(), m.cols(), rows),
            pivot_cols,
        },
        log,
    )
}

pub fn rank(m: &Matrix) -> usize {
    // Elimination cost scales with the number of rows swept, so reduce the thinner side.
    if m.rows() > m.cols() {
        echelon(&m.transpose()).1.len()
    } else {
        echelon(m).1.len()
    }
}

/// Columns form a basis of `{x : m x = 0}`, one per free column, in column order.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let field = m.field();
    let Rref { reduced, pivot_cols } = rref(m);
    let mut is_pivot = alloc::vec![false; m.cols()];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..m.cols()).filter(|&j| !is_pivot[j]).collect();
    let mut k = Matrix::zeros(field, m.cols(), free.len());
    for (c, &f) in free.iter().enumerate() {
        k.set(f, c, field.one());
        for (row, &p) in pivot_cols.iter().enumerate() {
            let x = reduced.get(row, f);
            if !x.is_zero() {
                k.set(p, c, -x);
            }
        }
    }
    k
}

/// The pivot columns of `m`: an independent set spanning its column space.
pub fn image_basis(m: &Matrix) -> Matrix {
    let pivots = echelon(m).1;
    m.select_columns(&pivots)
}

/// Solves `basis · x = v` for independent basis columns.
pub fn coordinates_in_span(basis: &Matrix, v: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
    let targets = Matrix::column(basis.field(), v);
    solve_in_span(basis, &targets).map(|x| x.col(0))
}

/// Column-wise [`coordinates_in_span`] for every column of `targets`.
pub fn solve_in_span(basis: &Matrix, targets: &Matrix) -> Result<Matrix, LinAlgError> {
    assert_eq!(basis.rows(), targets.rows(), "ambient dimension mismatch");
    let n = basis.cols();
    let Rref { reduced, pivot_cols } = rref(&basis.hstack(targets));
    let basis_pivots = pivot_cols.iter().take_while(|&&p| p < n).count();
    if basis_pivots < n {
        return Err(LinAlgError::DependentBasis);
    }
    if pivot_cols.len() > n {
        return Err(LinAlgError::NotInSpan);
    }
    Ok(reduced.submatrix(0..n, n..n + targets.cols()))
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    assert_eq!(m.rows(), m.cols(), "inverse of a non-square matrix");
    let n = m.rows();
    let id = Matrix::identity(m.field(), n);
    let Rref { reduced, pivot_cols } = rref(&m.hstack(&id));
    if pivot_cols.iter().take_while(|&&p| p < n).count() < n {
        return None;
    }
    Some(reduced.submatrix(0..n, n..2 * n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let q = Field::RATIONAL;
        let id = Matrix::identity(q, 3);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivot_cols, [0, 1, 2]);

        let m = Matrix::from_i64(q, &[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.reduced, Matrix::from_i64(q, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivot_cols, [0]);
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&Matrix::zeros(q, 2, 3)), 0);
    }

    #[test]
    fn kernel_and_image_examples() {
        let q = Field::RATIONAL;
        assert_eq!(kernel_basis(&Matrix::identity(q, 3)).cols(), 0);
        let m = Matrix::from_i64(q, &[&[1, 2], &[2, 4]]);
        assert_eq!(kernel_basis(&m), Matrix::from_i64(q, &[&[-2], &[1]]));
        assert_eq!(image_basis(&Matrix::zeros(q, 3, 2)).cols(), 0);
        assert_eq!(image_basis(&Matrix::identity(q, 2)), Matrix::identity(q, 2));
    }

    #[test]
    fn span_membership_examples() {
        let q = Field::RATIONAL;
        let v = [q.from_i64(3), q.from_i64(-1)];
        assert_eq!(coordinates_in_span(&Matrix::identity(q, 2), &v).unwrap(), v);
        let diag = Matrix::from_i64(q, &[&[1], &[1]]);
        assert_eq!(
            coordinates_in_span(&diag, &[q.from_i64(2), q.from_i64(2)]).unwrap(),
            [q.from_i64(2)]
        );
        let e1 = Matrix::from_i64(q, &[&[1], &[0]]);
        assert_eq!(
            coordinates_in_span(&e1, &[q.from_i64(0), q.from_i64(1)]),
            Err(LinAlgError::NotInSpan)
        );
        let dependent = Matrix::from_i64(q, &[&[1, 2], &[1, 2]]);
        assert_eq!(
            coordinates_in_span(&dependent, &[q.from_i64(1), q.from_i64(1)]),
            Err(LinAlgError::DependentBasis)
        );
    }

    #[test]
    fn rational_entries_and_inverse() {
        let q = Field::RATIONAL;
        let half = q.parse("1/2").unwrap();
        let m = Matrix::from_rows(q, 2, alloc::vec![alloc::vec![half.clone(), q.one()], alloc::vec![q.one(), q.zero()]]).unwrap();
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inverse(&Matrix::from_i64(q, &[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn empty_shapes() {
        let q = Field::RATIONAL;
        assert_eq!(rank(&Matrix::zeros(q, 0, 4)), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(q, 0, 2)), Matrix::identity(q, 2));
        assert_eq!(kernel_basis(&Matrix::zeros(q, 3, 0)).cols(), 0);
    }
}
