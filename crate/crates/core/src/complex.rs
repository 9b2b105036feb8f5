//! Finite cochain complexes over an explicit degree window, chain maps between
//! them, and cohomology with chosen representatives.
//!
//! A complex is known only on `kmin..=kmax`; the differential out of `kmax` is
//! not part of the data, so cohomology reported at `kmax` is flagged as
//! truncated (it is `C^kmax / im d_{kmax-1}`, an upper bound).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::field::Field;
use crate::linalg::{self, LinAlgError};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    /// `d_{k+1} · d_k ≠ 0`.
    NotAComplex(i32),
    /// A differential or map has the wrong shape or field.
    Shape { degree: i32, reason: String },
    DegreeOutOfWindow(i32),
    /// `f_{k+1} d_k ≠ d_k f_k`.
    NotAChainMap(i32),
    /// A chain map sent a representative cocycle outside the cocycles.
    RepresentativeEscape(i32),
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::NotAComplex(k) => write!(f, "d_{} ∘ d_{k} ≠ 0", k + 1),
            ComplexError::Shape { degree, reason } => write!(f, "shape error in degree {degree}: {reason}"),
            ComplexError::DegreeOutOfWindow(k) => write!(f, "degree {k} is outside the complex window"),
            ComplexError::NotAChainMap(k) => write!(f, "chain map fails to commute with d_{k}"),
            ComplexError::RepresentativeEscape(k) => {
                write!(f, "image of a degree-{k} representative is not a cocycle")
            }
        }
    }
}

/// Cochain complex `C^kmin → … → C^kmax` with validated `d ∘ d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    field: Field,
    kmin: i32,
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
    labels: Vec<Vec<String>>,
}

/// Checks `d_{k+1} d_k = 0` for consecutive differentials starting in degree `kmin`.
pub fn validate_complex(kmin: i32, differentials: &[Matrix]) -> Result<(), ComplexError> {
    for (i, pair) in differentials.windows(2).enumerate() {
        if !pair[1].mul(&pair[0]).is_zero() {
            return Err(ComplexError::NotAComplex(kmin + i as i32));
        }
    }
    Ok(())
}

impl CochainComplex {
    /// `differentials[i]` is `d_{kmin+i}: C^{kmin+i} → C^{kmin+i+1}`, so there is one fewer than `dims`.
    pub fn new(field: Field, kmin: i32, dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self, ComplexError> {
        let labels = dims
            .iter()
            .map(|&n| (0..n).map(|i| format!("e{i}")).collect())
            .collect();
        Self::with_labels(field, kmin, dims, differentials, labels)
    }

    pub fn with_labels(
        field: Field,
        kmin: i32,
        dims: Vec<usize>,
        differentials: Vec<Matrix>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self, ComplexError> {
        if dims.is_empty() {
            return Err(ComplexError::Shape {
                degree: kmin,
                reason: "empty degree window".into(),
            });
        }
        if differentials.len() + 1 != dims.len() {
            return Err(ComplexError::Shape {
                degree: kmin,
                reason: format!("{} spaces need {} differentials", dims.len(), dims.len() - 1),
            });
        }
        for (i, d) in differentials.iter().enumerate() {
            let degree = kmin + i as i32;
            if d.field() != field {
                return Err(ComplexError::Shape {
                    degree,
                    reason: "differential over a different field".into(),
                });
            }
            if (d.rows(), d.cols()) != (dims[i + 1], dims[i]) {
                return Err(ComplexError::Shape {
                    degree,
                    reason: format!("expected {}x{}, found {}x{}", dims[i + 1], dims[i], d.rows(), d.cols()),
                });
            }
        }
        if labels.len() != dims.len() || labels.iter().zip(&dims).any(|(l, &n)| l.len() != n) {
            return Err(ComplexError::Shape {
                degree: kmin,
                reason: "basis labels do not match dimensions".into(),
            });
        }
        validate_complex(kmin, &differentials)?;
        Ok(CochainComplex {
            field,
            kmin,
            dims,
            differentials,
            labels,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn kmin(&self) -> i32 {
        self.kmin
    }

    pub fn kmax(&self) -> i32 {
        self.kmin + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> RangeInclusive<i32> {
        self.kmin..=self.kmax()
    }

    fn index(&self, k: i32) -> Result<usize, ComplexError> {
        if self.degrees().contains(&k) {
            Ok((k - self.kmin) as usize)
        } else {
            Err(ComplexError::DegreeOutOfWindow(k))
        }
    }

    /// Dimension of `C^k`; zero outside the window.
    pub fn dim(&self, k: i32) -> usize {
        self.index(k).map_or(0, |i| self.dims[i])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_k` for `kmin <= k < kmax`.
    pub fn differential(&self, k: i32) -> Option<&Matrix> {
        let i = self.index(k).ok()?;
        self.differentials.get(i)
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    pub fn labels(&self, k: i32) -> &[String] {
        self.index(k).map_or(&[], |i| &self.labels[i])
    }

    /// Re-checks `d ∘ d = 0`.
    pub fn validate(&self) -> Result<(), ComplexError> {
        validate_complex(self.kmin, &self.differentials)
    }

    /// `d_k`, or the zero map when `k` is below the window.
    fn incoming(&self, k: i32) -> Matrix {
        match self.differential(k - 1) {
            Some(d) => d.clone(),
            None => Matrix::zeros(self.field, self.dim(k), 0),
        }
    }

    /// Basis of the cocycles `ker d_k` (everything at the truncated top degree).
    pub fn cocycle_basis(&self, k: i32) -> Result<Matrix, ComplexError> {
        self.index(k)?;
        Ok(match self.differential(k) {
            Some(d) => linalg::kernel_basis(d),
            None => Matrix::identity(self.field, self.dim(k)),
        })
    }

    /// Basis of the coboundaries `im d_{k-1}`.
    pub fn coboundary_basis(&self, k: i32) -> Result<Matrix, ComplexError> {
        self.index(k)?;
        Ok(linalg::image_basis(&self.incoming(k)))
    }

    /// `dim ker d_k − rank d_{k−1}`.
    pub fn betti(&self, k: i32) -> Result<usize, ComplexError> {
        let i = self.index(k)?;
        let kernel = match self.differential(k) {
            Some(d) => self.dims[i] - linalg::rank(d),
            None => self.dims[i],
        };
        let boundary = self.differential(k - 1).map_or(0, linalg::rank);
        Ok(kernel - boundary)
    }

    pub fn cohomology_at(&self, k: i32) -> Result<DegreeCohomology, ComplexError> {
        let boundaries = self.coboundary_basis(k)?;
        let cocycles = self.cocycle_basis(k)?;
        let combined = boundaries.hstack(&cocycles);
        let pivots = linalg::rref(&combined).pivot_cols;
        let chosen: Vec<usize> = pivots
            .into_iter()
            .filter(|&p| p >= boundaries.cols())
            .map(|p| p - boundaries.cols())
            .collect();
        Ok(DegreeCohomology {
            degree: k,
            betti: chosen.len(),
            representatives: cocycles.select_columns(&chosen),
            boundaries,
            truncated: k == self.kmax(),
        })
    }

    /// Betti numbers and representatives for every degree of the window.
    pub fn cohomology(&self) -> CohomologyReport {
        CohomologyReport {
            degrees: self
                .degrees()
                .map(|k| self.cohomology_at(k).expect("degree in window"))
                .collect(),
        }
    }

    /// Same complex on a larger window, padded with zero spaces above `kmax`.
    pub fn extend_to(&self, kmax: i32) -> CochainComplex {
        let mut out = self.clone();
        while out.kmax() < kmax {
            let top = *out.dims.last().expect("nonempty window");
            out.differentials.push(Matrix::zeros(self.field, 0, top));
            out.dims.push(0);
            out.labels.push(Vec::new());
        }
        out
    }
}

/// Cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: i32,
    pub betti: usize,
    /// Columns are cocycles whose classes form a basis of `H^degree`.
    pub representatives: Matrix,
    /// Columns form a basis of the coboundaries in this degree.
    pub boundaries: Matrix,
    /// Set at the top of the window, where the outgoing differential is unknown.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyReport {
    pub fn betti(&self, k: i32) -> Option<usize> {
        self.degrees.iter().find(|d| d.degree == k).map(|d| d.betti)
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }
}

/// Degreewise maps `f_k: source^k → target^k` commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    maps: Vec<Matrix>,
}

impl ChainMap {
    /// `maps[i]` acts in degree `kmin + i`. Fails unless the square commutes in every degree.
    pub fn new(source: CochainComplex, target: CochainComplex, maps: Vec<Matrix>) -> Result<Self, ComplexError> {
        if source.degrees() != target.degrees() || source.field != target.field {
            return Err(ComplexError::Shape {
                degree: source.kmin,
                reason: "source and target windows or fields differ".into(),
            });
        }
        if maps.len() != source.dims.len() {
            return Err(ComplexError::Shape {
                degree: source.kmin,
                reason: format!("expected {} component maps, found {}", source.dims.len(), maps.len()),
            });
        }
        for (k, f) in source.degrees().zip(&maps) {
            if (f.rows(), f.cols()) != (target.dim(k), source.dim(k)) || f.field() != source.field {
                return Err(ComplexError::Shape {
                    degree: k,
                    reason: format!(
                        "component map is {}x{}, expected {}x{}",
                        f.rows(),
                        f.cols(),
                        target.dim(k),
                        source.dim(k)
                    ),
                });
            }
        }
        for (i, k) in (source.kmin..source.kmax()).enumerate() {
            let lhs = maps[i + 1].mul(&source.differentials[i]);
            let rhs = target.differentials[i].mul(&maps[i]);
            if lhs != rhs {
                return Err(ComplexError::NotAChainMap(k));
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let maps = c.dims.iter().map(|&n| Matrix::identity(c.field, n)).collect();
        ChainMap::new(c.clone(), c.clone(), maps).expect("identity commutes")
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Result<Self, ComplexError> {
        let maps = source
            .degrees()
            .map(|k| Matrix::zeros(source.field, target.dim(k), source.dim(k)))
            .collect();
        ChainMap::new(source.clone(), target.clone(), maps)
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn component(&self, k: i32) -> Option<&Matrix> {
        self.source.index(k).ok().map(|i| &self.maps[i])
    }

    pub fn components(&self) -> &[Matrix] {
        &self.maps
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &ChainMap) -> Result<ChainMap, ComplexError> {
        let maps = self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect();
        ChainMap::new(first.source.clone(), self.target.clone(), maps)
    }

    /// Matrix of `H^k(f)` in the representative bases of the two cohomology reports.
    pub fn induced_on_cohomology(&self, k: i32) -> Result<Matrix, ComplexError> {
        let src = self.source.cohomology_at(k)?;
        let tgt = self.target.cohomology_at(k)?;
        let f = &self.maps[self.source.index(k)?];
        let images = f.mul(&src.representatives);
        if let Some(d) = self.target.differential(k) {
            if !d.mul(&images).is_zero() {
                return Err(ComplexError::RepresentativeEscape(k));
            }
        }
        // Coordinates with respect to [representatives | coboundaries]; keep the first block.
        let basis = tgt.representatives.hstack(&tgt.boundaries);
        let coords = linalg::solve_in_span(&basis, &images).map_err(|e| match e {
            LinAlgError::NotInSpan | LinAlgError::DependentBasis => ComplexError::RepresentativeEscape(k),
        })?;
        Ok(coords.submatrix(0..tgt.betti, 0..images.cols()))
    }

    /// Whether `H^k(f)` is an isomorphism for every `k` in `degrees`.
    pub fn is_quasi_iso(&self, degrees: RangeInclusive<i32>) -> Result<bool, ComplexError> {
        for k in degrees {
            if k >= self.source.kmax() {
                return Err(ComplexError::DegreeOutOfWindow(k));
            }
            let h = self.induced_on_cohomology(k)?;
            if h.rows() != h.cols() || linalg::rank(&h) != h.rows() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// True iff `incl: A → B` and `proj: B → A` are chain maps with `proj ∘ incl = id_A`.
pub fn check_splitting(incl: &ChainMap, proj: &ChainMap) -> bool {
    if incl.target != proj.source || proj.target != incl.source {
        return false;
    }
    incl.maps
        .iter()
        .zip(&proj.maps)
        .all(|(i, p)| p.mul(i).is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q() -> Field {
        Field::RATIONAL
    }

    fn two_term(d: i64) -> CochainComplex {
        CochainComplex::new(q(), 0, vec![1, 1], vec![Matrix::from_i64(q(), &[&[d]])]).unwrap()
    }

    #[test]
    fn validation_examples() {
        let zero = vec![Matrix::zeros(q(), 1, 1), Matrix::zeros(q(), 1, 1)];
        assert!(CochainComplex::new(q(), 0, vec![1, 1, 1], zero).is_ok());
        let ids = vec![Matrix::identity(q(), 1), Matrix::identity(q(), 1)];
        assert_eq!(
            CochainComplex::new(q(), 0, vec![1, 1, 1], ids),
            Err(ComplexError::NotAComplex(0))
        );
        let bad_shape = vec![Matrix::zeros(q(), 2, 1)];
        assert!(matches!(
            CochainComplex::new(q(), 0, vec![1, 1], bad_shape),
            Err(ComplexError::Shape { .. })
        ));
    }

    #[test]
    fn betti_examples() {
        // The top degree is truncated, so pad to see it honestly.
        let c = two_term(0).extend_to(2);
        assert_eq!((c.betti(0).unwrap(), c.betti(1).unwrap()), (1, 1));
        let c = two_term(1).extend_to(2);
        assert_eq!((c.betti(0).unwrap(), c.betti(1).unwrap()), (0, 0));
        assert_eq!(c.betti(5), Err(ComplexError::DegreeOutOfWindow(5)));
        let report = c.cohomology();
        assert!(report.degrees.last().unwrap().truncated);
        assert!(!report.degrees[0].truncated);
    }

    #[test]
    fn induced_maps_of_identity_and_zero() {
        let c = two_term(0).extend_to(2);
        let id = ChainMap::identity(&c);
        assert!(id.induced_on_cohomology(0).unwrap().is_identity());
        assert!(id.is_quasi_iso(0..=1).unwrap());
        let z = ChainMap::zero(&c, &c).unwrap();
        assert!(z.induced_on_cohomology(1).unwrap().is_zero());
        assert!(!z.is_quasi_iso(0..=1).unwrap());
        assert_eq!(id.is_quasi_iso(0..=2), Err(ComplexError::DegreeOutOfWindow(2)));
    }

    #[test]
    fn chain_map_validation_rejects_non_commuting_squares() {
        let a = two_term(1);
        let maps = vec![Matrix::identity(q(), 1), Matrix::zeros(q(), 1, 1)];
        assert_eq!(ChainMap::new(a.clone(), a, maps), Err(ComplexError::NotAChainMap(0)));
    }

    #[test]
    fn splitting_examples() {
        let c = two_term(0).extend_to(2);
        let id = ChainMap::identity(&c);
        assert!(check_splitting(&id, &id));
        let z = ChainMap::zero(&c, &c).unwrap();
        assert!(!check_splitting(&id, &z));
    }
}
