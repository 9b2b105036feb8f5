//! Exact cohomology of 2-vector spaces, their polynomial cochains, and finite
//! group representations.
#![no_std]

extern crate alloc;

pub mod complex;
pub mod field;
pub mod group;
pub mod jet;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod poly_cochains;
pub mod two_vector;
pub mod van_est;

pub use complex::{ChainMap, CochainComplex, CohomologyReport, ComplexError, DegreeCohomology};
pub use field::{Field, FieldError, Rational, Scalar};
pub use matrix::Matrix;
pub use two_vector::{GroupoidElement, LinearCochain, TwoVectorError, TwoVectorSpace};
