//! Exact computer algebra for jet schemes of hypersurfaces.
//!
//! The crate computes the components `d_k(f)` of the universal
//! Hasse–Schmidt derivation, higher-order Jacobian matrices `Jac_m(f)`, the
//! block matrices `D_n(L)`, and rank-based smoothness tests on jet schemes,
//! over ℚ and over prime fields. Everything here is `no_std` + `alloc`;
//! IO and file formats live in the `jetdiff` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod field;
pub mod hasse;
pub mod jacobian;
pub mod jetmatrix;
pub mod jetscheme;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use hasse::{hs_components, HsExpansion};
pub use jacobian::{jac, jac_m, PolyMatrix};
pub use jetmatrix::{check_fdbd, dn_matrix, jet_jacobian};
pub use linalg::{rank, ScalarMatrix};
pub use poly::{parse_poly, JetVariable, Monomial, MultiIndex, Point, Polynomial};
