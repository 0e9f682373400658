//! Exact tropical geometry over totally ordered abelian groups.
//!
//! The crate tropicalizes Laurent polynomials whose coefficients are
//! truncated generalized power series, computes tropical hypersurfaces, and
//! builds explicit zeros of a polynomial with prescribed valuation for every
//! point of the hypersurface of its tropicalization.
//!
//! All arithmetic is exact (rationals); value groups are the rationals or
//! lexicographically ordered pairs of rationals.

pub mod error;
pub mod group;
pub mod json;
pub mod kapranov;
pub mod laurent;
pub mod parse;
pub mod random;
pub mod series;
pub mod suites;
pub mod tropical;

pub use error::{Error, Result};
pub use group::{pair, rat, ExtGroupElement, GroupElement, Rational, Signature};
pub use kapranov::{
    attain_value, kapranov_witness, newton_puiseux_root, nonvanishing_residue_tuple,
    product_hypersurface_check, unit_tuple, univariate_variety, Certificate, WitnessReport,
};
pub use laurent::LaurentPolynomial;
pub use series::{two_min_check, Series, TwoMinOutcome, TwoMinReport, ValResult};
pub use tropical::{hypersurface_cells_2d, ArgminSet, Cell2D, CellKind, Exponent, TropicalPolynomial};
