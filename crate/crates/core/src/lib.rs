//! Exact and numeric checks for q-series identities that arise in
//! two-dimensional conformal field theory: regularized mode sums, the
//! Rogers-Ramanujan characters of the (2,5) minimal model, the compact boson,
//! and the mock-modular remainder of the K3 elliptic genus.

pub mod boson;
pub mod error;
pub mod mock;
pub mod numeric;
pub mod partitions;
pub mod regularization;
pub mod report;
pub mod series;
pub mod special;
pub mod virasoro;

pub use error::{Error, Result};
pub use series::{FracQSeries, Rational};
