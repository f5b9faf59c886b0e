//! Virasoro algebra, Gram matrices and the (2,5) minimal model.

pub mod algebra;
pub mod minimal;
pub mod poly;

pub use algebra::{bracket, gram_matrix, gram_matrix_at, level_basis, Bracket, VermaGram, VirasoroMonomial};
pub use minimal::{
    central_charge, character_25, effective_central_charge, null_vector_central_charges, ode_residual,
    ode_residual_with, scale_anomaly, serre_derivative, torus_partition_function_25, MinimalModelLabel,
    NullVector, Sector,
};
pub use poly::Poly2;
