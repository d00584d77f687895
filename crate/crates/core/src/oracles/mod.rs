//! Brute-force oracles that check the solid-angle routes independently.
//!
//! Nothing here touches the spherical geometry: quadrature and rejection
//! sampling work directly on the plane, and the chi-square machinery only
//! sees points, polygons and masses.

pub mod gof;
pub mod quadrature;
pub mod rejection;
pub mod special;

pub use gof::{
    chi_square_counts, chi_square_gof, chi_square_homogeneity, ks_uniform_distance, BinCount,
    GofReport,
};
pub use quadrature::{quadrature_integrate, quadrature_integrate_with_budget, QuadratureResult};
pub use rejection::rejection_sample;
