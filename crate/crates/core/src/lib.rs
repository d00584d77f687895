//! Integration and exact simulation of bivariate projective-Cauchy
//! distributions over polygons.
//!
//! Projecting the plane `z = 1` onto the upper unit hemisphere turns the
//! standard bivariate Cauchy measure into `1/2π` times solid angle. A
//! polygon's probability mass is then the solid angle of the spherical
//! polygon it subtends, and a uniform point on that spherical polygon
//! projects back to an exact draw from the truncated density.
//!
//! ```
//! use polycauchy::{integrate_cauchy_std, PlanePolygon};
//!
//! let tri = PlanePolygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]).unwrap();
//! let mass = integrate_cauchy_std(&tri).unwrap();
//! assert!((mass - 0.054_086_723_984_696).abs() < 1e-12);
//! ```

pub mod cauchy;
pub mod error;
pub mod format;
pub mod oracles;
pub mod polygon;
pub mod projective;
pub mod rng;
pub mod spherical;
pub mod student;
mod vec3;

pub use cauchy::{
    cauchy_elliptic_pdf, cauchy_elliptic_pdf_closed_form, cauchy_std_pdf,
    integrate_cauchy_elliptic, integrate_cauchy_std, lsc_backward, lsc_forward, lsc_jacobian,
    simulate_cauchy_elliptic, simulate_cauchy_std, simulate_cauchy_std_full, LscParams,
    TruncatedCauchy,
};
pub use error::{Error, Result};
pub use polygon::PlanePolygon;
pub use projective::{
    hemisphere_to_plane, plane_to_hemisphere, projection_jacobian, PlanePoint, UnitDirection,
};
pub use rng::SplitMix64;
pub use spherical::{
    interior_angles, sample_spherical_polygon, sample_spherical_triangle, solid_angle_girard,
    solid_angle_polygon, solid_angle_triangle_stable, PolygonSampler, SphericalPolygon,
    SphericalTriangle, UniformPair,
};
pub use student::{integrate_student_mc, student_pdf, McEstimate, StudentDof};
