//! The projection pair between the plane `z = 1` and the open upper unit
//! hemisphere.
//!
//! A plane point `x = (x1, x2, 1)` maps to the unit direction `x / |x|`, and a
//! direction `w` with `w3 > 0` maps back to `(w1 / w3, w2 / w3)`. The area
//! distortion of the plane-to-sphere map is `(x1² + x2² + 1)^(-3/2)`, which is
//! `2π` times the standard bivariate Cauchy density.

use crate::error::{Error, Result};
use crate::vec3::{self, Vec3};

/// Coordinates beyond this magnitude are rejected: squaring them overflows.
pub const MAX_PLANE_COORDINATE: f64 = 1e150;

/// Distance from unit norm that is silently renormalized.
pub const RENORMALIZE_TOLERANCE: f64 = 1e-9;

/// A point `(x1, x2, 1)` on the plane `z = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    x1: f64,
    x2: f64,
}

impl PlanePoint {
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        if !x1.is_finite() || !x2.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "plane point ({x1}, {x2}) is not finite"
            )));
        }
        if x1.abs() > MAX_PLANE_COORDINATE || x2.abs() > MAX_PLANE_COORDINATE {
            return Err(Error::InvalidArgument(format!(
                "plane point ({x1:e}, {x2:e}) exceeds the supported magnitude {MAX_PLANE_COORDINATE:e}"
            )));
        }
        Ok(Self { x1, x2 })
    }

    pub const fn origin() -> Self {
        Self { x1: 0.0, x2: 0.0 }
    }

    #[inline]
    pub fn x1(&self) -> f64 {
        self.x1
    }

    #[inline]
    pub fn x2(&self) -> f64 {
        self.x2
    }

    /// `x1² + x2² + 1`, the squared distance to the sphere center.
    #[inline]
    pub fn squared_distance(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 + 1.0
    }

    /// Homogeneous coordinates `(x1, x2, 1)`.
    #[inline]
    pub(crate) fn homogeneous(&self) -> Vec3 {
        [self.x1, self.x2, 1.0]
    }
}

impl TryFrom<(f64, f64)> for PlanePoint {
    type Error = Error;

    fn try_from((x1, x2): (f64, f64)) -> Result<Self> {
        Self::new(x1, x2)
    }
}

/// A unit vector strictly inside the upper hemisphere (`w3 > 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDirection {
    w: Vec3,
}

impl UnitDirection {
    /// Builds a direction, renormalizing inputs whose norm is within
    /// [`RENORMALIZE_TOLERANCE`] of one.
    pub fn new(w1: f64, w2: f64, w3: f64) -> Result<Self> {
        let w = [w1, w2, w3];
        if w.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "direction ({w1}, {w2}, {w3}) is not finite"
            )));
        }
        let norm = vec3::norm(w);
        if (norm - 1.0).abs() > RENORMALIZE_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "direction ({w1}, {w2}, {w3}) has norm {norm}, expected 1"
            )));
        }
        let w = vec3::scale(w, 1.0 / norm);
        if w[2] <= 0.0 {
            return Err(Error::Domain(format!(
                "direction ({w1}, {w2}, {w3}) is not on the open upper hemisphere"
            )));
        }
        Ok(Self { w })
    }

    /// Wraps a vector that is already unit length with a positive third
    /// component.
    #[inline]
    pub(crate) fn from_unit(w: Vec3) -> Self {
        debug_assert!((vec3::norm(w) - 1.0).abs() < 1e-12, "{w:?} not unit");
        Self { w }
    }

    /// Normalizes an arbitrary vector, failing when the result leaves the
    /// open upper hemisphere.
    pub(crate) fn from_vector(v: Vec3) -> Result<Self> {
        let norm = vec3::norm(v);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::DegenerateGeometry(format!("cannot normalize {v:?}")));
        }
        let w = vec3::scale(v, 1.0 / norm);
        if w[2] <= 0.0 {
            return Err(Error::Domain(format!(
                "direction {w:?} is not on the open upper hemisphere"
            )));
        }
        Ok(Self { w })
    }

    #[inline]
    pub fn w1(&self) -> f64 {
        self.w[0]
    }

    #[inline]
    pub fn w2(&self) -> f64 {
        self.w[1]
    }

    #[inline]
    pub fn w3(&self) -> f64 {
        self.w[2]
    }

    #[inline]
    pub fn as_array(&self) -> [f64; 3] {
        self.w
    }
}

/// Maps `x` to `(x1, x2, 1) / |(x1, x2, 1)|`.
pub fn plane_to_hemisphere(x: PlanePoint) -> UnitDirection {
    let h = x.homogeneous();
    UnitDirection::from_unit(vec3::scale(h, 1.0 / x.squared_distance().sqrt()))
}

/// Maps `w` to `(w1 / w3, w2 / w3)`.
///
/// Directions so close to the equator that the image overflows the supported
/// plane range produce a domain error.
pub fn hemisphere_to_plane(w: UnitDirection) -> Result<PlanePoint> {
    let [w1, w2, w3] = w.as_array();
    PlanePoint::new(w1 / w3, w2 / w3)
        .map_err(|_| Error::Domain(format!("direction ({w1}, {w2}, {w3}) projects to infinity")))
}

/// Solid angle per unit plane area at `x`: `(x1² + x2² + 1)^(-3/2)`.
pub fn projection_jacobian(x: PlanePoint) -> f64 {
    let r2 = x.squared_distance();
    1.0 / (r2 * r2.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn plane_to_hemisphere_examples() {
        let w = plane_to_hemisphere(PlanePoint::origin());
        assert_eq!(w.as_array(), [0.0, 0.0, 1.0]);

        let w = plane_to_hemisphere(PlanePoint::new(1.0, 0.0).unwrap());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(w.w1(), s, 1e-15) && w.w2() == 0.0 && close(w.w3(), s, 1e-15));

        let w = plane_to_hemisphere(PlanePoint::new(3.0, 4.0).unwrap());
        let n = 26f64.sqrt();
        assert!(close(w.w1(), 3.0 / n, 1e-15));
        assert!(close(w.w2(), 4.0 / n, 1e-15));
        assert!(close(w.w3(), 1.0 / n, 1e-15));
    }

    #[test]
    fn hemisphere_to_plane_examples() {
        let x = hemisphere_to_plane(UnitDirection::new(0.0, 0.0, 1.0).unwrap()).unwrap();
        assert_eq!((x.x1(), x.x2()), (0.0, 0.0));

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x = hemisphere_to_plane(UnitDirection::new(s, 0.0, s).unwrap()).unwrap();
        assert!(close(x.x1(), 1.0, 1e-15) && x.x2() == 0.0);
    }

    #[test]
    fn rejects_non_finite_and_huge_points() {
        assert!(matches!(
            PlanePoint::new(f64::NAN, 0.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            PlanePoint::new(0.0, f64::INFINITY),
            Err(Error::InvalidArgument(_))
        ));
        assert!(PlanePoint::new(1e151, 0.0).is_err());
        assert!(PlanePoint::new(1e150, -1e150).is_ok());
    }

    #[test]
    fn rejects_lower_hemisphere_and_equator() {
        assert!(matches!(
            UnitDirection::new(0.0, 0.0, -1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            UnitDirection::new(1.0, 0.0, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn renormalizes_small_drift_and_rejects_large() {
        let w = UnitDirection::new(0.6, 0.0, 0.8 + 5e-10).unwrap();
        assert!(close(vec3::norm(w.as_array()), 1.0, 1e-15));
        assert!(matches!(
            UnitDirection::new(0.6, 0.0, 0.81),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn round_trip_from_sphere() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            // uniform on the upper hemisphere, away from the equator
            let z = 1e-3 + (1.0 - 1e-3) * rng.next_f64();
            let phi = std::f64::consts::TAU * rng.next_f64();
            let r = (1.0 - z * z).sqrt();
            let w = UnitDirection::new(r * phi.cos(), r * phi.sin(), z).unwrap();
            let back = plane_to_hemisphere(hemisphere_to_plane(w).unwrap());
            for (a, b) in back.as_array().iter().zip(w.as_array()) {
                assert!(close(*a, b, 1e-12), "{back:?} vs {w:?}");
            }
        }
    }

    #[test]
    fn round_trip_from_plane_and_unit_norm() {
        let mut rng = SplitMix64::new(11);
        for i in 0..1000 {
            let scale = 10f64.powi(i % 13 - 6);
            let x1 = scale * (2.0 * rng.next_f64() - 1.0);
            let x2 = scale * (2.0 * rng.next_f64() - 1.0);
            let x = PlanePoint::new(x1, x2).unwrap();
            let w = plane_to_hemisphere(x);
            assert!(close(vec3::norm(w.as_array()), 1.0, 1e-12));
            let y = hemisphere_to_plane(w).unwrap();
            assert!(close(y.x1(), x1, 1e-12 * x1.abs().max(f64::MIN_POSITIVE)));
            assert!(close(y.x2(), x2, 1e-12 * x2.abs().max(f64::MIN_POSITIVE)));
        }
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(projection_jacobian(PlanePoint::origin()), 1.0);
        let j = projection_jacobian(PlanePoint::new(1.0, 0.0).unwrap());
        assert!(close(j, 0.353_553_390_593_273_8, 1e-15));
        let j = projection_jacobian(PlanePoint::new(1e6, 1e6).unwrap());
        assert!(j > 0.0 && j < 1.0);
    }

    /// Area of the image of a small plane square, from the cross product of
    /// central-difference tangents.
    fn finite_difference_area_ratio(x: PlanePoint, h: f64) -> f64 {
        let at = |a: f64, b: f64| plane_to_hemisphere(PlanePoint::new(a, b).unwrap()).as_array();
        let (x1, x2) = (x.x1(), x.x2());
        let d1 = vec3::scale(vec3::sub(at(x1 + h, x2), at(x1 - h, x2)), 0.5 / h);
        let d2 = vec3::scale(vec3::sub(at(x1, x2 + h), at(x1, x2 - h)), 0.5 / h);
        vec3::norm(vec3::cross(d1, d2))
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..100 {
            let x =
                PlanePoint::new(10.0 * rng.next_f64() - 5.0, 10.0 * rng.next_f64() - 5.0).unwrap();
            let fd = finite_difference_area_ratio(x, 1e-5);
            let j = projection_jacobian(x);
            assert!(((fd - j) / j).abs() < 1e-5, "at {x:?}: fd {fd} vs {j}");
        }
    }
}
