//! Bivariate projective-Cauchy densities and their polygon integrals and
//! truncated samplers.
//!
//! The standard density `f(x) = (x1² + x2² + 1)^(-3/2) / 2π` is the solid
//! angle per unit area of the plane-to-hemisphere map divided by the area of
//! the hemisphere. Consequently the mass of a polygon is the solid angle it
//! subtends over `2π`, and a uniform point on that solid angle projects to an
//! exact draw from the density truncated to the polygon.
//!
//! Location-scale-correlation densities reduce to the standard case through
//! the linear warp `g(x) = (b1·x1 + a1, b2·(ρ·x1 + √(1−ρ²)·x2) + a2)`, which
//! maps polygons to polygons.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::polygon::PlanePolygon;
use crate::projective::{hemisphere_to_plane, projection_jacobian, PlanePoint};
use crate::spherical::{solid_angle_polygon, PolygonSampler, SphericalPolygon, UniformPair};

/// Half-width of the square used as the untruncated domain.
pub const FULL_PLANE_HALF_WIDTH: f64 = 1e9;

/// Location `(a1, a2)`, scale `(b1, b2)` and correlation `rho` of an
/// elliptic Cauchy density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LscParams {
    a1: f64,
    a2: f64,
    b1: f64,
    b2: f64,
    rho: f64,
}

impl LscParams {
    /// Requires `b1, b2 > 0` and `-1 < rho < 1`, all finite.
    pub fn new(a1: f64, a2: f64, b1: f64, b2: f64, rho: f64) -> Result<Self> {
        if ![a1, a2, b1, b2, rho].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "LSC parameters ({a1}, {a2}, {b1}, {b2}, {rho}) must be finite"
            )));
        }
        if !(b1 > 0.0 && b2 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "LSC scales must be positive, got b1 = {b1}, b2 = {b2}"
            )));
        }
        if !(rho > -1.0 && rho < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "LSC correlation must lie in (-1, 1), got {rho}"
            )));
        }
        Ok(Self {
            a1,
            a2,
            b1,
            b2,
            rho,
        })
    }

    /// Parameters of the standard density.
    pub const fn identity() -> Self {
        Self {
            a1: 0.0,
            a2: 0.0,
            b1: 1.0,
            b2: 1.0,
            rho: 0.0,
        }
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }
    pub fn a2(&self) -> f64 {
        self.a2
    }
    pub fn b1(&self) -> f64 {
        self.b1
    }
    pub fn b2(&self) -> f64 {
        self.b2
    }
    pub fn rho(&self) -> f64 {
        self.rho
    }

    #[inline]
    fn rho_complement(&self) -> f64 {
        (1.0 - self.rho * self.rho).sqrt()
    }

    #[inline]
    fn forward_raw(&self, x1: f64, x2: f64) -> (f64, f64) {
        (
            self.b1 * x1 + self.a1,
            self.b2 * (self.rho * x1 + x2 * self.rho_complement()) + self.a2,
        )
    }

    #[inline]
    fn backward_raw(&self, x1: f64, x2: f64) -> (f64, f64) {
        let (d1, d2) = (x1 - self.a1, x2 - self.a2);
        (
            d1 / self.b1,
            (self.b1 * d2 - self.rho * self.b2 * d1) / (self.b1 * self.b2 * self.rho_complement()),
        )
    }
}

/// `(x1² + x2² + 1)^(-3/2) / 2π`.
pub fn cauchy_std_pdf(x: PlanePoint) -> f64 {
    projection_jacobian(x) / TAU
}

/// The warp `g(x)` taking standard variates to LSC variates.
pub fn lsc_forward(x: PlanePoint, p: &LscParams) -> Result<PlanePoint> {
    let (y1, y2) = p.forward_raw(x.x1(), x.x2());
    PlanePoint::new(y1, y2)
}

/// The inverse warp `g⁻¹(x)`.
pub fn lsc_backward(x: PlanePoint, p: &LscParams) -> Result<PlanePoint> {
    let (y1, y2) = p.backward_raw(x.x1(), x.x2());
    PlanePoint::new(y1, y2)
}

/// The constant area factor of `g⁻¹`: `1 / (b1·b2·√(1−ρ²))`.
pub fn lsc_jacobian(p: &LscParams) -> f64 {
    1.0 / (p.b1 * p.b2 * p.rho_complement())
}

/// Elliptic density as the standard density composed with `g⁻¹`.
pub fn cauchy_elliptic_pdf(x: PlanePoint, p: &LscParams) -> f64 {
    let (y1, y2) = p.backward_raw(x.x1(), x.x2());
    let r2 = y1 * y1 + y2 * y2 + 1.0;
    lsc_jacobian(p) / (r2 * r2.sqrt()) / TAU
}

/// Elliptic density from the quadratic form
/// `z = d1²/b1² + d2²/b2² − 2ρ·d1·d2/(b1·b2)`, `d = x − a`.
pub fn cauchy_elliptic_pdf_closed_form(x: PlanePoint, p: &LscParams) -> f64 {
    let (d1, d2) = (x.x1() - p.a1, x.x2() - p.a2);
    let z =
        d1 * d1 / (p.b1 * p.b1) + d2 * d2 / (p.b2 * p.b2) - 2.0 * p.rho * d1 * d2 / (p.b1 * p.b2);
    let one_minus_rho2 = 1.0 - p.rho * p.rho;
    (1.0 + z / one_minus_rho2).powf(-1.5) / (TAU * p.b1 * p.b2 * one_minus_rho2.sqrt())
}

/// Mass of the standard density over `poly`: its subtended solid angle
/// over `2π`.
pub fn integrate_cauchy_std(poly: &PlanePolygon) -> Result<f64> {
    let sphere = SphericalPolygon::from_plane(poly)?;
    Ok(solid_angle_polygon(&sphere) / TAU)
}

/// Mass of the LSC density over `poly`, computed on `g⁻¹(poly)`.
pub fn integrate_cauchy_elliptic(poly: &PlanePolygon, p: &LscParams) -> Result<f64> {
    integrate_cauchy_std(&warp_backward(poly, p)?)
}

/// `g⁻¹` applied vertex-wise.
pub fn warp_backward(poly: &PlanePolygon, p: &LscParams) -> Result<PlanePolygon> {
    poly.try_map(|v| lsc_backward(v, p))
}

/// `g` applied vertex-wise.
pub fn warp_forward(poly: &PlanePolygon, p: &LscParams) -> Result<PlanePolygon> {
    poly.try_map(|v| lsc_forward(v, p))
}

/// Exact sampler for a Cauchy density (standard or LSC) truncated to a
/// convex polygon. Building it once amortizes the per-polygon set-up.
#[derive(Debug, Clone)]
pub struct TruncatedCauchy {
    sampler: PolygonSampler,
    params: Option<LscParams>,
    mass: f64,
}

impl TruncatedCauchy {
    pub fn standard(poly: &PlanePolygon) -> Result<Self> {
        Self::build(poly, None)
    }

    pub fn elliptic(poly: &PlanePolygon, p: &LscParams) -> Result<Self> {
        Self::build(&warp_backward(poly, p)?, Some(*p))
    }

    /// Standard density on the square `[-1e9, 1e9]²`, which carries all but
    /// about `1e-9` of the mass. At this size the corner directions are within
    /// `1e-9` of the horizon, so the reported [`mass`](Self::mass) is only good
    /// to about `1e-7` and may slightly exceed one.
    pub fn full_plane() -> Result<Self> {
        Self::standard(&PlanePolygon::square(FULL_PLANE_HALF_WIDTH)?)
    }

    fn build(standard_domain: &PlanePolygon, params: Option<LscParams>) -> Result<Self> {
        let sphere = SphericalPolygon::from_plane(standard_domain)?;
        let sampler = PolygonSampler::new(&sphere)?;
        Ok(Self {
            sampler,
            params,
            mass: solid_angle_polygon(&sphere) / TAU,
        })
    }

    /// The untruncated mass of the domain, i.e. the truncation constant.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn sample(&self, u: UniformPair) -> Result<PlanePoint> {
        let x = hemisphere_to_plane(self.sampler.sample(u)?)?;
        match &self.params {
            Some(p) => lsc_forward(x, p),
            None => Ok(x),
        }
    }
}

/// One draw from the standard density truncated to a convex polygon.
pub fn simulate_cauchy_std(poly: &PlanePolygon, u: UniformPair) -> Result<PlanePoint> {
    TruncatedCauchy::standard(poly)?.sample(u)
}

/// One draw from the LSC density truncated to `poly`; `g⁻¹(poly)` must be
/// convex (equivalently `poly` itself, the warp being linear).
pub fn simulate_cauchy_elliptic(
    poly: &PlanePolygon,
    p: &LscParams,
    u: UniformPair,
) -> Result<PlanePoint> {
    TruncatedCauchy::elliptic(poly, p)?.sample(u)
}

/// One draw from the (effectively untruncated) standard density.
pub fn simulate_cauchy_std_full(u: UniformPair) -> Result<PlanePoint> {
    TruncatedCauchy::full_plane()?.sample(u)
}
