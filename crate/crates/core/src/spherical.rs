//! Spherical polygons on the open upper hemisphere: interior angles, solid
//! angles and uniform area sampling.
//!
//! Two solid-angle routes are provided. [`solid_angle_girard`] is the
//! spherical excess `Σ Aₙ − (N − 2)π`; [`solid_angle_triangle_stable`] is the
//! `atan2` triangle formula of Van Oosterom and Strackee, which keeps full
//! relative precision on slivers and backs [`solid_angle_polygon`].
//!
//! Sampling uses Arvo's stratified map from the unit square onto a spherical
//! triangle; polygons are fan-triangulated and a stratum is picked by
//! inverting the cumulative solid-angle table with `u1`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::polygon::{signed_area, PlanePolygon};
use crate::projective::{hemisphere_to_plane, plane_to_hemisphere, UnitDirection};
use crate::vec3::{self, Vec3};

/// Consecutive vertices closer than this are a degenerate edge.
pub const EDGE_TOLERANCE: f64 = 1e-12;

/// Triangles below this solid angle (steradians) are never sampled.
pub const MIN_SAMPLE_SOLID_ANGLE: f64 = 1e-15;

/// The pair of uniforms `(u1, u2) ∈ [0, 1)²` driving one draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformPair {
    u1: f64,
    u2: f64,
}

impl UniformPair {
    pub fn new(u1: f64, u2: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&u1) || !(0.0..1.0).contains(&u2) {
            return Err(Error::InvalidArgument(format!(
                "uniform pair ({u1}, {u2}) is outside [0, 1)²"
            )));
        }
        Ok(Self { u1, u2 })
    }

    #[inline]
    pub fn u1(&self) -> f64 {
        self.u1
    }

    #[inline]
    pub fn u2(&self) -> f64 {
        self.u2
    }
}

/// A simple spherical polygon, counter-clockwise as seen from outside the
/// sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPolygon {
    vertices: Vec<UnitDirection>,
    plane: PlanePolygon,
}

impl SphericalPolygon {
    /// Validates `vertices` (simplicity is checked on the gnomonic image,
    /// where great-circle arcs become segments) and normalizes the order to
    /// counter-clockwise.
    pub fn new(mut vertices: Vec<UnitDirection>) -> Result<Self> {
        check_edges(&vertices)?;
        let mut projected = vertices
            .iter()
            .map(|&w| hemisphere_to_plane(w))
            .collect::<Result<Vec<_>>>()?;
        if projected.len() >= 3 && signed_area(&projected) < 0.0 {
            vertices[1..].reverse();
            projected[1..].reverse();
        }
        let plane = PlanePolygon::new(projected)?;
        Ok(Self { vertices, plane })
    }

    /// The spherical polygon subtended by a plane polygon.
    pub fn from_plane(plane: &PlanePolygon) -> Result<Self> {
        let vertices: Vec<_> = plane
            .vertices()
            .iter()
            .map(|&x| plane_to_hemisphere(x))
            .collect();
        check_edges(&vertices)?;
        Ok(Self {
            vertices,
            plane: plane.clone(),
        })
    }

    pub fn vertices(&self) -> &[UnitDirection] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The gnomonic image of the polygon.
    pub fn plane(&self) -> &PlanePolygon {
        &self.plane
    }

    pub fn is_convex(&self) -> bool {
        self.plane.is_convex()
    }

    fn raw(&self, i: usize) -> Vec3 {
        self.vertices[i % self.vertices.len()].as_array()
    }
}

fn check_edges(vertices: &[UnitDirection]) -> Result<()> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "a spherical polygon needs at least 3 vertices, got {n}"
        )));
    }
    for i in 0..n {
        let d = vec3::norm(vec3::sub(
            vertices[i].as_array(),
            vertices[(i + 1) % n].as_array(),
        ));
        if d < EDGE_TOLERANCE {
            return Err(Error::DegenerateGeometry(format!(
                "vertices {i} and {} coincide on the sphere",
                (i + 1) % n
            )));
        }
    }
    Ok(())
}

/// Interior angle at `at`, between the arcs towards `prev` and `next`,
/// measured counter-clockwise about the outward normal. Lies in `[0, 2π)`.
fn vertex_angle(prev: Vec3, at: Vec3, next: Vec3) -> Option<f64> {
    let to_prev = vec3::orthonormal_to(prev, at)?;
    let to_next = vec3::orthonormal_to(next, at)?;
    let angle = vec3::dot(at, vec3::cross(to_next, to_prev)).atan2(vec3::dot(to_next, to_prev));
    Some(if angle < 0.0 { angle + TAU } else { angle })
}

/// Interior angles `A₁ … A_N`, one per vertex.
pub fn interior_angles(poly: &SphericalPolygon) -> Result<Vec<f64>> {
    let n = poly.len();
    (0..n)
        .map(|i| {
            vertex_angle(poly.raw(i + n - 1), poly.raw(i), poly.raw(i + 1))
                .ok_or_else(|| Error::DegenerateGeometry(format!("degenerate edge at vertex {i}")))
        })
        .collect()
}

/// Spherical excess `Σ Aₙ − (N − 2)π`.
pub fn solid_angle_girard(poly: &SphericalPolygon) -> Result<f64> {
    let angles = interior_angles(poly)?;
    let sum: f64 = angles.iter().sum();
    Ok(sum - (poly.len() as f64 - 2.0) * PI)
}

/// `2·atan2(a·(b×c), 1 + a·b + b·c + c·a)`; positive for counter-clockwise
/// triangles.
#[inline]
fn signed_triangle_solid_angle(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let num = vec3::triple(a, b, c);
    let den = 1.0 + vec3::dot(a, b) + vec3::dot(b, c) + vec3::dot(c, a);
    if num == 0.0 && den <= 0.0 {
        return 0.0;
    }
    2.0 * num.atan2(den)
}

/// Solid angle of the spherical triangle `abc`. Zero-area triples return 0.
pub fn solid_angle_triangle_stable(a: UnitDirection, b: UnitDirection, c: UnitDirection) -> f64 {
    signed_triangle_solid_angle(a.as_array(), b.as_array(), c.as_array()).abs()
}

/// Solid angle of any simple polygon: the stable triangle formula for
/// triangles, else the magnitude of the signed fan sum anchored at vertex 0.
pub fn solid_angle_polygon(poly: &SphericalPolygon) -> f64 {
    let v = poly.vertices();
    if v.len() == 3 {
        return solid_angle_triangle_stable(v[0], v[1], v[2]);
    }
    let anchor = v[0].as_array();
    (1..v.len() - 1)
        .map(|k| signed_triangle_solid_angle(anchor, v[k].as_array(), v[k + 1].as_array()))
        .sum::<f64>()
        .abs()
}

/// A spherical triangle prepared for repeated uniform sampling.
#[derive(Debug, Clone)]
pub struct SphericalTriangle {
    a: Vec3,
    b: Vec3,
    c: Vec3,
    area: f64,
    alpha: f64,
    cos_alpha: f64,
    sin_alpha: f64,
    cos_ab: f64,
    /// Unit tangent at `a` pointing towards `c`.
    a_to_c: Vec3,
}

impl SphericalTriangle {
    /// Requires a counter-clockwise triangle with solid angle at least
    /// [`MIN_SAMPLE_SOLID_ANGLE`].
    pub fn new(a: UnitDirection, b: UnitDirection, c: UnitDirection) -> Result<Self> {
        let (a, b, c) = (a.as_array(), b.as_array(), c.as_array());
        let area = signed_triangle_solid_angle(a, b, c);
        if area < 0.0 {
            return Err(Error::InvalidArgument(
                "spherical triangle must be counter-clockwise".into(),
            ));
        }
        Self::with_area(a, b, c, area)
    }

    fn with_area(a: Vec3, b: Vec3, c: Vec3, area: f64) -> Result<Self> {
        let degenerate = || {
            Error::DegenerateGeometry(format!("spherical triangle solid angle {area:e} is zero"))
        };
        if area.is_nan() || area < MIN_SAMPLE_SOLID_ANGLE {
            return Err(degenerate());
        }
        let alpha = vertex_angle(c, a, b).ok_or_else(degenerate)?;
        let a_to_c = vec3::orthonormal_to(c, a).ok_or_else(degenerate)?;
        Ok(Self {
            a,
            b,
            c,
            area,
            alpha,
            cos_alpha: alpha.cos(),
            sin_alpha: alpha.sin(),
            cos_ab: vec3::dot(a, b),
            a_to_c,
        })
    }

    pub fn solid_angle(&self) -> f64 {
        self.area
    }

    pub fn vertices(&self) -> [UnitDirection; 3] {
        [self.a, self.b, self.c].map(UnitDirection::from_unit)
    }

    /// Arvo's area-preserving map. `u1` selects the sub-triangle
    /// `a b ĉ` of area `u1·Ω`, `u2` places the point along the arc from `b`
    /// towards `ĉ` with the `z = 1 − u2(1 − ĉ·b)` warp. `(0, 0)` maps to `b`.
    pub fn sample(&self, u: UniformPair) -> Result<UnitDirection> {
        let area_hat = u.u1() * self.area;
        let (s, t) = (area_hat - self.alpha).sin_cos();
        let up = t - self.cos_alpha;
        let vp = s + self.sin_alpha * self.cos_ab;
        let q = ((vp * t - up * s) * self.cos_alpha - vp) / ((vp * s + up * t) * self.sin_alpha);
        // NaN only for u1 = 0 on near-degenerate inputs, where ĉ = a
        let q = if q.is_nan() { 1.0 } else { q.clamp(-1.0, 1.0) };
        let c_hat = vec3::add(
            vec3::scale(self.a, q),
            vec3::scale(self.a_to_c, (1.0 - q * q).sqrt()),
        );

        let z = (1.0 - u.u2() * (1.0 - vec3::dot(c_hat, self.b))).clamp(-1.0, 1.0);
        let p = match vec3::orthonormal_to(c_hat, self.b) {
            Some(dir) => vec3::add(
                vec3::scale(self.b, z),
                vec3::scale(dir, (1.0 - z * z).sqrt()),
            ),
            None => self.b,
        };
        UnitDirection::from_vector(p)
    }
}

/// One uniform point on the spherical triangle `abc`.
pub fn sample_spherical_triangle(
    a: UnitDirection,
    b: UnitDirection,
    c: UnitDirection,
    u: UniformPair,
) -> Result<UnitDirection> {
    SphericalTriangle::new(a, b, c)?.sample(u)
}

/// Fan strata with an edge closer to antipodal than this (in `1 + a·b`)
/// are relabeled before sampling.
const ANTIPODAL_TOLERANCE: f64 = 1e-8;

/// Huge plane polygons produce fan triangles with a near-antipodal vertex
/// pair. On the `a b` edge the sub-triangle is a near-lune with an
/// ill-conditioned `q`; on `b c` the final arc from `b` to `ĉ` is
/// ill-determined. Only `a c` is benign, since `ĉ` moves along that arc by
/// angle. A cyclic relabeling keeps orientation and area, so the stratum
/// stays uniform; well-shaped triangles are left untouched.
fn well_conditioned_labels(t: [Vec3; 3]) -> [Vec3; 3] {
    let worst = (0..3)
        .map(|i| 1.0 + vec3::dot(t[i], t[(i + 1) % 3]))
        .fold(f64::INFINITY, f64::min);
    if worst >= ANTIPODAL_TOLERANCE {
        return t;
    }
    (0..3)
        .map(|r| [t[r], t[(r + 1) % 3], t[(r + 2) % 3]])
        .min_by(|x, y| vec3::dot(x[0], x[2]).total_cmp(&vec3::dot(y[0], y[2])))
        .expect("three rotations")
}

/// A convex spherical polygon prepared for repeated uniform sampling.
#[derive(Debug, Clone)]
pub struct PolygonSampler {
    strata: Vec<Option<SphericalTriangle>>,
    /// Upper ends of the half-open intervals `[c_{k-1}, c_k)`.
    cumulative: Vec<f64>,
}

impl PolygonSampler {
    pub fn new(poly: &SphericalPolygon) -> Result<Self> {
        if let Some(i) = poly.plane().reflex_vertex() {
            let v = poly.plane().vertices()[i];
            return Err(Error::UnsupportedGeometry(format!(
                "sampling needs a convex polygon; vertex {i} at ({}, {}) is reflex",
                v.x1(),
                v.x2()
            )));
        }
        let anchor = poly.raw(0);
        let mut strata = Vec::with_capacity(poly.len() - 2);
        let mut cumulative = Vec::with_capacity(poly.len() - 2);
        let mut total = 0.0;
        for k in 1..poly.len() - 1 {
            let (b, c) = (poly.raw(k), poly.raw(k + 1));
            let area = signed_triangle_solid_angle(anchor, b, c);
            let stratum = if area >= MIN_SAMPLE_SOLID_ANGLE {
                total += area;
                let [a, b, c] = well_conditioned_labels([anchor, b, c]);
                Some(SphericalTriangle::with_area(a, b, c, area)?)
            } else {
                None
            };
            strata.push(stratum);
            cumulative.push(total);
        }
        if total.is_nan() || total < MIN_SAMPLE_SOLID_ANGLE {
            return Err(Error::DegenerateGeometry(format!(
                "polygon solid angle {total:e} is too small to sample"
            )));
        }
        Ok(Self { strata, cumulative })
    }

    /// Total solid angle of the sampled strata.
    pub fn solid_angle(&self) -> f64 {
        *self.cumulative.last().expect("at least one stratum")
    }

    /// Selects stratum `k` with `c_{k-1} ≤ u1·Ω < c_k` and rescales `u1`
    /// within it.
    pub fn select(&self, u: UniformPair) -> (usize, UniformPair) {
        let t = u.u1() * self.solid_angle();
        let k = self
            .cumulative
            .partition_point(|&c| c <= t)
            .min(self.last_nonempty());
        let lo = if k == 0 { 0.0 } else { self.cumulative[k - 1] };
        let width = self.cumulative[k] - lo;
        let u1 = ((t - lo) / width).clamp(0.0, 1.0 - f64::EPSILON / 2.0);
        (k, UniformPair { u1, u2: u.u2() })
    }

    pub fn sample(&self, u: UniformPair) -> Result<UnitDirection> {
        let (k, rescaled) = self.select(u);
        self.strata[k]
            .as_ref()
            .expect("selected strata have positive width")
            .sample(rescaled)
    }

    fn last_nonempty(&self) -> usize {
        self.strata
            .iter()
            .rposition(Option::is_some)
            .expect("total > 0")
    }
}

/// One uniform point on a convex spherical polygon.
pub fn sample_spherical_polygon(poly: &SphericalPolygon, u: UniformPair) -> Result<UnitDirection> {
    PolygonSampler::new(poly)?.sample(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::PlanePoint;
    use crate::rng::SplitMix64;

    const UNIT_TRIANGLE_SOLID_ANGLE: f64 = 0.339_836_909_454_121_87;

    fn sph(coords: &[(f64, f64)]) -> SphericalPolygon {
        SphericalPolygon::from_plane(&PlanePolygon::from_coords(coords).unwrap()).unwrap()
    }

    fn dir(x1: f64, x2: f64) -> UnitDirection {
        plane_to_hemisphere(PlanePoint::new(x1, x2).unwrap())
    }

    /// Independent evaluation of the Van Oosterom–Strackee formula on raw
    /// vectors.
    fn vos(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
        let n = |v: [f64; 3]| {
            let l = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            [v[0] / l, v[1] / l, v[2] / l]
        };
        let (a, b, c) = (n(a), n(b), n(c));
        let d = |x: [f64; 3], y: [f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
        let bxc = [
            b[1] * c[2] - b[2] * c[1],
            b[2] * c[0] - b[0] * c[2],
            b[0] * c[1] - b[1] * c[0],
        ];
        2.0 * d(a, bxc).atan2(1.0 + d(a, b) + d(b, c) + d(c, a))
    }

    #[test]
    fn uniform_pair_range() {
        assert!(UniformPair::new(0.0, 0.999).is_ok());
        assert!(UniformPair::new(1.0, 0.5).is_err());
        assert!(UniformPair::new(0.5, -0.1).is_err());
        assert!(UniformPair::new(f64::NAN, 0.5).is_err());
    }

    #[test]
    fn octant_angles() {
        let p = sph(&[(0.0, 0.0), (1e6, 0.0), (0.0, 1e6)]);
        for a in interior_angles(&p).unwrap() {
            assert!((a - PI / 2.0).abs() < 1e-5, "{a}");
        }
        assert!((solid_angle_girard(&p).unwrap() - PI / 2.0).abs() < 1e-4);
    }

    #[test]
    fn equilateral_angles_are_equal() {
        let s = 3f64.sqrt() / 2.0;
        let p = sph(&[(1.0, 0.0), (-0.5, s), (-0.5, -s)]);
        let a = interior_angles(&p).unwrap();
        assert!((a[0] - a[1]).abs() < 1e-14 && (a[1] - a[2]).abs() < 1e-14);
        assert!(a.iter().all(|&x| x > 0.0 && x < PI));
    }

    #[test]
    fn unit_triangle_solid_angle() {
        let oracle = vos([1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]);
        assert!((oracle - UNIT_TRIANGLE_SOLID_ANGLE).abs() < 1e-15);

        let p = sph(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let angles = interior_angles(&p).unwrap();
        let sum: f64 = angles.iter().sum();
        assert!((sum - PI - UNIT_TRIANGLE_SOLID_ANGLE).abs() < 1e-14);
        assert!((solid_angle_girard(&p).unwrap() - UNIT_TRIANGLE_SOLID_ANGLE).abs() < 1e-14);
        let v = p.vertices();
        assert!(
            (solid_angle_triangle_stable(v[0], v[1], v[2]) - UNIT_TRIANGLE_SOLID_ANGLE).abs()
                < 1e-15
        );
        assert_eq!(
            solid_angle_polygon(&p),
            solid_angle_triangle_stable(v[0], v[1], v[2])
        );
    }

    #[test]
    fn sliver_is_tiny_and_positive() {
        let p = sph(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1e-9)]);
        let g = solid_angle_girard(&p).unwrap();
        assert!(g > 0.0 && g < 1e-9, "{g}");
        let s = solid_angle_polygon(&p);
        assert!(s > 0.0 && s < 1e-9, "{s}");
    }

    #[test]
    fn zero_area_triples() {
        let a = dir(0.3, 0.1);
        assert_eq!(solid_angle_triangle_stable(a, a, dir(1.0, 1.0)), 0.0);
        assert_eq!(
            solid_angle_triangle_stable(dir(0.0, 0.0), dir(1.0, 1.0), dir(2.0, 2.0)),
            0.0
        );
    }

    #[test]
    fn hemisphere_limit_square() {
        let p = sph(&[(-1e6, -1e6), (1e6, -1e6), (1e6, 1e6), (-1e6, 1e6)]);
        assert!((solid_angle_polygon(&p) - TAU).abs() < 1e-4);
        assert!(solid_angle_polygon(&p) < TAU);
    }

    #[test]
    fn unit_square_fan_matches_girard() {
        let p = sph(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!((solid_angle_polygon(&p) - solid_angle_girard(&p).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn non_convex_girard_matches_fan() {
        let p = sph(&[(0.0, 0.0), (2.0, 1.0), (0.0, 2.0), (1.0, 1.0)]);
        let angles = interior_angles(&p).unwrap();
        assert!(angles[3] > PI);
        assert!((solid_angle_polygon(&p) - solid_angle_girard(&p).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn new_reorients_clockwise_directions() {
        let cw = vec![dir(0.0, 0.0), dir(0.0, 1.0), dir(1.0, 0.0)];
        let p = SphericalPolygon::new(cw).unwrap();
        assert_eq!(p.vertices()[1], dir(1.0, 0.0));
        assert!((solid_angle_girard(&p).unwrap() - UNIT_TRIANGLE_SOLID_ANGLE).abs() < 1e-14);
    }

    #[test]
    fn girard_and_stable_agree_on_random_triangles() {
        let mut rng = SplitMix64::new(21);
        let mut checked = 0;
        while checked < 1000 {
            let c: Vec<(f64, f64)> = (0..3)
                .map(|_| (10.0 * rng.next_f64() - 5.0, 10.0 * rng.next_f64() - 5.0))
                .collect();
            let Ok(plane) = PlanePolygon::from_coords(&c) else {
                continue;
            };
            let p = SphericalPolygon::from_plane(&plane).unwrap();
            if interior_angles(&p).unwrap().iter().any(|&a| a < 1e-3) {
                continue;
            }
            let v = p.vertices();
            let g = solid_angle_girard(&p).unwrap();
            let s = solid_angle_triangle_stable(v[0], v[1], v[2]);
            assert!((g - s).abs() < 1e-10, "{c:?}: {g} vs {s}");
            checked += 1;
        }
    }

    #[test]
    fn edge_split_additivity() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..200 {
            let (a, b, c) = (
                dir(4.0 * rng.next_f64() - 2.0, 4.0 * rng.next_f64() - 2.0),
                dir(4.0 * rng.next_f64() - 2.0, 4.0 * rng.next_f64() - 2.0),
                dir(4.0 * rng.next_f64() - 2.0, 4.0 * rng.next_f64() - 2.0),
            );
            let t = rng.next_f64();
            let m = UnitDirection::from_vector(vec3::add(
                vec3::scale(b.as_array(), 1.0 - t),
                vec3::scale(c.as_array(), t),
            ))
            .unwrap();
            let whole = solid_angle_triangle_stable(a, b, c);
            let parts = solid_angle_triangle_stable(a, b, m) + solid_angle_triangle_stable(a, m, c);
            assert!((whole - parts).abs() < 1e-12, "{whole} vs {parts}");
        }
    }

    #[test]
    fn corner_of_the_square_maps_to_second_vertex() {
        let (a, b, c) = (dir(0.0, 0.0), dir(1.0, 0.0), dir(0.0, 1.0));
        let w = sample_spherical_triangle(a, b, c, UniformPair::new(0.0, 0.0).unwrap()).unwrap();
        for (x, y) in w.as_array().iter().zip(b.as_array()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn edges_of_the_square() {
        let (a, b, c) = (dir(0.0, 0.0), dir(1.0, 0.0), dir(0.0, 1.0));
        let tri = SphericalTriangle::new(a, b, c).unwrap();
        // u2 → 1 with u1 = 0 approaches a; u1 → 1 with u2 → 1 approaches c
        let near = |w: UnitDirection, v: UnitDirection, tol: f64| {
            vec3::norm(vec3::sub(w.as_array(), v.as_array())) < tol
        };
        let one = 1.0 - 1e-12;
        assert!(near(
            tri.sample(UniformPair::new(0.0, one).unwrap()).unwrap(),
            a,
            1e-6
        ));
        assert!(near(
            tri.sample(UniformPair::new(one, one).unwrap()).unwrap(),
            c,
            1e-6
        ));
        assert!(near(
            tri.sample(UniformPair::new(one, 0.0).unwrap()).unwrap(),
            b,
            1e-12
        ));
    }

    #[test]
    fn rejects_clockwise_and_degenerate_triangles() {
        let (a, b, c) = (dir(0.0, 0.0), dir(1.0, 0.0), dir(0.0, 1.0));
        assert!(SphericalTriangle::new(a, c, b).is_err());
        assert!(matches!(
            SphericalTriangle::new(dir(0.0, 0.0), dir(1.0, 1.0), dir(2.0, 2.0)),
            Err(Error::DegenerateGeometry(_))
        ));
    }

    fn inside_triangle(w: Vec3, a: Vec3, b: Vec3, c: Vec3) -> bool {
        let tol = -1e-15;
        vec3::triple(a, b, w) >= tol && vec3::triple(b, c, w) >= tol && vec3::triple(c, a, w) >= tol
    }

    #[test]
    fn samples_stay_inside_the_triangle() {
        let mut rng = SplitMix64::new(99);
        let (a, b, c) = (dir(-0.5, -1.0), dir(3.0, 0.2), dir(0.1, 2.5));
        let tri = SphericalTriangle::new(a, b, c).unwrap();
        for _ in 0..10_000 {
            let w = tri.sample(rng.next_pair()).unwrap();
            assert!(inside_triangle(
                w.as_array(),
                a.as_array(),
                b.as_array(),
                c.as_array()
            ));
        }
    }

    #[test]
    fn single_stratum_polygon_matches_triangle_sampler() {
        let p = sph(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let sampler = PolygonSampler::new(&p).unwrap();
        let v = p.vertices();
        let mut rng = SplitMix64::new(1);
        for _ in 0..100 {
            let u = rng.next_pair();
            let (k, rescaled) = sampler.select(u);
            assert_eq!(k, 0);
            assert!((rescaled.u1() - u.u1()).abs() < 1e-15);
            assert_eq!(
                sampler.sample(u).unwrap(),
                sample_spherical_triangle(v[0], v[1], v[2], rescaled).unwrap()
            );
        }
    }

    #[test]
    fn stratum_boundaries_are_half_open() {
        let p = sph(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]);
        let sampler = PolygonSampler::new(&p).unwrap();
        // the square is symmetric, so the first fan triangle holds half
        let (k, r) = sampler.select(UniformPair::new(0.5, 0.3).unwrap());
        let c0 = sampler.cumulative[0];
        if 0.5 * sampler.solid_angle() >= c0 {
            assert_eq!(k, 1);
            assert!(r.u1() < 1e-12);
        } else {
            assert_eq!(k, 0);
        }
    }

    #[test]
    fn non_convex_sampling_is_rejected() {
        let p = sph(&[(0.0, 0.0), (2.0, 1.0), (0.0, 2.0), (1.0, 1.0)]);
        assert!(matches!(
            PolygonSampler::new(&p),
            Err(Error::UnsupportedGeometry(_))
        ));
    }
}
