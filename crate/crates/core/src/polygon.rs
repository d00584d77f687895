//! Simple polygons on the plane `z = 1`.

use crate::error::{Error, Result};
use crate::projective::PlanePoint;

/// Relative tolerance of the half-plane membership test.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-12;

/// Polygons whose area is below this fraction of their squared bounding-box
/// diagonal are degenerate.
const DEGENERATE_AREA_RATIO: f64 = 1e-15;

/// A simple polygon with counter-clockwise vertex order.
///
/// Clockwise input is reversed at construction, so vertex `0` is always the
/// first vertex supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanePolygon {
    vertices: Vec<PlanePoint>,
    area: f64,
    convex: bool,
}

impl PlanePolygon {
    pub fn new(vertices: Vec<PlanePoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "a polygon needs at least 3 vertices, got {n}"
            )));
        }
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            if a == b {
                return Err(Error::DegenerateGeometry(format!(
                    "vertices {i} and {} coincide at ({}, {})",
                    (i + 1) % n,
                    a.x1(),
                    a.x2()
                )));
            }
        }

        let signed = signed_area(&vertices);
        let diag2 = bbox_diagonal_squared(&vertices);
        if signed.is_nan() || signed.abs() <= DEGENERATE_AREA_RATIO * diag2 {
            return Err(Error::DegenerateGeometry(format!(
                "polygon area {signed:e} is zero (collinear or self-cancelling vertices)"
            )));
        }
        if let Some((i, j)) = first_self_intersection(&vertices) {
            return Err(Error::InvalidArgument(format!(
                "polygon is not simple: edges {i} and {j} intersect"
            )));
        }

        let mut vertices = vertices;
        if signed < 0.0 {
            vertices[1..].reverse();
        }
        let convex = first_reflex(&vertices).is_none();
        Ok(Self {
            vertices,
            area: signed.abs(),
            convex,
        })
    }

    /// Builds a polygon from raw coordinate pairs.
    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self> {
        let vertices = coords
            .iter()
            .map(|&(a, b)| PlanePoint::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    /// Axis-aligned square `[-half, half]²`.
    pub fn square(half: f64) -> Result<Self> {
        Self::from_coords(&[(-half, -half), (half, -half), (half, half), (-half, half)])
    }

    /// Regular `n`-gon inscribed in the circle of radius `radius` about the origin.
    pub fn regular(n: usize, radius: f64) -> Result<Self> {
        let coords: Vec<_> = (0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64;
                (radius * t.cos(), radius * t.sin())
            })
            .collect();
        Self::from_coords(&coords)
    }

    pub fn vertices(&self) -> &[PlanePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    /// Index of the first vertex with a clockwise (reflex) turn, if any.
    pub fn reflex_vertex(&self) -> Option<usize> {
        first_reflex(&self.vertices)
    }

    /// Applies `f` to every vertex and validates the image.
    pub fn try_map<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(PlanePoint) -> Result<PlanePoint>,
    {
        Self::new(
            self.vertices
                .iter()
                .map(|&v| f(v))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Bounding box as `(min, max)` corners.
    pub fn bounding_box(&self) -> ((f64, f64), (f64, f64)) {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = (lo.0.min(v.x1()), lo.1.min(v.x2()));
            hi = (hi.0.max(v.x1()), hi.1.max(v.x2()));
        }
        (lo, hi)
    }

    /// Membership test that accepts points within a relative
    /// [`MEMBERSHIP_TOLERANCE`] of the boundary.
    pub fn contains(&self, p: PlanePoint) -> bool {
        let n = self.vertices.len();
        let tol =
            MEMBERSHIP_TOLERANCE * self.coordinate_scale().max(p.x1().abs()).max(p.x2().abs());
        if self.convex {
            return (0..n).all(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                let (ex, ey) = (b.x1() - a.x1(), b.x2() - a.x2());
                let cross = ex * (p.x2() - a.x2()) - ey * (p.x1() - a.x1());
                cross >= -tol * ex.hypot(ey)
            });
        }

        let mut inside = false;
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            if segment_distance(p, a, b) <= tol {
                return true;
            }
            if (a.x2() > p.x2()) != (b.x2() > p.x2()) {
                let t = (p.x2() - a.x2()) / (b.x2() - a.x2());
                if p.x1() < a.x1() + t * (b.x1() - a.x1()) {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Fan triangles `(v0, vk, vk+1)`. Only a partition for convex polygons.
    pub fn fan_triangles(&self) -> Vec<[PlanePoint; 3]> {
        let v = &self.vertices;
        (1..v.len() - 1).map(|k| [v[0], v[k], v[k + 1]]).collect()
    }

    /// Largest absolute coordinate, at least one.
    fn coordinate_scale(&self) -> f64 {
        self.vertices
            .iter()
            .fold(1.0f64, |m, v| m.max(v.x1().abs()).max(v.x2().abs()))
    }
}

/// Splits a triangle into four by its edge midpoints. Children keep the
/// parent's orientation; the central child comes last.
pub fn midpoint_split(t: [PlanePoint; 3]) -> [[PlanePoint; 3]; 4] {
    let mid = |a: PlanePoint, b: PlanePoint| {
        PlanePoint::new(0.5 * (a.x1() + b.x1()), 0.5 * (a.x2() + b.x2()))
            .expect("midpoint of finite points is finite")
    };
    let [a, b, c] = t;
    let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
    [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
}

/// `levels` rounds of [`midpoint_split`], giving `4^levels` triangles.
pub fn subdivide_triangle(t: [PlanePoint; 3], levels: u32) -> Vec<[PlanePoint; 3]> {
    let mut tris = vec![t];
    for _ in 0..levels {
        tris = tris.into_iter().flat_map(midpoint_split).collect();
    }
    tris
}

/// Shoelace area, positive for counter-clockwise order.
pub fn signed_area(v: &[PlanePoint]) -> f64 {
    let n = v.len();
    // centred on v[0] to limit cancellation for far-away polygons
    let (ox, oy) = (v[0].x1(), v[0].x2());
    let mut sum = 0.0;
    for i in 1..n - 1 {
        let (ax, ay) = (v[i].x1() - ox, v[i].x2() - oy);
        let (bx, by) = (v[i + 1].x1() - ox, v[i + 1].x2() - oy);
        sum += ax * by - ay * bx;
    }
    0.5 * sum
}

#[inline]
pub(crate) fn orient(a: PlanePoint, b: PlanePoint, c: PlanePoint) -> f64 {
    (b.x1() - a.x1()) * (c.x2() - a.x2()) - (b.x2() - a.x2()) * (c.x1() - a.x1())
}

fn bbox_diagonal_squared(v: &[PlanePoint]) -> f64 {
    let (mut lo, mut hi) = (
        (f64::INFINITY, f64::INFINITY),
        (f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in v {
        lo = (lo.0.min(p.x1()), lo.1.min(p.x2()));
        hi = (hi.0.max(p.x1()), hi.1.max(p.x2()));
    }
    let (dx, dy) = (hi.0 - lo.0, hi.1 - lo.1);
    dx * dx + dy * dy
}

fn first_reflex(v: &[PlanePoint]) -> Option<usize> {
    let n = v.len();
    (0..n).find(|&i| {
        let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
        let e1 = (b.x1() - a.x1()).hypot(b.x2() - a.x2());
        let e2 = (c.x1() - b.x1()).hypot(c.x2() - b.x2());
        orient(a, b, c) < -MEMBERSHIP_TOLERANCE * e1 * e2
    })
}

fn segment_distance(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> f64 {
    let (ex, ey) = (b.x1() - a.x1(), b.x2() - a.x2());
    let (px, py) = (p.x1() - a.x1(), p.x2() - a.x2());
    let t = ((px * ex + py * ey) / (ex * ex + ey * ey)).clamp(0.0, 1.0);
    (px - t * ex).hypot(py - t * ey)
}

fn on_segment(a: PlanePoint, b: PlanePoint, p: PlanePoint) -> bool {
    p.x1() >= a.x1().min(b.x1())
        && p.x1() <= a.x1().max(b.x1())
        && p.x2() >= a.x2().min(b.x2())
        && p.x2() <= a.x2().max(b.x2())
}

fn segments_intersect(a: PlanePoint, b: PlanePoint, c: PlanePoint, d: PlanePoint) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// First pair of edges `(i, j)` that touch other than at a shared vertex.
/// Edge `i` runs from vertex `i` to vertex `i + 1`.
fn first_self_intersection(v: &[PlanePoint]) -> Option<(usize, usize)> {
    let n = v.len();
    let edge = |i: usize| (v[i], v[(i + 1) % n]);
    let bbox = |i: usize| {
        let (a, b) = edge(i);
        (
            a.x1().min(b.x1()),
            a.x1().max(b.x1()),
            a.x2().min(b.x2()),
            a.x2().max(b.x2()),
        )
    };
    let boxes: Vec<_> = (0..n).map(bbox).collect();

    for i in 0..n {
        // adjacent edges only meet at their shared vertex unless they fold back
        let (a, b) = edge(i);
        let c = v[(i + 2) % n];
        if orient(a, b, c) == 0.0 {
            let back =
                (b.x1() - a.x1()) * (c.x1() - b.x1()) + (b.x2() - a.x2()) * (c.x2() - b.x2());
            if back < 0.0 {
                return Some((i, (i + 1) % n));
            }
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (bi, bj) = (boxes[i], boxes[j]);
            if bi.1 < bj.0 || bj.1 < bi.0 || bi.3 < bj.2 || bj.3 < bi.2 {
                continue;
            }
            let (c, d) = edge(j);
            if segments_intersect(a, b, c, d) {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: f64, b: f64) -> PlanePoint {
        PlanePoint::new(a, b).unwrap()
    }

    #[test]
    fn clockwise_input_is_reoriented() {
        let p = PlanePolygon::from_coords(&[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]).unwrap();
        assert_eq!(p.vertices(), &[pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0)]);
        assert!(signed_area(p.vertices()) > 0.0);
        assert_eq!(p.area(), 0.5);
    }

    #[test]
    fn rejects_bad_polygons() {
        assert!(matches!(
            PlanePolygon::from_coords(&[(0.0, 0.0), (1.0, 0.0)]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            PlanePolygon::from_coords(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]),
            Err(Error::DegenerateGeometry(_))
        ));
        assert!(matches!(
            PlanePolygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 1.0)]),
            Err(Error::DegenerateGeometry(_))
        ));
        // symmetric bow tie: zero net area is caught first
        assert!(
            PlanePolygon::from_coords(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]).is_err()
        );
        // lopsided bow tie has net area, so only the simplicity check catches it
        assert!(matches!(
            PlanePolygon::from_coords(&[(0.0, 0.0), (2.0, 2.0), (2.0, 0.0), (0.0, 1.0)]),
            Err(Error::InvalidArgument(_))
        ));
        // spike folding back along an edge
        assert!(
            PlanePolygon::from_coords(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (1.0, 1.0)]).is_err()
        );
    }

    #[test]
    fn sliver_is_accepted() {
        let p = PlanePolygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1e-9)]).unwrap();
        assert!(p.area() > 0.0);
    }

    #[test]
    fn convexity_and_reflex_vertex() {
        let sq = PlanePolygon::square(1.0).unwrap();
        assert!(sq.is_convex());
        let arrow =
            PlanePolygon::from_coords(&[(0.0, 0.0), (2.0, 1.0), (0.0, 2.0), (1.0, 1.0)]).unwrap();
        assert!(!arrow.is_convex());
        assert_eq!(arrow.reflex_vertex(), Some(3));
        // collinear middle vertex keeps convexity
        let p =
            PlanePolygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 2.0)]).unwrap();
        assert!(p.is_convex());
    }

    #[test]
    fn membership() {
        let tri = PlanePolygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]).unwrap();
        assert!(tri.contains(pt(0.25, 0.25)));
        assert!(tri.contains(pt(0.5, 0.5)));
        assert!(tri.contains(pt(0.5, 0.5 + 1e-14)));
        assert!(!tri.contains(pt(0.5, 0.5 + 1e-9)));
        assert!(!tri.contains(pt(-0.1, 0.2)));

        let arrow =
            PlanePolygon::from_coords(&[(0.0, 0.0), (2.0, 1.0), (0.0, 2.0), (1.0, 1.0)]).unwrap();
        assert!(arrow.contains(pt(1.5, 1.0)));
        assert!(!arrow.contains(pt(0.5, 1.0)));
        assert!(arrow.contains(pt(1.0, 1.0)));
    }

    #[test]
    fn subdivision_preserves_area_and_orientation() {
        let t = [pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0)];
        let tris = subdivide_triangle(t, 2);
        assert_eq!(tris.len(), 16);
        let total: f64 = tris.iter().map(|t| signed_area(t)).sum();
        assert!((total - 0.5).abs() < 1e-15);
        assert!(tris.iter().all(|t| signed_area(t) > 0.0));
    }

    #[test]
    fn regular_polygon_area() {
        let p = PlanePolygon::regular(4096, 1.0).unwrap();
        let expected = 0.5 * 4096.0 * (std::f64::consts::TAU / 4096.0).sin();
        assert!((p.area() - expected).abs() < 1e-12);
        assert!(p.is_convex());
    }
}
