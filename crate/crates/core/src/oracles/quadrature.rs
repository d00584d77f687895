//! Adaptive cubature over polygons.
//!
//! The polygon is ear-clipped into triangles. Each triangle is integrated
//! with the 7-point degree-5 rule and compared against the sum of the rule
//! over its four midpoint children; a triangle is accepted once that
//! difference falls below `tol` times its share of the polygon area, and
//! split otherwise. Accepted triangles contribute the child sum plus the
//! Richardson correction `(children − parent) / 63` for a degree-5 rule.

use crate::error::{Error, Result};
use crate::polygon::{midpoint_split, orient, PlanePolygon};
use crate::projective::PlanePoint;

/// Default cap on integrand evaluations.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Sum of the per-triangle refinement differences.
    pub error_estimate: f64,
    pub evaluations: u64,
}

type Triangle = [PlanePoint; 3];

/// Barycentric nodes and weights of the 7-point degree-5 rule on a triangle.
struct Rule {
    nodes: [[f64; 3]; 7],
    weights: [f64; 7],
}

impl Rule {
    fn degree5() -> Self {
        let s15 = 15f64.sqrt();
        let (a1, b1) = ((6.0 - s15) / 21.0, (9.0 + 2.0 * s15) / 21.0);
        let (a2, b2) = ((6.0 + s15) / 21.0, (9.0 - 2.0 * s15) / 21.0);
        let (w1, w2) = ((155.0 - s15) / 1200.0, (155.0 + s15) / 1200.0);
        let third = 1.0 / 3.0;
        Self {
            nodes: [
                [third, third, third],
                [b1, a1, a1],
                [a1, b1, a1],
                [a1, a1, b1],
                [b2, a2, a2],
                [a2, b2, a2],
                [a2, a2, b2],
            ],
            weights: [0.225, w1, w1, w1, w2, w2, w2],
        }
    }

    fn apply<F: Fn(PlanePoint) -> f64>(&self, f: &F, t: &Triangle) -> f64 {
        let area = 0.5 * orient(t[0], t[1], t[2]).abs();
        let mut sum = 0.0;
        for (node, w) in self.nodes.iter().zip(self.weights) {
            let x1 = node[0] * t[0].x1() + node[1] * t[1].x1() + node[2] * t[2].x1();
            let x2 = node[0] * t[0].x2() + node[1] * t[1].x2() + node[2] * t[2].x2();
            sum += w * f(PlanePoint::new(x1, x2).expect("convex combination of finite points"));
        }
        area * sum
    }
}

/// Integrates `f` over `poly` to absolute tolerance `tol` with the
/// [`DEFAULT_BUDGET`].
pub fn quadrature_integrate<F>(f: F, poly: &PlanePolygon, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(PlanePoint) -> f64,
{
    quadrature_integrate_with_budget(f, poly, tol, DEFAULT_BUDGET)
}

pub fn quadrature_integrate_with_budget<F>(
    f: F,
    poly: &PlanePolygon,
    tol: f64,
    budget: u64,
) -> Result<QuadratureResult>
where
    F: Fn(PlanePoint) -> f64,
{
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let rule = Rule::degree5();
    let triangles = triangulate(poly)?;
    let total_area = poly.area();

    let mut evaluations = 0u64;
    let mut value = 0.0;
    let mut error_estimate = 0.0;
    let mut exceeded = false;

    for tri in triangles {
        let mut stack = vec![(tri, rule.apply(&f, &tri))];
        evaluations += 7;
        while let Some((t, coarse)) = stack.pop() {
            let children = midpoint_split(t);
            let fine: [f64; 4] = children.map(|c| rule.apply(&f, &c));
            evaluations += 28;
            let refined: f64 = fine.iter().sum();
            let diff = (refined - coarse).abs();
            let area = 0.5 * orient(t[0], t[1], t[2]).abs();
            let share = tol * area / total_area;
            let roundoff = 64.0 * f64::EPSILON * fine.iter().map(|v| v.abs()).sum::<f64>();
            if !diff.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "integrand is not finite near ({}, {})",
                    t[0].x1(),
                    t[0].x2()
                )));
            }
            if diff <= share || diff <= roundoff || exceeded {
                value += refined + (refined - coarse) / 63.0;
                error_estimate += diff;
                continue;
            }
            if evaluations >= budget {
                // finish the sweep without further refinement
                exceeded = true;
                value += refined;
                error_estimate += diff;
                continue;
            }
            // reverse so children are processed in index order
            for (c, q) in children.into_iter().zip(fine).rev() {
                stack.push((c, q));
            }
        }
    }

    if exceeded {
        return Err(Error::BudgetExceeded {
            budget,
            best: value,
            error_estimate,
        });
    }
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
    })
}

/// Triangulates a simple counter-clockwise polygon: a fan when convex,
/// ear clipping otherwise.
pub fn triangulate(poly: &PlanePolygon) -> Result<Vec<Triangle>> {
    if poly.is_convex() {
        return Ok(poly.fan_triangles());
    }
    let mut ring: Vec<PlanePoint> = poly.vertices().to_vec();
    let mut out = Vec::with_capacity(ring.len() - 2);
    while ring.len() > 3 {
        let n = ring.len();
        let ear = (0..n).find(|&i| {
            let (a, b, c) = (ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]);
            orient(a, b, c) > 0.0
                && ring.iter().enumerate().all(|(j, &p)| {
                    j == i
                        || j == (i + 1) % n
                        || j == (i + n - 1) % n
                        || !in_closed_triangle(p, a, b, c)
                })
        });
        match ear {
            Some(i) => {
                out.push([ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]]);
                ring.remove(i);
            }
            None => {
                // a collinear vertex contributes no area
                let flat = (0..n)
                    .find(|&i| orient(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) == 0.0)
                    .ok_or_else(|| Error::DegenerateGeometry("ear clipping found no ear".into()))?;
                ring.remove(flat);
            }
        }
    }
    if orient(ring[0], ring[1], ring[2]) > 0.0 {
        out.push([ring[0], ring[1], ring[2]]);
    }
    Ok(out)
}

fn in_closed_triangle(p: PlanePoint, a: PlanePoint, b: PlanePoint, c: PlanePoint) -> bool {
    orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0
}
