//! Rejection sampling from a bounded density restricted to a polygon.

use crate::error::{Error, Result};
use crate::polygon::PlanePolygon;
use crate::projective::PlanePoint;
use crate::rng::SplitMix64;

/// Acceptance rates below this abort the sampler.
pub const MIN_ACCEPTANCE_RATE: f64 = 1e-6;

/// How often (in proposals) the acceptance rate is checked.
const RATE_CHECK_INTERVAL: u64 = 1_000_000;

/// Draws `n` points from `f` restricted to `poly` by proposing uniformly in
/// the bounding box and accepting with probability `f(x) / bound`.
///
/// Any evaluated density above `bound` is reported as an error, so a wrong
/// bound is caught whenever the proposals happen to expose it.
pub fn rejection_sample<F>(
    f: F,
    poly: &PlanePolygon,
    bound: f64,
    seed: u64,
    n: usize,
) -> Result<Vec<PlanePoint>>
where
    F: Fn(PlanePoint) -> f64,
{
    if !(bound > 0.0 && bound.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "bound must be positive, got {bound}"
        )));
    }
    let ((lo1, lo2), (hi1, hi2)) = poly.bounding_box();
    let (w1, w2) = (hi1 - lo1, hi2 - lo2);
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(n);
    let mut proposals = 0u64;

    while out.len() < n {
        proposals += 1;
        let x = PlanePoint::new(lo1 + w1 * rng.next_f64(), lo2 + w2 * rng.next_f64())?;
        let accept = rng.next_f64() * bound;
        if poly.contains(x) {
            let value = f(x);
            if value > bound {
                return Err(Error::InvalidBound {
                    value,
                    bound,
                    x1: x.x1(),
                    x2: x.x2(),
                });
            }
            if accept < value {
                out.push(x);
            }
        }
        if proposals.is_multiple_of(RATE_CHECK_INTERVAL) {
            let rate = out.len() as f64 / proposals as f64;
            if rate < MIN_ACCEPTANCE_RATE {
                return Err(Error::ImpracticalBound { rate });
            }
        }
    }
    Ok(out)
}
