//! The Student-ν family `(ν / 2π)·(x1² + x2² + 1)^(-(2+ν)/2)`.
//!
//! Substituting `dω = (x1² + x2² + 1)^(-3/2) dx` and `ω3 = (x1² + x2² + 1)^(-1/2)`
//! gives `(x1² + x2² + 1)^(-(2+ν)/2) dx = ω3^(ν−1) dω`. A polygon's mass is
//! therefore `(ν / 2π)·Ω·E[ω3^(ν−1)]` under a uniform direction on the
//! subtended solid angle `Ω`, which is what [`integrate_student_mc`]
//! estimates. For `ν = 1` the weight is identically one and the estimate is
//! the exact Cauchy mass.

use std::f64::consts::TAU;
use std::thread;

use crate::error::{Error, Result};
use crate::polygon::PlanePolygon;
use crate::projective::PlanePoint;
use crate::rng::SplitMix64;
use crate::spherical::{solid_angle_polygon, PolygonSampler, SphericalPolygon};

/// Worker count used by [`integrate_student_mc`].
pub const DEFAULT_WORKERS: usize = 8;

/// Degrees of freedom, a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StudentDof(u32);

impl StudentDof {
    pub fn new(nu: u32) -> Result<Self> {
        if nu < 1 {
            return Err(Error::InvalidArgument(
                "degrees of freedom must be at least 1".into(),
            ));
        }
        Ok(Self(nu))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// `r2^(-(2+ν)/2)` with integer powers and at most one square root, so that
/// `ν = 1` reproduces the Cauchy kernel bit for bit.
fn kernel(r2: f64, nu: u32) -> f64 {
    if nu.is_multiple_of(2) {
        1.0 / r2.powi((nu / 2 + 1) as i32)
    } else {
        1.0 / (r2.powi(nu.div_ceil(2) as i32) * r2.sqrt())
    }
}

/// Normalized Student-ν density with unit scale.
pub fn student_pdf(x: PlanePoint, nu: StudentDof) -> f64 {
    let nu = nu.get();
    nu as f64 * kernel(x.squared_distance(), nu) / TAU
}

/// A Monte Carlo estimate and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    /// `NaN` when a single sample leaves the variance undefined.
    pub standard_error: f64,
    pub samples: u64,
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        Self {
            count,
            mean: self.mean + delta * w,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * w,
        }
    }
}

/// Mass of the Student-ν density over a convex polygon, estimated from `n`
/// uniform directions on its solid angle with [`DEFAULT_WORKERS`] streams.
pub fn integrate_student_mc(
    poly: &PlanePolygon,
    nu: StudentDof,
    n: u64,
    seed: u64,
) -> Result<McEstimate> {
    integrate_student_mc_with_workers(poly, nu, n, seed, DEFAULT_WORKERS)
}

/// As [`integrate_student_mc`] with an explicit worker count.
///
/// Worker `i` draws `n / workers` samples, plus one when `i < n % workers`,
/// from [`SplitMix64::stream`]`(seed, i)`. Partial moments are merged in
/// worker order, so the result depends only on `(seed, workers)`.
pub fn integrate_student_mc_with_workers(
    poly: &PlanePolygon,
    nu: StudentDof,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    if workers == 0 {
        return Err(Error::InvalidArgument(
            "worker count must be at least 1".into(),
        ));
    }
    let sphere = SphericalPolygon::from_plane(poly)?;
    let sampler = PolygonSampler::new(&sphere)?;
    let omega = solid_angle_polygon(&sphere);
    let exponent = (nu.get() - 1) as i32;

    let workers = workers.min(n as usize);
    let base = n / workers as u64;
    let extra = n % workers as u64;
    let run = |index: usize| -> Result<Moments> {
        let count = base + u64::from((index as u64) < extra);
        let mut rng = SplitMix64::stream(seed, index as u64);
        let mut m = Moments::default();
        for _ in 0..count {
            let w = sampler.sample(rng.next_pair())?;
            m.push(w.w3().powi(exponent));
        }
        Ok(m)
    };

    let parts: Vec<Result<Moments>> = if workers == 1 {
        vec![run(0)]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|i| s.spawn(move || run(i))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("Monte Carlo worker panicked"))
                .collect()
        })
    };
    let mut total = Moments::default();
    for part in parts {
        total = total.merge(part?);
    }

    let scale = nu.get() as f64 / TAU;
    let value = scale * omega * total.mean;
    let standard_error = if total.count > 1 {
        let variance = total.m2 / (total.count - 1) as f64;
        scale * omega * (variance / total.count as f64).sqrt()
    } else {
        f64::NAN
    };
    Ok(McEstimate {
        value,
        standard_error,
        samples: total.count,
    })
}
