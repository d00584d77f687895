//! Text output for reals and sample streams.
//!
//! Every real is written as the shortest decimal that parses back to the
//! same `f64`, so files round-trip exactly and identical runs produce
//! identical bytes.

use std::io::{self, Write};

use crate::projective::PlanePoint;

/// Shortest round-trip decimal; exponent notation outside `[1e-5, 1e16)`.
pub fn fmt_real(x: f64) -> String {
    let a = x.abs();
    if x != 0.0 && x.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Writes one header-less `x1,x2` line per sample.
pub fn write_samples<W: Write>(mut out: W, samples: &[PlanePoint]) -> io::Result<()> {
    for s in samples {
        writeln!(out, "{},{}", fmt_real(s.x1()), fmt_real(s.x2()))?;
    }
    out.flush()
}
