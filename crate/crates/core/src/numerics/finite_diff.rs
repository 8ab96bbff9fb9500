use serde::{Deserialize, Serialize};

use super::quadrature::SeamSet;
use crate::error::{Error, Result};

/// Coordinate direction in the `(y, t)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Y,
    T,
}

fn shift(p: (f64, f64), dir: Axis, d: f64) -> (f64, f64) {
    match dir {
        Axis::Y => (p.0 + d, p.1),
        Axis::T => (p.0, p.1 + d),
    }
}

/// Second-order difference quotient of `g` at `p` along `dir`.
///
/// Central when the stencil `[p - h, p + h]` avoids every seam, otherwise the
/// three-point one-sided formula on a side whose stencil `[p, p +- 2h]` is
/// clean. If both sides are cut, `h` is halved (up to 30 times).
pub fn fd_partial<G>(g: G, p: (f64, f64), dir: Axis, h: f64, seams: &SeamSet) -> Result<f64>
where
    G: Fn(f64, f64) -> f64,
{
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step h={h} must be positive"
        )));
    }
    if seams.on_seam(p.0, p.1) {
        return Err(Error::OnSeam { y: p.0, t: p.1 });
    }
    let ev = |q: (f64, f64)| g(q.0, q.1);
    let mut h = h;
    for _ in 0..30 {
        let lo = shift(p, dir, -h);
        let hi = shift(p, dir, h);
        if !seams.crosses_segment(lo, hi)
            && !seams.on_seam(lo.0, lo.1)
            && !seams.on_seam(hi.0, hi.1)
        {
            return Ok((ev(hi) - ev(lo)) / (2.0 * h));
        }
        let f2 = shift(p, dir, 2.0 * h);
        if !seams.crosses_segment(p, f2) && !seams.on_seam(f2.0, f2.1) {
            return Ok((-3.0 * ev(p) + 4.0 * ev(hi) - ev(f2)) / (2.0 * h));
        }
        let b2 = shift(p, dir, -2.0 * h);
        if !seams.crosses_segment(b2, p) && !seams.on_seam(b2.0, b2.1) {
            return Ok((3.0 * ev(p) - 4.0 * ev(lo) + ev(b2)) / (2.0 * h));
        }
        h *= 0.5;
    }
    Err(Error::OnSeam { y: p.0, t: p.1 })
}
