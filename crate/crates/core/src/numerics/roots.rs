use crate::error::{Error, Result};

/// Solve `g(x) = target` for nondecreasing `g` on `[lo, hi]` by bisection.
///
/// Stops once `|g(x) - target| <= tol (1 + |target|)` or the bracket is
/// narrower than `tol`.
pub fn bisect_monotone<G>(g: G, lo: f64, hi: f64, target: f64, tol: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    if !(lo <= hi) || !(tol > 0.0) {
        return Err(Error::BadBracket { lo, hi, target });
    }
    let (glo, ghi) = (g(lo), g(hi));
    if !(glo <= target && target <= ghi) {
        return Err(Error::BadBracket { lo, hi, target });
    }
    let ftol = tol * (1.0 + target.abs());
    if (glo - target).abs() <= ftol {
        return Ok(lo);
    }
    if (ghi - target).abs() <= ftol {
        return Ok(hi);
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let gm = g(m);
        if (gm - target).abs() <= ftol || b - a <= tol {
            return Ok(m);
        }
        if gm < target {
            a = m;
        } else {
            b = m;
        }
        if m == a && m == b {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_affine() {
        let r = bisect_monotone(|x| x, 0.0, 1.0, 0.5, 1e-14).unwrap();
        assert!((r - 0.5).abs() < 1e-13);
        // tau + tau * y^2 / 2 with y = 2
        let r = bisect_monotone(|x| 3.0 * x, 0.0, 1.0, 1.5, 1e-14).unwrap();
        assert!((r - 0.5).abs() < 1e-13);
    }

    #[test]
    fn bad_bracket() {
        assert!(matches!(
            bisect_monotone(|x| x, 0.0, 1.0, 2.0, 1e-12),
            Err(Error::BadBracket { .. })
        ));
    }
}
