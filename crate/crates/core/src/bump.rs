use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Rect;

/// `b(u) = exp(-1 / (1 - u^2))` on `|u| < 1`, zero outside.
pub fn mollifier(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}

/// `b'(u) = b(u) * (-2u / (1 - u^2)^2)`
pub fn mollifier_prime(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        let w = 1.0 - u * u;
        mollifier(u) * (-2.0 * u / (w * w))
    }
}

/// Smooth compactly supported test function
/// `phi(y, t) = A b((y - c1) / r1) b((t - c2) / r2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestBump {
    pub center: (f64, f64),
    pub radii: (f64, f64),
    pub amplitude: f64,
}

impl TestBump {
    pub fn new(center: (f64, f64), radii: (f64, f64), amplitude: f64) -> Result<Self> {
        if !(radii.0 > 0.0 && radii.1 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "bump radii {radii:?} must be positive"
            )));
        }
        if ![center.0, center.1, radii.0, radii.1, amplitude]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::InvalidArgument(
                "bump parameters must be finite".into(),
            ));
        }
        Ok(Self {
            center,
            radii,
            amplitude,
        })
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            amplitude: self.amplitude * c,
            ..*self
        }
    }

    pub fn label(&self) -> String {
        format!(
            "bump(c=({}, {}), r=({}, {}), A={})",
            self.center.0, self.center.1, self.radii.0, self.radii.1, self.amplitude
        )
    }

    fn uv(&self, y: f64, t: f64) -> (f64, f64) {
        (
            (y - self.center.0) / self.radii.0,
            (t - self.center.1) / self.radii.1,
        )
    }

    pub fn eval(&self, y: f64, t: f64) -> f64 {
        let (u, v) = self.uv(y, t);
        self.amplitude * mollifier(u) * mollifier(v)
    }

    pub fn dy(&self, y: f64, t: f64) -> f64 {
        let (u, v) = self.uv(y, t);
        self.amplitude * mollifier_prime(u) * mollifier(v) / self.radii.0
    }

    pub fn dt(&self, y: f64, t: f64) -> f64 {
        let (u, v) = self.uv(y, t);
        self.amplitude * mollifier(u) * mollifier_prime(v) / self.radii.1
    }

    pub fn support(&self) -> Rect {
        Rect {
            y0: self.center.0 - self.radii.0,
            y1: self.center.0 + self.radii.0,
            t0: self.center.1 - self.radii.1,
            t1: self.center.1 + self.radii.1,
        }
    }

    /// `sup phi^2 = A^2 e^{-4}`, attained at the center.
    pub fn sup_sq(&self) -> f64 {
        self.amplitude * self.amplitude * (-4.0f64).exp()
    }
}

/// Bumps with centers on `ys x ts`, common radius and unit amplitude.
pub fn bump_grid(ys: &[f64], ts: &[f64], radius: f64) -> Result<Vec<TestBump>> {
    let mut out = Vec::with_capacity(ys.len() * ts.len());
    for &y in ys {
        for &t in ts {
            out.push(TestBump::new((y, t), (radius, radius), 1.0)?);
        }
    }
    Ok(out)
}

/// The 20 bumps used for the cone checks: centers on the 5 x 4 integer grid
/// of `[-2, 2] x [-1, 2]`, radii 0.3.
pub fn cone_family() -> Vec<TestBump> {
    bump_grid(&[-2.0, -1.0, 0.0, 1.0, 2.0], &[-1.0, 0.0, 1.0, 2.0], 0.3).expect("valid radii")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partials_match_differences() {
        let b = TestBump::new((0.2, -0.1), (0.7, 0.4), 2.0).unwrap();
        let h = 1e-6;
        for &(y, t) in &[(0.3, 0.0), (-0.2, -0.3), (0.7, 0.1)] {
            let dy = (b.eval(y + h, t) - b.eval(y - h, t)) / (2.0 * h);
            let dt = (b.eval(y, t + h) - b.eval(y, t - h)) / (2.0 * h);
            assert!((dy - b.dy(y, t)).abs() < 1e-7);
            assert!((dt - b.dt(y, t)).abs() < 1e-7);
        }
    }

    #[test]
    fn sup_and_support() {
        let b = TestBump::new((1.0, 2.0), (0.5, 0.5), 3.0).unwrap();
        assert!((b.eval(1.0, 2.0).powi(2) - b.sup_sq()).abs() < 1e-14);
        assert_eq!(b.eval(1.5, 2.0), 0.0);
        assert_eq!(cone_family().len(), 20);
    }
}
