//! Group law of the first Heisenberg group in exponential coordinates,
//! the left-invariant horizontal frame, anisotropic dilations and the
//! intrinsic graph map `(y, t) -> (f, y, t - y f / 2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(x, y, z)` of the Heisenberg group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl HPoint {
    pub const ORIGIN: HPoint = HPoint {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Group inverse; `(-x, -y, -z)` because the symplectic term cancels.
    pub fn inverse(&self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dist_euclid(&self, other: &HPoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

impl std::ops::Mul for HPoint {
    type Output = HPoint;

    fn mul(self, rhs: HPoint) -> HPoint {
        hgroup_mul(self, rhs)
    }
}

/// A tangent vector `cx X + cy Y + cz Z` attached to `basepoint`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HVector {
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
    pub basepoint: HPoint,
}

impl HVector {
    pub fn is_horizontal(&self) -> bool {
        self.cz == 0.0
    }

    /// Components in the ambient basis `d/dx, d/dy, d/dz`.
    ///
    /// `X = (1, 0, -y/2)`, `Y = (0, 1, x/2)` and `Z = (0, 0, 1)`.
    pub fn ambient(&self) -> [f64; 3] {
        let p = self.basepoint;
        [
            self.cx,
            self.cy,
            -0.5 * p.y * self.cx + 0.5 * p.x * self.cy + self.cz,
        ]
    }

    /// Sub-Riemannian norm of the horizontal part.
    pub fn horizontal_norm(&self) -> f64 {
        self.cx.hypot(self.cy)
    }
}

/// `(x, y, z)(x', y', z') = (x + x', y + y', z + z' + (x y' - x' y) / 2)`.
pub fn hgroup_mul(p: HPoint, q: HPoint) -> HPoint {
    HPoint {
        x: p.x + q.x,
        y: p.y + q.y,
        z: p.z + q.z + 0.5 * (p.x * q.y - q.x * p.y),
    }
}

/// `delta_lambda(x, y, z) = (lambda x, lambda y, lambda^2 z)`.
pub fn dilate(lambda: f64, p: HPoint) -> Result<HPoint> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "dilation factor must be positive, got {lambda}"
        )));
    }
    Ok(HPoint {
        x: lambda * p.x,
        y: lambda * p.y,
        z: lambda * lambda * p.z,
    })
}

/// The point of the intrinsic graph over `(y, t)` when the field takes the value `fval`.
pub fn graph_map(fval: f64, y: f64, t: f64) -> HPoint {
    HPoint {
        x: fval,
        y,
        z: t - 0.5 * y * fval,
    }
}

/// `X` and `Y` at `p`, as horizontal vectors (their ambient form is `HVector::ambient`).
pub fn horizontal_frame(p: HPoint) -> (HVector, HVector) {
    (
        HVector {
            cx: 1.0,
            cy: 0.0,
            cz: 0.0,
            basepoint: p,
        },
        HVector {
            cx: 0.0,
            cy: 1.0,
            cz: 0.0,
            basepoint: p,
        },
    )
}

/// Ambient coordinate form of the left-invariant fields at `p`: `(X, Y)`.
pub fn frame_ambient(p: HPoint) -> ([f64; 3], [f64; 3]) {
    let (x, y) = horizontal_frame(p);
    (x.ambient(), y.ambient())
}
