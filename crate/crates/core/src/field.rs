//! Scalar fields `f(y, t)` whose intrinsic graphs are studied.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{graph_map, HPoint};
use crate::numerics::{fd_partial, Axis, Rect, Seam, SeamSet};
use crate::strips::StripProfile;

/// Step used when a partial derivative has no closed form.
pub const FD_STEP: f64 = 1e-5;

type Fn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Which closed forms are available.
#[derive(Clone, Serialize)]
pub enum FieldKind {
    /// `a y + b`
    Plane { a: f64, b: f64 },
    /// The dilation-invariant piecewise field `0 | 2t/y | y`.
    Cone,
    /// The smoothed cone `0 | 2yt/(y^2 + 2 eps) | y`.
    ConeEps(f64),
    /// Strip field of a monotone profile.
    Strip(StripProfile),
    /// User supplied closure.
    Custom(String),
}

impl fmt::Debug for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Plane { a, b } => write!(f, "Plane({a}, {b})"),
            FieldKind::Cone => write!(f, "Cone"),
            FieldKind::ConeEps(e) => write!(f, "ConeEps({e})"),
            FieldKind::Strip(p) => write!(f, "Strip({})", p.label()),
            FieldKind::Custom(name) => write!(f, "Custom({name})"),
        }
    }
}

#[derive(Clone)]
struct CustomFns {
    f: Fn2,
    dy: Option<Fn2>,
    dt: Option<Fn2>,
}

/// A function on a rectangle with declared seams and optional closed-form partials.
#[derive(Clone)]
pub struct ScalarField {
    kind: FieldKind,
    domain: Rect,
    seams: SeamSet,
    custom: Option<CustomFns>,
    lipschitz_t: Option<f64>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("kind", &self.kind)
            .field("domain", &self.domain)
            .field("seams", &self.seams.curves.len())
            .finish()
    }
}

impl ScalarField {
    pub fn plane(a: f64, b: f64) -> Self {
        Self {
            kind: FieldKind::Plane { a, b },
            domain: Rect::plane(),
            seams: SeamSet::empty(),
            custom: None,
            lipschitz_t: Some(0.0),
        }
    }

    pub fn zero() -> Self {
        Self::plane(0.0, 0.0)
    }

    pub fn cone() -> Self {
        Self {
            kind: FieldKind::Cone,
            domain: Rect::plane(),
            seams: SeamSet::new(vec![
                Seam::ConstT(0.0),
                Seam::Parabola { c: 0.5, d: 0.0 },
                Seam::ConstY(0.0),
            ]),
            custom: None,
            lipschitz_t: None,
        }
    }

    pub fn cone_eps(eps: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "eps={eps} must be positive"
            )));
        }
        Ok(Self {
            kind: FieldKind::ConeEps(eps),
            domain: Rect::plane(),
            seams: SeamSet::new(vec![Seam::ConstT(0.0), Seam::Parabola { c: 0.5, d: eps }]),
            custom: None,
            // sup_y 2|y| / (y^2 + 2 eps)
            lipschitz_t: Some(1.0 / (2.0 * eps).sqrt()),
        })
    }

    pub fn strip(profile: StripProfile) -> Self {
        let seams = SeamSet::new(
            profile
                .breakpoints()
                .into_iter()
                .map(|tau| Seam::Parabola {
                    c: 0.5 * profile.a(tau),
                    d: tau,
                })
                .collect(),
        );
        let lipschitz_t = profile.max_slope().map(|s| (0.5 * s).sqrt());
        Self {
            kind: FieldKind::Strip(profile),
            domain: Rect::plane(),
            seams,
            custom: None,
            lipschitz_t,
        }
    }

    /// A field given by a closure; partials fall back to finite differences.
    pub fn custom<F>(name: &str, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            kind: FieldKind::Custom(name.to_string()),
            domain: Rect::plane(),
            seams: SeamSet::empty(),
            custom: Some(CustomFns {
                f: Arc::new(f),
                dy: None,
                dt: None,
            }),
            lipschitz_t: None,
        }
    }

    /// Attach closed-form partials to a custom field.
    pub fn with_partials<A, B>(mut self, dy: A, dt: B) -> Self
    where
        A: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        B: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        if let Some(c) = self.custom.as_mut() {
            c.dy = Some(Arc::new(dy));
            c.dt = Some(Arc::new(dt));
        }
        self
    }

    pub fn with_domain(mut self, domain: Rect) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_seams(mut self, seams: SeamSet) -> Self {
        self.seams = seams;
        self
    }

    pub fn with_lipschitz_t(mut self, l: f64) -> Self {
        self.lipschitz_t = Some(l);
        self
    }

    /// `f(y, t) = t`
    pub fn linear_t() -> Self {
        Self::custom("t", |_, t| t)
            .with_partials(|_, _| 0.0, |_, _| 1.0)
            .with_lipschitz_t(1.0)
    }

    /// `f(y, t) = t^2`, whose characteristics blow up in finite time.
    pub fn t_squared() -> Self {
        Self::custom("t^2", |_, t| t * t).with_partials(|_, _| 0.0, |_, t| 2.0 * t)
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn domain(&self) -> &Rect {
        &self.domain
    }

    pub fn seams(&self) -> &SeamSet {
        &self.seams
    }

    pub fn label(&self) -> String {
        format!("{:?}", self.kind)
    }

    /// Strip profile generating this field, if it is a strip.
    pub fn strip_profile(&self) -> Option<StripProfile> {
        match &self.kind {
            FieldKind::Strip(p) => Some(p.clone()),
            FieldKind::ConeEps(e) => StripProfile::cone_eps(*e).ok(),
            FieldKind::Plane { a, b } if *b == 0.0 => Some(StripProfile::constant(*a)),
            _ => None,
        }
    }

    /// Bound for `|d_t f|` valid on all of `region`, when known.
    pub fn lipschitz_t(&self, region: &Rect) -> Option<f64> {
        if let FieldKind::Cone = self.kind {
            // 2/|y| on the middle branch
            let ymin = if region.y0 > 0.0 {
                region.y0
            } else if region.y1 < 0.0 {
                -region.y1
            } else {
                return None;
            };
            return Some(2.0 / ymin);
        }
        self.lipschitz_t
    }

    /// The derivative in `t` is only defined almost everywhere and unbounded
    /// (limit Cantor strip); variation integrals are refused.
    pub fn dt_is_singular(&self) -> bool {
        matches!(&self.kind, FieldKind::Strip(p) if p.is_singular())
    }

    pub fn eval(&self, y: f64, t: f64) -> f64 {
        match &self.kind {
            FieldKind::Plane { a, b } => a * y + b,
            FieldKind::Cone => {
                if t <= 0.0 {
                    0.0
                } else if t <= 0.5 * y * y {
                    2.0 * t / y
                } else {
                    y
                }
            }
            FieldKind::ConeEps(e) => {
                let den = y * y + 2.0 * e;
                if t <= 0.0 {
                    0.0
                } else if t <= 0.5 * den {
                    2.0 * y * t / den
                } else {
                    y
                }
            }
            FieldKind::Strip(p) => p.invert(y, t).a * y,
            FieldKind::Custom(_) => (self.custom.as_ref().unwrap().f)(y, t),
        }
    }

    fn fd(&self, y: f64, t: f64, dir: Axis) -> Result<f64> {
        fd_partial(|a, b| self.eval(a, b), (y, t), dir, FD_STEP, &self.seams)
    }

    pub fn partial_y(&self, y: f64, t: f64) -> Result<f64> {
        Ok(match &self.kind {
            FieldKind::Plane { a, .. } => *a,
            FieldKind::Cone => {
                if t <= 0.0 {
                    0.0
                } else if t <= 0.5 * y * y {
                    -2.0 * t / (y * y)
                } else {
                    1.0
                }
            }
            FieldKind::ConeEps(e) => {
                let den = y * y + 2.0 * e;
                if t <= 0.0 {
                    0.0
                } else if t <= 0.5 * den {
                    -2.0 * t * (y * y - 2.0 * e) / (den * den)
                } else {
                    1.0
                }
            }
            FieldKind::Strip(p) => {
                let inv = p.invert(y, t);
                match p.a_prime_at(&inv) {
                    Some(ap) => inv.a - ap * inv.a * y * y / (0.5 * ap * y * y + 1.0),
                    // a' -> infinity on the Cantor set
                    None => -inv.a,
                }
            }
            FieldKind::Custom(_) => match &self.custom.as_ref().unwrap().dy {
                Some(d) => d(y, t),
                None => return self.fd(y, t, Axis::Y),
            },
        })
    }

    pub fn partial_t(&self, y: f64, t: f64) -> Result<f64> {
        Ok(match &self.kind {
            FieldKind::Plane { .. } => 0.0,
            FieldKind::Cone => {
                if t <= 0.0 || t > 0.5 * y * y {
                    0.0
                } else {
                    2.0 / y
                }
            }
            FieldKind::ConeEps(e) => {
                let den = y * y + 2.0 * e;
                if t <= 0.0 || t > 0.5 * den {
                    0.0
                } else {
                    2.0 * y / den
                }
            }
            FieldKind::Strip(p) => {
                let inv = p.invert(y, t);
                match p.a_prime_at(&inv) {
                    Some(ap) => ap * y / (0.5 * ap * y * y + 1.0),
                    None => {
                        if y == 0.0 {
                            0.0
                        } else {
                            2.0 / y
                        }
                    }
                }
            }
            FieldKind::Custom(_) => match &self.custom.as_ref().unwrap().dt {
                Some(d) => d(y, t),
                None => return self.fd(y, t, Axis::T),
            },
        })
    }

    /// `d_y f + f d_t f`
    pub fn intrinsic_gradient(&self, y: f64, t: f64) -> Result<f64> {
        Ok(match &self.kind {
            FieldKind::Plane { a, .. } => *a,
            FieldKind::Cone => {
                if t <= 0.0 {
                    0.0
                } else if t <= 0.5 * y * y {
                    2.0 * t / (y * y)
                } else {
                    1.0
                }
            }
            FieldKind::ConeEps(e) => {
                let den = y * y + 2.0 * e;
                if t <= 0.0 {
                    0.0
                } else if t <= 0.5 * den {
                    2.0 * t / den
                } else {
                    1.0
                }
            }
            FieldKind::Strip(p) => p.invert(y, t).a,
            FieldKind::Custom(_) => {
                self.partial_y(y, t)? + self.eval(y, t) * self.partial_t(y, t)?
            }
        })
    }

    /// Point of the intrinsic graph over `(y, t)`.
    pub fn graph_point(&self, y: f64, t: f64) -> HPoint {
        graph_map(self.eval(y, t), y, t)
    }

    /// Exact characteristic `chi(s, tau)` through `(0, tau)` when known in closed form.
    pub fn exact_flow(&self, s: f64, tau: f64) -> Option<f64> {
        match &self.kind {
            FieldKind::Plane { a, b } => Some(0.5 * a * s * s + b * s + tau),
            _ => self.strip_profile().map(|p| 0.5 * p.a(tau) * s * s + tau),
        }
    }

    /// Values of `tau` across which `chi(s, .)` has a kink.
    pub fn tau_breaks(&self) -> Vec<f64> {
        match &self.kind {
            FieldKind::Plane { .. } | FieldKind::Custom(_) => Vec::new(),
            FieldKind::Cone => vec![0.0],
            _ => self
                .strip_profile()
                .map(|p| p.breakpoints())
                .unwrap_or_default(),
        }
    }
}
