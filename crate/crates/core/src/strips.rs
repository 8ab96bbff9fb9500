//! Graphical strips: the field `f` with `f(s, a(tau) s^2/2 + tau) = a(tau) s`
//! for a continuous nondecreasing profile `a`, its second variation written
//! in `(s, tau)` coordinates, and the horizontal calibration field.

use serde::{Deserialize, Serialize};

use crate::bump::TestBump;
use crate::cantor::{self, CantorOrder, Inverse};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::group::{HPoint, HVector};
use crate::numerics::{bisect_monotone, integrate2d, QuadratureSpec, Rect, Seam, SeamSet};

/// Cap on the number of kink locations declared as quadrature seams.
const MAX_DECLARED_BREAKS: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ProfileKind {
    Constant(f64),
    /// `0 | tau/eps | 1`
    ConeEps(f64),
    /// Cantor approximant `a_n` or the Cantor staircase.
    Cantor(CantorOrder),
    /// Piecewise linear through `(tau_i, a_i)`, constant outside.
    Table(Vec<(f64, f64)>),
}

/// Continuous nondecreasing `a: R -> R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StripProfile {
    kind: ProfileKind,
}

impl StripProfile {
    pub fn constant(c: f64) -> Self {
        Self {
            kind: ProfileKind::Constant(c),
        }
    }

    pub fn cone_eps(eps: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "eps={eps} must be positive"
            )));
        }
        Ok(Self {
            kind: ProfileKind::ConeEps(eps),
        })
    }

    pub fn cantor_n(n: u32) -> Result<Self> {
        cantor::cantor_level(n)?;
        Ok(Self {
            kind: ProfileKind::Cantor(CantorOrder::Level(n)),
        })
    }

    pub fn cantor_limit() -> Self {
        Self {
            kind: ProfileKind::Cantor(CantorOrder::Limit),
        }
    }

    pub fn table(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument(
                "profile table needs at least two rows".into(),
            ));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) || w[1].1 < w[0].1 {
                return Err(Error::InvalidArgument(format!(
                    "profile table must have increasing tau and nondecreasing a, got {:?} then {:?}",
                    w[0], w[1]
                )));
            }
        }
        if points.iter().any(|(t, a)| !t.is_finite() || !a.is_finite()) {
            return Err(Error::InvalidArgument(
                "profile table has non-finite entries".into(),
            ));
        }
        Ok(Self {
            kind: ProfileKind::Table(points),
        })
    }

    /// Read `tau,a` rows from CSV (header optional).
    pub fn table_from_csv(path: &std::path::Path) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_path(path)?;
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            if rec.len() < 2 {
                continue;
            }
            match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
                (Ok(t), Ok(a)) => rows.push((t, a)),
                _ if rows.is_empty() => continue,
                _ => {
                    return Err(Error::Config(format!(
                        "bad profile row {:?} in {}",
                        rec,
                        path.display()
                    )))
                }
            }
        }
        Self::table(rows)
    }

    pub fn kind(&self) -> &ProfileKind {
        &self.kind
    }

    pub fn label(&self) -> String {
        match &self.kind {
            ProfileKind::Constant(c) => format!("constant:{c}"),
            ProfileKind::ConeEps(e) => format!("cone-eps:{e}"),
            ProfileKind::Cantor(CantorOrder::Level(n)) => format!("cantor:{n}"),
            ProfileKind::Cantor(CantorOrder::Limit) => "cantor-limit".into(),
            ProfileKind::Table(p) => format!("table[{}]", p.len()),
        }
    }

    /// The derivative is not a function (Cantor staircase).
    pub fn is_singular(&self) -> bool {
        matches!(self.kind, ProfileKind::Cantor(CantorOrder::Limit))
    }

    pub fn a(&self, tau: f64) -> f64 {
        match &self.kind {
            ProfileKind::Constant(c) => *c,
            ProfileKind::ConeEps(e) => (tau / e).clamp(0.0, 1.0),
            ProfileKind::Cantor(order) => cantor::cantor_a(*order, tau),
            ProfileKind::Table(p) => table_eval(p, tau).0,
        }
    }

    /// `a'(tau)` with the left-derivative convention at kinks; `None` where
    /// the derivative is singular.
    pub fn a_prime(&self, tau: f64) -> Option<f64> {
        match &self.kind {
            ProfileKind::Constant(_) => Some(0.0),
            ProfileKind::ConeEps(e) => Some(if tau > 0.0 && tau <= *e { 1.0 / e } else { 0.0 }),
            ProfileKind::Cantor(order) => cantor::cantor_slope(*order, tau),
            ProfileKind::Table(p) => Some(table_eval(p, tau).1),
        }
    }

    /// Derivative at a point produced by [`StripProfile::invert`]; for the
    /// Cantor kinds this reuses the descent that located the point.
    pub fn a_prime_at(&self, inv: &Inverse) -> Option<f64> {
        match &self.kind {
            ProfileKind::Cantor(CantorOrder::Level(n)) => Some(if inv.in_set {
                1.5f64.powi(*n as i32)
            } else {
                0.0
            }),
            ProfileKind::Cantor(CantorOrder::Limit) => {
                if inv.in_set {
                    None
                } else {
                    Some(0.0)
                }
            }
            _ => self.a_prime(inv.tau),
        }
    }

    /// Largest slope, when finite.
    pub fn max_slope(&self) -> Option<f64> {
        match &self.kind {
            ProfileKind::Constant(_) => Some(0.0),
            ProfileKind::ConeEps(e) => Some(1.0 / e),
            ProfileKind::Cantor(CantorOrder::Level(n)) => Some(1.5f64.powi(*n as i32)),
            ProfileKind::Cantor(CantorOrder::Limit) => None,
            ProfileKind::Table(p) => Some(
                p.windows(2)
                    .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
                    .fold(0.0, f64::max),
            ),
        }
    }

    pub fn a_bounds(&self) -> (f64, f64) {
        match &self.kind {
            ProfileKind::Constant(c) => (*c, *c),
            ProfileKind::Table(p) => (p[0].1, p[p.len() - 1].1),
            _ => (0.0, 1.0),
        }
    }

    /// Outside `[lo, hi]` the profile is constant.
    pub fn tau_support(&self) -> Option<(f64, f64)> {
        match &self.kind {
            ProfileKind::Constant(_) => None,
            ProfileKind::ConeEps(e) => Some((0.0, *e)),
            ProfileKind::Cantor(_) => Some((0.0, 1.0)),
            ProfileKind::Table(p) => Some((p[0].0, p[p.len() - 1].0)),
        }
    }

    /// Kinks of `a`, i.e. jumps of `a'`.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            ProfileKind::Constant(_) => Vec::new(),
            ProfileKind::ConeEps(e) => vec![0.0, *e],
            ProfileKind::Cantor(CantorOrder::Level(n)) => {
                let level = cantor::CantorLevel { n: *n };
                if 2 * level.count() as usize > MAX_DECLARED_BREAKS {
                    vec![0.0, 1.0]
                } else {
                    level.breakpoints()
                }
            }
            ProfileKind::Cantor(CantorOrder::Limit) => vec![0.0, 1.0],
            ProfileKind::Table(p) => p.iter().map(|(t, _)| *t).collect(),
        }
    }

    /// `tau` with `a(tau) y^2 / 2 + tau = t`.
    pub fn invert(&self, y: f64, t: f64) -> Inverse {
        let hy = 0.5 * y * y;
        match &self.kind {
            ProfileKind::Constant(c) => Inverse {
                tau: t - c * hy,
                a: *c,
                in_set: false,
            },
            ProfileKind::ConeEps(e) => {
                if t <= 0.0 {
                    Inverse {
                        tau: t,
                        a: 0.0,
                        in_set: false,
                    }
                } else if t <= e + hy {
                    let tau = 2.0 * e * t / (2.0 * e + y * y);
                    Inverse {
                        tau,
                        a: tau / e,
                        in_set: true,
                    }
                } else {
                    Inverse {
                        tau: t - hy,
                        a: 1.0,
                        in_set: false,
                    }
                }
            }
            ProfileKind::Cantor(order) => cantor::cantor_inverse(*order, y, t),
            ProfileKind::Table(p) => {
                let (amin, amax) = (p[0].1, p[p.len() - 1].1);
                let g = |tau: f64| table_eval(p, tau).0 * hy + tau;
                let lo = t - amax * hy;
                let hi = t - amin * hy;
                let tau = bisect_monotone(g, lo, hi, t, 1e-15).unwrap_or(0.5 * (lo + hi));
                let (a, slope) = table_eval(p, tau);
                Inverse {
                    tau,
                    a,
                    in_set: slope > 0.0,
                }
            }
        }
    }

    /// `chi(s, tau) = a(tau) s^2 / 2 + tau`
    pub fn forward(&self, s: f64, tau: f64) -> f64 {
        0.5 * self.a(tau) * s * s + tau
    }
}

/// Value and left slope of a piecewise linear table.
fn table_eval(p: &[(f64, f64)], tau: f64) -> (f64, f64) {
    let n = p.len();
    if tau <= p[0].0 {
        return (p[0].1, 0.0);
    }
    if tau > p[n - 1].0 {
        return (p[n - 1].1, 0.0);
    }
    // first index with p[i].0 >= tau
    let i = p.partition_point(|(t, _)| *t < tau).max(1);
    let (t0, a0) = p[i - 1];
    let (t1, a1) = p[i];
    let slope = (a1 - a0) / (t1 - t0);
    (a0 + slope * (tau - t0), slope)
}

/// The strip field determined by `a`.
pub fn strip_field(a: &StripProfile) -> ScalarField {
    ScalarField::strip(a.clone())
}

/// Positive and negative parts of the second variation in `(s, tau)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripSecondVariation {
    /// Full second variation, `positive - 2 negative`.
    pub value: f64,
    /// `int (d_s phi~)^2 (a' s^2/2 + 1) / (1 + a^2)^{3/2}`
    pub positive: f64,
    /// `int phi~^2 a' / ((1 + a^2)^{3/2} (a' s^2/2 + 1))`
    pub negative: f64,
    pub err_est: f64,
    pub converged: bool,
}

/// Second variation of the strip of `a` for a test function given directly
/// in `(s, tau)` coordinates through `phi` and `d_s phi`, supported in `support`.
pub fn strip_second_variation_with<P, D>(
    a: &StripProfile,
    phi: P,
    dphi_ds: D,
    support: &Rect,
    spec: &QuadratureSpec,
) -> Result<StripSecondVariation>
where
    P: Fn(f64, f64) -> f64 + Sync,
    D: Fn(f64, f64) -> f64 + Sync,
{
    if a.is_singular() {
        return Err(Error::SingularField(
            "the Cantor staircase has no derivative; use an approximant a_n".into(),
        ));
    }
    let seams = SeamSet::new(
        a.breakpoints()
            .into_iter()
            .filter(|&t| support.t0 < t && t < support.t1)
            .map(Seam::ConstT)
            .collect(),
    );
    let parts = |s: f64, tau: f64| -> (f64, f64) {
        let av = a.a(tau);
        let ap = a.a_prime(tau).unwrap_or(0.0);
        let w = (1.0 + av * av).powf(1.5);
        let q = 0.5 * ap * s * s + 1.0;
        let d = dphi_ds(s, tau);
        let p = phi(s, tau);
        (d * d * q / w, p * p * ap / (w * q))
    };
    let pos = integrate2d(|s, tau| parts(s, tau).0, support, &seams, spec);
    let neg = integrate2d(|s, tau| parts(s, tau).1, support, &seams, spec);
    Ok(StripSecondVariation {
        value: pos.value - 2.0 * neg.value,
        positive: pos.value,
        negative: neg.value,
        err_est: pos.err_est + 2.0 * neg.err_est,
        converged: pos.converged && neg.converged,
    })
}

/// Second variation for a bump `phi~` placed directly in `(s, tau)`.
pub fn strip_second_variation(
    a: &StripProfile,
    phi_tilde: &TestBump,
    spec: &QuadratureSpec,
) -> Result<StripSecondVariation> {
    strip_second_variation_with(
        a,
        |s, tau| phi_tilde.eval(s, tau),
        |s, tau| phi_tilde.dy(s, tau),
        &phi_tilde.support(),
        spec,
    )
}

/// Second variation of the strip for a bump `phi` in `(y, t)`, pulled back
/// through `Psi(s, tau) = (s, a(tau) s^2/2 + tau)`.
pub fn strip_second_variation_pullback(
    a: &StripProfile,
    phi: &TestBump,
    spec: &QuadratureSpec,
) -> Result<StripSecondVariation> {
    let sup = phi.support();
    let (amin, amax) = a.a_bounds();
    let smax = sup.y0.abs().max(sup.y1.abs());
    let smin = if sup.y0 <= 0.0 && sup.y1 >= 0.0 {
        0.0
    } else {
        sup.y0.abs().min(sup.y1.abs())
    };
    let support = Rect::new(
        sup.y0,
        sup.y1,
        sup.t0 - amax.max(0.0) * 0.5 * smax * smax - 1e-12,
        sup.t1 - amin.min(0.0) * 0.5 * smax * smax - amin.max(0.0) * 0.5 * smin * smin + 1e-12,
    )?;
    strip_second_variation_with(
        a,
        |s, tau| phi.eval(s, a.forward(s, tau)),
        |s, tau| {
            let t = a.forward(s, tau);
            phi.dy(s, t) + a.a(tau) * s * phi.dt(s, t)
        },
        &support,
        spec,
    )
}

/// Horizontal unit field `(-y X + x Y) / sqrt(x^2 + y^2)`.
pub fn calibration_nu(p: HPoint) -> Result<HVector> {
    let r = p.x.hypot(p.y);
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "calibration field undefined on the vertical axis at {p:?}"
        )));
    }
    Ok(HVector {
        cx: -p.y / r,
        cy: p.x / r,
        cz: 0.0,
        basepoint: p,
    })
}

/// Ambient divergence of `nu` by central differences.
pub fn nu_divergence(p: HPoint, h: f64) -> Result<f64> {
    let comp = |q: HPoint, i: usize| -> Result<f64> { Ok(calibration_nu(q)?.ambient()[i]) };
    let mut div = 0.0;
    for i in 0..3 {
        let mut a = p.as_array();
        let mut b = p.as_array();
        a[i] += h;
        b[i] -= h;
        let pa = HPoint::new(a[0], a[1], a[2]);
        let pb = HPoint::new(b[0], b[1], b[2]);
        div += (comp(pa, i)? - comp(pb, i)?) / (2.0 * h);
    }
    Ok(div)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub divergence_samples: usize,
    pub max_divergence: f64,
    pub normal_samples_positive: usize,
    /// Largest `|nu - n|` over samples with `s > 0`.
    pub max_normal_mismatch: f64,
    pub normal_samples_negative: usize,
    /// Largest `min(|nu - n|, |nu + n|)` over samples with `s < 0`.
    pub max_normal_mismatch_up_to_sign: f64,
    /// Samples with `s < 0` where `nu` equals minus the graph normal.
    pub orientation_flips: usize,
}

/// Divergence of `nu` at `points`, and agreement of `nu` with the graph
/// normal `(-1, a) / sqrt(1 + a^2)` at `Gamma(s, tau)` for `strip_samples = (s, tau)`.
pub fn calibration_check(
    a: &StripProfile,
    points: &[HPoint],
    strip_samples: &[(f64, f64)],
) -> Result<CalibrationReport> {
    let mut max_div: f64 = 0.0;
    for &p in points {
        max_div = max_div.max(nu_divergence(p, 1e-5)?.abs());
    }
    let field = strip_field(a);
    let mut rep = CalibrationReport {
        divergence_samples: points.len(),
        max_divergence: max_div,
        normal_samples_positive: 0,
        max_normal_mismatch: 0.0,
        normal_samples_negative: 0,
        max_normal_mismatch_up_to_sign: 0.0,
        orientation_flips: 0,
    };
    for &(s, tau) in strip_samples {
        if s == 0.0 {
            continue;
        }
        let av = a.a(tau);
        let gamma = HPoint::new(s * av, s, tau);
        // normal of the graph from the intrinsic gradient at the base point
        let g = field.intrinsic_gradient(s, a.forward(s, tau))?;
        let norm = (1.0 + g * g).sqrt();
        let n = (-1.0 / norm, g / norm);
        let nu = calibration_nu(gamma)?;
        let plus = (nu.cx - n.0).hypot(nu.cy - n.1);
        let minus = (nu.cx + n.0).hypot(nu.cy + n.1);
        if s > 0.0 {
            rep.normal_samples_positive += 1;
            rep.max_normal_mismatch = rep.max_normal_mismatch.max(plus);
        } else {
            rep.normal_samples_negative += 1;
            rep.max_normal_mismatch_up_to_sign =
                rep.max_normal_mismatch_up_to_sign.max(plus.min(minus));
            if minus < plus {
                rep.orientation_flips += 1;
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_profile_is_plane() {
        let f = strip_field(&StripProfile::constant(0.7));
        assert!((f.eval(2.0, 5.0) - 1.4).abs() < 1e-15);
    }

    #[test]
    fn cantor_limit_value() {
        let f = strip_field(&StripProfile::cantor_limit());
        assert!((f.eval(1.0, 7.0 / 12.0) - 0.5).abs() < 1e-14);
        assert!((f.intrinsic_gradient(1.0, 7.0 / 12.0).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn table_inversion() {
        let p = StripProfile::table(vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        // a(tau) = tau on [0,1], y = 2: 3 tau = 1.5
        let inv = p.invert(2.0, 1.5);
        assert!((inv.tau - 0.5).abs() < 1e-13);
        assert!(StripProfile::table(vec![(0.0, 1.0), (1.0, 0.0)]).is_err());
    }

    #[test]
    fn nu_values() {
        let nu = calibration_nu(HPoint::new(1.0, 0.0, 3.0)).unwrap();
        assert_eq!((nu.cx, nu.cy), (0.0, 1.0));
        let nu = calibration_nu(HPoint::new(0.0, 1.0, -2.0)).unwrap();
        assert_eq!((nu.cx, nu.cy), (-1.0, 0.0));
        assert!(calibration_nu(HPoint::new(0.0, 0.0, 1.0)).is_err());
        assert!(
            nu_divergence(HPoint::new(1.0, 2.0, 3.0), 1e-5)
                .unwrap()
                .abs()
                < 1e-6
        );
    }

    #[test]
    fn cantor_normal() {
        let a = StripProfile::cantor_limit();
        let nu = calibration_nu(HPoint::new(a.a(1.0 / 3.0), 1.0, 1.0 / 3.0)).unwrap();
        assert!((nu.cx + 0.894427191).abs() < 1e-9);
        assert!((nu.cy - 0.447213595).abs() < 1e-9);
    }

    #[test]
    fn singular_profile_refused() {
        let b = TestBump::new((0.0, 0.5), (0.5, 0.5), 1.0).unwrap();
        let r = strip_second_variation(
            &StripProfile::cantor_limit(),
            &b,
            &QuadratureSpec::default(),
        );
        assert!(matches!(r, Err(Error::SingularField(_))));
    }
}
