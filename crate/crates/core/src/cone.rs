//! The dilation cone and its smoothed strip approximants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bump::TestBump;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::numerics::{integrate2d, QuadratureSpec, Rect, SeamSet};
use crate::strips::StripProfile;

pub fn cone_field() -> ScalarField {
    ScalarField::cone()
}

/// The smoothed cone and the profile `a_eps` whose strip field it is.
pub fn cone_eps(eps: f64) -> Result<(ScalarField, StripProfile)> {
    Ok((ScalarField::cone_eps(eps)?, StripProfile::cone_eps(eps)?))
}

/// Pointwise bound on `|d_t f_eps|` that holds for every `eps` in `(0, 1)`.
pub fn g3(y: f64, t: f64) -> f64 {
    let half = 0.5 * y * y;
    if t <= 0.0 {
        0.0
    } else if t <= half {
        2.0 / y.abs()
    } else if t < half + 1.0 {
        std::f64::consts::SQRT_2 / t.sqrt()
    } else {
        0.0
    }
}

/// One rung of the ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStep {
    pub eps: f64,
    /// `||f_eps - f||_p` over the region.
    pub lp_f: f64,
    pub lp_dy: f64,
    pub lp_dt: f64,
    /// `||grad f_eps - grad f||_p` for the intrinsic gradients.
    pub lp_grad: f64,
    /// Sample maximum of `|f_eps - f|`.
    pub sup_f: f64,
    /// Samples violating `|f_eps| <= |y|`, `|d_y f_eps| <= 1`, `|d_t f_eps| <= g3`.
    pub domination_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub p: f64,
    pub region: Rect,
    pub steps: Vec<ConvergenceStep>,
    /// Least-squares slopes of `log norm` against `log eps`.
    pub rate_f: f64,
    pub rate_dy: f64,
    pub rate_dt: f64,
    pub samples: usize,
}

impl ConvergenceReport {
    /// Every norm strictly decreases as `eps` decreases.
    pub fn decreasing(&self) -> bool {
        let mut s = self.steps.clone();
        s.sort_by(|a, b| b.eps.total_cmp(&a.eps));
        s.windows(2)
            .all(|w| w[1].lp_f < w[0].lp_f && w[1].lp_dy < w[0].lp_dy && w[1].lp_dt < w[0].lp_dt)
    }

    pub fn domination_violations(&self) -> usize {
        self.steps.iter().map(|s| s.domination_violations).sum()
    }
}

fn fit_rate(eps: &[f64], v: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = eps
        .iter()
        .zip(v)
        .filter(|(_, &n)| n > 0.0)
        .map(|(&e, &n)| (e.ln(), n.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Number of random points used by the domination check.
pub const DOMINATION_SAMPLES: usize = 1000;

/// `L^p` distances between `f_eps` and the cone, by seam-aware quadrature.
pub fn cone_convergence(
    eps_ladder: &[f64],
    p: f64,
    region: &Rect,
    spec: &QuadratureSpec,
) -> Result<ConvergenceReport> {
    cone_convergence_seeded(eps_ladder, p, region, spec, 0)
}

pub fn cone_convergence_seeded(
    eps_ladder: &[f64],
    p: f64,
    region: &Rect,
    spec: &QuadratureSpec,
    seed: u64,
) -> Result<ConvergenceReport> {
    if !(1.0..3.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p={p} must lie in [1, 3)")));
    }
    if eps_ladder.is_empty() || eps_ladder.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::InvalidArgument(
            "eps ladder must be nonempty with entries in (0, 1)".into(),
        ));
    }
    if !(region.area() > 0.0 && region.area().is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "region {region:?} must be bounded and nonempty"
        )));
    }
    let cone = ScalarField::cone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(f64, f64)> = (0..DOMINATION_SAMPLES)
        .map(|_| {
            (
                rng.gen_range(region.y0..region.y1),
                rng.gen_range(region.t0..region.t1),
            )
        })
        .collect();
    let mut steps = Vec::with_capacity(eps_ladder.len());
    for &eps in eps_ladder {
        let fe = ScalarField::cone_eps(eps)?;
        let seams = cone.seams().union(fe.seams());
        let norm = |d: &(dyn Fn(f64, f64) -> f64 + Sync)| -> Result<f64> {
            let r = integrate2d(|y, t| d(y, t).abs().powf(p), region, &seams, spec).checked()?;
            Ok(r.value.powf(1.0 / p))
        };
        // partials are closed form; nodes never sit on the declared seams
        let lp_f = norm(&|y, t| fe.eval(y, t) - cone.eval(y, t))?;
        let lp_dy = norm(&|y, t| {
            fe.partial_y(y, t).unwrap_or(f64::NAN) - cone.partial_y(y, t).unwrap_or(f64::NAN)
        })?;
        let lp_dt = norm(&|y, t| {
            fe.partial_t(y, t).unwrap_or(f64::NAN) - cone.partial_t(y, t).unwrap_or(f64::NAN)
        })?;
        let lp_grad = norm(&|y, t| {
            fe.intrinsic_gradient(y, t).unwrap_or(f64::NAN)
                - cone.intrinsic_gradient(y, t).unwrap_or(f64::NAN)
        })?;
        let mut sup_f: f64 = 0.0;
        let mut bad = 0;
        for &(y, t) in &samples {
            if fe.seams().on_seam(y, t) {
                continue;
            }
            sup_f = sup_f.max((fe.eval(y, t) - cone.eval(y, t)).abs());
            let ok = fe.eval(y, t).abs() <= y.abs() + 1e-15
                && fe.partial_y(y, t)?.abs() <= 1.0 + 1e-15
                && fe.partial_t(y, t)?.abs() <= g3(y, t) * (1.0 + 1e-15);
            if !ok {
                bad += 1;
            }
        }
        steps.push(ConvergenceStep {
            eps,
            lp_f,
            lp_dy,
            lp_dt,
            lp_grad,
            sup_f,
            domination_violations: bad,
        });
    }
    let eps: Vec<f64> = steps.iter().map(|s| s.eps).collect();
    let col = |g: fn(&ConvergenceStep) -> f64| steps.iter().map(g).collect::<Vec<_>>();
    Ok(ConvergenceReport {
        p,
        region: *region,
        rate_f: fit_rate(&eps, &col(|s| s.lp_f)),
        rate_dy: fit_rate(&eps, &col(|s| s.lp_dy)),
        rate_dt: fit_rate(&eps, &col(|s| s.lp_dt)),
        steps,
        samples: DOMINATION_SAMPLES,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityBound {
    pub eps: f64,
    /// `sup phi^2`
    pub m: f64,
    /// `int phi~^2 a' / ((1 + a^2)^{3/2} (a' s^2 / 2 + 1))` in strip coordinates.
    pub neg_term: f64,
    /// `M pi sqrt(eps)`
    pub bound: f64,
    pub err_est: f64,
}

impl StabilityBound {
    pub fn ratio(&self) -> f64 {
        if self.bound > 0.0 {
            self.neg_term / self.bound
        } else {
            0.0
        }
    }

    pub fn holds(&self) -> bool {
        self.neg_term <= self.bound
    }
}

/// The negative part of the second variation of `f_eps` and its bound
/// `M pi sqrt(eps)`.
///
/// `a_eps' = 1/eps` on `[0, eps]` and vanishes elsewhere, so with
/// `s = sqrt(2 eps) v`, `tau = eps w` the term becomes
/// `sqrt(2 eps) int_R int_0^1 phi(sqrt(2 eps) v, eps w (v^2 + 1))^2 / ((1 + w^2)^{3/2} (v^2 + 1)) dw dv`,
/// which is what is integrated here.
pub fn cone_stability_bound(
    eps: f64,
    phi: &TestBump,
    spec: &QuadratureSpec,
) -> Result<StabilityBound> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "eps={eps} must be positive"
        )));
    }
    spec.validate()?;
    let m = phi.sup_sq();
    let r = (2.0 * eps).sqrt();
    let sup = phi.support();
    let neg = if phi.amplitude == 0.0 {
        crate::numerics::Integral::zero()
    } else {
        let region = Rect::new(sup.y0 / r, sup.y1 / r, 0.0, 1.0)?;
        integrate2d(
            |v, w| {
                let q = phi.eval(r * v, eps * w * (v * v + 1.0));
                q * q / ((1.0 + w * w).powf(1.5) * (v * v + 1.0))
            },
            &region,
            &SeamSet::empty(),
            &spec.with_abs_tol(spec.abs_tol / r),
        )
        .checked()?
    };
    Ok(StabilityBound {
        eps,
        m,
        neg_term: r * neg.value,
        bound: m * std::f64::consts::PI * eps.sqrt(),
        err_est: r * neg.err_est,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_bump_bound() {
        let phi = TestBump::new((0.0, 0.0), (0.3, 0.3), 0.0).unwrap();
        let b = cone_stability_bound(0.01, &phi, &QuadratureSpec::default()).unwrap();
        assert_eq!(b.neg_term, 0.0);
        assert!(b.holds());
    }

    #[test]
    fn bound_value() {
        // amplitude e^2 makes sup phi^2 = 1
        let phi = TestBump::new((0.0, 0.0), (0.3, 0.3), 2f64.exp()).unwrap();
        let b = cone_stability_bound(0.01, &phi, &QuadratureSpec::default()).unwrap();
        assert!((b.bound - std::f64::consts::PI / 10.0).abs() < 1e-12);
        assert!(b.neg_term <= b.bound);
    }

    #[test]
    fn rejects_p_three() {
        let r = Rect::new(-2.0, 2.0, -2.0, 2.0).unwrap();
        assert!(cone_convergence(&[0.1], 3.0, &r, &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn g3_dominates_on_branches() {
        for &eps in &[0.5, 0.1, 0.001] {
            let f = ScalarField::cone_eps(eps).unwrap();
            for &(y, t) in &[
                (1.0, 0.3),
                (0.1, 0.004),
                (0.1, 0.006),
                (-2.0, 1.5),
                (0.5, 0.2),
            ] {
                assert!(
                    f.partial_t(y, t).unwrap().abs() <= g3(y, t) + 1e-15,
                    "{eps} {y} {t}"
                );
            }
        }
    }
}
