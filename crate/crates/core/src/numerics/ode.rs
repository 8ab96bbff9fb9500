//! Characteristics `gamma'(s) = f(s, gamma(s))` by classical RK4.
//!
//! Each grid step is compared against two half steps; the difference over 15
//! is the local error estimate. Steps whose estimate exceeds the tolerance
//! are split recursively, which is what lets the solver follow a solution
//! right up to a finite-time blow-up.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ScalarField;

/// Sampled characteristic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve1D {
    /// Strictly increasing abscissae.
    pub s: Vec<f64>,
    pub values: Vec<f64>,
    /// The solution left `[-bound, bound]`; the curve stops at the first sample beyond it.
    pub blowup_flag: bool,
    /// Accumulated step-doubling error estimate.
    pub err_est: f64,
}

impl Curve1D {
    pub fn last(&self) -> (f64, f64) {
        (*self.s.last().unwrap(), *self.values.last().unwrap())
    }

    /// Value at the sample whose abscissa equals `s` (to 1e-12), if any.
    pub fn at(&self, s: f64) -> Option<f64> {
        self.s
            .iter()
            .position(|&x| (x - s).abs() <= 1e-12 * (1.0 + s.abs()))
            .map(|i| self.values[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeOptions {
    pub blowup_bound: f64,
    /// Per-step tolerance on the step-doubling estimate, relative to `1 + |gamma|`.
    pub step_tol: f64,
    pub max_refine: u32,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            blowup_bound: 1e6,
            step_tol: 1e-12,
            max_refine: 24,
        }
    }
}

fn rk4<F: Fn(f64, f64) -> f64>(f: &F, s: f64, y: f64, h: f64) -> f64 {
    let k1 = f(s, y);
    let k2 = f(s + 0.5 * h, y + 0.5 * h * k1);
    let k3 = f(s + 0.5 * h, y + 0.5 * h * k2);
    let k4 = f(s + h, y + h * k3);
    y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

enum Step {
    Done { y: f64, err: f64 },
    Blowup { s: f64, y: f64, err: f64 },
}

fn step_refined<F: Fn(f64, f64) -> f64>(
    f: &F,
    s: f64,
    y: f64,
    h: f64,
    opts: &OdeOptions,
    depth: u32,
) -> Result<Step> {
    let fy = f(s, y);
    if !fy.is_finite() {
        return Err(Error::NonFinite { y: s, t: y });
    }
    let full = rk4(f, s, y, h);
    let half = rk4(f, s, y, 0.5 * h);
    let two = rk4(f, s + 0.5 * h, half, 0.5 * h);
    let est = (two - full).abs() / 15.0;
    let ok = est.is_finite() && two.is_finite() && est <= opts.step_tol * (1.0 + two.abs());
    if ok || depth >= opts.max_refine {
        if !two.is_finite() || two.abs() > opts.blowup_bound {
            return Ok(Step::Blowup {
                s: s + h,
                y: two,
                err: est,
            });
        }
        return Ok(Step::Done { y: two, err: est });
    }
    let mut err = 0.0;
    let a = step_refined(f, s, y, 0.5 * h, opts, depth + 1)?;
    let ym = match a {
        Step::Done { y, err: e } => {
            err += e;
            y
        }
        b @ Step::Blowup { .. } => return Ok(b),
    };
    if ym.abs() > opts.blowup_bound {
        return Ok(Step::Blowup {
            s: s + 0.5 * h,
            y: ym,
            err,
        });
    }
    match step_refined(f, s + 0.5 * h, ym, 0.5 * h, opts, depth + 1)? {
        Step::Done { y, err: e } => Ok(Step::Done { y, err: err + e }),
        Step::Blowup { s, y, err: e } => Ok(Step::Blowup { s, y, err: err + e }),
    }
}

/// Integrate from `points[0]` through every listed abscissa in order.
///
/// `points` must be strictly monotone (increasing or decreasing). The
/// returned curve is sorted by increasing `s` either way.
pub fn flow_through<F>(f: F, points: &[f64], tau: f64, opts: &OdeOptions) -> Result<Curve1D>
where
    F: Fn(f64, f64) -> f64,
{
    if points.is_empty() {
        return Err(Error::DegenerateGrid("no integration points".into()));
    }
    let increasing = points.windows(2).all(|w| w[1] > w[0]);
    let decreasing = points.windows(2).all(|w| w[1] < w[0]);
    if !(increasing || decreasing) {
        return Err(Error::DegenerateGrid(
            "integration points not strictly monotone".into(),
        ));
    }
    if !tau.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "initial value {tau} not finite"
        )));
    }
    let mut s_out = vec![points[0]];
    let mut v_out = vec![tau];
    let mut err = 0.0;
    let mut blowup = false;
    let mut y = tau;
    for w in points.windows(2) {
        match step_refined(&f, w[0], y, w[1] - w[0], opts, 0)? {
            Step::Done { y: yn, err: e } => {
                err += e;
                y = yn;
                s_out.push(w[1]);
                v_out.push(y);
            }
            Step::Blowup { s, y: yb, err: e } => {
                err += e;
                blowup = true;
                s_out.push(s);
                v_out.push(yb);
                break;
            }
        }
    }
    if decreasing && s_out.len() > 1 {
        s_out.reverse();
        v_out.reverse();
    }
    Ok(Curve1D {
        s: s_out,
        values: v_out,
        blowup_flag: blowup,
        err_est: err,
    })
}

/// Characteristic of `field` through `(s0, tau)`, sampled at `steps + 1`
/// equally spaced abscissae from `s0` to `s1`.
pub fn ode_flow(field: &ScalarField, s0: f64, tau: f64, s1: f64, steps: usize) -> Result<Curve1D> {
    ode_flow_with(field, s0, tau, s1, steps, &OdeOptions::default())
}

pub fn ode_flow_with(
    field: &ScalarField,
    s0: f64,
    tau: f64,
    s1: f64,
    steps: usize,
    opts: &OdeOptions,
) -> Result<Curve1D> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    if s0 == s1 {
        return Ok(Curve1D {
            s: vec![s0],
            values: vec![tau],
            blowup_flag: false,
            err_est: 0.0,
        });
    }
    let points = uniform_points(s0, s1, steps);
    flow_through(|s, t| field.eval(s, t), &points, tau, opts)
}

pub(crate) fn uniform_points(s0: f64, s1: f64, steps: usize) -> Vec<f64> {
    let h = (s1 - s0) / steps as f64;
    (0..=steps)
        .map(|i| if i == steps { s1 } else { s0 + h * i as f64 })
        .collect()
}

/// Measured separation of two characteristics against the Gronwall bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Separation {
    pub measured: f64,
    pub bound: f64,
}

impl Separation {
    pub fn holds(&self, rel_tol: f64) -> bool {
        self.measured <= self.bound * (1.0 + rel_tol) + 1e-14
    }
}

/// `|gamma_a(s1) - gamma_b(s1)|` versus `|tau_a - tau_b| exp(L |s1 - s0|)`.
pub fn flow_separation_check(
    field: &ScalarField,
    lipschitz: f64,
    tau_a: f64,
    tau_b: f64,
    s0: f64,
    s1: f64,
) -> Result<Separation> {
    let steps = ((s1 - s0).abs() * 200.0).ceil().max(1.0) as usize;
    let a = ode_flow(field, s0, tau_a, s1, steps)?;
    let b = ode_flow(field, s0, tau_b, s1, steps)?;
    for c in [&a, &b] {
        if c.blowup_flag {
            let (s, _) = if s1 >= s0 {
                c.last()
            } else {
                (c.s[0], c.values[0])
            };
            return Err(Error::BlowUp { s });
        }
    }
    let ga = if s1 >= s0 { a.last().1 } else { a.values[0] };
    let gb = if s1 >= s0 { b.last().1 } else { b.values[0] };
    Ok(Separation {
        measured: (ga - gb).abs(),
        bound: (tau_a - tau_b).abs() * (lipschitz * (s1 - s0).abs()).exp(),
    })
}
