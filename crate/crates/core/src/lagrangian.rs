//! Lagrangian parametrizations `Psi(s, tau) = (s, chi(s, tau))` whose
//! `s`-sections are characteristics `d_s chi = f(s, chi)`, and the
//! quadratic structure of `chi` for stationary fields.

use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bump::TestBump;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::numerics::{flow_through, integrate2d, Integral, OdeOptions, QuadratureSpec, Rect};

/// How characteristics are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowMethod {
    /// Closed-form flow when the field has one, RK4 otherwise.
    Auto,
    /// Always integrate numerically.
    Ode,
}

/// Sampled `chi` on an `(s, tau)` grid; `chi[j][i] = chi(s_i, tau_j)`.
#[derive(Debug, Clone)]
pub struct LagrangianMap {
    pub s_grid: Vec<f64>,
    pub tau_grid: Vec<f64>,
    pub chi: Vec<Vec<f64>>,
    /// `chi(0, tau) = tau` holds by construction.
    pub normalized: bool,
    /// `tau` values at which `chi` has a kink; all are grid nodes.
    pub tau_breaks: Vec<f64>,
    pub field: Option<ScalarField>,
    pub err_est: f64,
}

/// Uniform grid on `[s0, s1]` with `steps` intervals, with 0 added.
pub fn s_grid_with_origin(s0: f64, s1: f64, steps: usize) -> Result<Vec<f64>> {
    if !(s1 > s0) || steps == 0 {
        return Err(Error::DegenerateGrid(format!(
            "s range [{s0}, {s1}] with {steps} steps"
        )));
    }
    let h = (s1 - s0) / steps as f64;
    let mut g: Vec<f64> = (0..=steps)
        .map(|i| if i == steps { s1 } else { s0 + h * i as f64 })
        .collect();
    g.push(0.0);
    sort_dedup(&mut g, 1e-13 * (s1 - s0));
    Ok(g)
}

fn sort_dedup(v: &mut Vec<f64>, tol: f64) {
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup_by(|a, b| (*a - *b).abs() <= tol);
}

/// Build the map from `(0, tau)` in both directions.
pub fn build_parametrization(
    f: &ScalarField,
    s_range: (f64, f64),
    tau_samples: &[f64],
    steps: usize,
) -> Result<LagrangianMap> {
    let grid = s_grid_with_origin(s_range.0, s_range.1, steps)?;
    build_parametrization_with(
        f,
        &grid,
        tau_samples,
        FlowMethod::Auto,
        &OdeOptions::default(),
    )
}

/// Build on an explicit `s` grid (0 is added if missing). Kinks of `chi`
/// in `tau` that fall inside the sampled range are added to the `tau` grid.
pub fn build_parametrization_with(
    f: &ScalarField,
    s_grid: &[f64],
    tau_samples: &[f64],
    method: FlowMethod,
    opts: &OdeOptions,
) -> Result<LagrangianMap> {
    if tau_samples.is_empty() || s_grid.len() < 2 {
        return Err(Error::DegenerateGrid(
            "need at least one tau and two s samples".into(),
        ));
    }
    let mut s = s_grid.to_vec();
    s.push(0.0);
    sort_dedup(&mut s, 1e-14);
    let mut tau = tau_samples.to_vec();
    sort_dedup(&mut tau, 0.0);
    let (tlo, thi) = (tau[0], tau[tau.len() - 1]);
    let breaks: Vec<f64> = f
        .tau_breaks()
        .into_iter()
        .filter(|&b| tlo < b && b < thi)
        .collect();
    let scale = (thi - tlo).max(1.0);
    for &b in &breaks {
        // snap a nearby sample onto the kink, or add it
        if let Some(x) = tau.iter_mut().find(|x| (**x - b).abs() <= 1e-9 * scale) {
            *x = b;
        } else {
            tau.push(b);
        }
    }
    sort_dedup(&mut tau, 0.0);
    let i0 = s.iter().position(|&x| x == 0.0).expect("origin inserted");
    let forward: Vec<f64> = s[i0..].to_vec();
    let backward: Vec<f64> = s[..=i0].iter().rev().copied().collect();
    let exact = method == FlowMethod::Auto && f.exact_flow(0.0, 0.0).is_some();

    let rows: Vec<Result<(Vec<f64>, f64)>> = tau
        .par_iter()
        .map(|&t0| {
            if exact {
                let row = s.iter().map(|&x| f.exact_flow(x, t0).unwrap()).collect();
                return Ok((row, 0.0));
            }
            let field = |a: f64, b: f64| f.eval(a, b);
            let fw = if forward.len() > 1 {
                Some(flow_through(field, &forward, t0, opts)?)
            } else {
                None
            };
            let bw = if backward.len() > 1 {
                Some(flow_through(field, &backward, t0, opts)?)
            } else {
                None
            };
            let mut row = Vec::with_capacity(s.len());
            let mut err = 0.0;
            if let Some(c) = &bw {
                if c.blowup_flag {
                    return Err(Error::BlowUp { s: c.s[0] });
                }
                err += c.err_est;
                row.extend_from_slice(&c.values[..c.values.len() - 1]);
            }
            row.push(t0);
            if let Some(c) = &fw {
                if c.blowup_flag {
                    return Err(Error::BlowUp { s: c.last().0 });
                }
                err += c.err_est;
                row.extend_from_slice(&c.values[1..]);
            }
            Ok((row, err))
        })
        .collect();
    let mut chi = Vec::with_capacity(tau.len());
    let mut err_est: f64 = 0.0;
    for r in rows {
        let (row, e) = r?;
        err_est = err_est.max(e);
        chi.push(row);
    }
    let tau_breaks = breaks.into_iter().filter(|b| tau.contains(b)).collect();
    Ok(LagrangianMap {
        s_grid: s,
        tau_grid: tau,
        chi,
        normalized: true,
        tau_breaks,
        field: Some(f.clone()),
        err_est,
    })
}

impl LagrangianMap {
    /// Wrap externally supplied values (e.g. to test the axiom checks).
    pub fn from_values(
        s_grid: Vec<f64>,
        tau_grid: Vec<f64>,
        chi: Vec<Vec<f64>>,
        field: Option<ScalarField>,
    ) -> Result<Self> {
        if chi.len() != tau_grid.len() || chi.iter().any(|r| r.len() != s_grid.len()) {
            return Err(Error::DegenerateGrid(
                "chi shape does not match the grids".into(),
            ));
        }
        if !s_grid.windows(2).all(|w| w[1] > w[0]) || !tau_grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::DegenerateGrid(
                "grids must be strictly increasing".into(),
            ));
        }
        let normalized = match s_grid.iter().position(|&x| x == 0.0) {
            Some(i0) => chi.iter().zip(&tau_grid).all(|(r, &t)| r[i0] == t),
            None => false,
        };
        Ok(Self {
            s_grid,
            tau_grid,
            chi,
            normalized,
            tau_breaks: Vec::new(),
            field,
            err_est: 0.0,
        })
    }

    fn field(&self) -> Result<&ScalarField> {
        self.field
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("map carries no field".into()))
    }

    /// Index ranges of the `tau` grid between consecutive kinks.
    fn tau_segments(&self) -> Vec<(usize, usize)> {
        let mut cuts = vec![0];
        for (j, t) in self.tau_grid.iter().enumerate() {
            if j > 0 && j + 1 < self.tau_grid.len() && self.tau_breaks.contains(t) {
                cuts.push(j);
            }
        }
        cuts.push(self.tau_grid.len() - 1);
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// `d_tau chi` on one segment (`lo..=hi`) at every `s` node; `out[j - lo][i]`.
    #[allow(clippy::needless_range_loop)]
    fn dtau_chi(&self, lo: usize, hi: usize) -> Vec<Vec<f64>> {
        let x = &self.tau_grid[lo..=hi];
        let mut out = vec![vec![0.0; self.s_grid.len()]; hi - lo + 1];
        for i in 0..self.s_grid.len() {
            let col: Vec<f64> = (lo..=hi).map(|j| self.chi[j][i]).collect();
            for (j, d) in derivative(x, &col).into_iter().enumerate() {
                out[j][i] = d;
            }
        }
        out
    }
}

/// Second-order derivative of samples `v` at nodes `x`, one-sided at the ends.
pub fn derivative(x: &[f64], v: &[f64]) -> Vec<f64> {
    let n = x.len();
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        2 => {
            let d = (v[1] - v[0]) / (x[1] - x[0]);
            vec![d, d]
        }
        _ => {
            (0..n)
                .map(|k| {
                    // Newton form of the interpolating parabola; exact on constants
                    let c = k.clamp(1, n - 2);
                    let (h1, h2) = (x[c] - x[c - 1], x[c + 1] - x[c]);
                    let d1 = (v[c] - v[c - 1]) / h1;
                    let d2 = (v[c + 1] - v[c]) / h2;
                    let curv = (d2 - d1) / (h1 + h2);
                    if k == c {
                        d1 + h1 * curv
                    } else if k < c {
                        d1 - h1 * curv
                    } else {
                        d2 + h2 * curv
                    }
                })
                .collect()
        }
    }
}

/// Composite trapezoid weights for nodes `x`.
fn trapezoid_weights(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        let h = x[k + 1] - x[k];
        w[k] += 0.5 * h;
        w[k + 1] += 0.5 * h;
    }
    w
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    /// Pairs of neighbouring `tau` where `chi` decreases by more than 1e-12.
    pub monotonicity_violations: usize,
    pub max_decrease: f64,
    /// `max |d_s chi - f(s, chi)|`
    pub max_ode_residual: f64,
    /// Fraction of a sample grid of the target rectangle covered by the map.
    pub coverage_ratio: f64,
    pub normalized: bool,
}

impl AxiomReport {
    pub fn passes(&self, residual_tol: f64) -> bool {
        self.monotonicity_violations == 0 && self.max_ode_residual <= residual_tol
    }
}

/// Monotonicity in `tau`, the characteristic equation, and coverage of
/// `[s_min, s_max] x [tau_min, tau_max]`.
pub fn check_axioms(map: &LagrangianMap) -> Result<AxiomReport> {
    let target = Rect::new(
        map.s_grid[0],
        map.s_grid[map.s_grid.len() - 1],
        map.tau_grid[0],
        map.tau_grid[map.tau_grid.len() - 1],
    )
    .or_else(|_| {
        Rect::new(
            map.s_grid[0],
            map.s_grid[map.s_grid.len() - 1],
            map.tau_grid[0] - 0.5,
            map.tau_grid[0] + 0.5,
        )
    })?;
    check_axioms_on(map, &target)
}

pub fn check_axioms_on(map: &LagrangianMap, target: &Rect) -> Result<AxiomReport> {
    let f = map.field()?;
    let mut violations = 0;
    let mut max_dec: f64 = 0.0;
    for j in 1..map.tau_grid.len() {
        for i in 0..map.s_grid.len() {
            let d = map.chi[j - 1][i] - map.chi[j][i];
            if d > 1e-12 * (1.0 + map.chi[j][i].abs()) {
                violations += 1;
                max_dec = max_dec.max(d);
            }
        }
    }
    let mut resid: f64 = 0.0;
    for row in &map.chi {
        let ds = derivative(&map.s_grid, row);
        for (i, &s) in map.s_grid.iter().enumerate() {
            resid = resid.max((ds[i] - f.eval(s, row[i])).abs());
        }
    }
    // coverage: at each s node, the t-interval swept by the tau samples
    let nt = 101;
    let mut hit = 0usize;
    let mut total = 0usize;
    for (i, &s) in map.s_grid.iter().enumerate() {
        if s < target.y0 || s > target.y1 {
            continue;
        }
        let lo = map.chi.iter().map(|r| r[i]).fold(f64::INFINITY, f64::min);
        let hi = map
            .chi
            .iter()
            .map(|r| r[i])
            .fold(f64::NEG_INFINITY, f64::max);
        for k in 0..nt {
            let t = target.t0 + (target.t1 - target.t0) * k as f64 / (nt - 1) as f64;
            total += 1;
            if lo - 1e-12 <= t && t <= hi + 1e-12 {
                hit += 1;
            }
        }
    }
    Ok(AxiomReport {
        monotonicity_violations: violations,
        max_decrease: max_dec,
        max_ode_residual: resid,
        coverage_ratio: if total == 0 {
            0.0
        } else {
            hit as f64 / total as f64
        },
        normalized: map.normalized,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaFormula {
    /// `int eta(s, chi) d_tau chi ds dtau` on the grid.
    pub lhs: f64,
    /// `int eta dy dt` by adaptive quadrature.
    pub rhs: Integral,
}

impl AreaFormula {
    pub fn gap(&self) -> f64 {
        (self.lhs - self.rhs.value).abs()
    }
}

/// Both sides of the area formula for `eta` supported in `support`.
pub fn area_formula_check<E>(
    map: &LagrangianMap,
    eta: E,
    support: &Rect,
    seams: &crate::numerics::SeamSet,
    spec: &QuadratureSpec,
) -> Result<AreaFormula>
where
    E: Fn(f64, f64) -> f64 + Sync,
{
    let ws = trapezoid_weights(&map.s_grid);
    let mut lhs = 0.0;
    for (lo, hi) in map.tau_segments() {
        let dchi = map.dtau_chi(lo, hi);
        let wt = trapezoid_weights(&map.tau_grid[lo..=hi]);
        for (jj, j) in (lo..=hi).enumerate() {
            let mut acc = 0.0;
            for (i, &s) in map.s_grid.iter().enumerate() {
                acc += ws[i] * eta(s, map.chi[j][i]) * dchi[jj][i];
            }
            lhs += wt[jj] * acc;
        }
    }
    let rhs = integrate2d(&eta, support, seams, spec).checked()?;
    Ok(AreaFormula { lhs, rhs })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovResiduals {
    /// `(d_t phi) o Psi - d_tau phi~ / d_tau chi`
    pub dt: f64,
    /// `(d_y phi) o Psi - (d_s phi~ - f~ d_tau phi~ / d_tau chi)`
    pub dy: f64,
    /// `(grad^f phi) o Psi - d_s phi~`
    pub grad: f64,
    pub min_jacobian: f64,
}

impl CovResiduals {
    pub fn max(&self) -> f64 {
        self.dt.max(self.dy).max(self.grad)
    }
}

/// Max-norm residuals of the three change-of-variables identities on the grid.
pub fn change_of_variables_check(map: &LagrangianMap, phi: &TestBump) -> Result<CovResiduals> {
    change_of_variables_check_with_floor(map, phi, 1e-8)
}

pub fn change_of_variables_check_with_floor(
    map: &LagrangianMap,
    phi: &TestBump,
    floor: f64,
) -> Result<CovResiduals> {
    let f = map.field()?;
    let sup = phi.support();
    let mut out = CovResiduals {
        dt: 0.0,
        dy: 0.0,
        grad: 0.0,
        min_jacobian: f64::INFINITY,
    };
    // d_s phi~ along each row
    let ds_phi: Vec<Vec<f64>> = map
        .chi
        .iter()
        .map(|row| {
            let v: Vec<f64> = map
                .s_grid
                .iter()
                .zip(row)
                .map(|(&s, &c)| phi.eval(s, c))
                .collect();
            derivative(&map.s_grid, &v)
        })
        .collect();
    for (lo, hi) in map.tau_segments() {
        let dchi = map.dtau_chi(lo, hi);
        let x = &map.tau_grid[lo..=hi];
        for (i, &s) in map.s_grid.iter().enumerate() {
            let col: Vec<f64> = (lo..=hi).map(|j| phi.eval(s, map.chi[j][i])).collect();
            let dtau_phi = derivative(x, &col);
            for (jj, j) in (lo..=hi).enumerate() {
                let c = map.chi[j][i];
                if !sup.contains(s, c) {
                    continue;
                }
                let jac = dchi[jj][i];
                out.min_jacobian = out.min_jacobian.min(jac);
                if !(jac > floor) {
                    return Err(Error::JacobianFloor {
                        s,
                        tau: map.tau_grid[j],
                        value: jac,
                    });
                }
                let fv = f.eval(s, c);
                let (py, pt) = (phi.dy(s, c), phi.dt(s, c));
                let dsp = ds_phi[j][i];
                out.dt = out.dt.max((pt - dtau_phi[jj] / jac).abs());
                out.dy = out.dy.max((py - (dsp - fv / jac * dtau_phi[jj])).abs());
                out.grad = out.grad.max((py + fv * pt - dsp).abs());
            }
        }
    }
    Ok(out)
}

/// Per-`tau` least-squares fit `chi = a (s - s_hat)^2 / 2 + b (s - s_hat) + c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticProfile {
    pub s_hat: f64,
    pub tau: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub residual: Vec<f64>,
    pub max_residual: f64,
}

pub fn fit_quadratic(map: &LagrangianMap, s_hat: f64) -> Result<QuadraticProfile> {
    let n = map.s_grid.len();
    if n < 4 {
        return Err(Error::DegenerateGrid(format!(
            "{n} s-samples; need at least 4"
        )));
    }
    let span = map.s_grid[n - 1] - map.s_grid[0];
    if !(span > 0.0) {
        return Err(Error::DegenerateGrid("s-samples coincide".into()));
    }
    let design = DMatrix::from_fn(n, 3, |i, k| {
        let d = map.s_grid[i] - s_hat;
        match k {
            0 => 0.5 * d * d,
            1 => d,
            _ => 1.0,
        }
    });
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    if svd.singular_values.min() <= 1e-12 * smax {
        return Err(Error::DegenerateGrid(
            "s-samples do not determine a quadratic".into(),
        ));
    }
    let mut prof = QuadraticProfile {
        s_hat,
        tau: map.tau_grid.clone(),
        a: Vec::with_capacity(map.tau_grid.len()),
        b: Vec::with_capacity(map.tau_grid.len()),
        c: Vec::with_capacity(map.tau_grid.len()),
        residual: Vec::with_capacity(map.tau_grid.len()),
        max_residual: 0.0,
    };
    for row in &map.chi {
        let rhs = DVector::from_column_slice(row);
        let coef = svd
            .solve(&rhs, 1e-14 * smax)
            .map_err(|e| Error::DegenerateGrid(e.to_string()))?;
        let fit = &design * &coef;
        let r = (fit - rhs).amax();
        prof.a.push(coef[0]);
        prof.b.push(coef[1]);
        prof.c.push(coef[2]);
        prof.residual.push(r);
        prof.max_residual = prof.max_residual.max(r);
    }
    Ok(prof)
}

impl QuadraticProfile {
    /// Build directly from sampled coefficients (residual zero).
    pub fn from_coefficients(tau: Vec<f64>, a: Vec<f64>, b: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        let n = tau.len();
        if a.len() != n || b.len() != n || c.len() != n {
            return Err(Error::InvalidArgument(
                "profile columns differ in length".into(),
            ));
        }
        Ok(Self {
            s_hat: 0.0,
            residual: vec![0.0; n],
            tau,
            a,
            b,
            c,
            max_residual: 0.0,
        })
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["tau", "a", "b", "c", "residual"])?;
        for j in 0..self.len() {
            w.write_record([
                fmt_num(self.tau[j]),
                fmt_num(self.a[j]),
                fmt_num(self.b[j]),
                fmt_num(self.c[j]),
                fmt_num(self.residual[j]),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn fmt_num(x: f64) -> String {
    format!("{x:.12e}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub pairs: usize,
    pub equality_pairs: usize,
    pub strict_pairs: usize,
    /// Pairs satisfying neither alternative.
    pub violations: usize,
    /// Sample indices where the derivative constraint fails.
    pub derivative_flags: Vec<usize>,
    pub a_prime: Vec<f64>,
    pub b_prime: Vec<f64>,
}

impl ConstraintReport {
    pub fn passes(&self) -> bool {
        self.violations == 0 && self.derivative_flags.is_empty()
    }
}

/// Pairwise: either `a` and `b` agree, or `2 (a_i - a_j)(c_i - c_j) > (b_i - b_j)^2`.
/// Pointwise: either `a' = b' = 0` or `2 a' > b'^2`, derivatives in `c` by differences.
pub fn profile_constraints_check(profile: &QuadraticProfile) -> ConstraintReport {
    profile_constraints_check_with(profile, 1e-10, 1e-6)
}

pub fn profile_constraints_check_with(
    profile: &QuadraticProfile,
    eq_tol: f64,
    deriv_tol: f64,
) -> ConstraintReport {
    let n = profile.len();
    let (mut eq, mut strict, mut bad) = (0, 0, 0);
    for i in 0..n {
        for j in (i + 1)..n {
            let da = profile.a[i] - profile.a[j];
            let db = profile.b[i] - profile.b[j];
            let dc = profile.c[i] - profile.c[j];
            if da.abs() <= eq_tol && db.abs() <= eq_tol {
                eq += 1;
            } else if 2.0 * da * dc > db * db {
                strict += 1;
            } else {
                bad += 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| profile.c[i].total_cmp(&profile.c[j]));
    let mut a_prime = vec![0.0; n];
    let mut b_prime = vec![0.0; n];
    let mut flags = Vec::new();
    if n >= 2 {
        let cs: Vec<f64> = order.iter().map(|&i| profile.c[i]).collect();
        if cs.windows(2).all(|w| w[1] > w[0]) {
            let av: Vec<f64> = order.iter().map(|&i| profile.a[i]).collect();
            let bv: Vec<f64> = order.iter().map(|&i| profile.b[i]).collect();
            // one-sided differences keep kinks from smearing across samples
            for k in 0..n {
                let (da, db) = if k + 1 < n {
                    let h = cs[k + 1] - cs[k];
                    ((av[k + 1] - av[k]) / h, (bv[k + 1] - bv[k]) / h)
                } else {
                    let h = cs[k] - cs[k - 1];
                    ((av[k] - av[k - 1]) / h, (bv[k] - bv[k - 1]) / h)
                };
                let idx = order[k];
                a_prime[idx] = da;
                b_prime[idx] = db;
                let flat = da.abs() <= deriv_tol && db.abs() <= deriv_tol;
                if !flat && !(2.0 * da > db * db - deriv_tol) {
                    flags.push(idx);
                }
            }
        } else {
            flags.extend(0..n);
        }
    }
    flags.sort_unstable();
    ConstraintReport {
        pairs: n * n.saturating_sub(1) / 2,
        equality_pairs: eq,
        strict_pairs: strict,
        violations: bad,
        derivative_flags: flags,
        a_prime,
        b_prime,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Plane,
    NotPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerdictDetails {
    pub verdict: Verdict,
    pub a_range: f64,
    pub b_range: f64,
    pub tol: f64,
}

/// `Plane` iff the sampled `a` and `b` each vary by at most `tol`.
pub fn bernstein_verdict(profile: &QuadraticProfile, tol: f64) -> Result<Verdict> {
    Ok(bernstein_verdict_details(profile, tol)?.verdict)
}

pub fn bernstein_verdict_details(profile: &QuadraticProfile, tol: f64) -> Result<VerdictDetails> {
    if profile.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let range = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    };
    let a_range = range(&profile.a);
    let b_range = range(&profile.b);
    Ok(VerdictDetails {
        verdict: if a_range <= tol && b_range <= tol {
            Verdict::Plane
        } else {
            Verdict::NotPlane
        },
        a_range,
        b_range,
        tol,
    })
}

/// Default tolerance on the ranges of `a` and `b` for a plane.
pub const PLANE_TOL: f64 = 1e-4;
