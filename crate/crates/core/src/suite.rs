//! Verification suites behind the command line front end.
//!
//! Each command reads a [`RunConfig`], writes `report.json` (and CSV or OBJ
//! side files) into the output directory and passes iff every check in the
//! report passes.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bump::{cone_family, TestBump};
use crate::cantor::{self, CantorOrder};
use crate::cone::{cone_convergence_seeded, cone_stability_bound};
use crate::error::{Error, Result};
use crate::field::{FieldKind, ScalarField};
use crate::group::HPoint;
use crate::lagrangian::{
    bernstein_verdict_details, build_parametrization, check_axioms, fit_quadratic,
    profile_constraints_check, LagrangianMap, PLANE_TOL,
};
use crate::mesh::{cone_graph_distance, config_hash, graph_mesh, strip_mesh};
use crate::numerics::{flow_through, rayleigh_min, QuadratureSpec, RayleighProblem, Rect};
use crate::report::{write_table, Check, Report};
use crate::strips::{calibration_check, strip_field, StripProfile};
use crate::variation::{first_variation, graph_area, second_variation, variation_fd_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Area,
    FirstVariation,
    SecondVariation,
    Flow,
    FitQuadratic,
    Verdict,
    Calibration,
    ConeSuite,
    CantorSuite,
    Rayleigh,
    Mesh,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::Area,
        Command::FirstVariation,
        Command::SecondVariation,
        Command::Flow,
        Command::FitQuadratic,
        Command::Verdict,
        Command::Calibration,
        Command::ConeSuite,
        Command::CantorSuite,
        Command::Rayleigh,
        Command::Mesh,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Area => "area",
            Command::FirstVariation => "first-variation",
            Command::SecondVariation => "second-variation",
            Command::Flow => "flow",
            Command::FitQuadratic => "fit-quadratic",
            Command::Verdict => "verdict",
            Command::Calibration => "calibration",
            Command::ConeSuite => "cone-suite",
            Command::CantorSuite => "cantor-suite",
            Command::Rayleigh => "rayleigh",
            Command::Mesh => "mesh",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('_', "-");
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown command '{s}'")))
    }
}

/// Bump given in a config file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpConfig {
    pub center: [f64; 2],
    pub radii: [f64; 2],
    #[serde(default = "one")]
    pub amplitude: f64,
}

fn one() -> f64 {
    1.0
}

/// Everything a command needs; unset fields take per-command defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    /// `plane:a,b | cone | cone-eps[:e] | cantor[:n] | cantor-limit | table:path.csv | linear | t2 | zero`
    pub field: Option<String>,
    /// `[y0, y1, t0, t1]`
    pub region: Option<[f64; 4]>,
    pub eps: Option<f64>,
    pub n: Option<u32>,
    pub tol: Option<f64>,
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub quadrature: Option<QuadratureSpec>,
    pub bump: Option<BumpConfig>,
    /// Flow start point and target.
    pub tau: Option<f64>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub steps: Option<usize>,
    pub s_range: Option<[f64; 2]>,
    pub tau_range: Option<[f64; 2]>,
    pub tau_samples: Option<usize>,
    pub s_hat: Option<f64>,
    /// Weight `h(t) = A t^2/2 + B t + 1`.
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub halfwidth: Option<f64>,
    pub gridsize: Option<usize>,
    /// Mesh resolution in the two parameters.
    pub grid: Option<[usize; 2]>,
}

impl RunConfig {
    pub fn for_command(cmd: Command) -> Self {
        Self {
            command: cmd.name().to_string(),
            ..Self::default()
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Fields set in `other` replace those here.
    pub fn overlay(mut self, other: &RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f.clone(); } )* };
        }
        if !other.command.is_empty() {
            self.command = other.command.clone();
        }
        take!(
            field,
            region,
            eps,
            n,
            tol,
            out,
            seed,
            quadrature,
            bump,
            tau,
            from,
            to,
            steps,
            s_range,
            tau_range,
            tau_samples,
            s_hat,
            a,
            b,
            halfwidth,
            gridsize,
            grid
        );
        self
    }

    pub fn command(&self) -> Result<Command> {
        self.command.parse()
    }

    /// Stable digest of the configuration (the output path is excluded).
    pub fn hash(&self) -> String {
        config_hash(&serde_json::to_string(self).unwrap_or_default())
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out
            .clone()
            .unwrap_or_else(|| PathBuf::from("heis-out"))
    }

    fn spec(&self) -> Result<QuadratureSpec> {
        let s = self.quadrature.unwrap_or_default();
        s.validate()?;
        Ok(s)
    }

    fn region_or(&self, d: [f64; 4]) -> Result<Rect> {
        let r = self.region.unwrap_or(d);
        Rect::new(r[0], r[1], r[2], r[3])
            .map_err(|_| Error::Config(format!("region {r:?} is empty")))
    }

    fn bumps(&self) -> Result<Vec<TestBump>> {
        match self.bump {
            Some(b) => Ok(vec![TestBump::new(
                (b.center[0], b.center[1]),
                (b.radii[0], b.radii[1]),
                b.amplitude,
            )?]),
            None => Ok(cone_family()),
        }
    }

    fn field_or(&self, default: &str) -> Result<ScalarField> {
        parse_field(self.field.as_deref().unwrap_or(default), self.eps, self.n)
    }
}

/// Parse a field selector; `eps` and `n` fill in `cone-eps` and `cantor` without a value.
pub fn parse_field(sel: &str, eps: Option<f64>, n: Option<u32>) -> Result<ScalarField> {
    let sel = sel.trim();
    let (head, arg) = match sel.split_once(':') {
        Some((h, a)) => (h.trim().replace('_', "-"), Some(a.trim())),
        None => (sel.replace('_', "-"), None),
    };
    let bad = |msg: &str| Error::Config(format!("field '{sel}': {msg}"));
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| bad("expected a number"))
    };
    match head.as_str() {
        "plane" => {
            let arg = arg.ok_or_else(|| bad("use plane:a,b"))?;
            let (a, b) = arg.split_once(',').ok_or_else(|| bad("use plane:a,b"))?;
            Ok(ScalarField::plane(num(a)?, num(b)?))
        }
        "zero" => Ok(ScalarField::zero()),
        "cone" => Ok(ScalarField::cone()),
        "cone-eps" => {
            let e = match arg {
                Some(a) => num(a)?,
                None => eps.ok_or_else(|| bad("needs cone-eps:e or --eps"))?,
            };
            ScalarField::cone_eps(e)
        }
        "cantor" => {
            let n = match arg {
                Some(a) => a.parse::<u32>().map_err(|_| bad("expected a level"))?,
                None => n.ok_or_else(|| bad("needs cantor:n or --n"))?,
            };
            Ok(strip_field(&StripProfile::cantor_n(n)?))
        }
        "cantor-limit" => Ok(strip_field(&StripProfile::cantor_limit())),
        "table" => {
            let path = arg.ok_or_else(|| bad("use table:path.csv"))?;
            Ok(strip_field(&StripProfile::table_from_csv(Path::new(path))?))
        }
        "linear" => Ok(ScalarField::linear_t()),
        "t2" => Ok(ScalarField::t_squared()),
        _ => Err(bad("unknown selector")),
    }
}

/// A finished command: its report and the files written.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub files: Vec<PathBuf>,
    /// Text for standard output.
    pub summary: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.passed {
            0
        } else {
            1
        }
    }
}

/// Cap the rayon pool at `HEIS_THREADS` workers when set. Only the first call has an effect.
pub fn init_threads() {
    if let Some(n) = std::env::var("HEIS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

struct Ctx {
    cfg: RunConfig,
    out: PathBuf,
    report: Report,
    files: Vec<PathBuf>,
    summary: String,
}

impl Ctx {
    fn path(&mut self, name: &str) -> PathBuf {
        let p = self.out.join(name);
        self.files.push(p.clone());
        p
    }

    fn tol(&self, d: f64) -> f64 {
        self.cfg.tol.unwrap_or(d)
    }
}

/// Run the command named in `cfg`.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let cmd = cfg.command()?;
    let out = cfg.out_dir();
    std::fs::create_dir_all(&out)?;
    let mut ctx = Ctx {
        cfg: cfg.clone(),
        out,
        report: Report::new(cmd.name(), &cfg.hash()),
        files: Vec::new(),
        summary: String::new(),
    };
    match cmd {
        Command::Area => area(&mut ctx)?,
        Command::FirstVariation => first(&mut ctx)?,
        Command::SecondVariation => second(&mut ctx)?,
        Command::Flow => flow(&mut ctx)?,
        Command::FitQuadratic => quadratic(&mut ctx, false)?,
        Command::Verdict => quadratic(&mut ctx, true)?,
        Command::Calibration => calibration(&mut ctx)?,
        Command::ConeSuite => cone_suite(&mut ctx)?,
        Command::CantorSuite => cantor_suite(&mut ctx)?,
        Command::Rayleigh => rayleigh(&mut ctx)?,
        Command::Mesh => mesh(&mut ctx)?,
    }
    let rp = ctx.path("report.json");
    ctx.report.write_json(&rp)?;
    let mut summary = ctx.summary;
    for c in ctx.report.failed() {
        summary.push_str(&format!(
            "FAILED {}: measured {} vs {}\n",
            c.name, c.measured, c.threshold
        ));
    }
    Ok(Outcome {
        report: ctx.report,
        files: ctx.files,
        summary,
    })
}

fn area(ctx: &mut Ctx) -> Result<()> {
    let f = ctx.cfg.field_or("cone")?;
    let e = ctx.cfg.region_or([-1.0, 1.0, -1.0, 1.0])?;
    let spec = ctx.cfg.spec()?;
    let a = graph_area(&f, &e, &spec)?;
    ctx.report.value("field", f.label());
    ctx.report.value("area", a.value);
    ctx.report.value("err_est", a.err_est);
    ctx.report.push(Check::holds(
        "quadrature_converged",
        a.converged,
        "adaptive rule met its tolerance",
    ));
    if let FieldKind::Plane { a: pa, .. } = f.kind() {
        let exact = (1.0 + pa * pa).sqrt() * e.area();
        ctx.report.push(Check::at_most(
            "plane_area",
            (a.value - exact).abs(),
            ctx.tol(1e-9) * exact.max(1.0),
            "area of a plane graph is sqrt(1 + a^2) |E|",
        ));
    }
    ctx.summary = format!("area {:.12}\n", a.value);
    Ok(())
}

fn first(ctx: &mut Ctx) -> Result<()> {
    let f = ctx.cfg.field_or("cone")?;
    let spec = ctx.cfg.spec()?;
    let tol = ctx.tol(1e-6);
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for phi in ctx.cfg.bumps()? {
        let i = first_variation(&f, &phi, &spec)?;
        worst = worst.max(i.value.abs());
        rows.push(vec![
            phi.center.0,
            phi.center.1,
            phi.radii.0,
            phi.radii.1,
            i.value,
            i.err_est,
        ]);
    }
    let phi0 = ctx.cfg.bumps()?[0];
    let fd = variation_fd_check(&f, &phi0, 1e-3, &spec)?;
    ctx.report.value("field", f.label());
    ctx.report.value("max_abs_first_variation", worst);
    ctx.report.value("fd_check", fd);
    ctx.report.push(Check::at_most(
        "stationary",
        worst,
        tol,
        "I_f(phi) = 0 for every test bump",
    ));
    ctx.report.push(Check::at_most(
        "first_variation_matches_difference_quotient",
        fd.err_i,
        1e-6,
        "I_f(phi) = d/de A(f + e phi) at e = 0",
    ));
    let p = ctx.path("first_variation.csv");
    write_table(&p, &["cy", "ct", "ry", "rt", "value", "err_est"], &rows)?;
    ctx.summary = format!("max |I| {worst:.3e}\n");
    Ok(())
}

fn second(ctx: &mut Ctx) -> Result<()> {
    let f = ctx.cfg.field_or("cone-eps:0.1")?;
    let spec = ctx.cfg.spec()?;
    let tol = ctx.tol(1e-6);
    let mut rows = Vec::new();
    let mut min_ii = f64::INFINITY;
    let mut worst_excess = f64::NEG_INFINITY;
    let eps = match f.kind() {
        FieldKind::ConeEps(e) => Some(*e),
        _ => None,
    };
    for phi in ctx.cfg.bumps()? {
        let ii = second_variation(&f, &phi, &spec)?;
        min_ii = min_ii.min(ii.value);
        let mut row = vec![
            phi.center.0,
            phi.center.1,
            phi.radii.0,
            phi.radii.1,
            ii.value,
            ii.err_est,
        ];
        if let Some(e) = eps {
            let sb = cone_stability_bound(e, &phi, &spec)?;
            worst_excess = worst_excess.max(sb.neg_term - sb.bound);
            row.extend([sb.neg_term, sb.bound]);
        }
        rows.push(row);
    }
    ctx.report.value("field", f.label());
    ctx.report.value("min_second_variation", min_ii);
    ctx.report.push(Check::at_least(
        "stable",
        min_ii,
        -tol,
        "II_f(phi) >= 0 for every test bump",
    ));
    let mut header = vec!["cy", "ct", "ry", "rt", "value", "err_est"];
    if eps.is_some() {
        header.extend(["neg_term", "bound"]);
        ctx.report.push(Check::at_most(
            "negative_term_bound",
            worst_excess,
            0.0,
            "negative term <= M pi sqrt(eps)",
        ));
    }
    let p = ctx.path("second_variation.csv");
    write_table(&p, &header, &rows)?;
    ctx.summary = format!("min II {min_ii:.6e}\n");
    Ok(())
}

/// Characteristic through `(s0, tau)` evaluated at `s`, where known in closed form.
pub fn closed_form_flow(f: &ScalarField, s0: f64, tau: f64, s: f64) -> Option<f64> {
    match f.kind() {
        FieldKind::Custom(name) if name == "t" => Some(tau * (s - s0).exp()),
        FieldKind::Custom(name) if name == "t^2" => {
            let d = 1.0 - tau * (s - s0);
            (d > 0.0).then(|| tau / d)
        }
        _ if s0 == 0.0 => f.exact_flow(s, tau),
        _ => None,
    }
}

fn flow(ctx: &mut Ctx) -> Result<()> {
    let f = ctx.cfg.field_or("linear")?;
    let tau = ctx.cfg.tau.unwrap_or(1.0);
    let s0 = ctx.cfg.from.unwrap_or(0.0);
    let s1 = ctx.cfg.to.unwrap_or(1.0);
    let steps = ctx.cfg.steps.unwrap_or(100).max(1);
    if s1 == s0 {
        return Err(Error::Config(
            "flow needs --to different from the start".into(),
        ));
    }
    // continue past the target by the same length to warn about nearby blow-up
    let horizon = s1 + (s1 - s0);
    let h = (s1 - s0) / steps as f64;
    let mut pts: Vec<f64> = (0..=2 * steps).map(|i| s0 + h * i as f64).collect();
    pts[steps] = s1;
    pts[2 * steps] = horizon;
    let field = |a: f64, b: f64| f.eval(a, b);
    let opts = Default::default();
    let curve = flow_through(field, &pts[..=steps], tau, &opts)?;
    let target = curve
        .at(s1)
        .filter(|v| v.abs() <= 1e6 && !curve.blowup_flag);
    let blowup_at = match target {
        None => Some(if s1 > s0 { curve.last().0 } else { curve.s[0] }),
        Some(v) => {
            let ahead = flow_through(field, &pts[steps..], v, &opts)?;
            ahead
                .blowup_flag
                .then(|| if s1 > s0 { ahead.last().0 } else { ahead.s[0] })
        }
    };
    let rows: Vec<Vec<f64>> = curve
        .s
        .iter()
        .zip(&curve.values)
        .map(|(s, v)| vec![*s, *v])
        .collect();
    if let Some(s_b) = blowup_at {
        let msg = format!("characteristic leaves |gamma| <= 1e6 near s = {s_b:.6}");
        ctx.summary.push_str(&format!("warning: {msg}\n"));
        ctx.report.warn(msg);
        ctx.report.value("blowup_near", s_b);
    }
    ctx.report.value("field", f.label());
    ctx.report.value("blowup", blowup_at.is_some());
    ctx.report.value("gamma_at_target", target);
    ctx.report.push(Check::holds(
        "reached_target",
        target.is_some(),
        "solution exists on [from, to]",
    ));
    ctx.report.push(Check::at_most(
        "step_doubling_estimate",
        curve.err_est,
        ctx.tol(1e-8),
        "RK4 local error estimate |two half steps - one step| / 15",
    ));
    if let (Some(v), Some(exact)) = (target, closed_form_flow(&f, s0, tau, s1)) {
        ctx.report.value("closed_form", exact);
        ctx.report.push(Check::at_most(
            "closed_form",
            (v - exact).abs(),
            ctx.tol(1e-8) * (1.0 + exact.abs()),
            "gamma' = f(s, gamma) solved in closed form",
        ));
    }
    let p = ctx.path("flow.csv");
    write_table(&p, &["s", "gamma"], &rows)?;
    if let Some(v) = target {
        ctx.summary.push_str(&format!("gamma({s1}) = {v:.12}\n"));
    }
    Ok(())
}

fn build_map(ctx: &Ctx, f: &ScalarField) -> Result<LagrangianMap> {
    let s = ctx.cfg.s_range.unwrap_or([-2.0, 2.0]);
    let tr = ctx.cfg.tau_range.unwrap_or([-0.5, 1.5]);
    let nt = ctx.cfg.tau_samples.unwrap_or(200).max(2);
    let taus: Vec<f64> = (0..nt)
        .map(|j| tr[0] + (tr[1] - tr[0]) * j as f64 / (nt - 1) as f64)
        .collect();
    build_parametrization(f, (s[0], s[1]), &taus, ctx.cfg.steps.unwrap_or(400))
}

fn quadratic(ctx: &mut Ctx, verdict: bool) -> Result<()> {
    let f = ctx.cfg.field_or("cone-eps:0.1")?;
    let tol = ctx.tol(1e-6);
    let map = build_map(ctx, &f)?;
    let ax = check_axioms(&map)?;
    let prof = fit_quadratic(&map, ctx.cfg.s_hat.unwrap_or(0.0))?;
    let cons = profile_constraints_check(&prof);
    ctx.report.value("field", f.label());
    ctx.report.value("axioms", &ax);
    ctx.report.push(Check::at_most(
        "monotone_in_tau",
        ax.monotonicity_violations as f64,
        0.0,
        "chi(s, .) is nondecreasing",
    ));
    ctx.report.push(Check::at_most(
        "characteristic_residual",
        ax.max_ode_residual,
        tol,
        "d_s chi = f(s, chi)",
    ));
    ctx.report.push(Check::at_most(
        "quadratic_fit_residual",
        prof.max_residual,
        tol,
        "chi(s, tau) = a(tau) s^2/2 + b(tau) s + c(tau)",
    ));
    ctx.report.push(Check::at_most(
        "pairwise_profile_constraint",
        cons.violations as f64,
        0.0,
        "a, b equal or 2 (a1 - a2)(c1 - c2) > (b1 - b2)^2",
    ));
    ctx.report.push(Check::at_most(
        "derivative_profile_constraint",
        cons.derivative_flags.len() as f64,
        0.0,
        "a' = b' = 0 or 2 a' > b'^2",
    ));
    let ground = match f.kind() {
        FieldKind::Plane { a, b } => Some((StripProfile::constant(*a), *b)),
        _ => f.strip_profile().map(|p| (p, 0.0)),
    };
    if let Some((p, b)) = ground {
        let da = (0..prof.len())
            .map(|j| (prof.a[j] - p.a(prof.tau[j])).abs())
            .fold(0.0, f64::max);
        let db = prof.b.iter().map(|x| (x - b).abs()).fold(0.0, f64::max);
        ctx.report.push(Check::at_most(
            "profile_a",
            da,
            tol,
            "a(tau) equals the generating profile",
        ));
        ctx.report.push(Check::at_most(
            "profile_b",
            db,
            tol,
            "b(tau) equals the generating constant",
        ));
    }
    let pp = ctx.path("profile.csv");
    prof.write_csv(&pp)?;
    if verdict {
        let v = bernstein_verdict_details(&prof, ctx.cfg.tol.unwrap_or(PLANE_TOL))?;
        ctx.report.value("verdict", v.verdict);
        ctx.report.value("a_range", v.a_range);
        ctx.report.value("b_range", v.b_range);
        ctx.summary = format!("{:?}\n", v.verdict);
    } else {
        ctx.summary = format!("max fit residual {:.3e}\n", prof.max_residual);
    }
    Ok(())
}

fn calibration(ctx: &mut Ctx) -> Result<()> {
    let f = ctx.cfg.field_or("cantor-limit")?;
    let prof = f.strip_profile().ok_or_else(|| {
        Error::Config(format!(
            "calibration needs a strip field, got {}",
            f.label()
        ))
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed.unwrap_or(0));
    let count = ctx.cfg.steps.unwrap_or(100);
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let p = HPoint::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        if p.x * p.x + p.y * p.y > 0.01 {
            points.push(p);
        }
    }
    let mut samples: Vec<(f64, f64)> = (0..count)
        .map(|_| (rng.gen_range(1e-3..2.0), rng.gen_range(-0.5..1.5)))
        .collect();
    samples.extend((0..count).map(|_| (-rng.gen_range(1e-3..2.0), rng.gen_range(-0.5..1.5))));
    let rep = calibration_check(&prof, &points, &samples)?;
    ctx.report.value("field", f.label());
    ctx.report.value("calibration", &rep);
    ctx.report.push(Check::at_most(
        "divergence_free",
        rep.max_divergence,
        1e-6,
        "div nu = 0 away from the vertical axis",
    ));
    ctx.report.push(Check::at_most(
        "normal_agreement",
        rep.max_normal_mismatch,
        1e-8,
        "nu = (-1, a)/sqrt(1 + a^2) on the strip for s > 0",
    ));
    ctx.summary = format!(
        "max div {:.3e}, max normal mismatch {:.3e}\n",
        rep.max_divergence, rep.max_normal_mismatch
    );
    Ok(())
}

/// Rungs of the smoothing ladder used by the cone suite.
pub const EPS_LADDER: [f64; 3] = [1e-1, 1e-2, 1e-3];

fn cone_suite(ctx: &mut Ctx) -> Result<()> {
    let spec = ctx.cfg.spec()?;
    let tol = ctx.tol(1e-6);
    let cone = ScalarField::cone();
    let bumps = ctx.cfg.bumps()?;
    let mut max_i: f64 = 0.0;
    for phi in &bumps {
        max_i = max_i.max(first_variation(&cone, phi, &spec)?.value.abs());
    }
    ctx.report.value("max_abs_first_variation", max_i);
    ctx.report.push(Check::at_most(
        "cone_stationary",
        max_i,
        tol,
        "I_f(phi) = 0 for the cone",
    ));

    let ladder = match ctx.cfg.eps {
        Some(e) => vec![e],
        None => EPS_LADDER.to_vec(),
    };
    let mut rows = Vec::new();
    let mut prev_ratio: Option<Vec<f64>> = None;
    let mut ratio_increase: f64 = 0.0;
    let mut min_ii = f64::INFINITY;
    let mut worst_excess = f64::NEG_INFINITY;
    for &e in &ladder {
        let fe = ScalarField::cone_eps(e)?;
        let mut ratios = Vec::with_capacity(bumps.len());
        let (mut rung_min, mut rung_neg, mut rung_ratio) = (f64::INFINITY, 0.0f64, 0.0f64);
        for phi in &bumps {
            let ii = second_variation(&fe, phi, &spec)?.value;
            let sb = cone_stability_bound(e, phi, &spec)?;
            rung_min = rung_min.min(ii);
            rung_neg = rung_neg.max(sb.neg_term);
            rung_ratio = rung_ratio.max(sb.ratio());
            worst_excess = worst_excess.max(sb.neg_term - sb.bound);
            ratios.push(sb.ratio());
        }
        if let Some(p) = &prev_ratio {
            for (r, q) in ratios.iter().zip(p) {
                ratio_increase = ratio_increase.max(r - q);
            }
        }
        prev_ratio = Some(ratios);
        min_ii = min_ii.min(rung_min);
        let bound =
            std::f64::consts::PI * e.sqrt() * bumps.iter().map(|b| b.sup_sq()).fold(0.0, f64::max);
        rows.push((e, rung_min, rung_neg, bound, rung_ratio));
    }
    ctx.report.push(Check::at_least(
        "smoothed_cones_stable",
        min_ii,
        -tol,
        "II_{f_eps}(phi) >= 0",
    ));
    ctx.report.push(Check::at_most(
        "negative_term_bound",
        worst_excess,
        0.0,
        "negative term <= M pi sqrt(eps)",
    ));
    ctx.report.push(Check::at_most(
        "bound_ratio_nonincreasing",
        ratio_increase,
        0.0,
        "negative term / (M pi sqrt(eps)) does not grow as eps decreases",
    ));

    let region = ctx.cfg.region_or([-2.0, 2.0, -2.0, 2.0])?;
    let seed = ctx.cfg.seed.unwrap_or(0);
    let conv2 = cone_convergence_seeded(&ladder, 2.0, &region, &spec, seed)?;
    let conv1 = cone_convergence_seeded(&ladder, 1.0, &region, &spec, seed)?;
    if ladder.len() > 1 {
        ctx.report.push(Check::holds(
            "w12_distances_decrease",
            conv2.decreasing(),
            "f_eps -> f in W^{1,2}",
        ));
        ctx.report.push(Check::holds(
            "w11_distances_decrease",
            conv1.decreasing(),
            "f_eps -> f in W^{1,1}",
        ));
    }
    ctx.report.push(Check::at_most(
        "domination",
        (conv1.domination_violations() + conv2.domination_violations()) as f64,
        0.0,
        "|f_eps| <= |y|, |d_y f_eps| <= 1, |d_t f_eps| <= g3",
    ));
    // the smoothed cone is the strip of a_eps
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut strip_gap: f64 = 0.0;
    for &e in &ladder {
        let fe = ScalarField::cone_eps(e)?;
        let fs = strip_field(&StripProfile::cone_eps(e)?);
        for _ in 0..1000 {
            let (y, t) = (rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..3.0));
            strip_gap = strip_gap.max((fe.eval(y, t) - fs.eval(y, t)).abs());
        }
    }
    ctx.report.push(Check::at_most(
        "strip_identity",
        strip_gap,
        1e-10,
        "f_eps is the strip field of a_eps",
    ));
    ctx.report.value("convergence_p2", &conv2);
    ctx.report.value("convergence_p1", &conv1);
    let table: Vec<Vec<f64>> = rows
        .iter()
        .zip(&conv2.steps)
        .map(|(r, c)| vec![r.0, r.1, r.2, r.3, r.4, c.lp_f, c.lp_dy, c.lp_dt])
        .collect();
    let p = ctx.path("ladder.csv");
    write_table(
        &p,
        &[
            "eps",
            "min_second_variation",
            "max_neg_term",
            "bound",
            "max_ratio",
            "l2_f",
            "l2_dy",
            "l2_dt",
        ],
        &table,
    )?;
    ctx.summary = format!("max |I| {max_i:.3e}, min II {min_ii:.6e}\n");
    Ok(())
}

fn cantor_suite(ctx: &mut Ctx) -> Result<()> {
    let spec = ctx.cfg.spec()?;
    let levels: Vec<u32> = match ctx.cfg.n {
        Some(n) => vec![n],
        None => (1..=8).collect(),
    };
    let m = ctx
        .cfg
        .bump
        .map(|b| b.amplitude * b.amplitude * (-4.0f64).exp())
        .unwrap_or(1.0);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut rows = Vec::new();
    let mut ladder = Vec::new();
    let (mut e_tau, mut e_l2, mut e_count, mut e_unif, mut e_gap, mut e_cy): (
        f64,
        f64,
        f64,
        f64,
        f64,
        f64,
    ) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for &n in &levels {
        let level = cantor::cantor_level(n)?;
        let sv = cantor::cantor_sv_quantities(n, m)?;
        let l2 = cantor::cantor_l2_distance(n, 1.0, &spec)?;
        e_tau = e_tau.max((sv.tau_integral - inv_sqrt2).abs());
        e_l2 = e_l2.max((l2.closed - l2.quadrature.value).abs() / l2.closed);
        e_count = e_count.max((level.count() as f64 - 2f64.powi(n as i32)).abs());
        let order = CantorOrder::Level(n);
        if n <= 8 {
            // uniform convergence on a 3^(n+2) grid
            let pts = 3u64.pow(n + 2);
            for i in 0..=pts {
                let t = i as f64 / pts as f64;
                let d =
                    (cantor::cantor_a(order, t) - cantor::cantor_a(CantorOrder::Limit, t)).abs();
                e_unif = e_unif.max(d - 0.5f64.powi(n as i32));
            }
            // staircases agree off C(n): gap midpoints
            let d = level.denominator() as f64;
            for k in 0..level.denominator() {
                if !level.contains_index(k) {
                    let t = (k as f64 + 0.5) / d;
                    let g = (cantor::cantor_a(order, t) - cantor::cantor_a(CantorOrder::Limit, t))
                        .abs();
                    e_gap = e_gap.max(g);
                }
            }
        }
        if n <= 16 {
            let cy = cantor::cy_sets(n, 1.0)?;
            let total: f64 = cy.intervals.iter().map(|(a, b)| b - a).sum();
            e_cy = e_cy.max((total - (0.5 + level.total_length())).abs());
        }
        rows.push(vec![
            n as f64,
            sv.tau_integral,
            sv.s_integral_factor,
            sv.bound,
            l2.closed,
            l2.quadrature.value,
        ]);
        ladder.push(json!({
            "n": n,
            "tau_integral": sv.tau_integral,
            "s_integral_factor": sv.s_integral_factor,
            "bound": sv.bound,
            "total_length": level.total_length(),
            "l2_closed": l2.closed,
            "l2_quadrature": l2.quadrature.value,
        }));
    }
    if levels.len() == 1 {
        let r = &rows[0];
        ctx.report.value("tau_integral", r[1]);
        ctx.report.value("bound", r[3]);
        ctx.report.value("l2_closed", r[4]);
    }
    ctx.report.value("ladder", ladder);
    ctx.report.push(Check::at_most(
        "tau_integral",
        e_tau,
        1e-12,
        "int_0^1 a_n'/(1 + a_n^2)^{3/2} = 1/sqrt(2)",
    ));
    ctx.report.push(Check::at_most(
        "l2_distance_closed_form",
        e_l2,
        1e-4,
        "2 sqrt(2) q^{n/2} arctan(q^{-n/2}/sqrt(2))",
    ));
    ctx.report
        .push(Check::at_most("interval_count", e_count, 0.0, "#J_n = 2^n"));
    ctx.report.push(Check::at_most(
        "uniform_convergence",
        e_unif,
        0.0,
        "sup |a_n - a| <= 2^-n",
    ));
    ctx.report.push(Check::at_most(
        "agree_off_level_set",
        e_gap,
        1e-12,
        "a_n = a off C(n)",
    ));
    ctx.report.push(Check::at_most(
        "cy_measure",
        e_cy,
        1e-12,
        "|C_y(n)| = y^2/2 + q^n",
    ));
    let p = ctx.path("cantor.csv");
    write_table(
        &p,
        &[
            "n",
            "tau_integral",
            "s_integral_factor",
            "bound",
            "l2_closed",
            "l2_quadrature",
        ],
        &rows,
    )?;
    ctx.summary = rows
        .iter()
        .map(|r| format!("n={} tau_integral={:.13}\n", r[0], r[1]))
        .collect();
    Ok(())
}

fn rayleigh(ctx: &mut Ctx) -> Result<()> {
    let a = ctx.cfg.a.unwrap_or(1.0);
    let b = ctx.cfg.b.unwrap_or(0.0);
    let r = ctx.cfg.halfwidth.unwrap_or(50.0);
    let n = ctx.cfg.gridsize.unwrap_or(4000);
    let prob = RayleighProblem::new(a, b, r, n);
    let lam = rayleigh_min(&prob)?;
    let half = rayleigh_min(&RayleighProblem::new(a, b, 0.5 * r, (n / 2).max(2)))?;
    let thr = prob.threshold();
    ctx.report.value("lambda_min", lam);
    ctx.report.value("lambda_min_half_width", half);
    ctx.report.value("threshold", thr);
    if thr.abs() <= 1e-12 {
        ctx.report.push(Check::at_least(
            "nonnegative",
            lam,
            -1e-10,
            "B^2 = 2A: both forms are nonnegative",
        ));
    } else {
        ctx.report.push(Check::below(
            "inequality_fails",
            lam,
            thr,
            "lambda_min >= 2A - B^2 on every interval forces B^2 = 2A",
        ));
    }
    ctx.report.push(Check::at_most(
        "decreasing_in_halfwidth",
        lam - half,
        1e-12 * (1.0 + half.abs()),
        "lambda_min(R) <= lambda_min(R/2)",
    ));
    ctx.summary = format!("lambda_min {lam:.10}\n");
    Ok(())
}

fn mesh(ctx: &mut Ctx) -> Result<()> {
    let f = ctx.cfg.field_or("cantor-limit")?;
    let [nu, nv] = ctx.cfg.grid.unwrap_or([100, 100]);
    let hash = ctx.report.config_hash.clone();
    let strip = match f.kind() {
        FieldKind::Strip(p) => Some(p.clone()),
        _ => None,
    };
    let m = match strip {
        Some(p) => {
            let s = ctx.cfg.s_range.unwrap_or([-2.0, 2.0]);
            let t = ctx.cfg.tau_range.unwrap_or([-0.5, 1.5]);
            strip_mesh(&p, (s[0], s[1]), (t[0], t[1]), nu, nv, &hash)?
        }
        None => {
            let r = ctx.cfg.region_or([-2.0, 2.0, -1.0, 2.0])?;
            graph_mesh(&f, &r, nu, nv, &hash)?
        }
    };
    ctx.report.value("field", f.label());
    ctx.report.value("vertices", m.vertices.len());
    ctx.report.value("triangles", m.triangles.len());
    ctx.report.push(Check::at_most(
        "degenerate_triangles",
        m.degenerate_triangles(0.0) as f64,
        0.0,
        "every emitted triangle has positive area",
    ));
    if let FieldKind::Cone = f.kind() {
        let worst = m
            .vertices
            .iter()
            .map(|&v| crate::group::dilate(2.0, v).map(cone_graph_distance))
            .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))?;
        ctx.report.push(Check::at_most(
            "dilation_invariance",
            worst,
            1e-9,
            "delta_2 maps the cone graph into itself",
        ));
    }
    let p = ctx.path("mesh.obj");
    m.write_obj(&p)?;
    ctx.summary = format!(
        "{} vertices, {} triangles\n",
        m.vertices.len(),
        m.triangles.len()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert!(matches!(
            parse_field("plane:0.3,0.1", None, None).unwrap().kind(),
            FieldKind::Plane { .. }
        ));
        assert!(matches!(
            parse_field("cone_eps", Some(0.1), None).unwrap().kind(),
            FieldKind::ConeEps(_)
        ));
        assert!(parse_field("cantor", None, None).is_err());
        assert!(parse_field("sphere", None, None).is_err());
        assert!("nope".parse::<Command>().is_err());
    }

    #[test]
    fn overlay_and_hash() {
        let base =
            RunConfig::from_toml("command = \"rayleigh\"\na = 0.5\nhalfwidth = 2.0").unwrap();
        let over = RunConfig {
            b: Some(1.0),
            out: Some("x".into()),
            ..Default::default()
        };
        let cfg = base.clone().overlay(&over);
        assert_eq!(cfg.command, "rayleigh");
        assert_eq!((cfg.a, cfg.b), (Some(0.5), Some(1.0)));
        let mut other = cfg.clone();
        other.out = Some("y".into());
        assert_eq!(cfg.hash(), other.hash());
        assert!(RunConfig::from_toml("bogus = 1").is_err());
    }
}
