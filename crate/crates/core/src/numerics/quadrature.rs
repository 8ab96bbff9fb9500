//! Seam-aware adaptive Gauss–Legendre quadrature on rectangles.
//!
//! The integrands met in this crate are piecewise smooth: smooth away from
//! finitely many curves of the forms `t = const`, `y = const` and
//! `t = c y^2 + d`. The region is first cut at every abscissa where two of
//! these curves cross (or a curve leaves the rectangle), so that on each
//! resulting `y`-slab the curves are ordered in `t`. Each slab then splits
//! into curvilinear cells `{ya <= y <= yb, lo(y) <= t <= hi(y)}` whose
//! boundaries are seams. A cell is mapped onto the unit square and
//! integrated with a tensor Gauss–Legendre rule, bisected in both
//! directions until the coarse and refined values agree.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned rectangle `[y0, y1] x [t0, t1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub y0: f64,
    pub y1: f64,
    pub t0: f64,
    pub t1: f64,
}

impl Rect {
    pub fn new(y0: f64, y1: f64, t0: f64, t1: f64) -> Result<Self> {
        if !(y0 < y1 && t0 < t1) || ![y0, y1, t0, t1].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "empty or non-finite rectangle [{y0}, {y1}] x [{t0}, {t1}]"
            )));
        }
        Ok(Self { y0, y1, t0, t1 })
    }

    /// The whole plane is represented by a large box; fields are total functions.
    pub fn plane() -> Self {
        Self {
            y0: -1e6,
            y1: 1e6,
            t0: -1e6,
            t1: 1e6,
        }
    }

    pub fn area(&self) -> f64 {
        (self.y1 - self.y0) * (self.t1 - self.t0)
    }

    pub fn contains(&self, y: f64, t: f64) -> bool {
        self.y0 <= y && y <= self.y1 && self.t0 <= t && t <= self.t1
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.y0 <= other.y0 && other.y1 <= self.y1 && self.t0 <= other.t0 && other.t1 <= self.t1
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let r = Rect {
            y0: self.y0.max(other.y0),
            y1: self.y1.min(other.y1),
            t0: self.t0.max(other.t0),
            t1: self.t1.min(other.t1),
        };
        (r.y0 < r.y1 && r.t0 < r.t1).then_some(r)
    }
}

/// A curve along which an integrand may fail to be smooth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Seam {
    /// `t = value`
    ConstT(f64),
    /// `y = value`
    ConstY(f64),
    /// `t = c y^2 + d`
    Parabola { c: f64, d: f64 },
}

impl Seam {
    /// Signed distance-like gap along `t` for the graph-type seams, `None` for `y = const`.
    fn as_graph(&self) -> Option<(f64, f64)> {
        match *self {
            Seam::ConstT(v) => Some((0.0, v)),
            Seam::Parabola { c, d } => Some((c, d)),
            Seam::ConstY(_) => None,
        }
    }

    /// Whether `(y, t)` lies on the seam to within `tol` (scaled by magnitude).
    pub fn contains(&self, y: f64, t: f64, tol: f64) -> bool {
        match *self {
            Seam::ConstT(v) => (t - v).abs() <= tol * (1.0 + v.abs()),
            Seam::ConstY(v) => (y - v).abs() <= tol * (1.0 + v.abs()),
            Seam::Parabola { c, d } => {
                let v = c * y * y + d;
                (t - v).abs() <= tol * (1.0 + v.abs())
            }
        }
    }

    /// Does the open segment between `a` and `b` (points in the `(y, t)` plane,
    /// differing in one coordinate only) cross the seam?
    pub fn crosses_segment(&self, a: (f64, f64), b: (f64, f64)) -> bool {
        let strictly_between = |v: f64, lo: f64, hi: f64| {
            let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
            lo < v && v < hi
        };
        if a.0 == b.0 {
            // vertical segment in t at fixed y
            let y = a.0;
            match *self {
                Seam::ConstT(v) => strictly_between(v, a.1, b.1),
                Seam::ConstY(_) => false,
                Seam::Parabola { c, d } => strictly_between(c * y * y + d, a.1, b.1),
            }
        } else {
            let t = a.1;
            match *self {
                Seam::ConstT(_) => false,
                Seam::ConstY(v) => strictly_between(v, a.0, b.0),
                Seam::Parabola { c, d } => {
                    let fa = c * a.0 * a.0 + d - t;
                    let fb = c * b.0 * b.0 + d - t;
                    if fa * fb < 0.0 {
                        return true;
                    }
                    // both roots +-sqrt((t-d)/c) may lie inside with the same sign at the ends
                    if c != 0.0 {
                        let r2 = (t - d) / c;
                        if r2 > 0.0 {
                            let r = r2.sqrt();
                            return strictly_between(r, a.0, b.0) || strictly_between(-r, a.0, b.0);
                        }
                    }
                    false
                }
            }
        }
    }
}

/// Finite collection of seams.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SeamSet {
    pub curves: Vec<Seam>,
}

impl SeamSet {
    pub fn new(curves: Vec<Seam>) -> Self {
        Self { curves }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn union(&self, other: &SeamSet) -> SeamSet {
        let mut curves = self.curves.clone();
        for c in &other.curves {
            if !curves.contains(c) {
                curves.push(*c);
            }
        }
        SeamSet { curves }
    }

    pub fn on_seam(&self, y: f64, t: f64) -> bool {
        self.curves.iter().any(|s| s.contains(y, t, 1e-12))
    }

    pub fn crosses_segment(&self, a: (f64, f64), b: (f64, f64)) -> bool {
        self.curves.iter().any(|s| s.crosses_segment(a, b))
    }
}

/// Parameters of the adaptive rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Gauss–Legendre points per direction per cell.
    pub points_per_cell: usize,
    pub max_depth: u32,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            points_per_cell: 8,
            max_depth: 10,
            abs_tol: 1e-8,
            rel_tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.points_per_cell < 2 || !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "invalid quadrature spec {self:?}"
            )));
        }
        Ok(())
    }
}

/// Outcome of a quadrature: the value, an error estimate and whether every
/// cell met its tolerance before `max_depth`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Integral {
    pub value: f64,
    pub err_est: f64,
    pub converged: bool,
    pub evaluations: u64,
}

impl Integral {
    pub fn zero() -> Self {
        Self {
            value: 0.0,
            err_est: 0.0,
            converged: true,
            evaluations: 0,
        }
    }

    /// Turn a flagged result into an error.
    pub fn checked(self) -> Result<Integral> {
        if self.converged && self.value.is_finite() {
            Ok(self)
        } else {
            Err(Error::QuadratureNotConverged {
                value: self.value,
                err_est: self.err_est,
            })
        }
    }

    fn combine(parts: &[Integral]) -> Integral {
        let mut out = Integral::zero();
        for p in parts {
            out.value += p.value;
            out.err_est += p.err_est;
            out.converged &= p.converged;
            out.evaluations += p.evaluations;
        }
        out
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Rule mapped to `[0, 1]`.
#[derive(Debug, Clone)]
struct UnitRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl UnitRule {
    fn new(n: usize) -> Self {
        let (x, w) = gauss_legendre(n);
        Self {
            nodes: x.iter().map(|v| 0.5 * (v + 1.0)).collect(),
            weights: w.iter().map(|v| 0.5 * v).collect(),
        }
    }
}

/// Adaptive 1D Gauss–Legendre on `[a, b]` with interior breakpoints.
pub fn integrate1d<G>(g: G, a: f64, b: f64, breaks: &[f64], spec: &QuadratureSpec) -> Integral
where
    G: Fn(f64) -> f64,
{
    if !(a < b) {
        return Integral::zero();
    }
    let rule = UnitRule::new(spec.points_per_cell);
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&x| a < x && x < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(|p, q| p.total_cmp(q));
    pts.dedup();
    let total = b - a;
    let mut parts = Vec::with_capacity(pts.len());
    for w in pts.windows(2) {
        let mut evals = 0u64;
        let coarse = rule1d(&g, &rule, w[0], w[1], &mut evals);
        let mut out = refine1d(&g, &rule, w[0], w[1], coarse, total, spec, 0, &mut evals);
        out.evaluations = evals;
        parts.push(out);
    }
    Integral::combine(&parts)
}

fn rule1d<G: Fn(f64) -> f64>(g: &G, rule: &UnitRule, a: f64, b: f64, evals: &mut u64) -> f64 {
    let h = b - a;
    let mut s = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        s += w * g(a + h * x);
    }
    *evals += rule.nodes.len() as u64;
    s * h
}

#[allow(clippy::too_many_arguments)]
fn refine1d<G: Fn(f64) -> f64>(
    g: &G,
    rule: &UnitRule,
    a: f64,
    b: f64,
    coarse: f64,
    total: f64,
    spec: &QuadratureSpec,
    depth: u32,
    evals: &mut u64,
) -> Integral {
    let m = 0.5 * (a + b);
    let left = rule1d(g, rule, a, m, evals);
    let right = rule1d(g, rule, m, b, evals);
    let fine = left + right;
    let diff = (fine - coarse).abs();
    let tol = (spec.abs_tol * (b - a) / total).max(spec.rel_tol * fine.abs());
    if diff <= tol || !fine.is_finite() {
        return Integral {
            value: fine,
            err_est: diff,
            converged: fine.is_finite(),
            evaluations: 0,
        };
    }
    if depth >= spec.max_depth.max(1) * 3 {
        return Integral {
            value: fine,
            err_est: diff,
            converged: false,
            evaluations: 0,
        };
    }
    let l = refine1d(g, rule, a, m, left, total, spec, depth + 1, evals);
    let r = refine1d(g, rule, m, b, right, total, spec, depth + 1, evals);
    Integral {
        value: l.value + r.value,
        err_est: l.err_est + r.err_est,
        converged: l.converged && r.converged,
        evaluations: 0,
    }
}

/// Boundary of a curvilinear cell: `t = c y^2 + d`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Bound {
    c: f64,
    d: f64,
}

impl Bound {
    fn at(&self, y: f64) -> f64 {
        self.c * y * y + self.d
    }

    /// Integral of the curve over `[ya, yb]`.
    fn integral(&self, ya: f64, yb: f64) -> f64 {
        self.c * (yb * yb * yb - ya * ya * ya) / 3.0 + self.d * (yb - ya)
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    ya: f64,
    yb: f64,
    lo: Bound,
    hi: Bound,
}

impl Cell {
    fn area(&self) -> f64 {
        self.hi.integral(self.ya, self.yb) - self.lo.integral(self.ya, self.yb)
    }
}

/// Decompose `region` into seam-aligned curvilinear cells.
fn seam_cells(region: &Rect, seams: &SeamSet) -> Vec<Cell> {
    let mut graphs: Vec<Bound> = vec![
        Bound {
            c: 0.0,
            d: region.t0,
        },
        Bound {
            c: 0.0,
            d: region.t1,
        },
    ];
    let mut ybreaks = vec![region.y0, region.y1];
    for s in &seams.curves {
        match s.as_graph() {
            Some((c, d)) => {
                let b = Bound { c, d };
                if !graphs.contains(&b) {
                    graphs.push(b);
                }
            }
            None => {
                if let Seam::ConstY(v) = s {
                    ybreaks.push(*v);
                }
            }
        }
    }
    // pairwise crossings (c1 - c2) y^2 = d2 - d1
    for i in 0..graphs.len() {
        for j in (i + 1)..graphs.len() {
            let dc = graphs[i].c - graphs[j].c;
            let dd = graphs[j].d - graphs[i].d;
            if dc != 0.0 {
                let r2 = dd / dc;
                if r2 >= 0.0 {
                    let r = r2.sqrt();
                    ybreaks.push(r);
                    ybreaks.push(-r);
                }
            }
        }
        if graphs[i].c != 0.0 {
            ybreaks.push(0.0);
        }
    }
    let mut ys: Vec<f64> = ybreaks
        .into_iter()
        .filter(|&y| region.y0 <= y && y <= region.y1)
        .collect();
    ys.sort_by(|a, b| a.total_cmp(b));
    let scale = (region.y1 - region.y0).abs().max(1.0);
    ys.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * scale);

    let mut cells = Vec::new();
    for w in ys.windows(2) {
        let (ya, yb) = (w[0], w[1]);
        if !(yb > ya) {
            continue;
        }
        let ym = 0.5 * (ya + yb);
        let mut inside: Vec<Bound> = graphs
            .iter()
            .copied()
            .filter(|b| {
                let v = b.at(ym);
                region.t0 < v && v < region.t1
            })
            .collect();
        inside.sort_by(|a, b| a.at(ym).total_cmp(&b.at(ym)));
        let mut bounds = vec![Bound {
            c: 0.0,
            d: region.t0,
        }];
        bounds.extend(inside);
        bounds.push(Bound {
            c: 0.0,
            d: region.t1,
        });
        for pair in bounds.windows(2) {
            let cell = Cell {
                ya,
                yb,
                lo: pair[0],
                hi: pair[1],
            };
            if pair[1].at(ym) - pair[0].at(ym) > 0.0 {
                cells.push(cell);
            }
        }
    }
    cells
}

/// Integrate `g` over `region`, splitting cells along the declared `seams`.
///
/// Cells are processed in parallel and reduced in their construction order,
/// so the result does not depend on thread scheduling.
pub fn integrate2d<G>(g: G, region: &Rect, seams: &SeamSet, spec: &QuadratureSpec) -> Integral
where
    G: Fn(f64, f64) -> f64 + Sync,
{
    let rule = UnitRule::new(spec.points_per_cell.max(2));
    let cells = seam_cells(region, seams);
    let total_area = region.area();
    let parts: Vec<Integral> = cells
        .par_iter()
        .map(|cell| integrate_cell(&g, &rule, cell, total_area, spec))
        .collect();
    Integral::combine(&parts)
}

fn integrate_cell<G>(
    g: &G,
    rule: &UnitRule,
    cell: &Cell,
    total_area: f64,
    spec: &QuadratureSpec,
) -> Integral
where
    G: Fn(f64, f64) -> f64,
{
    let frac = (cell.area() / total_area).abs();
    let mut evals = 0u64;
    let coarse = tensor_rule(g, rule, cell, [0.0, 1.0, 0.0, 1.0], &mut evals);
    let mut out = refine2d(
        g,
        rule,
        cell,
        [0.0, 1.0, 0.0, 1.0],
        coarse,
        frac,
        spec,
        0,
        &mut evals,
    );
    out.evaluations = evals;
    out
}

/// Tensor rule on the unit sub-square `[u0, u1] x [v0, v1]` of a mapped cell.
fn tensor_rule<G>(g: &G, rule: &UnitRule, cell: &Cell, sq: [f64; 4], evals: &mut u64) -> f64
where
    G: Fn(f64, f64) -> f64,
{
    let [u0, u1, v0, v1] = sq;
    let du = u1 - u0;
    let dv = v1 - v0;
    let wy = cell.yb - cell.ya;
    let mut sum = 0.0;
    for (xu, wu) in rule.nodes.iter().zip(&rule.weights) {
        let y = cell.ya + wy * (u0 + du * xu);
        let lo = cell.lo.at(y);
        let hi = cell.hi.at(y);
        let ht = hi - lo;
        let mut inner = 0.0;
        for (xv, wv) in rule.nodes.iter().zip(&rule.weights) {
            let t = lo + ht * (v0 + dv * xv);
            inner += wv * g(y, t);
        }
        sum += wu * inner * ht;
    }
    *evals += (rule.nodes.len() * rule.nodes.len()) as u64;
    sum * wy * du * dv
}

#[allow(clippy::too_many_arguments)]
fn refine2d<G>(
    g: &G,
    rule: &UnitRule,
    cell: &Cell,
    sq: [f64; 4],
    coarse: f64,
    frac: f64,
    spec: &QuadratureSpec,
    depth: u32,
    evals: &mut u64,
) -> Integral
where
    G: Fn(f64, f64) -> f64,
{
    let [u0, u1, v0, v1] = sq;
    let um = 0.5 * (u0 + u1);
    let vm = 0.5 * (v0 + v1);
    let kids = [
        [u0, um, v0, vm],
        [um, u1, v0, vm],
        [u0, um, vm, v1],
        [um, u1, vm, v1],
    ];
    let vals: Vec<f64> = kids
        .iter()
        .map(|k| tensor_rule(g, rule, cell, *k, evals))
        .collect();
    let fine: f64 = vals.iter().sum();
    let diff = (fine - coarse).abs();
    let tol = (spec.abs_tol * frac).max(spec.rel_tol * fine.abs());
    if diff <= tol || !fine.is_finite() {
        return Integral {
            value: fine,
            err_est: diff,
            converged: fine.is_finite(),
            evaluations: 0,
        };
    }
    if depth + 1 >= spec.max_depth {
        return Integral {
            value: fine,
            err_est: diff,
            converged: false,
            evaluations: 0,
        };
    }
    let mut out = Integral::zero();
    for (k, v) in kids.iter().zip(vals) {
        let r = refine2d(g, rule, cell, *k, v, frac / 4.0, spec, depth + 1, evals);
        out.value += r.value;
        out.err_est += r.err_est;
        out.converged &= r.converged;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Rect {
        Rect::new(0.0, 1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn gauss_nodes_integrate_polynomials() {
        let (x, w) = gauss_legendre(8);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree 15 exact: int_{-1}^{1} x^14 = 2/15
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((s - 2.0 / 15.0).abs() < 1e-14);
        let (x3, _) = gauss_legendre(3);
        assert!((x3[2] - (0.6f64).sqrt()).abs() < 1e-15);
        assert!(x3[1].abs() < 1e-15);
    }

    #[test]
    fn constant_and_separable() {
        let spec = QuadratureSpec::default();
        let r = integrate2d(|_, _| 1.0, &unit(), &SeamSet::empty(), &spec);
        assert!((r.value - 1.0).abs() < 1e-12 && r.converged);
        let r = integrate2d(|y, t| y * t, &unit(), &SeamSet::empty(), &spec);
        assert!((r.value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn absolute_value_with_seam() {
        let spec = QuadratureSpec::default();
        let region = Rect::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let seams = SeamSet::new(vec![Seam::ConstT(0.0)]);
        let r = integrate2d(|_, t: f64| t.abs(), &region, &seams, &spec);
        assert!((r.value - 2.0).abs() < 1e-12, "{r:?}");
        assert!(r.converged);
    }

    #[test]
    fn parabolic_seam_indicator() {
        // area between t = y^2/2 and t = 1 on [-1,1]x[0,1]: 2 - 1/3
        let spec = QuadratureSpec::default();
        let region = Rect::new(-1.0, 1.0, 0.0, 1.0).unwrap();
        let seams = SeamSet::new(vec![Seam::Parabola { c: 0.5, d: 0.0 }]);
        let r = integrate2d(
            |y, t| if t > 0.5 * y * y { 1.0 } else { 0.0 },
            &region,
            &seams,
            &spec,
        );
        assert!((r.value - (2.0 - 1.0 / 3.0)).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn crossing_seams_are_split() {
        // t = y^2 and t = 1 - y^2 cross at y = +-1/sqrt2
        let spec = QuadratureSpec::default();
        let region = Rect::new(-1.0, 1.0, 0.0, 1.0).unwrap();
        let seams = SeamSet::new(vec![
            Seam::Parabola { c: 1.0, d: 0.0 },
            Seam::Parabola { c: -1.0, d: 1.0 },
        ]);
        let g = |y: f64, t: f64| {
            if t > y * y && t < 1.0 - y * y {
                1.0
            } else {
                0.0
            }
        };
        let r = integrate2d(g, &region, &seams, &spec);
        let exact = 2.0 * (1.0 / 2f64.sqrt() - 2.0 / 3.0 * (1.0 / 2f64.sqrt()).powi(3));
        assert!((r.value - exact).abs() < 1e-12, "{} vs {}", r.value, exact);
    }

    #[test]
    fn unresolved_singularity_is_flagged() {
        let spec = QuadratureSpec {
            max_depth: 3,
            abs_tol: 1e-14,
            ..Default::default()
        };
        let r = integrate2d(
            |y: f64, _| 1.0 / y.abs().sqrt(),
            &unit(),
            &SeamSet::empty(),
            &spec,
        );
        assert!(!r.converged);
        assert!(r.checked().is_err());
    }

    #[test]
    fn one_dimensional_with_breaks() {
        let spec = QuadratureSpec::default();
        let r = integrate1d(|x: f64| (x - 0.3).abs(), 0.0, 1.0, &[0.3], &spec);
        assert!((r.value - (0.09 / 2.0 + 0.49 / 2.0)).abs() < 1e-14);
    }

    #[test]
    fn seam_segment_crossing() {
        let p = Seam::Parabola { c: 0.5, d: 0.0 };
        assert!(p.crosses_segment((2.0, 1.5), (2.0, 2.5)));
        assert!(!p.crosses_segment((2.0, 2.5), (2.0, 3.5)));
        // horizontal segment at t = 0.5 crosses at y = +-1
        assert!(p.crosses_segment((0.5, 0.5), (1.5, 0.5)));
        assert!(p.crosses_segment((-1.5, 0.5), (-0.5, 0.5)));
        assert!(p.crosses_segment((-1.5, 0.5), (1.5, 0.5)));
        assert!(!p.crosses_segment((-0.5, 0.5), (0.5, 0.5)));
        assert!(Seam::ConstY(0.0).crosses_segment((-0.1, 3.0), (0.1, 3.0)));
        assert!(!Seam::ConstY(0.0).crosses_segment((0.0, 2.0), (0.0, 3.0)));
    }
}
