//! Smallest eigenvalue of `-(h u')' = lambda u / h` on `(-R, R)` with zero
//! boundary values, `h(t) = A t^2 / 2 + B t + 1`.
//!
//! Discretized by piecewise-linear finite elements on `N` equal elements.
//! The stiffness matrix `K_ij = int h phi_i' phi_j'` and the mass matrix
//! `M_ij = int phi_i phi_j / h` are tridiagonal; the generalized eigenvalue
//! is the minimum of the Rayleigh quotient over the element space, so it
//! is an upper bound for the continuum infimum and decreases under nested
//! refinement (doubling `N`, or doubling `R` and `N` together).

use serde::{Deserialize, Serialize};

use super::quadrature::gauss_legendre;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayleighProblem {
    pub a: f64,
    pub b: f64,
    /// Half-width `R` of the interval.
    pub halfwidth: f64,
    /// Number of elements `N`.
    pub gridsize: usize,
}

impl RayleighProblem {
    pub fn new(a: f64, b: f64, halfwidth: f64, gridsize: usize) -> Self {
        Self {
            a,
            b,
            halfwidth,
            gridsize,
        }
    }

    pub fn weight(&self, t: f64) -> f64 {
        self.a * t * t / 2.0 + self.b * t + 1.0
    }

    /// `2A - B^2`, the threshold the spectrum is compared against.
    pub fn threshold(&self) -> f64 {
        2.0 * self.a - self.b * self.b
    }
}

/// Symmetric tridiagonal matrix: diagonal `d`, off-diagonal `e` (`e.len() = d.len() - 1`).
#[derive(Debug, Clone)]
struct Tridiag {
    d: Vec<f64>,
    e: Vec<f64>,
}

impl Tridiag {
    fn quad_form(&self, v: &[f64]) -> f64 {
        let mut s = 0.0;
        for (d, x) in self.d.iter().zip(v) {
            s += d * x * x;
        }
        for i in 0..self.e.len() {
            s += 2.0 * self.e[i] * v[i] * v[i + 1];
        }
        s
    }
}

/// Number of negative pivots of `K - sigma M`, i.e. the count of generalized
/// eigenvalues below `sigma` (Sylvester's law of inertia).
fn count_below(k: &Tridiag, m: &Tridiag, sigma: f64) -> usize {
    let n = k.d.len();
    let mut count = 0;
    let mut piv = 0.0;
    for i in 0..n {
        let di = k.d[i] - sigma * m.d[i];
        piv = if i == 0 {
            di
        } else {
            let ei = k.e[i - 1] - sigma * m.e[i - 1];
            let p = if piv == 0.0 {
                f64::EPSILON * (1.0 + ei.abs())
            } else {
                piv
            };
            di - ei * ei / p
        };
        if piv < 0.0 {
            count += 1;
        }
    }
    count
}

fn assemble(prob: &RayleighProblem) -> Result<(Tridiag, Tridiag, Vec<f64>)> {
    let n = prob.gridsize;
    let r = prob.halfwidth;
    let dx = 2.0 * r / n as f64;
    let nodes: Vec<f64> = (0..=n).map(|i| -r + dx * i as f64).collect();
    let (gx, gw) = gauss_legendre(8);
    let interior = n - 1;
    let mut k = Tridiag {
        d: vec![0.0; interior],
        e: vec![0.0; interior.saturating_sub(1)],
    };
    let mut m = k.clone();
    for el in 0..n {
        let (x0, x1) = (nodes[el], nodes[el + 1]);
        // Simpson is exact for the quadratic weight
        let hint =
            dx / 6.0 * (prob.weight(x0) + 4.0 * prob.weight(0.5 * (x0 + x1)) + prob.weight(x1));
        let kloc = hint / (dx * dx);
        let (mut m00, mut m01, mut m11) = (0.0, 0.0, 0.0);
        for (x, w) in gx.iter().zip(&gw) {
            let u = 0.5 * (x + 1.0);
            let t = x0 + dx * u;
            let h = prob.weight(t);
            if !(h > 0.0) {
                return Err(Error::NonPositiveWeight { t, value: h });
            }
            let ww = 0.5 * w * dx / h;
            m00 += ww * (1.0 - u) * (1.0 - u);
            m01 += ww * (1.0 - u) * u;
            m11 += ww * u * u;
        }
        // local node indices el, el+1 map to interior indices el-1, el
        let i0 = el.checked_sub(1);
        let i1 = if el < interior { Some(el) } else { None };
        if let Some(i) = i0 {
            k.d[i] += kloc;
            m.d[i] += m00;
        }
        if let Some(j) = i1 {
            k.d[j] += kloc;
            m.d[j] += m11;
        }
        if let (Some(i), Some(_)) = (i0, i1) {
            k.e[i] -= kloc;
            m.e[i] += m01;
        }
    }
    Ok((k, m, nodes))
}

/// Smallest generalized eigenvalue of the element pencil.
pub fn rayleigh_min(prob: &RayleighProblem) -> Result<f64> {
    if !(prob.halfwidth > 0.0) || prob.gridsize < 2 {
        return Err(Error::InvalidArgument(format!(
            "need R > 0 and N >= 2, got R={}, N={}",
            prob.halfwidth, prob.gridsize
        )));
    }
    if prob.b * prob.b > 2.0 * prob.a * (1.0 + 1e-15) {
        return Err(Error::InvalidArgument(format!(
            "B^2 = {} exceeds 2A = {}",
            prob.b * prob.b,
            2.0 * prob.a
        )));
    }
    for i in 0..=prob.gridsize {
        let t = -prob.halfwidth + 2.0 * prob.halfwidth * i as f64 / prob.gridsize as f64;
        let h = prob.weight(t);
        if !(h > 0.0) {
            return Err(Error::NonPositiveWeight { t, value: h });
        }
    }
    let (k, m, nodes) = assemble(prob)?;
    // upper bound: Rayleigh quotient of the first Dirichlet mode
    let r = prob.halfwidth;
    let trial: Vec<f64> = nodes[1..nodes.len() - 1]
        .iter()
        .map(|&t| (std::f64::consts::FRAC_PI_2 * t / r).cos())
        .collect();
    let mut hi = k.quad_form(&trial) / m.quad_form(&trial);
    while count_below(&k, &m, hi) == 0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(&k, &m, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi.abs().max(1e-300) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_weight_is_dirichlet_laplacian() {
        let r = 3.0;
        let lam = rayleigh_min(&RayleighProblem::new(0.0, 0.0, r, 2000)).unwrap();
        let exact = (std::f64::consts::PI / (2.0 * r)).powi(2);
        assert!((lam - exact).abs() / exact < 1e-5, "{lam} vs {exact}");
        assert!(lam >= exact);
    }

    #[test]
    fn nonpositive_weight_rejected() {
        // h = (t/2 + 1)^2 vanishes at t = -2
        let r = rayleigh_min(&RayleighProblem::new(0.5, 1.0, 2.0, 40));
        assert!(matches!(r, Err(Error::NonPositiveWeight { .. })));
    }
}
