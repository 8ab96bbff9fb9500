//! Triangle meshes of intrinsic graphs and their OBJ export.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::group::{graph_map, HPoint};
use crate::numerics::Rect;
use crate::strips::StripProfile;

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<HPoint>,
    pub triangles: Vec<[usize; 3]>,
    /// Hex digest of the configuration that produced the mesh.
    pub provenance: String,
}

/// SHA-256 of `text` as lowercase hex.
pub fn config_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn lin(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

fn grid_triangles(nu: usize, nv: usize) -> Vec<[usize; 3]> {
    let mut tris = Vec::with_capacity(2 * (nu - 1) * (nv - 1));
    for i in 0..nu - 1 {
        for j in 0..nv - 1 {
            let a = i * nv + j;
            let b = a + nv;
            tris.push([a, b, b + 1]);
            tris.push([a, b + 1, a + 1]);
        }
    }
    tris
}

fn check_sizes(nu: usize, nv: usize) -> Result<()> {
    if nu < 2 || nv < 2 {
        return Err(Error::DegenerateGrid(format!(
            "mesh grid {nu}x{nv}; need at least 2x2"
        )));
    }
    Ok(())
}

/// Ruled surface `(0, 0, tau) (s a(tau), s, 0) = (s a(tau), s, tau)` on an `(s, tau)` grid.
pub fn strip_mesh(
    a: &StripProfile,
    s: (f64, f64),
    tau: (f64, f64),
    ns: usize,
    nt: usize,
    provenance: &str,
) -> Result<Mesh> {
    check_sizes(ns, nt)?;
    let mut vertices = Vec::with_capacity(ns * nt);
    for i in 0..ns {
        let sv = lin(s.0, s.1, ns, i);
        for j in 0..nt {
            let t = lin(tau.0, tau.1, nt, j);
            vertices.push(HPoint::new(sv * a.a(t), sv, t));
        }
    }
    Ok(Mesh {
        vertices,
        triangles: grid_triangles(ns, nt),
        provenance: provenance.to_string(),
    })
}

/// `graph_map(f(y, t), y, t)` on a `(y, t)` grid over `region`.
pub fn graph_mesh(
    f: &ScalarField,
    region: &Rect,
    ny: usize,
    nt: usize,
    provenance: &str,
) -> Result<Mesh> {
    check_sizes(ny, nt)?;
    let mut vertices = Vec::with_capacity(ny * nt);
    for i in 0..ny {
        let y = lin(region.y0, region.y1, ny, i);
        for j in 0..nt {
            let t = lin(region.t0, region.t1, nt, j);
            let p = graph_map(f.eval(y, t), y, t);
            if !p.is_finite() {
                return Err(Error::NonFinite { y, t });
            }
            vertices.push(p);
        }
    }
    Ok(Mesh {
        vertices,
        triangles: grid_triangles(ny, nt),
        provenance: provenance.to_string(),
    })
}

impl Mesh {
    /// Triangles whose ambient area is below `tol`, or with an index out of range.
    pub fn degenerate_triangles(&self, tol: f64) -> usize {
        self.triangles
            .iter()
            .filter(|t| {
                if t.iter().any(|&i| i >= self.vertices.len()) {
                    return true;
                }
                let [a, b, c] = t.map(|i| self.vertices[i].as_array());
                let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
                let n = [
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt() <= tol
            })
            .count()
    }

    /// ASCII OBJ with 9 significant digits, vertices then faces.
    pub fn to_obj(&self) -> String {
        let mut out = String::with_capacity(48 * self.vertices.len() + 24 * self.triangles.len());
        let _ = writeln!(out, "# heis intrinsic graph mesh");
        let _ = writeln!(out, "# config {}", self.provenance);
        let _ = writeln!(
            out,
            "# vertices {} triangles {}",
            self.vertices.len(),
            self.triangles.len()
        );
        for v in &self.vertices {
            let _ = writeln!(out, "v {} {} {}", fmt9(v.x), fmt9(v.y), fmt9(v.z));
        }
        for t in &self.triangles {
            let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
        }
        out
    }

    pub fn write_obj(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_obj())?;
        Ok(())
    }
}

fn fmt9(x: f64) -> String {
    // avoid a distinct "-0" spelling
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.8e}")
}

fn ray_dist(p: (f64, f64), d: (f64, f64)) -> f64 {
    let n = d.0.hypot(d.1);
    let d = (d.0 / n, d.1 / n);
    let proj = p.0 * d.0 + p.1 * d.1;
    if proj <= 0.0 {
        p.0.hypot(p.1)
    } else {
        (p.0 - proj * d.0).hypot(p.1 - proj * d.1)
    }
}

/// Euclidean distance from `p` to the cone's graph, described as the union of
/// `{(0, y, t): t <= 0}`, `{(x, y, 0): x between 0 and y}` and `{(x, y, t): x = y, t >= 0}`.
pub fn cone_graph_distance(p: HPoint) -> f64 {
    let d1 = if p.z <= 0.0 {
        p.x.abs()
    } else {
        p.x.hypot(p.z)
    };
    let inside = (0.0 <= p.x && p.x <= p.y) || (p.y <= p.x && p.x <= 0.0);
    let planar = if inside {
        0.0
    } else {
        [(0.0, 1.0), (1.0, 1.0), (0.0, -1.0), (-1.0, -1.0)]
            .iter()
            .map(|&d| ray_dist((p.x, p.y), d))
            .fold(f64::INFINITY, f64::min)
    };
    let d2 = planar.hypot(p.z);
    let off = (p.x - p.y).abs() / std::f64::consts::SQRT_2;
    let d3 = if p.z >= 0.0 { off } else { off.hypot(p.z) };
    d1.min(d2).min(d3)
}
