//! Graph area and its first and second variations.
//!
//! Perturbing `f` to `f + e phi` changes the intrinsic gradient to
//! `G(e) = g + e (grad^f phi + phi d_t f) + e^2 phi d_t phi` with
//! `g = grad^f f` and `grad^f phi = d_y phi + f d_t phi`. The area
//! integrand is `sqrt(1 + G(e)^2)`; the two variations are its first and
//! second `e`-derivatives at zero, integrated over the support of `phi`.

use serde::{Deserialize, Serialize};

use crate::bump::TestBump;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::numerics::{integrate2d, Integral, QuadratureSpec, Rect};

/// `d_y f + f d_t f` at `(y, t)`.
pub fn intrinsic_gradient(f: &ScalarField, p: (f64, f64)) -> Result<f64> {
    f.intrinsic_gradient(p.0, p.1)
}

/// `int_E sqrt(1 + (grad^f f)^2)`
pub fn graph_area(f: &ScalarField, e: &Rect, spec: &QuadratureSpec) -> Result<Integral> {
    spec.validate()?;
    if !f.domain().contains_rect(e) {
        return Err(Error::InvalidArgument(format!(
            "region {e:?} not inside field domain"
        )));
    }
    let r = integrate2d(
        |y, t| {
            let g = f.intrinsic_gradient(y, t).unwrap_or(f64::NAN);
            (1.0 + g * g).sqrt()
        },
        e,
        f.seams(),
        spec,
    );
    r.checked()
}

/// Pointwise ingredients of the variations.
#[derive(Debug, Clone, Copy)]
struct Local {
    g: f64,
    /// `grad^f phi + phi d_t f`
    lin: f64,
    /// `phi d_t phi`
    quad: f64,
}

fn local(f: &ScalarField, phi: &TestBump, y: f64, t: f64) -> Local {
    let p = phi.eval(y, t);
    let pt = phi.dt(y, t);
    let py = phi.dy(y, t);
    let fv = f.eval(y, t);
    // nodes are never on seams; a failed partial means a non-finite field
    let ft = f.partial_t(y, t).unwrap_or(f64::NAN);
    let g = f.intrinsic_gradient(y, t).unwrap_or(f64::NAN);
    Local {
        g,
        lin: py + fv * pt + p * ft,
        quad: p * pt,
    }
}

fn ready(f: &ScalarField, phi: &TestBump, spec: &QuadratureSpec) -> Result<Rect> {
    spec.validate()?;
    if f.dt_is_singular() {
        return Err(Error::SingularField(format!(
            "{}: d_t f is not locally integrable against the variation integrands; use an approximant",
            f.label()
        )));
    }
    let sup = phi.support();
    if !f.domain().contains_rect(&sup) {
        return Err(Error::InvalidArgument(format!(
            "bump support {sup:?} not inside the field domain"
        )));
    }
    Ok(sup)
}

/// `d/de A_{f + e phi}(spt phi)` at `e = 0`:
/// `int g / sqrt(1 + g^2) (grad^f phi + d_t f phi)`.
pub fn first_variation(f: &ScalarField, phi: &TestBump, spec: &QuadratureSpec) -> Result<Integral> {
    let sup = ready(f, phi, spec)?;
    integrate2d(
        |y, t| {
            let l = local(f, phi, y, t);
            l.g / (1.0 + l.g * l.g).sqrt() * l.lin
        },
        &sup,
        f.seams(),
        spec,
    )
    .checked()
}

/// `d^2/de^2 A_{f + e phi}(spt phi)` at `e = 0`:
/// `int (grad^f phi + d_t f phi)^2 / (1 + g^2)^{3/2} + g / sqrt(1 + g^2) d_t(phi^2)`.
pub fn second_variation(
    f: &ScalarField,
    phi: &TestBump,
    spec: &QuadratureSpec,
) -> Result<Integral> {
    let sup = ready(f, phi, spec)?;
    integrate2d(
        |y, t| {
            let l = local(f, phi, y, t);
            let w = 1.0 + l.g * l.g;
            l.lin * l.lin / w.powf(1.5) + l.g / w.sqrt() * 2.0 * l.quad
        },
        &sup,
        f.seams(),
        spec,
    )
    .checked()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationReport {
    pub field: String,
    pub bump: String,
    pub i_value: f64,
    pub ii_value: f64,
    pub i_err_est: f64,
    pub ii_err_est: f64,
}

pub fn variation_report(
    f: &ScalarField,
    phi: &TestBump,
    spec: &QuadratureSpec,
) -> Result<VariationReport> {
    let i = first_variation(f, phi, spec)?;
    let ii = second_variation(f, phi, spec)?;
    Ok(VariationReport {
        field: f.label(),
        bump: phi.label(),
        i_value: i.value,
        ii_value: ii.value,
        i_err_est: i.err_est,
        ii_err_est: ii.err_est,
    })
}

/// Formula values against central difference quotients of the area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdCheck {
    pub h: f64,
    pub i_value: f64,
    pub i_fd: f64,
    pub ii_value: f64,
    pub ii_fd: f64,
    pub err_i: f64,
    pub err_ii: f64,
}

/// Compare the variation formulas with `[A(h) - A(-h)] / 2h` and
/// `[A(h) - 2A(0) + A(-h)] / h^2`, where `A(e)` is the area of `f + e phi`
/// over the support of `phi`.
///
/// The three areas are integrated on one shared set of nodes (the
/// quadrature is applied to the difference quotient of the integrands), so
/// the comparison measures the `O(h^2)` truncation and not the adaptive
/// refinement noise of three separate integrals.
pub fn variation_fd_check(
    f: &ScalarField,
    phi: &TestBump,
    h: f64,
    spec: &QuadratureSpec,
) -> Result<FdCheck> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("h={h} must be positive")));
    }
    let sup = ready(f, phi, spec)?;
    let i = first_variation(f, phi, spec)?;
    let ii = second_variation(f, phi, spec)?;
    let area_at = |l: &Local, e: f64| {
        let ge = l.g + e * l.lin + e * e * l.quad;
        (1.0 + ge * ge).sqrt()
    };
    let i_fd = integrate2d(
        |y, t| {
            let l = local(f, phi, y, t);
            let (sp, sm) = (area_at(&l, h), area_at(&l, -h));
            // (S+ - S-) / 2h with S+^2 - S-^2 = 4 h lin (g + h^2 quad)
            2.0 * l.lin * (l.g + h * h * l.quad) / (sp + sm)
        },
        &sup,
        f.seams(),
        spec,
    )
    .checked()?;
    let ii_fd = integrate2d(
        |y, t| {
            let l = local(f, phi, y, t);
            (area_at(&l, h) - 2.0 * area_at(&l, 0.0) + area_at(&l, -h)) / (h * h)
        },
        &sup,
        f.seams(),
        spec,
    )
    .checked()?;
    Ok(FdCheck {
        h,
        i_value: i.value,
        i_fd: i_fd.value,
        ii_value: ii.value,
        ii_fd: ii_fd.value,
        err_i: (i.value - i_fd.value).abs(),
        err_ii: (ii.value - ii_fd.value).abs(),
    })
}
