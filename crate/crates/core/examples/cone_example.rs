//! The dilation cone: stationarity, smoothed approximants and the stability bound.

use heis::bump::cone_family;
use heis::cone::{cone_convergence, cone_field, cone_stability_bound};
use heis::field::ScalarField;
use heis::numerics::{QuadratureSpec, Rect};
use heis::variation::{first_variation, second_variation};

fn main() -> heis::Result<()> {
    let spec = QuadratureSpec::default();
    let cone = cone_field();
    let bumps = cone_family();
    let mut worst: f64 = 0.0;
    for phi in &bumps {
        worst = worst.max(first_variation(&cone, phi, &spec)?.value.abs());
    }
    println!("cone: max |I| over {} bumps = {worst:.2e}", bumps.len());

    for eps in [1e-1, 1e-2, 1e-3] {
        let fe = ScalarField::cone_eps(eps)?;
        let mut min_ii = f64::INFINITY;
        let mut max_ratio: f64 = 0.0;
        for phi in &bumps {
            min_ii = min_ii.min(second_variation(&fe, phi, &spec)?.value);
            max_ratio = max_ratio.max(cone_stability_bound(eps, phi, &spec)?.ratio());
        }
        println!("eps {eps:<6} min II {min_ii:.6}  max neg/bound {max_ratio:.4}");
    }

    let region = Rect::new(-2.0, 2.0, -2.0, 2.0)?;
    let conv = cone_convergence(&[1e-1, 1e-2, 1e-3], 2.0, &region, &spec)?;
    for s in &conv.steps {
        println!(
            "eps {:<6} L2: f {:.3e}  d_y {:.3e}  d_t {:.3e}",
            s.eps, s.lp_f, s.lp_dy, s.lp_dt
        );
    }
    Ok(())
}
