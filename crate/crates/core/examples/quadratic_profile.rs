//! Lagrangian parametrization, quadratic fit, profile constraints and the plane verdict.

use heis::field::ScalarField;
use heis::lagrangian::{
    bernstein_verdict, build_parametrization, check_axioms, fit_quadratic,
    profile_constraints_check, PLANE_TOL,
};

fn main() -> heis::Result<()> {
    let taus: Vec<f64> = (0..200).map(|j| -0.5 + 2.0 * j as f64 / 199.0).collect();
    for f in [ScalarField::plane(0.3, 0.1), ScalarField::cone_eps(0.1)?] {
        let map = build_parametrization(&f, (-2.0, 2.0), &taus, 400)?;
        let ax = check_axioms(&map)?;
        let prof = fit_quadratic(&map, 0.0)?;
        let cons = profile_constraints_check(&prof);
        println!(
            "{:<18} residual {:.1e}  ode {:.1e}  coverage {:.3}  constraint violations {}  verdict {:?}",
            f.label(),
            prof.max_residual,
            ax.max_ode_residual,
            ax.coverage_ratio,
            cons.violations + cons.derivative_flags.len(),
            bernstein_verdict(&prof, PLANE_TOL)?
        );
    }
    Ok(())
}
