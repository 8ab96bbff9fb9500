//! Area, first and second variation, and their finite-difference check.

use heis::bump::TestBump;
use heis::field::ScalarField;
use heis::numerics::{QuadratureSpec, Rect};
use heis::variation::{graph_area, variation_fd_check, variation_report};

fn main() -> heis::Result<()> {
    let spec = QuadratureSpec::default();
    let e = Rect::new(-1.0, 1.0, -1.0, 1.0)?;
    for f in [
        ScalarField::plane(0.3, 0.1),
        ScalarField::cone(),
        ScalarField::cone_eps(0.1)?,
    ] {
        let a = graph_area(&f, &e, &spec)?;
        println!(
            "{:<18} area {:.10} (err {:.1e})",
            f.label(),
            a.value,
            a.err_est
        );
    }

    let phi = TestBump::new((1.5, 0.5), (0.4, 0.4), 1.0)?;
    let cone = ScalarField::cone_eps(0.1)?;
    let r = variation_report(&cone, &phi, &spec)?;
    println!(
        "{}: I = {:.3e}, II = {:.6e}",
        r.field, r.i_value, r.ii_value
    );

    // a non-stationary field, where the variations are far from zero
    let t2 = ScalarField::t_squared();
    let c = variation_fd_check(&t2, &phi, 1e-3, &spec)?;
    println!(
        "t^2: I = {:.8} vs {:.8}, II = {:.8} vs {:.8}",
        c.i_value, c.i_fd, c.ii_value, c.ii_fd
    );
    Ok(())
}
