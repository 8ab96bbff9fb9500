//! Characteristics, blow-up detection and the Gronwall separation bound.

use heis::field::ScalarField;
use heis::numerics::{flow_separation_check, ode_flow};

fn main() -> heis::Result<()> {
    let lin = ode_flow(&ScalarField::linear_t(), 0.0, 1.0, 1.0, 100)?;
    println!(
        "f = t:   gamma(1) = {:.12} (e = {:.12})",
        lin.last().1,
        std::f64::consts::E
    );

    let sq = ode_flow(&ScalarField::t_squared(), 0.0, 1.0, 1.5, 300)?;
    println!("f = t^2: gamma(0.5) = {:.10}", sq.at(0.5).unwrap());
    if sq.blowup_flag {
        println!("         blow-up detected near s = {:.6}", sq.last().0);
    }

    let f = ScalarField::cone_eps(0.1)?;
    let l = f.lipschitz_t(f.domain()).unwrap();
    let sep = flow_separation_check(&f, l, 0.2, 0.3, 0.0, 1.0)?;
    println!(
        "cone_eps(0.1): separation {:.6} <= bound {:.6}",
        sep.measured, sep.bound
    );
    Ok(())
}
