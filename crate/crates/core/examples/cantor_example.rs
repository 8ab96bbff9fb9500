//! The Cantor staircase strip: levels, staircases, C_y sets and closed-form integrals.

use heis::cantor::{
    cantor_a, cantor_l2_distance, cantor_level, cantor_sv_quantities, cy_sets, CantorOrder,
};
use heis::numerics::QuadratureSpec;

fn main() -> heis::Result<()> {
    let spec = QuadratureSpec::default();
    for n in 1..=8 {
        let level = cantor_level(n)?;
        let sv = cantor_sv_quantities(n, 1.0)?;
        let l2 = cantor_l2_distance(n, 1.0, &spec)?;
        println!(
            "n={n}  #J={:<4} length {:.6}  tau integral {:.15}  L2 {:.8} / {:.8}  bound {:.6}",
            level.count(),
            level.total_length(),
            sv.tau_integral,
            l2.closed,
            l2.quadrature.value,
            sv.bound
        );
    }
    let cy = cy_sets(2, 1.0)?;
    println!("|C_y(2)| at y=1: {:.6}", cy.measure_level);
    println!(
        "a(0.25) = {:.12}, a_3(0.25) = {:.12}",
        cantor_a(CantorOrder::Limit, 0.25),
        cantor_a(CantorOrder::Level(3), 0.25)
    );
    Ok(())
}
