//! Smallest Rayleigh quotient of the weighted one-dimensional problem.

use heis::numerics::{rayleigh_min, RayleighProblem};

fn main() -> heis::Result<()> {
    for (r, n) in [(25.0, 2000), (50.0, 4000), (100.0, 8000)] {
        let p = RayleighProblem::new(1.0, 0.0, r, n);
        println!(
            "A=1 B=0 R={r:<5} N={n:<5} lambda {:.6} (2A - B^2 = {})",
            rayleigh_min(&p)?,
            p.threshold()
        );
    }
    let p = RayleighProblem::new(0.5, 1.0, 1.9, 1000);
    println!("A=1/2 B=1 R=1.9: lambda {:.6}", rayleigh_min(&p)?);
    Ok(())
}
