//! Strip fields of monotone profiles and the calibration field.

use heis::group::HPoint;
use heis::strips::{calibration_check, strip_field, StripProfile};

fn main() -> heis::Result<()> {
    let a = StripProfile::cantor_limit();
    let f = strip_field(&a);
    for &(y, t) in &[(1.0, 0.25), (2.0, 3.0), (-1.5, 0.9)] {
        let g = f.intrinsic_gradient(y, t)?;
        println!(
            "f({y}, {t}) = {:.10}, grad^f f * y = {:.10}",
            f.eval(y, t),
            g * y
        );
    }

    let points: Vec<HPoint> = (0..50)
        .map(|k| {
            let s = k as f64 * 0.37;
            HPoint::new(s.cos() * 1.3, s.sin() * 0.8 + 0.2, s - 9.0)
        })
        .collect();
    let samples: Vec<(f64, f64)> = (1..=50)
        .map(|k| (0.04 * k as f64, -0.5 + 0.04 * k as f64))
        .collect();
    let rep = calibration_check(&a, &points, &samples)?;
    println!(
        "max |div nu| {:.2e}, max normal mismatch {:.2e}",
        rep.max_divergence, rep.max_normal_mismatch
    );
    Ok(())
}
