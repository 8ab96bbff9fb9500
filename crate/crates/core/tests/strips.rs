mod common;

use approx::assert_abs_diff_eq;
use common::simpson2d;
use heis::bump::TestBump;
use heis::group::{graph_map, hgroup_mul, HPoint};
use heis::numerics::QuadratureSpec;
use heis::strips::{
    calibration_check, calibration_nu, nu_divergence, strip_field, strip_second_variation,
    strip_second_variation_pullback, StripProfile,
};
use heis::variation::second_variation;
use heis::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn profiles() -> Vec<StripProfile> {
    vec![
        StripProfile::constant(0.4),
        StripProfile::cone_eps(0.1).unwrap(),
        StripProfile::cantor_n(3).unwrap(),
        StripProfile::cantor_n(8).unwrap(),
        StripProfile::cantor_limit(),
        StripProfile::table(vec![(-1.0, -0.5), (0.0, 0.0), (0.5, 2.0), (2.0, 2.5)]).unwrap(),
    ]
}

#[test]
fn strip_field_examples() {
    let f = strip_field(&StripProfile::constant(0.7));
    for &(y, t) in &[(2.0, 5.0), (-1.0, 0.3), (0.0, -4.0)] {
        assert_abs_diff_eq!(f.eval(y, t), 0.7 * y, epsilon = 1e-15);
    }
    let f = strip_field(&StripProfile::cantor_limit());
    assert_abs_diff_eq!(f.eval(1.0, 7.0 / 12.0), 0.5, epsilon = 1e-10);
}

#[test]
fn defining_identity_on_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for a in profiles() {
        let f = strip_field(&a);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let (s, tau): (f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..2.0));
            worst = worst.max((f.eval(s, a.forward(s, tau)) - a.a(tau) * s).abs());
        }
        assert!(worst <= 1e-10, "{}: {worst:e}", a.label());
    }
}

#[test]
fn inversion_round_trip_and_gradient() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for a in profiles() {
        let f = strip_field(&a);
        for _ in 0..300 {
            let (s, tau): (f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..2.0));
            if s.abs() < 1e-3 {
                continue;
            }
            let t = a.forward(s, tau);
            let inv = a.invert(s, t);
            // the staircase's flat pieces make tau recoverable only through a(tau)
            assert!((a.a(inv.tau) - a.a(tau)).abs() <= 1e-10, "{}", a.label());
            assert!((a.forward(s, inv.tau) - t).abs() <= 1e-12 * (1.0 + t.abs()));
            if !a.is_singular() {
                let g = f.intrinsic_gradient(s, t).unwrap();
                assert!(
                    (g - a.a(tau)).abs() <= 1e-8,
                    "{} ({s}, {tau}): {g}",
                    a.label()
                );
            }
        }
    }
}

#[test]
fn lipschitz_bound_off_the_axis() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for a in profiles() {
        let f = strip_field(&a);
        for _ in 0..500 {
            let y: f64 = rng.gen_range(0.05..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let (t1, t2): (f64, f64) = (rng.gen_range(-1.0..5.0), rng.gen_range(-1.0..5.0));
            if (t1 - t2).abs() < 1e-6 {
                continue;
            }
            let q = (f.eval(y, t1) - f.eval(y, t2)).abs() / (t1 - t2).abs();
            let max_a = a.a_bounds().1.abs().max(a.a_bounds().0.abs()).max(1.0);
            assert!(
                q <= 2.0 * max_a / y.abs() + 1e-9,
                "{} y={y}: {q}",
                a.label()
            );
        }
    }
}

#[test]
fn ruled_surface_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for a in profiles() {
        let f = strip_field(&a);
        for _ in 0..200 {
            let (s, tau): (f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..2.0));
            let t = a.forward(s, tau);
            let g = graph_map(f.eval(s, t), s, t);
            let r = hgroup_mul(
                HPoint::new(0.0, 0.0, tau),
                HPoint::new(s * a.a(tau), s, 0.0),
            );
            assert!(g.dist_euclid(&r) <= 1e-9, "{} {g:?} {r:?}", a.label());
        }
    }
}

#[test]
fn strip_second_variation_constant_profile() {
    let c = 0.5;
    let spec = QuadratureSpec::default();
    let phi = TestBump::new((0.3, 0.4), (0.7, 0.5), 1.0).unwrap();
    let sv = strip_second_variation(&StripProfile::constant(c), &phi, &spec).unwrap();
    let sup = phi.support();
    let oracle = simpson2d(
        |s, tau| phi.dy(s, tau).powi(2) / (1.0 + c * c).powf(1.5),
        (sup.y0, sup.y1),
        (sup.t0, sup.t1),
        800,
    );
    assert_eq!(sv.negative, 0.0);
    assert!(
        sv.value > 0.0 && (sv.value - oracle).abs() <= 1e-8 * oracle,
        "{sv:?} {oracle}"
    );
}

#[test]
fn strip_second_variation_matches_graph_pipeline() {
    let spec = QuadratureSpec::default();
    let eps = 0.1;
    let fe = heis::field::ScalarField::cone_eps(eps).unwrap();
    let a = StripProfile::cone_eps(eps).unwrap();
    for phi in [
        TestBump::new((1.0, 0.3), (0.5, 0.4), 1.0).unwrap(),
        TestBump::new((0.0, 0.0), (0.3, 0.3), 1.0).unwrap(),
        TestBump::new((-1.5, 1.0), (0.4, 0.6), 2.0).unwrap(),
    ] {
        let graph = second_variation(&fe, &phi, &spec).unwrap().value;
        let strip = strip_second_variation_pullback(&a, &phi, &spec).unwrap();
        assert!(
            (graph - strip.value).abs() <= 1e-4,
            "{}: {graph} vs {}",
            phi.label(),
            strip.value
        );
    }
}

#[test]
fn cantor_four_negative_part_bound() {
    let spec = QuadratureSpec::default();
    let a = StripProfile::cantor_n(4).unwrap();
    // amplitude e^2 gives sup phi~^2 = 1
    let phi = TestBump::new((0.0, 0.5), (1.5, 0.7), 2f64.exp()).unwrap();
    assert_abs_diff_eq!(phi.sup_sq(), 1.0, epsilon = 1e-14);
    let sv = strip_second_variation(&a, &phi, &spec).unwrap();
    let bound = std::f64::consts::PI * (2.0f64 / 3.0).powi(2);
    assert_abs_diff_eq!(bound, 1.3962634, epsilon = 1e-7);
    assert!(sv.negative > 0.0 && sv.negative <= bound, "{sv:?}");
    assert!(sv.value >= -2.0 * bound);
}

#[test]
fn singular_profile_is_refused() {
    let phi = TestBump::new((0.0, 0.5), (0.5, 0.5), 1.0).unwrap();
    let r = strip_second_variation(
        &StripProfile::cantor_limit(),
        &phi,
        &QuadratureSpec::default(),
    );
    assert!(matches!(r, Err(Error::SingularField(_))));
}

#[test]
fn calibration_nu_examples() {
    let nu = calibration_nu(HPoint::new(1.0, 0.0, 7.0)).unwrap();
    assert_eq!((nu.cx, nu.cy, nu.cz), (0.0, 1.0, 0.0));
    let nu = calibration_nu(HPoint::new(0.0, 1.0, -3.0)).unwrap();
    assert_eq!((nu.cx, nu.cy, nu.cz), (-1.0, 0.0, 0.0));
    assert!(calibration_nu(HPoint::new(0.0, 0.0, 1.0)).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let p = HPoint::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        );
        let nu = calibration_nu(p).unwrap();
        assert!((nu.cx * nu.cx + nu.cy * nu.cy - 1.0).abs() <= 1e-15 && nu.is_horizontal());
    }
}

#[test]
fn calibration_check_examples() {
    assert!(
        nu_divergence(HPoint::new(1.0, 2.0, 3.0), 1e-5)
            .unwrap()
            .abs()
            <= 1e-6
    );
    let a = StripProfile::cantor_limit();
    let tau = 1.0 / 3.0;
    let nu = calibration_nu(HPoint::new(a.a(tau), 1.0, tau)).unwrap();
    let r = 1.25f64.sqrt();
    assert_abs_diff_eq!(nu.cx, -1.0 / r, epsilon = 1e-10);
    assert_abs_diff_eq!(nu.cy, 0.5 / r, epsilon = 1e-10);
    assert_abs_diff_eq!(nu.cx, -0.8944, epsilon = 1e-4);
    assert_abs_diff_eq!(nu.cy, 0.4472, epsilon = 1e-4);

    // a = 0: the strip is the plane x = 0, where nu = -X
    let zero = StripProfile::constant(0.0);
    let samples: Vec<(f64, f64)> = (1..=10)
        .map(|k| (0.2 * k as f64, 0.1 * k as f64 - 0.5))
        .collect();
    let rep = calibration_check(&zero, &[HPoint::new(0.0, 1.0, 0.0)], &samples).unwrap();
    assert!(rep.max_normal_mismatch <= 1e-15);
    for &(s, tau) in &samples {
        let nu = calibration_nu(HPoint::new(0.0, s, tau)).unwrap();
        assert_eq!((nu.cx, nu.cy), (-1.0, 0.0));
    }
}

#[test]
fn calibration_orientation_for_negative_s() {
    let a = StripProfile::cantor_n(2).unwrap();
    let samples: Vec<(f64, f64)> = (1..=20)
        .map(|k| (-0.1 * k as f64, 0.05 * k as f64))
        .collect();
    let rep = calibration_check(&a, &[], &samples).unwrap();
    assert_eq!(rep.normal_samples_positive, 0);
    assert_eq!(rep.orientation_flips, rep.normal_samples_negative);
    assert!(rep.max_normal_mismatch_up_to_sign <= 1e-12);
}
