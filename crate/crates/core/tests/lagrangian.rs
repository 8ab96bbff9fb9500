mod common;

use approx::assert_abs_diff_eq;
use common::{linspace, staircase};
use heis::bump::TestBump;
use heis::field::ScalarField;
use heis::lagrangian::{
    area_formula_check, bernstein_verdict, build_parametrization, build_parametrization_with,
    change_of_variables_check, check_axioms, fit_quadratic, profile_constraints_check,
    s_grid_with_origin, FlowMethod, LagrangianMap, QuadraticProfile, Verdict, PLANE_TOL,
};
use heis::numerics::{OdeOptions, QuadratureSpec, SeamSet};
use heis::strips::{strip_field, StripProfile};
use heis::variation::intrinsic_gradient;
use heis::Error;

fn a_eps(eps: f64, tau: f64) -> f64 {
    (tau / eps).clamp(0.0, 1.0)
}

fn ode_map(f: &ScalarField, s: (f64, f64), steps: usize, taus: &[f64]) -> LagrangianMap {
    let grid = s_grid_with_origin(s.0, s.1, steps).unwrap();
    build_parametrization_with(f, &grid, taus, FlowMethod::Ode, &OdeOptions::default()).unwrap()
}

fn spaced(lo: f64, hi: f64, h: f64) -> Vec<f64> {
    let n = ((hi - lo) / h).round() as usize;
    (0..=n).map(|i| lo + h * i as f64).collect()
}

fn fine_map(f: &ScalarField, s: (f64, f64), tau: (f64, f64), h: f64) -> LagrangianMap {
    build_parametrization_with(
        f,
        &spaced(s.0, s.1, h),
        &spaced(tau.0, tau.1, h),
        FlowMethod::Auto,
        &OdeOptions::default(),
    )
    .unwrap()
}

#[test]
fn build_examples() {
    let taus = linspace(-1.0, 1.0, 21);
    let m = ode_map(&ScalarField::zero(), (-1.0, 2.0), 30, &taus);
    for (row, &t) in m.chi.iter().zip(&m.tau_grid) {
        assert!(row.iter().all(|&c| c == t));
    }
    let (a, b) = (0.3, 0.1);
    let m = ode_map(&ScalarField::plane(a, b), (-2.0, 2.0), 40, &taus);
    for (row, &t) in m.chi.iter().zip(&m.tau_grid) {
        for (&s, &c) in m.s_grid.iter().zip(row) {
            assert_abs_diff_eq!(c, 0.5 * a * s * s + b * s + t, epsilon = 1e-12);
        }
    }
    let eps = 0.1;
    let (fe, _) = heis::cone::cone_eps(eps).unwrap();
    let taus = linspace(-0.5, 1.5, 41);
    // RK4 loses order on the characteristic through the kink tau = eps
    for (method, tol) in [(FlowMethod::Auto, 1e-12), (FlowMethod::Ode, 1e-7)] {
        let grid = s_grid_with_origin(-2.0, 2.0, 200).unwrap();
        let m =
            build_parametrization_with(&fe, &grid, &taus, method, &OdeOptions::default()).unwrap();
        for (row, &t) in m.chi.iter().zip(&m.tau_grid) {
            for (&s, &c) in m.s_grid.iter().zip(row) {
                let err = (c - (0.5 * a_eps(eps, t) * s * s + t)).abs();
                assert!(err <= tol, "{method:?} s={s} tau={t}: {err:e}");
            }
        }
        // the kinks of a_eps are on the tau grid
        assert!(m.tau_grid.contains(&0.0) && m.tau_grid.contains(&eps));
    }
}

#[test]
fn blow_up_inside_range_is_an_error() {
    let r = build_parametrization(&ScalarField::t_squared(), (0.0, 2.0), &[1.0], 100);
    assert!(matches!(r, Err(Error::BlowUp { .. })));
}

#[test]
fn axiom_examples() {
    let taus = linspace(-1.0, 1.0, 21);
    let m = ode_map(&ScalarField::zero(), (-1.0, 1.0), 20, &taus);
    let rep = check_axioms(&m).unwrap();
    assert_eq!(rep.monotonicity_violations, 0);
    assert_eq!(rep.max_ode_residual, 0.0);
    assert_eq!(rep.coverage_ratio, 1.0);
    assert!(rep.normalized && rep.passes(0.0));

    let (fe, _) = heis::cone::cone_eps(0.1).unwrap();
    let m = ode_map(&fe, (-2.0, 2.0), 400, &linspace(-0.5, 1.5, 101));
    let rep = check_axioms(&m).unwrap();
    assert!(rep.passes(1e-7), "{rep:?}");

    // chi = tau - s tau cannot be a set of characteristics of the zero field
    let s = linspace(-1.0, 1.0, 21);
    let tau = linspace(0.0, 1.0, 11);
    let chi: Vec<Vec<f64>> = tau
        .iter()
        .map(|&t| s.iter().map(|&x| t - x * t).collect())
        .collect();
    let bad = LagrangianMap::from_values(s, tau, chi, Some(ScalarField::zero())).unwrap();
    let rep = check_axioms(&bad).unwrap();
    assert!(rep.max_ode_residual >= 0.5 && !rep.passes(1e-7), "{rep:?}");
}

#[test]
fn crossing_characteristics_are_flagged() {
    let s = linspace(0.0, 2.0, 11);
    let tau = linspace(0.0, 1.0, 11);
    // tau - 2 s tau decreases in tau for s > 1/2
    let chi: Vec<Vec<f64>> = tau
        .iter()
        .map(|&t| s.iter().map(|&x| t - 2.0 * x * t).collect())
        .collect();
    let bad = LagrangianMap::from_values(s, tau, chi, Some(ScalarField::zero())).unwrap();
    let rep = check_axioms(&bad).unwrap();
    assert!(rep.monotonicity_violations > 0 && rep.max_decrease > 0.0);
}

#[test]
fn area_formula_examples() {
    let spec = QuadratureSpec::default();
    let eta = TestBump::new((0.2, 0.1), (0.6, 0.5), 1.0).unwrap();
    let e = |y, t| eta.eval(y, t);
    let m = fine_map(&ScalarField::zero(), (-0.5, 0.9), (-0.5, 0.7), 2e-3);
    let af = area_formula_check(&m, e, &eta.support(), &SeamSet::empty(), &spec).unwrap();
    assert!(af.gap() <= 1e-8, "{af:?}");
    let plane = ScalarField::plane(0.3, 0.1);
    let m = fine_map(&plane, (-0.5, 0.9), (-1.0, 1.0), 2e-3);
    let af = area_formula_check(&m, e, &eta.support(), &SeamSet::empty(), &spec).unwrap();
    assert!(af.gap() <= 1e-6, "{af:?}");
    let fe = ScalarField::cone_eps(0.1).unwrap();
    let eta = TestBump::new((1.0, 0.5), (0.4, 0.6), 1.0).unwrap();
    let m = fine_map(&fe, (0.55, 1.45), (-0.2, 1.2), 1e-3);
    let af =
        area_formula_check(&m, |y, t| eta.eval(y, t), &eta.support(), fe.seams(), &spec).unwrap();
    assert!(af.gap() <= 1e-5, "{af:?}");
}

#[test]
fn change_of_variables_examples() {
    // with f = 0 the map is the identity; only the difference error remains,
    // made small by a wide bump and a fine local grid
    let phi = TestBump::new((0.0, 0.0), (2.0, 2.0), 1.0).unwrap();
    let h = 5e-6;
    let s: Vec<f64> = (-10..=10).map(|i| h * i as f64).collect();
    let tau: Vec<f64> = (0..=20).map(|i| 0.3 + h * i as f64).collect();
    let m = build_parametrization_with(
        &ScalarField::zero(),
        &s,
        &tau,
        FlowMethod::Auto,
        &OdeOptions::default(),
    )
    .unwrap();
    let r = change_of_variables_check(&m, &phi).unwrap();
    assert!(r.max() <= 1e-10, "{r:?}");
    assert_abs_diff_eq!(r.min_jacobian, 1.0, epsilon = 1e-10);

    let phi = TestBump::new((0.3, 0.2), (1.2, 1.2), 1.0).unwrap();
    let m = fine_map(
        &ScalarField::plane(0.3, 0.1),
        (-0.95, 1.55),
        (-1.5, 1.6),
        1e-3,
    );
    let r = change_of_variables_check(&m, &phi).unwrap();
    assert!(r.max() <= 1e-5, "{r:?}");

    // off the seams t = 0 and t = y^2/2 + eps
    let fe = ScalarField::cone_eps(0.1).unwrap();
    let phi = TestBump::new((0.0, 2.2), (0.9, 0.9), 1.0).unwrap();
    let m = fine_map(&fe, (-0.95, 0.95), (0.8, 3.2), 1e-3);
    let r = change_of_variables_check(&m, &phi).unwrap();
    assert!(r.max() <= 1e-4, "{r:?}");
}

#[test]
fn jacobian_floor_is_enforced() {
    // chi independent of tau has zero Jacobian
    let s = linspace(-1.0, 1.0, 11);
    let tau = linspace(-1.0, 1.0, 11);
    let chi: Vec<Vec<f64>> = tau.iter().map(|_| s.clone()).collect();
    let m = LagrangianMap::from_values(s, tau, chi, Some(ScalarField::plane(1.0, 0.0))).unwrap();
    let phi = TestBump::new((0.0, 0.0), (0.9, 0.9), 1.0).unwrap();
    assert!(matches!(
        change_of_variables_check(&m, &phi),
        Err(Error::JacobianFloor { .. })
    ));
}

#[test]
fn fit_examples() {
    let taus = linspace(-0.5, 1.5, 200);
    let (a, b) = (0.3, 0.1);
    let p = fit_quadratic(
        &build_parametrization(&ScalarField::plane(a, b), (-2.0, 2.0), &taus, 400).unwrap(),
        0.0,
    )
    .unwrap();
    assert!(p.max_residual <= 1e-12);
    for j in 0..p.len() {
        assert_abs_diff_eq!(p.a[j], a, epsilon = 1e-12);
        assert_abs_diff_eq!(p.b[j], b, epsilon = 1e-12);
        assert_abs_diff_eq!(p.c[j], p.tau[j], epsilon = 1e-12);
    }
    let eps = 0.1;
    let fe = ScalarField::cone_eps(eps).unwrap();
    let p = fit_quadratic(
        &build_parametrization(&fe, (-2.0, 2.0), &taus, 400).unwrap(),
        0.0,
    )
    .unwrap();
    assert!(p.max_residual <= 1e-7);
    for j in 0..p.len() {
        assert_abs_diff_eq!(p.a[j], a_eps(eps, p.tau[j]), epsilon = 1e-10);
        assert_abs_diff_eq!(p.b[j], 0.0, epsilon = 1e-10);
    }
    let f2 = strip_field(&StripProfile::cantor_n(2).unwrap());
    let p = fit_quadratic(
        &build_parametrization(&f2, (-2.0, 2.0), &linspace(-0.2, 1.2, 150), 200).unwrap(),
        0.0,
    )
    .unwrap();
    for j in 0..p.len() {
        assert_abs_diff_eq!(p.a[j], staircase(2, p.tau[j]), epsilon = 1e-10);
        assert_abs_diff_eq!(p.b[j], 0.0, epsilon = 1e-10);
    }
    // a shifted base point reparametrizes b and c, not a
    let m = build_parametrization(&ScalarField::plane(a, b), (-2.0, 2.0), &taus, 400).unwrap();
    let p = fit_quadratic(&m, 1.0).unwrap();
    for j in 0..p.len() {
        assert_abs_diff_eq!(p.a[j], a, epsilon = 1e-11);
        assert_abs_diff_eq!(p.b[j], a + b, epsilon = 1e-11);
        assert_abs_diff_eq!(p.c[j], 0.5 * a + b + p.tau[j], epsilon = 1e-11);
    }
    let few = build_parametrization(&ScalarField::zero(), (0.0, 1.0), &[0.0], 2).unwrap();
    assert!(matches!(
        fit_quadratic(&few, 0.0),
        Err(Error::DegenerateGrid(_))
    ));
}

#[test]
fn profile_matches_field_at_origin() {
    let taus = linspace(-0.5, 1.5, 60);
    for f in [
        ScalarField::cone_eps(0.1).unwrap(),
        strip_field(&StripProfile::cantor_n(3).unwrap()),
        ScalarField::plane(-0.4, 0.25),
    ] {
        let m = ode_map(&f, (-1.5, 1.5), 300, &taus);
        let i0 = m.s_grid.iter().position(|&s| s == 0.0).unwrap();
        assert!(m.chi.iter().zip(&m.tau_grid).all(|(r, &t)| r[i0] == t));
        let p = fit_quadratic(&m, 0.0).unwrap();
        for j in 0..p.len() {
            let t = p.tau[j];
            let tol = 1e-6;
            assert!(
                (p.a[j] - intrinsic_gradient(&f, (0.0, t)).unwrap()).abs() <= tol,
                "{} tau={t}",
                f.label()
            );
            assert!((p.b[j] - f.eval(0.0, t)).abs() <= tol);
            // the gradient is constant along each characteristic
            let worst = m
                .s_grid
                .iter()
                .zip(&m.chi[j])
                .filter(|(&s, &c)| !f.seams().on_seam(s, c))
                .filter_map(|(&s, &c)| intrinsic_gradient(&f, (s, c)).ok())
                .map(|g| (g - p.a[j]).abs())
                .fold(0.0, f64::max);
            assert!(worst <= 1e-6, "{} tau={t}: {worst}", f.label());
        }
    }
}

#[test]
fn constraint_examples() {
    let taus = linspace(0.0, 1.0, 20);
    let n = taus.len();
    let constant =
        QuadraticProfile::from_coefficients(taus.clone(), vec![0.3; n], vec![0.1; n], taus.clone())
            .unwrap();
    let r = profile_constraints_check(&constant);
    assert!(r.passes());
    assert_eq!(r.equality_pairs, r.pairs);

    let eps = 0.1;
    let inside = linspace(0.005, 0.095, 19);
    let fe = ScalarField::cone_eps(eps).unwrap();
    let p = fit_quadratic(
        &build_parametrization(&fe, (-2.0, 2.0), &inside, 200).unwrap(),
        0.0,
    )
    .unwrap();
    let r = profile_constraints_check(&p);
    assert!(r.passes());
    assert_eq!(r.strict_pairs, r.pairs);
    assert!(r.b_prime.iter().all(|&d| d.abs() < 1e-8));
    assert!(r.a_prime.iter().all(|&d| (d - 1.0 / eps).abs() < 1e-6));

    let adversarial =
        QuadraticProfile::from_coefficients(taus.clone(), vec![0.0; n], taus.clone(), taus.clone())
            .unwrap();
    let r = profile_constraints_check(&adversarial);
    assert_eq!(r.violations, r.pairs);
    assert!(!r.passes());
    assert_eq!(r.derivative_flags.len(), n);
}

#[test]
fn verdict_examples() {
    let taus = linspace(-1.0, 2.0, 121);
    let plane = fit_quadratic(
        &build_parametrization(&ScalarField::plane(0.3, 0.1), (-2.0, 2.0), &taus, 200).unwrap(),
        0.0,
    )
    .unwrap();
    assert_eq!(
        bernstein_verdict(&plane, PLANE_TOL).unwrap(),
        Verdict::Plane
    );
    let cone = fit_quadratic(
        &build_parametrization(&ScalarField::cone(), (-2.0, 2.0), &taus, 200).unwrap(),
        0.0,
    )
    .unwrap();
    assert_eq!(
        bernstein_verdict(&cone, PLANE_TOL).unwrap(),
        Verdict::NotPlane
    );
    let f = strip_field(&StripProfile::cantor_n(5).unwrap());
    let cantor = fit_quadratic(
        &build_parametrization(&f, (-2.0, 2.0), &taus, 200).unwrap(),
        0.0,
    )
    .unwrap();
    assert_eq!(
        bernstein_verdict(&cantor, PLANE_TOL).unwrap(),
        Verdict::NotPlane
    );
    let empty = QuadraticProfile::from_coefficients(vec![], vec![], vec![], vec![]).unwrap();
    assert!(matches!(
        bernstein_verdict(&empty, PLANE_TOL),
        Err(Error::EmptyProfile)
    ));
}

#[test]
fn profile_csv_round_trip() {
    let taus = linspace(-0.5, 1.5, 11);
    let fe = ScalarField::cone_eps(0.1).unwrap();
    let p = fit_quadratic(
        &build_parametrization(&fe, (-2.0, 2.0), &taus, 100).unwrap(),
        0.0,
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    p.write_csv(&path).unwrap();
    let mut rd = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        rd.headers().unwrap(),
        vec!["tau", "a", "b", "c", "residual"]
    );
    let rows: Vec<Vec<f64>> = rd
        .records()
        .map(|r| r.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), p.len());
    for (j, r) in rows.iter().enumerate() {
        assert!((r[0] - p.tau[j]).abs() <= 1e-12 * (1.0 + p.tau[j].abs()));
        assert!((r[1] - p.a[j]).abs() <= 1e-12);
    }
}
