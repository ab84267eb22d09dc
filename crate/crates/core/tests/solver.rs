use fracflux::solver::evaluate_faces;
use fracflux::{
    make_scenario, run, step, total_mass, Boundary, BoundarySpec, Field, FluxLaw, Grid,
    GrunwaldTable, Profile, ProfileKind, SimConfig, SolverError,
};

fn stable_dt(law: FluxLaw, alpha: f64, dx: f64) -> f64 {
    match law {
        FluxLaw::Fourier => 0.25 * dx * dx,
        _ => 0.5 * dx.powf(1.0 + alpha),
    }
}

#[test]
fn reflective_mass_is_constant_over_many_steps() {
    let grid = Grid::new(40).unwrap();
    let alpha = 0.5;
    for law in FluxLaw::ALL {
        let dt = stable_dt(law, alpha, grid.dx());
        let mut cfg = SimConfig::new(
            alpha,
            dt,
            100_000.0 * dt,
            law,
            BoundarySpec::reflective(),
            Profile::new(ProfileKind::TriangularPulse),
        );
        cfg.t_end = 100_000.0 * dt;
        let r = run(&cfg, &grid, Field::sample(&grid, &cfg.initial)).unwrap();
        assert_eq!(r.steps_taken, 100_000);
        let m0 = r.trace.records[0].mass;
        assert!(r.trace.max_mass_drift() <= 1e-10 * m0, "{law}: drift {}", r.trace.max_mass_drift());
    }
}

#[test]
fn fixed_flux_mass_balance_per_step() {
    let grid = Grid::new(30).unwrap();
    let (q_left, q_right) = (0.7, -0.3);
    for law in FluxLaw::ALL {
        for alpha in [0.3, 0.5, 0.9] {
            let dt = stable_dt(law, alpha, grid.dx());
            let cfg = SimConfig::new(
                alpha,
                dt,
                500.0 * dt,
                law,
                BoundarySpec { left: Boundary::FixedFlux(q_left), right: Boundary::FixedFlux(q_right) },
                Profile::new(ProfileKind::Fig7Bump).shifted(1.0),
            );
            let r = run(&cfg, &grid, Field::sample(&grid, &cfg.initial)).unwrap();
            for w in r.trace.records.windows(2) {
                let dm = w[1].mass - w[0].mass;
                let want = dt * (q_left - q_right);
                assert!(
                    (dm - want).abs() <= 1e-13 * w[0].mass.abs().max(1.0),
                    "{law} alpha {alpha} step {}: {dm} vs {want}",
                    w[1].step
                );
            }
        }
    }
}

#[test]
fn runs_are_bit_identical() {
    for law in FluxLaw::ALL {
        let mut s = make_scenario("pulse-reflective").unwrap().with_flux(law);
        s.cfg.t_end = 0.5;
        s.cfg.snapshot_times = vec![0.0, 0.25, 0.5];
        if law == FluxLaw::Fourier {
            s.cfg.dt = 2e-5;
        }
        let a = run(&s.cfg, &s.grid, s.initial_field()).unwrap();
        let b = run(&s.cfg, &s.grid, s.initial_field()).unwrap();
        assert_eq!(a, b);
        let bits = |r: &fracflux::RunResult| -> Vec<u64> {
            r.snapshots.iter().flat_map(|f| f.u.iter().map(|v| v.to_bits())).collect()
        };
        assert_eq!(bits(&a), bits(&b));
    }
}

#[test]
fn constants_are_preserved_by_gradient_laws_only() {
    let grid = Grid::new(50).unwrap();
    for (law, c) in [
        (FluxLaw::Caputo, 3.0),
        (FluxLaw::Parsimonious, -2.0),
        (FluxLaw::RiemannLiouville, 0.0),
        (FluxLaw::Fourier, 7.5),
    ] {
        let mut cfg = SimConfig::new(0.5, 0.001, 2.0, law, BoundarySpec::reflective(), Profile::constant(c));
        cfg.dt = stable_dt(law, 0.5, grid.dx());
        let r = run(&cfg, &grid, Field::constant(&grid, c)).unwrap();
        assert!(r.final_field.u.iter().all(|&v| v == c), "{law}");
    }
    let cfg = SimConfig::new(
        0.5,
        stable_dt(FluxLaw::RiemannLiouville, 0.5, grid.dx()),
        0.1,
        FluxLaw::RiemannLiouville,
        BoundarySpec::reflective(),
        Profile::constant(1.0),
    );
    let r = run(&cfg, &grid, Field::constant(&grid, 1.0)).unwrap();
    assert!(r.final_field.u[0] > 1.0);
}

fn affine_deviation(law: FluxLaw, a: f64, b: f64, dt: f64) -> f64 {
    let grid = Grid::new(64).unwrap();
    // Unequal wall values; the pulse is 0 at x = 1, so the right wall starts inconsistent.
    let mut base = SimConfig::new(
        0.6,
        dt,
        400.0 * dt,
        law,
        BoundarySpec { left: Boundary::Dirichlet(0.0), right: Boundary::Dirichlet(1.0) },
        Profile::new(ProfileKind::TriangularPulse),
    )
    .with_snapshots(&[0.0, 100.0 * dt, 400.0 * dt]);
    base.force_inconsistent_bc = true;
    let mut mapped = base.clone();
    mapped.initial = base.initial.affine(a, b);
    mapped.boundary = BoundarySpec { left: Boundary::Dirichlet(b), right: Boundary::Dirichlet(a + b) };

    let r0 = run(&base, &grid, Field::sample(&grid, &base.initial)).unwrap();
    let r1 = run(&mapped, &grid, Field::sample(&grid, &mapped.initial)).unwrap();
    let mut worst = 0.0_f64;
    for (f0, f1) in r0.snapshots.iter().zip(&r1.snapshots) {
        for (u, v) in f0.u.iter().zip(&f1.u) {
            let want = a * u + b;
            worst = worst.max((v - want).abs() / want.abs().max(1.0));
        }
    }
    worst
}

#[test]
fn gradient_laws_are_affine_equivariant() {
    let dx: f64 = 1.0 / 64.0;
    for law in [FluxLaw::Caputo, FluxLaw::Parsimonious, FluxLaw::Fourier] {
        let dt = stable_dt(law, 0.6, dx);
        for (a, b) in [(2.0, 0.0), (1.0, 32.0), (1.8, 32.0), (-0.5, 3.0)] {
            let dev = affine_deviation(law, a, b, dt);
            assert!(dev <= 1e-12, "{law} a={a} b={b}: {dev}");
        }
    }
}

#[test]
fn rl_is_homogeneous_but_not_shift_equivariant() {
    let dt = stable_dt(FluxLaw::RiemannLiouville, 0.6, 1.0 / 64.0);
    assert!(affine_deviation(FluxLaw::RiemannLiouville, 2.0, 0.0, dt) <= 1e-12);
    assert!(affine_deviation(FluxLaw::RiemannLiouville, -3.0, 0.0, dt) <= 1e-12);
    assert!(affine_deviation(FluxLaw::RiemannLiouville, 1.0, 32.0, dt) > 1e-3);
}

#[test]
fn advection_vanishes_while_left_value_is_zero() {
    let mut s = make_scenario("fig7-zero").unwrap().with_flux(FluxLaw::RiemannLiouville);
    s.cfg.snapshot_times = (0..=40).map(|k| k as f64 * 0.005).collect();
    let r = run(&s.cfg, &s.grid, s.initial_field()).unwrap();
    assert_eq!(r.trace.decompositions.len(), 41);
    for (t, d) in &r.trace.decompositions {
        assert!(d.advective.iter().all(|&a| a == 0.0), "t = {t}");
    }
    assert!(r.final_decomposition.unwrap().advective.iter().all(|&a| a == 0.0));
}

#[test]
fn first_rl_step_on_warm_ice_matches_hand_computation() {
    // Only the advective term is active: q_i = -(W_{i+1}/dx) * 32 and
    // u_1 = 32 + dt/dx * (q_0 - q_1) = 32 - 32 dt/dx^2 (W_1 - W_2).
    let s = make_scenario("ice-minneapolis").unwrap().with_flux(FluxLaw::RiemannLiouville);
    let table = GrunwaldTable::build(s.cfg.alpha, s.grid.dx(), s.grid.n()).unwrap();
    let f = s.initial_field();
    let next = step(&f, &evaluate_faces(&f.u, &s.cfg, &table).unwrap(), &s.grid, &s.cfg).unwrap();
    let w = table.w();
    let dx = s.grid.dx();
    let want = 32.0 - 32.0 * s.cfg.dt / (dx * dx) * (w[1] - w[2]);
    assert!((next.u[1] - want).abs() < 1e-12);
    assert!(next.u[1] < 32.0);
    assert!((1..s.grid.n()).all(|i| next.u[i] <= 32.0));
}

#[test]
fn unstable_run_reports_step() {
    let s = make_scenario("pulse-reflective").unwrap().with_flux(FluxLaw::Fourier);
    let err = run(&s.cfg, &s.grid, s.initial_field()).unwrap_err();
    let SolverError::Unstable { step, t, .. } = err else { panic!("{err}") };
    assert!(step > 0);
    assert!((t - step as f64 * s.cfg.dt).abs() < 1e-15);
}

#[test]
fn total_mass_of_pulse() {
    let grid = Grid::new(100).unwrap();
    let f = Field::sample(&grid, &Profile::new(ProfileKind::TriangularPulse));
    assert!((total_mass(&f.u, &grid) - 1.0).abs() < 1e-12);
}
