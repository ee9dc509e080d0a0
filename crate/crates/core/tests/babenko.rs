use rand::{rngs::StdRng, Rng, SeedableRng};
use stokeslab_core::babenko::{
    continue_branch, continue_from_entry, crest_to_trough, deviation, diagnose, fixed_point_map,
    jacobian_apply, newton_solve, physical_surface, residual, seed_entry, Constraint, SolverConfig,
    StepControl, StopReason, WaveState,
};
use stokeslab_core::singularity::least_squares;
use stokeslab_core::spectral::{sample_power, DepthMode, Grid, PeriodicProfile};
use stokeslab_core::Error;

fn random_state(rng: &mut StdRng, n: usize) -> WaveState {
    let g = Grid::new(n).unwrap();
    let c: Vec<(f64, f64)> = (1..=10)
        .map(|k| {
            let d = 0.3 / (k * k) as f64;
            (rng.gen_range(-d..d), rng.gen_range(-d..d))
        })
        .collect();
    let p = PeriodicProfile::from_fn(g, |u| {
        c.iter().enumerate().map(|(m, (a, b))| a * ((m + 1) as f64 * u).cos() + b * ((m + 1) as f64 * u).sin()).sum()
    })
    .unwrap();
    WaveState::new(p, rng.gen_range(0.8..1.2), DepthMode::Infinite).unwrap()
}

#[test]
fn residual_examples() {
    let g = Grid::new(128).unwrap();
    for c in [0.1, 1.0, 3.0] {
        assert_eq!(residual(&WaveState::flat(g, c, DepthMode::Infinite).unwrap()).unwrap().max_abs(), 0.0);
    }
    let eps = 0.05;
    let s = WaveState::new(PeriodicProfile::from_fn(g, |u| eps * u.cos()).unwrap(), 1.0, DepthMode::Infinite).unwrap();
    let r = residual(&s).unwrap();
    let exact = PeriodicProfile::from_fn(g, |u| -eps * eps * (1.0 + 2.0 * (2.0 * u).cos()) / 2.0).unwrap();
    assert!(r.sub(&exact).unwrap().max_abs() < 1e-15);
}

#[test]
fn deviation_and_fixed_point() {
    let g = Grid::new(64).unwrap();
    let d = deviation(&WaveState::flat(g, 1.0, DepthMode::Infinite).unwrap());
    assert!(d.values().iter().all(|&v| v == 0.5));
    let c = 0.9;
    let dev = PeriodicProfile::constant(g, 0.5 * c * c);
    assert!(fixed_point_map(&dev, c).unwrap().sub(&dev).unwrap().max_abs() < 1e-15);
}

#[test]
fn residual_equals_fixed_point_defect() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..10 {
        let st = random_state(&mut rng, 256);
        let dev = deviation(&st);
        let lhs = dev.sub(&fixed_point_map(&dev, st.speed).unwrap()).unwrap();
        let rhs = residual(&st).unwrap();
        assert!(lhs.sub(&rhs).unwrap().max_abs() <= 1e-12 * rhs.max_abs().max(1.0));
    }
}

#[test]
fn fixed_point_map_cancels_the_cube_root_term() {
    let n = 16384;
    let g = Grid::new(n).unwrap();
    let a = 1.0;
    let c = 1.0;
    let dev = sample_power(2.0 / 3.0, g, false).unwrap().scale(a);
    let out = fixed_point_map(&dev, c).unwrap().shift(-0.5 * c * c);
    let idx = g.positive_window_indices(10.0 * g.spacing(), 0.1);
    let u: Vec<f64> = idx.iter().map(|&j| g.point(j)).collect();
    let y: Vec<f64> = idx.iter().map(|&j| out.values()[j]).collect();
    let basis = vec![
        u.iter().map(|u| u.powf(1.0 / 3.0)).collect(),
        vec![1.0; u.len()],
        u.iter().map(|u| u.powf(2.0 / 3.0)).collect(),
        u.iter().map(|u| u * u).collect(),
    ];
    let coef = least_squares(&basis, &y).unwrap().coefficients[0];
    assert!(coef.abs() <= 0.01 * 2.0 * a * a / 3f64.sqrt(), "{coef}");
}

#[test]
fn jacobian_against_finite_differences() {
    let mut rng = StdRng::seed_from_u64(99);
    let h = 1e-6;
    for _ in 0..10 {
        let st = random_state(&mut rng, 128);
        let dir = random_state(&mut rng, 128).profile.scale(3.0);
        let jd = jacobian_apply(&st, &dir).unwrap();
        let shifted = |s: f64| {
            let p = st.profile.add(&dir.scale(s)).unwrap();
            residual(&WaveState::new(p, st.speed, st.mode).unwrap()).unwrap()
        };
        let fd = shifted(h).sub(&shifted(-h)).unwrap().scale(0.5 / h);
        assert!(fd.sub(&jd).unwrap().max_abs() <= 1e-6 * jd.max_abs());
    }
}

#[test]
fn newton_examples() {
    let g = Grid::new(256).unwrap();
    let cfg = SolverConfig::with_n(256);
    let init = WaveState::new(PeriodicProfile::from_fn(g, |u| 0.001 * u.cos()).unwrap(), 1.0, DepthMode::Infinite).unwrap();
    let sol = newton_solve(&init, Constraint::FixedHeight(0.002), &cfg).unwrap();
    assert!(residual(&sol).unwrap().max_abs() <= 1e-12);
    assert!(sol.speed > 1.0 && sol.speed < 1.0 + 1e-5);
    assert!((crest_to_trough(&sol.profile) - 0.002).abs() < 1e-15);
    assert!(sol.profile.odd_part_max() < 1e-18);

    // c = 0.6 is not of the form 1/sqrt(n), so the flat state is a regular root
    let flat = WaveState::flat(g, 0.6, DepthMode::Infinite).unwrap();
    assert_eq!(newton_solve(&flat, Constraint::FixedSpeed, &cfg).unwrap().profile.max_abs(), 0.0);

    let flat = WaveState::flat(g, 1.0, DepthMode::Infinite).unwrap();
    assert!(matches!(newton_solve(&flat, Constraint::FixedSpeed, &cfg), Err(Error::SingularJacobian)));
}

#[test]
fn speed_tends_to_one_at_small_height() {
    let g = Grid::new(128).unwrap();
    let cfg = SolverConfig::with_n(128);
    let speeds: Vec<f64> = [0.001, 0.01, 0.05, 0.1]
        .iter()
        .map(|&s| seed_entry(g, DepthMode::Infinite, s, &cfg).unwrap().speed)
        .collect();
    assert!(speeds.windows(2).all(|w| w[1] > w[0]));
    // Stokes: c^2 = 1 + a^2 with a = s/2 to leading order
    for (&s, &c) in [0.001, 0.01, 0.05, 0.1].iter().zip(&speeds) {
        let a = 0.5f64 * s;
        assert!(((c * c - 1.0) / (a * a) - 1.0).abs() < 0.05, "s = {s}: c = {c}");
    }
}

#[test]
fn branch_to_moderate_height() {
    let g = Grid::new(512).unwrap();
    let cfg = SolverConfig::with_n(512);
    let seed = seed_entry(g, DepthMode::Infinite, 0.002, &cfg).unwrap();
    let b = continue_branch(&seed.state, 0.05, StepControl::new(0.01), &cfg).unwrap();
    assert_eq!(b.stop, StopReason::TargetReached);
    assert!(b.entries.len() >= 5);
    for e in &b.entries {
        assert!(e.diagnostics.residual_norm <= 1e-10);
        assert!(e.diagnostics.mean_zero_value.abs() <= 10.0 * cfg.newton_tol);
    }
    assert!(b.entries.windows(2).all(|w| w[1].height > w[0].height));
    assert!(matches!(
        continue_branch(&seed.state, 0.001, StepControl::default(), &cfg),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn unreachable_target_truncates() {
    let g = Grid::new(128).unwrap();
    let cfg = SolverConfig::with_n(128);
    let seed = seed_entry(g, DepthMode::Infinite, 0.1, &cfg).unwrap();
    let b = continue_from_entry(&seed, 10.0, StepControl::new(0.1), &cfg).unwrap();
    assert!(b.truncated);
    assert_ne!(b.stop, StopReason::TargetReached);
    let last = b.entries.last().unwrap();
    assert!(last.height < 0.9 && last.diagnostics.crest_gap > 0.0);
}

#[test]
fn diagnose_examples() {
    let g = Grid::new(64).unwrap();
    let d = diagnose(&WaveState::flat(g, 1.0, DepthMode::Infinite).unwrap()).unwrap();
    assert_eq!((d.mean_zero_value, d.crest_gap), (0.0, 0.5));
    let a = 0.3;
    let p = PeriodicProfile::from_fn(g, |u| a * u.cos() - 0.5 * a * a).unwrap();
    let d = diagnose(&WaveState::new(p, 1.0, DepthMode::Infinite).unwrap()).unwrap();
    assert!(d.mean_zero_value.abs() < 1e-15);
    assert!(d.tail_fraction >= 0.0 && d.tail_fraction <= 1.0);
}

#[test]
fn physical_surface_examples() {
    let g = Grid::new(128).unwrap();
    let s = physical_surface(&WaveState::flat(g, 1.0, DepthMode::Infinite).unwrap()).unwrap();
    assert_eq!(s.crest_angle_deg, 180.0);
    assert!(s.y.iter().all(|&y| y == 0.0));
    let a = 0.1;
    let p = PeriodicProfile::from_fn(g, |u| a * u.cos()).unwrap();
    let s = physical_surface(&WaveState::new(p, 1.0, DepthMode::Infinite).unwrap()).unwrap();
    for (j, &u) in g.points().iter().enumerate() {
        assert!((s.x[j] - u - a * u.sin()).abs() < 1e-15);
    }
    let n = 32768;
    let g = Grid::new(n).unwrap();
    let angles = |amp: f64| {
        let cusp = sample_power(2.0 / 3.0, g, false).unwrap().scale(-amp).shift(0.605);
        let s = physical_surface(&WaveState::new(cusp, 1.1, DepthMode::Infinite).unwrap()).unwrap();
        [0.2, 0.05, 0.01, 0.003].map(|w| s.crest_angle_at(w))
    };
    // x - u ~ sqrt(3) A |u|^{2/3} sgn u dominates u only for |u| << (sqrt(3) A)^3
    let weak = angles(0.5);
    assert!(weak.windows(2).all(|w| (w[1] - 120.0).abs() < (w[0] - 120.0).abs()), "{weak:?}");
    let strong = angles(1.0);
    assert!(strong[1..].iter().all(|a| (a - 120.0).abs() <= 5.0), "{strong:?}");
}
