use approx::assert_relative_eq;
use proptest::prelude::*;
use qstep_core::analytic::{step_limit_amplitudes_below, uniform_grid};
use qstep_core::validation::{
    connection_gap, density_peak, ode_residual, ABOVE_DELTAS, ABOVE_RATIOS, BELOW_DELTAS, BELOW_RATIOS,
};
use qstep_core::{
    coefficients, coefficients_gamma_form, kinematics, match_below, step_limit_coefficients,
    wavefunction, Kinematics, Regime, ScatteringState, StepPotential,
};

fn pot(v0: f64, delta: f64) -> StepPotential {
    StepPotential::new(v0, delta).unwrap()
}

fn kin(delta: f64, ratio: f64) -> Kinematics {
    kinematics(&pot(1.0, delta), ratio).unwrap()
}

#[test]
fn unitarity_and_dual_forms_on_grid() {
    for &d in &ABOVE_DELTAS {
        for &r in &ABOVE_RATIOS {
            let k = kin(d, r);
            let s = coefficients(&k);
            let g = coefficients_gamma_form(&k).unwrap();
            assert!((s.r + s.t - 1.0).abs() <= 1e-10, "δ={d} E={r}");
            assert_relative_eq!(g.r, s.r, max_relative = 1e-10);
            assert_relative_eq!(g.t, s.t, max_relative = 1e-10);
        }
    }
}

#[test]
fn total_reflection_below_barrier() {
    for &d in &BELOW_DELTAS {
        for &r in &BELOW_RATIOS {
            let k = kin(d, r);
            let c = coefficients(&k);
            assert_eq!((c.r, c.t), (1.0, 0.0));
            let state = ScatteringState::new(&pot(1.0, d), r).unwrap();
            let a = state.amplitudes;
            assert!(((a.reflected / a.incident).norm_sqr() - 1.0).abs() <= 1e-10, "δ={d} E={r}");
        }
    }
}

#[test]
fn barrier_top_reflects_fully() {
    let k = kin(1.0, 1.0);
    let c = coefficients(&k);
    assert_eq!((c.r, c.t), (1.0, 0.0));
    let a = ScatteringState::new(&pot(1.0, 1.0), 1.0).unwrap().amplitudes;
    assert!((a.reflected.norm() - 1.0).abs() < 1e-10);
}

#[test]
fn connection_identity() {
    for (d, r) in [(0.5, 2.0), (1.0, 1.2), (2.0, 0.5), (10.0, 0.1), (0.5, 0.9)] {
        let gap = connection_gap(&pot(1.0, d), r, 200).unwrap();
        assert!(gap <= 1e-8, "δ={d} E={r}: {gap:e}");
    }
}

#[test]
fn monotone_approach_to_step() {
    let rs: Vec<f64> = [0.5, 1.0, 2.0, 10.0].iter().map(|&d| coefficients(&kin(d, 2.0)).r).collect();
    let step = step_limit_coefficients(&kin(1.0, 2.0)).r;
    assert!(rs.windows(2).all(|w| w[0] < w[1]), "{rs:?}");
    assert!(rs[3] < step);
    assert_relative_eq!(step, 17.0 - 12.0 * 2f64.sqrt(), max_relative = 1e-13);
}

#[test]
fn step_limit_convergence() {
    let k = kin(50.0, 2.0);
    assert!((coefficients(&k).r - step_limit_coefficients(&k).r).abs() <= 1e-3);

    let devs: Vec<f64> = [1.0, 2.0, 5.0, 10.0, 20.0, 50.0]
        .iter()
        .map(|&d| {
            let k = kin(d, 0.5);
            let m = match_below(&pot(1.0, d), 0.5).unwrap();
            (m.transmitted - step_limit_amplitudes_below(&k).unwrap().transmitted).norm()
        })
        .collect();
    assert!(devs[5] <= 1e-2, "{devs:?}");
    assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
}

#[test]
fn ode_residual_both_regimes() {
    for (d, r) in [(0.5, 2.0), (2.0, 1.5), (0.5, 0.5), (10.0, 0.9)] {
        let res = ode_residual(&pot(1.0, d), r, -4.0, 4.0, 1e-3).unwrap();
        assert!(res <= 1e-4, "δ={d} E={r}: {res:e}");
    }
}

#[test]
fn mu_nu_exchange_symmetry() {
    for &d in &ABOVE_DELTAS {
        for &r in &ABOVE_RATIOS {
            let k = kin(d, r);
            let Regime::Above { ell, nu } = k.regime else { unreachable!() };
            let swapped = Kinematics {
                k: ell,
                mu: nu,
                regime: Regime::Above { ell: k.k, nu: k.mu },
                ..k
            };
            assert_eq!(coefficients(&k), coefficients(&swapped));
        }
    }
}

#[test]
fn plane_wave_asymptotics() {
    for (d, r) in [(0.5, 2.0), (1.0, 1.5), (2.0, 3.0)] {
        let p = pot(1.0, d);
        let st = ScatteringState::new(&p, r).unwrap();
        let kin = st.kinematics;
        let Regime::Above { ell, .. } = kin.regime else { unreachable!() };
        let a = st.amplitudes;
        let xr = 40.0 / d;
        let right = a.transmitted * num_complex::Complex64::new(0.0, ell * xr).exp();
        let xl = -xr;
        let left = a.incident * num_complex::Complex64::new(0.0, kin.k * xl).exp()
            + a.reflected * num_complex::Complex64::new(0.0, -kin.k * xl).exp();
        assert!((wavefunction(&p, r, xr).unwrap() - right).norm() < 1e-8);
        assert!((wavefunction(&p, r, xl).unwrap() - left).norm() < 1e-8);
    }
}

#[test]
fn density_and_current() {
    let xs = uniform_grid(-8.0, 8.0, 321).unwrap();
    for (d, r) in [(1.0, 2.0), (0.5, 1.5), (10.0, 3.0)] {
        let k = kin(d, r);
        let j0 = coefficients(&k).t * k.k;
        let s = ScatteringState::new(&pot(1.0, d), r).unwrap().scan(xs.clone()).unwrap();
        for i in 0..s.len() {
            assert_relative_eq!(s.density[i], s.psi[i].norm_sqr(), max_relative = 1e-14);
            assert!((s.current[i] - j0).abs() <= 1e-8 * j0, "δ={d} x={}", s.x[i]);
        }
    }
    for (d, r) in [(0.5, 0.5), (10.0, 0.1)] {
        let s = ScatteringState::new(&pot(1.0, d), r).unwrap().scan(xs.clone()).unwrap();
        assert!(s.current.iter().all(|j| j.abs() <= 1e-8), "δ={d}");
    }
}

#[test]
fn density_peak_shifts_under_barrier() {
    let peak = density_peak(&pot(1.0, 0.5), 0.9, -10.0, 10.0, 2001).unwrap();
    assert!(peak > 0.0, "{peak}");
}

#[test]
fn deep_barrier_decay() {
    let p = pot(1.0, 10.0);
    let kappa = (1.0f64 - 0.1).sqrt();
    let x = 3.0 / kappa;
    let psi0 = wavefunction(&p, 0.1, 0.0).unwrap().norm();
    let psi = wavefunction(&p, 0.1, x).unwrap().norm();
    assert_relative_eq!(psi / psi0, (-3.0f64).exp(), max_relative = 0.05);
}

proptest! {
    #[test]
    fn unitarity_random(v0 in 0.1f64..5.0, delta in 0.05f64..50.0, ratio in 1.0001f64..20.0) {
        let k = kinematics(&pot(v0, delta), ratio * v0).unwrap();
        let c = coefficients(&k);
        prop_assert!((c.r + c.t - 1.0).abs() <= 1e-10);
        prop_assert!((0.0..=1.0).contains(&c.r));
    }

    #[test]
    fn matched_and_gamma_amplitudes_agree(v0 in 0.2f64..5.0, delta in 0.1f64..20.0, ratio in 0.02f64..0.98) {
        let p = pot(v0, delta);
        let g = ScatteringState::new(&p, ratio * v0).unwrap().amplitudes;
        let m = match_below(&p, ratio * v0).unwrap();
        prop_assert!((g.reflected - m.reflected).norm() < 1e-8);
        prop_assert!((g.transmitted - m.transmitted).norm() < 1e-8 * m.transmitted.norm().max(1.0));
    }
}
