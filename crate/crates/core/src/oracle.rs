//! Brute-force reference: Numerov integration of `ψ'' = (V(x) - E) ψ`.
//!
//! The integration runs right to left. On the right only one wave is present
//! (`e^{iℓx}` or `e^{-κx}` with unit amplitude), so the seed is fully known;
//! the incident and reflected amplitudes are read off at the far left.
//! Nothing here touches Gamma or hypergeometric functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::analytic::{coefficients, AmplitudeSet, ScatteringState, WaveSample};
use crate::error::{Error, Result};
use crate::model::{kinematics, Kinematics, Regime, StepPotential};
use crate::special_fns::ComplexVal;

/// Minimum `δ|x|` at both ends; `1 - tanh(15) ≈ 2e-13`.
pub const ASYMPTOTIC_DELTA_X: f64 = 15.0;
const MAX_NODES: f64 = 1e7;
const GROWTH_LIMIT: f64 = 1e12;
const MIN_SIN: f64 = 1e-3;
const MAX_COMPARE_POINTS: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    pub x_left: f64,
    pub x_right: f64,
    pub step: f64,
}

impl IntegrationConfig {
    /// Window reaching `16/δ` on the right and far enough left to hold a
    /// quarter wavelength of flat region for amplitude extraction.
    pub fn for_state(p: &StepPotential, energy: f64, step: f64) -> Result<Self> {
        let kin = kinematics(p, energy)?;
        let flat = (ASYMPTOTIC_DELTA_X + 1.0) / p.delta();
        Ok(Self {
            x_left: -(flat + PI / kin.k),
            x_right: flat,
            step,
        })
    }

    pub fn validate(&self, p: &StepPotential) -> Result<()> {
        let Self {
            x_left,
            x_right,
            step,
        } = *self;
        if !(x_left < 0.0 && 0.0 < x_right) {
            return Err(Error::InvalidConfig(format!(
                "need x_left < 0 < x_right, got [{x_left}, {x_right}]"
            )));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidConfig(format!("step must be positive, got {step}")));
        }
        if (x_right - x_left) / step > MAX_NODES {
            return Err(Error::InvalidConfig(format!(
                "grid of {:.3e} steps exceeds the 1e7 limit",
                (x_right - x_left) / step
            )));
        }
        let d = p.delta();
        if d * x_left.abs() < ASYMPTOTIC_DELTA_X || d * x_right < ASYMPTOTIC_DELTA_X {
            return Err(Error::InvalidConfig(format!(
                "window [{x_left}, {x_right}] does not reach delta*|x| >= 15 on both sides"
            )));
        }
        Ok(())
    }
}

fn right_exponent(kin: &Kinematics) -> ComplexVal {
    match kin.regime {
        Regime::Above { ell, .. } => Complex64::new(0.0, ell),
        Regime::Below { kappa } => Complex64::new(-kappa, 0.0),
    }
}

/// Fourth-order first derivative on a uniform grid.
fn derivative(psi: &[ComplexVal], h: f64) -> Vec<ComplexVal> {
    let n = psi.len();
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    if n < 5 {
        for j in 0..n {
            let (lo, hi) = (j.saturating_sub(1), (j + 1).min(n - 1));
            d[j] = (psi[hi] - psi[lo]) / ((hi - lo) as f64 * h);
        }
        return d;
    }
    for j in 2..n - 2 {
        d[j] = (psi[j - 2] - 8.0 * psi[j - 1] + 8.0 * psi[j + 1] - psi[j + 2]) / (12.0 * h);
    }
    let fwd = |p: &[ComplexVal]| {
        (-25.0 * p[0] + 48.0 * p[1] - 36.0 * p[2] + 16.0 * p[3] - 3.0 * p[4]) / (12.0 * h)
    };
    d[0] = fwd(&psi[0..5]);
    d[1] = (-3.0 * psi[0] - 10.0 * psi[1] + 18.0 * psi[2] - 6.0 * psi[3] + psi[4]) / (12.0 * h);
    let rev: Vec<_> = psi[n - 5..].iter().rev().copied().collect();
    d[n - 1] = -fwd(&rev);
    d[n - 2] = -(-3.0 * rev[0] - 10.0 * rev[1] + 18.0 * rev[2] - 6.0 * rev[3] + rev[4]) / (12.0 * h);
    d
}

/// Integrates the Schrödinger equation right to left with Numerov's method.
///
/// The two rightmost nodes carry the unit-amplitude outgoing (or decaying)
/// wave, so the returned ψ has `D = 1`.
pub fn integrate(p: &StepPotential, energy: f64, cfg: &IntegrationConfig) -> Result<WaveSample> {
    cfg.validate(p)?;
    let kin = kinematics(p, energy)?;
    let h = cfg.step;
    let intervals = ((cfg.x_right - cfg.x_left) / h).ceil() as usize;
    let n = intervals + 1;
    let x: Vec<f64> = (0..n)
        .map(|j| cfg.x_right - (intervals - j) as f64 * h)
        .collect();

    let h2 = h * h / 12.0;
    // weight_j = 1 - h²g_j/12 with g = V - E
    let weight: Vec<f64> = x.iter().map(|&xj| 1.0 - h2 * (p.value(xj) - energy)).collect();

    let s = right_exponent(&kin);
    let mut psi = vec![Complex64::new(0.0, 0.0); n];
    psi[n - 1] = (s * x[n - 1]).exp();
    psi[n - 2] = (s * x[n - 2]).exp();
    let seed = psi[n - 1].norm().max(psi[n - 2].norm()).max(1.0);
    let limit = GROWTH_LIMIT * seed;

    let mut max_abs: f64 = 0.0;
    for j in (1..n - 1).rev() {
        let next = ((12.0 - 10.0 * weight[j]) * psi[j] - weight[j + 1] * psi[j + 1]) / weight[j - 1];
        psi[j - 1] = next;
        max_abs = max_abs.max(next.norm());
        if !(max_abs <= limit) {
            return Err(Error::UnstableGrowth(max_abs));
        }
    }

    let dpsi = derivative(&psi, h);
    let density = psi.iter().map(|v| v.norm_sqr()).collect();
    let current = psi
        .iter()
        .zip(&dpsi)
        .map(|(v, d)| (v.conj() * d).im)
        .collect();
    Ok(WaveSample {
        x,
        psi,
        density,
        current,
    })
}

fn nearest_index(x: &[f64], target: f64) -> usize {
    match x.binary_search_by(|v| v.total_cmp(&target)) {
        Ok(j) => j,
        Err(0) => 0,
        Err(j) if j >= x.len() => x.len() - 1,
        Err(j) => {
            if (x[j] - target).abs() < (target - x[j - 1]).abs() {
                j
            } else {
                j - 1
            }
        }
    }
}

/// Projects the left end of `sample` onto `A e^{ikx} + B e^{-ikx}`.
///
/// Uses the first node and the node closest to a quarter wavelength further
/// right. The result is rescaled to `A = 1`; `transmitted` is `1/A`, which
/// is the transmitted amplitude when the sample was seeded with unit
/// amplitude on the right (as [`integrate`] does).
pub fn extract_amplitudes(sample: &WaveSample, k: f64, regime: Regime) -> Result<AmplitudeSet> {
    if sample.len() < 2 {
        return Err(Error::InvalidConfig("sample needs at least 2 nodes".into()));
    }
    let x1 = sample.x[0];
    let j2 = nearest_index(&sample.x, x1 + 0.5 * PI / k).max(1);
    let x2 = sample.x[j2];
    let sin = (k * (x2 - x1)).sin();
    if sin.abs() < MIN_SIN {
        return Err(Error::IllConditioned(sin.abs()));
    }
    let (psi1, psi2) = (sample.psi[0], sample.psi[j2]);
    let e1 = Complex64::new(0.0, k * x1).exp();
    let e2 = Complex64::new(0.0, k * x2).exp();
    let det = Complex64::new(0.0, -2.0 * sin);
    let a = (psi1 / e2 - psi2 / e1) / det;
    let b = (e1 * psi2 - e2 * psi1) / det;
    if a.norm() == 0.0 {
        return Err(Error::IllConditioned(0.0));
    }
    Ok(AmplitudeSet {
        incident: Complex64::new(1.0, 0.0),
        reflected: b / a,
        transmitted: 1.0 / a,
        regime,
    })
}

/// Side-by-side analytic and Numerov results for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub r_analytic: f64,
    pub r_numeric: f64,
    pub t_analytic: f64,
    pub t_numeric: f64,
    /// Largest `|ψ_numeric - ψ_analytic|` over (up to 2001) evenly strided
    /// grid nodes, both normalized to `A = 1`.
    pub max_psi_deviation: f64,
}

impl OracleReport {
    pub fn r_deviation(&self) -> f64 {
        (self.r_analytic - self.r_numeric).abs()
    }

    pub fn t_deviation(&self) -> f64 {
        (self.t_analytic - self.t_numeric).abs()
    }
}

/// Coefficients extracted from a Numerov run.
pub fn numeric_coefficients(
    p: &StepPotential,
    energy: f64,
    cfg: &IntegrationConfig,
) -> Result<(WaveSample, AmplitudeSet, f64, f64)> {
    let kin = kinematics(p, energy)?;
    let sample = integrate(p, energy, cfg)?;
    let amp = extract_amplitudes(&sample, kin.k, kin.regime)?;
    let r = amp.reflected.norm_sqr();
    let t = match kin.regime {
        Regime::Above { ell, .. } => ell / kin.k * amp.transmitted.norm_sqr(),
        Regime::Below { .. } => 0.0,
    };
    Ok((sample, amp, r, t))
}

pub fn compare(p: &StepPotential, energy: f64, cfg: &IntegrationConfig) -> Result<OracleReport> {
    let kin = kinematics(p, energy)?;
    let (sample, amp, r_numeric, t_numeric) = numeric_coefficients(p, energy, cfg)?;
    let exact = coefficients(&kin);

    let state = ScatteringState::new(p, energy)?;
    // numeric ψ carries D = 1; rescale to A = 1
    let scale = amp.transmitted;
    let stride = sample.len().div_ceil(MAX_COMPARE_POINTS).max(1);
    let mut max_dev: f64 = 0.0;
    for j in (0..sample.len()).step_by(stride) {
        let exact_psi = state.evaluate(sample.x[j])?.psi;
        max_dev = max_dev.max((scale * sample.psi[j] - exact_psi).norm());
    }
    Ok(OracleReport {
        r_analytic: exact.r,
        r_numeric,
        t_analytic: exact.t,
        t_numeric,
        max_psi_deviation: max_dev,
    })
}
