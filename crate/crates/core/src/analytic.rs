//! Exact stationary scattering states of the smooth step.
//!
//! With `α` from [`Kinematics::alpha`] and unit incident amplitude, the
//! solution is represented two ways:
//!
//! * right of the origin, `D e^{sx} (1 + e^{-2δx}) ₂F₁(1+α+iμ, 1+α-iμ; 1+2α; -e^{-2δx})`
//!   with `s = -2δα` (`iℓ` above the barrier, `-κ` below);
//! * left of the origin, `ψ_inc + B ψ_ref` with
//!   `ψ_inc = e^{ikx} (1 + e^{2δx}) ₂F₁(1+iμ+α, 1+iμ-α; 1+2iμ; -e^{2δx})` and
//!   `ψ_ref` its `μ → -μ` partner.
//!
//! Both representations are exact everywhere; each is evaluated only where
//! its hypergeometric argument lies in `[-1, 0]`. Amplitudes follow from the
//! `z → 1/z` connection formula applied to the right-hand solution.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{hyp_mapping, kinematics, HypMapping, Kinematics, Regime, StepPotential};
use crate::special_fns::{gamma_ratio_with, hyp2f1_with_deriv, log_gamma, ComplexVal, Hyp2F1Args};

/// Beyond `|δx|` of this size the exact forms are replaced by plane waves.
pub const ASYMPTOTIC_GUARD: f64 = 50.0;

const SINH_LOG_SPACE: f64 = 30.0;
const WRONSKIAN_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeSet {
    /// Incident amplitude `A`, fixed to 1.
    pub incident: ComplexVal,
    /// Reflected amplitude `B`.
    pub reflected: ComplexVal,
    /// Transmitted (above) or penetrating (below) amplitude `D`.
    pub transmitted: ComplexVal,
    pub regime: Regime,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub r: f64,
    pub t: f64,
}

impl Coefficients {
    const TOTAL_REFLECTION: Self = Self { r: 1.0, t: 0.0 };
}

fn i(x: f64) -> ComplexVal {
    Complex64::new(0.0, x)
}

/// Scattering amplitudes from Gamma-function ratios.
pub fn amplitudes(kin: &Kinematics, _p: &StepPotential) -> Result<AmplitudeSet> {
    amplitudes_with(kin, log_gamma)
}

/// [`amplitudes`] with a caller-supplied log-Gamma.
pub fn amplitudes_with<G>(kin: &Kinematics, ln_gamma: G) -> Result<AmplitudeSet>
where
    G: Fn(ComplexVal) -> Result<ComplexVal> + Copy,
{
    let mu = kin.mu;
    if !(mu > 0.0) {
        return Err(Error::DegenerateInput("mu must be positive"));
    }
    if let Regime::Above { nu, .. } = kin.regime {
        if mu - nu == 0.0 {
            return Err(Error::DegenerateInput("mu == nu (zero barrier)"));
        }
    }
    let alpha = kin.alpha();
    let reflected = gamma_ratio_with(
        &[i(2.0 * mu), 1.0 + alpha - i(mu), alpha - i(mu)],
        &[i(-2.0 * mu), 1.0 + alpha + i(mu), alpha + i(mu)],
        ln_gamma,
    )?;
    let transmitted = gamma_ratio_with(
        &[1.0 + alpha - i(mu), alpha - i(mu)],
        &[1.0 + 2.0 * alpha, i(-2.0 * mu)],
        ln_gamma,
    )?;
    Ok(AmplitudeSet {
        incident: Complex64::new(1.0, 0.0),
        reflected,
        transmitted,
        regime: kin.regime,
    })
}

/// `sinh(x) / sinh(y)` for `x >= 0`, `y > 0`, without overflow.
fn sinh_ratio(x: f64, y: f64) -> f64 {
    if x.max(y) <= SINH_LOG_SPACE {
        x.sinh() / y.sinh()
    } else {
        (x - y).exp() * (-2.0 * x).exp_m1() / (-2.0 * y).exp_m1()
    }
}

/// `R = sinh²π(μ-ν) / sinh²π(μ+ν)`, `T = sinh 2πμ · sinh 2πν / sinh²π(μ+ν)`.
///
/// Below the barrier (and at threshold) `R = 1`, `T = 0`.
pub fn coefficients(kin: &Kinematics) -> Coefficients {
    match kin.regime {
        Regime::Above { nu, .. } if nu > 0.0 => {
            use std::f64::consts::PI;
            let (mu, sum) = (kin.mu, PI * (kin.mu + nu));
            let r = sinh_ratio(PI * (mu - nu), sum).powi(2);
            let t = sinh_ratio(2.0 * PI * mu, sum) * sinh_ratio(2.0 * PI * nu, sum);
            Coefficients { r, t }
        }
        _ => Coefficients::TOTAL_REFLECTION,
    }
}

/// `R = |B|²`, `T = (ν/μ)|D|²` from the Gamma-ratio amplitudes.
pub fn coefficients_gamma_form(kin: &Kinematics) -> Result<Coefficients> {
    coefficients_gamma_form_with(kin, log_gamma)
}

pub fn coefficients_gamma_form_with<G>(kin: &Kinematics, ln_gamma: G) -> Result<Coefficients>
where
    G: Fn(ComplexVal) -> Result<ComplexVal> + Copy,
{
    let nu = match kin.regime {
        Regime::Above { nu, .. } if nu > 0.0 => nu,
        _ => return Err(Error::BelowRegime),
    };
    let amp = amplitudes_with(kin, ln_gamma)?;
    Ok(Coefficients {
        r: amp.reflected.norm_sqr(),
        t: nu / kin.mu * amp.transmitted.norm_sqr(),
    })
}

/// Abrupt-step values `((k-ℓ)/(k+ℓ))²` and `4kℓ/(k+ℓ)²`; total reflection
/// below the barrier.
pub fn step_limit_coefficients(kin: &Kinematics) -> Coefficients {
    match kin.regime {
        Regime::Above { ell, .. } => {
            let k = kin.k;
            let s = k + ell;
            Coefficients {
                r: ((k - ell) / s).powi(2),
                t: 4.0 * k * ell / (s * s),
            }
        }
        Regime::Below { .. } => Coefficients::TOTAL_REFLECTION,
    }
}

/// Abrupt-step amplitudes below the barrier: `D = 2k/(k+iκ)`, `B = (k-iκ)/(k+iκ)`.
pub fn step_limit_amplitudes_below(kin: &Kinematics) -> Result<AmplitudeSet> {
    let kappa = match kin.regime {
        Regime::Below { kappa } => kappa,
        Regime::Above { .. } => return Err(Error::AboveRegime),
    };
    let denom = Complex64::new(kin.k, kappa);
    Ok(AmplitudeSet {
        incident: Complex64::new(1.0, 0.0),
        reflected: Complex64::new(kin.k, -kappa) / denom,
        transmitted: 2.0 * kin.k / denom,
        regime: kin.regime,
    })
}

/// Value and x-derivative of a wavefunction sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiPoint {
    pub psi: ComplexVal,
    pub dpsi: ComplexVal,
}

impl std::ops::Add for PsiPoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            psi: self.psi + rhs.psi,
            dpsi: self.dpsi + rhs.dpsi,
        }
    }
}

impl std::ops::Mul<PsiPoint> for ComplexVal {
    type Output = PsiPoint;
    fn mul(self, rhs: PsiPoint) -> PsiPoint {
        PsiPoint {
            psi: self * rhs.psi,
            dpsi: self * rhs.dpsi,
        }
    }
}

/// `e^{qx} (1 + W) ₂F₁(a, b; c; -W)` with `W = e^{2σδx}`, `σ = ±1`, and its
/// derivative.
fn hyp_branch(
    q: ComplexVal,
    sigma: f64,
    delta: f64,
    (a, b, c): (ComplexVal, ComplexVal, ComplexVal),
    x: f64,
) -> Result<PsiPoint> {
    let w = (sigma * 2.0 * delta * x).exp();
    let (f, df) = hyp2f1_with_deriv(Hyp2F1Args::real_z(a, b, c, -w))?;
    let phase = (q * x).exp();
    let psi = phase * (1.0 + w) * f;
    let dpsi = q * psi + phase * (sigma * 2.0 * delta * w) * (f - (1.0 + w) * df);
    Ok(PsiPoint { psi, dpsi })
}

/// A fully resolved scattering state for one `(V₀, δ, E)`.
#[derive(Debug, Clone, Copy)]
pub struct ScatteringState {
    pub potential: StepPotential,
    pub kinematics: Kinematics,
    pub mapping: HypMapping,
    pub amplitudes: AmplitudeSet,
}

impl ScatteringState {
    pub fn new(p: &StepPotential, energy: f64) -> Result<Self> {
        let kin = kinematics(p, energy)?;
        let amplitudes = amplitudes(&kin, p)?;
        Ok(Self {
            potential: *p,
            kinematics: kin,
            mapping: hyp_mapping(&kin, p),
            amplitudes,
        })
    }

    /// Below-barrier state normalized through continuity matching at the
    /// origin instead of the Gamma ratios.
    pub fn new_matched(p: &StepPotential, energy: f64) -> Result<Self> {
        let mut state = Self::new(p, energy)?;
        state.amplitudes = match_below(p, energy)?;
        Ok(state)
    }

    fn delta(&self) -> f64 {
        self.potential.delta()
    }

    /// Exponent `s` of the right-hand plane wave `e^{sx}`.
    fn right_exponent(&self) -> ComplexVal {
        -2.0 * self.delta() * self.mapping.alpha
    }

    fn check_guard(&self, x: f64) -> Result<()> {
        let limit = ASYMPTOTIC_GUARD / self.delta();
        if x.abs() > limit {
            Err(Error::OverflowGuard { x: x.abs(), limit })
        } else {
            Ok(())
        }
    }

    /// Right-hand solution without the amplitude `D`.
    pub fn unit_transmitted(&self, x: f64) -> Result<PsiPoint> {
        self.check_guard(x)?;
        let m = &self.mapping;
        hyp_branch(self.right_exponent(), -1.0, self.delta(), (m.a, m.b, m.c), x)
    }

    /// `ψ_inc` and `ψ_ref`.
    pub fn unit_incident_reflected(&self, x: f64) -> Result<(PsiPoint, PsiPoint)> {
        self.check_guard(x)?;
        let (mu, alpha, delta) = (self.kinematics.mu, self.mapping.alpha, self.delta());
        let inc = hyp_branch(
            i(2.0 * delta * mu),
            1.0,
            delta,
            (1.0 + alpha + i(mu), 1.0 - alpha + i(mu), 1.0 + i(2.0 * mu)),
            x,
        )?;
        let refl = hyp_branch(
            i(-2.0 * delta * mu),
            1.0,
            delta,
            (1.0 + alpha - i(mu), 1.0 - alpha - i(mu), 1.0 - i(2.0 * mu)),
            x,
        )?;
        Ok((inc, refl))
    }

    /// `D ψ_trans(x)`, valid for any `x` within the overflow guard.
    pub fn transmitted_representation(&self, x: f64) -> Result<PsiPoint> {
        Ok(self.amplitudes.transmitted * self.unit_transmitted(x)?)
    }

    /// `A ψ_inc(x) + B ψ_ref(x)`, valid for any `x` within the overflow guard.
    pub fn left_representation(&self, x: f64) -> Result<PsiPoint> {
        let (inc, refl) = self.unit_incident_reflected(x)?;
        Ok(self.amplitudes.incident * inc + self.amplitudes.reflected * refl)
    }

    /// ψ and ψ′ at `x`, switching to plane waves beyond the guard.
    pub fn evaluate(&self, x: f64) -> Result<PsiPoint> {
        let limit = ASYMPTOTIC_GUARD / self.delta();
        let amp = &self.amplitudes;
        if x > limit {
            let s = self.right_exponent();
            let psi = amp.transmitted * (s * x).exp();
            Ok(PsiPoint { psi, dpsi: s * psi })
        } else if x < -limit {
            let k = self.kinematics.k;
            let inc = amp.incident * i(k * x).exp();
            let refl = amp.reflected * i(-k * x).exp();
            Ok(PsiPoint {
                psi: inc + refl,
                dpsi: i(k) * (inc - refl),
            })
        } else if x >= 0.0 {
            self.transmitted_representation(x)
        } else {
            self.left_representation(x)
        }
    }
}

/// ψ(x) with unit incident amplitude.
pub fn wavefunction(p: &StepPotential, energy: f64, x: f64) -> Result<ComplexVal> {
    Ok(ScatteringState::new(p, energy)?.evaluate(x)?.psi)
}

/// ψ′(x) with unit incident amplitude.
pub fn wavefunction_deriv(p: &StepPotential, energy: f64, x: f64) -> Result<ComplexVal> {
    Ok(ScatteringState::new(p, energy)?.evaluate(x)?.dpsi)
}

/// Below-barrier amplitudes from continuity of ψ and ψ′ at the origin.
pub fn match_below(p: &StepPotential, energy: f64) -> Result<AmplitudeSet> {
    let kin = kinematics(p, energy)?;
    if kin.regime.is_above() {
        return Err(Error::AboveRegime);
    }
    let state = ScatteringState {
        potential: *p,
        kinematics: kin,
        mapping: hyp_mapping(&kin, p),
        amplitudes: AmplitudeSet {
            incident: Complex64::new(1.0, 0.0),
            reflected: Complex64::new(0.0, 0.0),
            transmitted: Complex64::new(0.0, 0.0),
            regime: kin.regime,
        },
    };
    let pk = state.unit_transmitted(0.0)?;
    let (inc, refl) = state.unit_incident_reflected(0.0)?;

    let denom = pk.psi * refl.dpsi - pk.dpsi * refl.psi;
    if denom.norm() < WRONSKIAN_FLOOR {
        return Err(Error::SingularWronskian(denom.norm()));
    }
    let transmitted = (inc.psi * refl.dpsi - inc.dpsi * refl.psi) / denom;
    let reflected = (pk.psi * inc.dpsi - pk.dpsi * inc.psi) / -denom;
    Ok(AmplitudeSet {
        incident: Complex64::new(1.0, 0.0),
        reflected,
        transmitted,
        regime: kin.regime,
    })
}

/// ψ, |ψ|² and the probability current on a uniform grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WaveSample {
    pub x: Vec<f64>,
    pub psi: Vec<ComplexVal>,
    pub density: Vec<f64>,
    pub current: Vec<f64>,
}

impl WaveSample {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn from_points(x: Vec<f64>, points: &[PsiPoint]) -> Self {
        let psi: Vec<_> = points.iter().map(|p| p.psi).collect();
        let density = psi.iter().map(|p| p.norm_sqr()).collect();
        let current = points.iter().map(|p| (p.psi.conj() * p.dpsi).im).collect();
        Self {
            x,
            psi,
            density,
            current,
        }
    }
}

/// `n` evenly spaced points from `x_min` to `x_max` inclusive.
pub fn uniform_grid(x_min: f64, x_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "grid bounds must satisfy x_min < x_max (got {x_min}, {x_max})"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidConfig(format!("grid needs at least 2 samples, got {n}")));
    }
    let h = (x_max - x_min) / (n - 1) as f64;
    Ok((0..n)
        .map(|j| if j == n - 1 { x_max } else { x_min + j as f64 * h })
        .collect())
}

pub fn density_scan(
    p: &StepPotential,
    energy: f64,
    x_min: f64,
    x_max: f64,
    n: usize,
) -> Result<WaveSample> {
    let grid = uniform_grid(x_min, x_max, n)?;
    let state = ScatteringState::new(p, energy)?;
    state.scan(grid)
}

impl ScatteringState {
    /// Evaluates the state on `grid`; points are computed in parallel and
    /// kept in grid order.
    pub fn scan(&self, grid: Vec<f64>) -> Result<WaveSample> {
        let points = grid
            .par_iter()
            .map(|&x| self.evaluate(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(WaveSample::from_points(grid, &points))
    }
}
