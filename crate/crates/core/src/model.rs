//! The smooth step `V(x) = (V₀/2)(1 + tanh δx)` and the kinematic
//! quantities derived from it.
//!
//! Units are dimensionless with `ħ²/2m = 1`: energies and the barrier height
//! are wavenumbers squared.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special_fns::ComplexVal;

/// Barrier height `v0` and deformation `delta`; `delta → ∞` is the abrupt step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPotential {
    v0: f64,
    delta: f64,
}

impl StepPotential {
    pub fn new(v0: f64, delta: f64) -> Result<Self> {
        if v0 > 0.0 && delta > 0.0 && v0.is_finite() && delta.is_finite() {
            Ok(Self { v0, delta })
        } else {
            Err(Error::InvalidPotential { v0, delta })
        }
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `V(x)`, written as `V₀ / (1 + e^{-2δx})` so the far-left tail does
    /// not lose digits to `1 + tanh`.
    pub fn value(&self, x: f64) -> f64 {
        self.v0 / (1.0 + (-2.0 * self.delta * x).exp())
    }
}

pub fn potential_value(p: &StepPotential, x: f64) -> f64 {
    p.value(x)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `E >= V₀`: propagating wave on the right with wavenumber `ell`.
    Above { ell: f64, nu: f64 },
    /// `E < V₀`: evanescent tail `e^{-κx}`.
    Below { kappa: f64 },
}

impl Regime {
    pub fn is_above(&self) -> bool {
        matches!(self, Regime::Above { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub energy: f64,
    pub v0: f64,
    pub delta: f64,
    /// Left wavenumber `√E`.
    pub k: f64,
    /// `k / 2δ`.
    pub mu: f64,
    pub regime: Regime,
}

impl Kinematics {
    /// `α`: `-iν` above the barrier, `κ/2δ` below it.
    ///
    /// Both regimes then share one set of formulas, with `iν ↦ -κ/2δ`
    /// selecting the decaying solution on the right.
    pub fn alpha(&self) -> ComplexVal {
        match self.regime {
            Regime::Above { nu, .. } => Complex64::new(0.0, -nu),
            Regime::Below { kappa } => Complex64::new(kappa / (2.0 * self.delta), 0.0),
        }
    }

    /// `ν`, zero below the barrier.
    pub fn nu(&self) -> f64 {
        match self.regime {
            Regime::Above { nu, .. } => nu,
            Regime::Below { .. } => 0.0,
        }
    }

    /// Ratio `E / V₀`.
    pub fn ratio(&self) -> f64 {
        self.energy / self.v0
    }
}

pub fn kinematics(p: &StepPotential, energy: f64) -> Result<Kinematics> {
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::NonPositiveEnergy(energy));
    }
    let delta = p.delta();
    let k = energy.sqrt();
    let mu = k / (2.0 * delta);
    let regime = if energy >= p.v0() {
        let ell = (energy - p.v0()).sqrt();
        Regime::Above {
            ell,
            nu: ell / (2.0 * delta),
        }
    } else {
        Regime::Below {
            kappa: (p.v0() - energy).sqrt(),
        }
    };
    Ok(Kinematics {
        energy,
        v0: p.v0(),
        delta,
        k,
        mu,
        regime,
    })
}

/// Exponents and hypergeometric parameters of the right-hand solution
/// `ψ = y^α (1-y)^β ₂F₁(a, b; c; y)` with `y = -e^{-2δx}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypMapping {
    pub alpha: ComplexVal,
    pub beta: f64,
    pub a: ComplexVal,
    pub b: ComplexVal,
    pub c: ComplexVal,
}

pub fn hyp_mapping(kin: &Kinematics, _p: &StepPotential) -> HypMapping {
    let alpha = kin.alpha();
    let i_mu = Complex64::new(0.0, kin.mu);
    HypMapping {
        alpha,
        beta: 1.0,
        a: 1.0 + alpha + i_mu,
        b: 1.0 + alpha - i_mu,
        c: 1.0 + 2.0 * alpha,
    }
}
