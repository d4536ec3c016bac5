//! Exact scattering by the smooth step `V(x) = (V₀/2)(1 + tanh δx)`.
//!
//! * [`special_fns`]: complex log-Gamma and `₂F₁` on the negative real axis.
//! * [`model`]: the potential, wavenumbers and hypergeometric parameters.
//! * [`analytic`]: amplitudes, `R`/`T`, wavefunctions, continuity matching.
//! * [`oracle`]: an independent Numerov integrator used as ground truth.
//! * [`validation`]: the checks behind `qstep validate`.
//!
//! Units are dimensionless (`ħ²/2m = 1`), so `E` and `V₀` are squared
//! wavenumbers. Every state is normalized to unit incident amplitude.

pub mod analytic;
pub mod error;
pub mod model;
pub mod oracle;
pub mod special_fns;
pub mod validation;

pub use analytic::{
    amplitudes, coefficients, coefficients_gamma_form, density_scan, match_below,
    step_limit_coefficients, wavefunction, AmplitudeSet, Coefficients, ScatteringState,
    WaveSample,
};
pub use error::{Error, Result};
pub use model::{hyp_mapping, kinematics, potential_value, HypMapping, Kinematics, Regime, StepPotential};
pub use num_complex::Complex64;
pub use oracle::{compare, integrate, IntegrationConfig, OracleReport};
pub use special_fns::{hyp2f1, hyp2f1_deriv, hyp2f1_series, log_gamma, ComplexVal, Hyp2F1Args};
