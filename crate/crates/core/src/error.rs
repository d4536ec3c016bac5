use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("log-gamma evaluated at or near the pole {0}")]
    Pole(Complex64),

    #[error("hypergeometric parameter c = {0} is zero or a negative integer")]
    InvalidC(Complex64),

    #[error("hypergeometric series did not converge within {terms} terms at z = {z}")]
    NoConvergence { z: Complex64, terms: usize },

    #[error("connection formula is singular: a - b = {0} is an integer")]
    DegenerateParameters(Complex64),

    #[error("argument z = {0} is outside the supported domain (real z <= 0)")]
    OutOfDomain(Complex64),

    #[error("non-finite result in {0}")]
    NonFinite(&'static str),

    #[error("invalid potential: v0 = {v0}, delta = {delta} (both must be positive and finite)")]
    InvalidPotential { v0: f64, delta: f64 },

    #[error("energy must be positive, got {0}")]
    NonPositiveEnergy(f64),

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("operation requires energy above the barrier")]
    BelowRegime,

    #[error("operation requires energy below the barrier")]
    AboveRegime,

    #[error("|x| = {x} exceeds the overflow guard {limit}")]
    OverflowGuard { x: f64, limit: f64 },

    #[error("continuity matching denominator {0:e} is singular")]
    SingularWronskian(f64),

    #[error("integration grows without bound (max |psi| = {0:e})")]
    UnstableGrowth(f64),

    #[error("amplitude extraction is ill-conditioned (|sin(k dx)| = {0:e})")]
    IllConditioned(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
