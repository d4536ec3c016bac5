//! Complex log-Gamma and the Gauss hypergeometric function on the negative
//! real axis.
//!
//! `hyp2f1` only supports real `z <= 0`, which is everything the scattering
//! solutions need (`z = -exp(∓2δx)`). Evaluation is staged by `|z|`:
//!
//! | range of `z`     | route                                            |
//! |------------------|--------------------------------------------------|
//! | `[-0.5, 0]`      | power series                                     |
//! | `[-1, -0.5)`     | Pfaff transform to `z/(z-1) ∈ (1/3, 1/2]`         |
//! | `(-∞, -1)`       | connection to `1/z`, then one of the above       |

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex value type used throughout the crate.
pub type ComplexVal = Complex64;

const POLE_TOL: f64 = 1e-12;
const SERIES_RTOL: f64 = 1e-16;
const SERIES_MAX_TERMS: usize = 10_000;
const SERIES_MAX_ABS_Z: f64 = 0.75;
const DEGENERATE_TOL: f64 = 1e-10;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Parameters of `₂F₁(a, b; c; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Args {
    pub a: ComplexVal,
    pub b: ComplexVal,
    pub c: ComplexVal,
    pub z: ComplexVal,
}

impl Hyp2F1Args {
    pub fn new(a: ComplexVal, b: ComplexVal, c: ComplexVal, z: ComplexVal) -> Self {
        Self { a, b, c, z }
    }

    /// Real-argument shorthand.
    pub fn real_z(a: ComplexVal, b: ComplexVal, c: ComplexVal, z: f64) -> Self {
        Self::new(a, b, c, Complex64::new(z, 0.0))
    }

    #[cfg(test)]
    fn swapped(self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            ..self
        }
    }
}

/// Returns the non-positive integer `z` is within `tol` of, if any.
fn near_non_positive_integer(z: ComplexVal, tol: f64) -> Option<f64> {
    let n = z.re.round();
    if n <= 0.0 && (z - n).norm() <= tol {
        Some(n)
    } else {
        None
    }
}

fn check_c(c: ComplexVal) -> Result<()> {
    if near_non_positive_integer(c, POLE_TOL).is_some() {
        Err(Error::InvalidC(c))
    } else {
        Ok(())
    }
}

fn finite(v: ComplexVal, what: &'static str) -> Result<ComplexVal> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what))
    }
}

fn lanczos_ln_gamma(z: ComplexVal) -> ComplexVal {
    let zm1 = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (zm1 + 0.5) * t.ln() - t + series.ln()
}

/// Principal `log(sin(πz))`, stable for large `|Im z|`.
fn ln_sin_pi(z: ComplexVal) -> ComplexVal {
    if z.im.abs() < 20.0 {
        return (PI * z).sin().ln();
    }
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(πz) = (i/2) exp(πy - iπx) (1 - exp(2iπz)), with exp(2iπz) tiny
    let tail = Complex64::new(1.0, 0.0) - (Complex64::new(0.0, 2.0 * PI) * z).exp();
    let modulus = PI * z.im + tail.norm().ln() - std::f64::consts::LN_2;
    let arg = -PI * z.re + tail.arg() + 0.5 * PI;
    // wrap into (-π, π]
    Complex64::new(modulus, (arg + PI).rem_euclid(2.0 * PI) - PI)
}

/// Principal branch of `log Γ(z)`.
///
/// Lanczos approximation for `Re z >= 0.5`, reflection otherwise. The branch
/// correction on the reflected half keeps the result continuous away from the
/// negative real axis, so `log_gamma(z + 1) = log_gamma(z) + log(z)` holds
/// without `2πi` jumps.
pub fn log_gamma(z: ComplexVal) -> Result<ComplexVal> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("log_gamma argument"));
    }
    if near_non_positive_integer(z, POLE_TOL).is_some() {
        return Err(Error::Pole(z));
    }
    let value = if z.re < 0.5 {
        let sign = if z.im < 0.0 { -1.0 } else { 1.0 };
        let branch = sign * 2.0 * PI * (0.5 * z.re + 0.25).floor();
        Complex64::new(PI.ln(), branch) - ln_sin_pi(z) - lanczos_ln_gamma(1.0 - z)
    } else {
        lanczos_ln_gamma(z)
    };
    finite(value, "log_gamma")
}

/// `|Γ(1 + iη)|² = πη / sinh(πη)`.
pub fn gamma_abs_sq_one_plus_i_eta(eta: f64) -> f64 {
    let x = PI * eta.abs();
    if x < 1e-8 {
        // x/sinh(x) = 1 - x²/6 + ...
        1.0 - x * x / 6.0
    } else if x > 30.0 {
        2.0 * x * (-x).exp() / -(-2.0 * x).exp_m1()
    } else {
        x / x.sinh()
    }
}

/// `Γ(n₁)…Γ(n_k) / (Γ(d₁)…Γ(d_m))` evaluated in log space.
///
/// A pole in the denominator makes the product vanish; a pole in the
/// numerator is an error.
pub(crate) fn gamma_ratio(numer: &[ComplexVal], denom: &[ComplexVal]) -> Result<ComplexVal> {
    gamma_ratio_with(numer, denom, log_gamma)
}

pub(crate) fn gamma_ratio_with<G>(
    numer: &[ComplexVal],
    denom: &[ComplexVal],
    ln_gamma: G,
) -> Result<ComplexVal>
where
    G: Fn(ComplexVal) -> Result<ComplexVal>,
{
    if denom
        .iter()
        .any(|&d| near_non_positive_integer(d, POLE_TOL).is_some())
    {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &n in numer {
        acc += ln_gamma(n)?;
    }
    for &d in denom {
        acc -= ln_gamma(d)?;
    }
    finite(acc.exp(), "gamma ratio")
}

/// Direct power series of `₂F₁`. Requires `|z| <= 0.75`.
pub fn hyp2f1_series(args: Hyp2F1Args) -> Result<ComplexVal> {
    let Hyp2F1Args { a, b, c, z } = args;
    check_c(c)?;
    if z.norm() > SERIES_MAX_ABS_Z + 1e-12 {
        return Err(Error::OutOfDomain(z));
    }
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut small_run = 0;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.norm() == 0.0 {
            return finite(sum, "hyp2f1_series");
        }
        // two consecutive small terms so a single accidental near-zero
        // factor cannot stop the sum early
        if term.norm() < SERIES_RTOL * sum.norm() {
            small_run += 1;
            if small_run == 2 {
                return finite(sum, "hyp2f1_series");
            }
        } else {
            small_run = 0;
        }
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::NonFinite("hyp2f1_series"));
        }
    }
    Err(Error::NoConvergence {
        z,
        terms: SERIES_MAX_TERMS,
    })
}

/// Pfaff: `₂F₁(a,b;c;z) = (1-z)^{-a} ₂F₁(a, c-b; c; z/(z-1))`.
fn hyp2f1_pfaff(args: Hyp2F1Args) -> Result<ComplexVal> {
    let Hyp2F1Args { a, b, c, z } = args;
    let w = z / (z - 1.0);
    let prefactor = (-a * (1.0 - z).ln()).exp();
    let inner = hyp2f1_series(Hyp2F1Args::new(a, c - b, c, w))?;
    finite(prefactor * inner, "hyp2f1 (Pfaff)")
}

/// Connection of `z` to `1/z`, valid for `|arg(-z)| < π`.
fn hyp2f1_connection(args: Hyp2F1Args) -> Result<ComplexVal> {
    let Hyp2F1Args { a, b, c, z } = args;
    let diff = a - b;
    if diff.im.abs() <= DEGENERATE_TOL && (diff.re - diff.re.round()).abs() <= DEGENERATE_TOL {
        return Err(Error::DegenerateParameters(diff));
    }
    let inv = 1.0 / z;
    let ln_minus_z = (-z).ln();

    let first = {
        let g = gamma_ratio(&[c, b - a], &[b, c - a])?;
        if g == Complex64::new(0.0, 0.0) {
            g
        } else {
            let f = hyp2f1(Hyp2F1Args::new(a, 1.0 + a - c, 1.0 + a - b, inv))?;
            g * (-a * ln_minus_z).exp() * f
        }
    };
    let second = {
        let g = gamma_ratio(&[c, a - b], &[a, c - b])?;
        if g == Complex64::new(0.0, 0.0) {
            g
        } else {
            let f = hyp2f1(Hyp2F1Args::new(b, 1.0 + b - c, 1.0 + b - a, inv))?;
            g * (-b * ln_minus_z).exp() * f
        }
    };
    finite(first + second, "hyp2f1 (connection)")
}

/// `₂F₁(a, b; c; z)` for real `z <= 0`.
pub fn hyp2f1(args: Hyp2F1Args) -> Result<ComplexVal> {
    check_c(args.c)?;
    let z = args.z;
    if z.im != 0.0 || z.re > 0.0 || !z.re.is_finite() {
        return Err(Error::OutOfDomain(z));
    }
    if z.re >= -0.5 {
        hyp2f1_series(args)
    } else if z.re >= -1.0 {
        hyp2f1_pfaff(args)
    } else {
        hyp2f1_connection(args)
    }
}

/// `d/dz ₂F₁(a, b; c; z) = (ab/c) ₂F₁(a+1, b+1; c+1; z)`.
pub fn hyp2f1_deriv(args: Hyp2F1Args) -> Result<ComplexVal> {
    check_c(args.c)?;
    let Hyp2F1Args { a, b, c, z } = args;
    let scale = a * b / c;
    if scale == Complex64::new(0.0, 0.0) {
        return Ok(scale);
    }
    let shifted = hyp2f1(Hyp2F1Args::new(a + 1.0, b + 1.0, c + 1.0, z))?;
    finite(scale * shifted, "hyp2f1_deriv")
}

/// Value and derivative together.
pub(crate) fn hyp2f1_with_deriv(args: Hyp2F1Args) -> Result<(ComplexVal, ComplexVal)> {
    Ok((hyp2f1(args)?, hyp2f1_deriv(args)?))
}
