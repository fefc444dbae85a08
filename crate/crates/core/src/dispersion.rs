//! Closed-form k-space Green function of the dissipative density wave
//! equation.
//!
//! Fourier transform in space turns the wave equation into a damped
//! oscillator per wave number k:
//!
//! ```text
//! Ĝ'' + a0·k^γ·Ĝ' + (c0²k² + b0·k^{γ+1/2})·Ĝ = δ(t)/(2π)^{3/2},
//! ```
//!
//! solved by `Ĝ(k,t) = e^{-μt}(2π)^{-3/2} sin(ϑt)/ϑ` for t > 0 with damping
//! `μ = a0·k^γ/2` and oscillation rate `ϑ² = c0²k² + b0·k^{γ+1/2} - a0²k^{2γ}/4`.
//! The same expression holds on the overdamped branch ϑ² < 0, where
//! `sin(ϑt)/ϑ` turns into `sinh(|ϑ|t)/|ϑ|`; the damping envelope is folded
//! into that branch so the product never overflows even when `μt` is in the
//! thousands. Evaluation at complex wave numbers (the Paley–Wiener ray
//! `z1 = i^{2/γ}k1` for even integer γ) reuses the analytic continuation
//! `|k|^γ := (k·k)^{γ/2}` with principal powers.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::model::WaveModel;

/// `(2π)^{-3/2}`, the symmetric-convention Fourier normalization of the
/// impulse source.
pub const SPECTRAL_NORM: f64 = 0.063_493_635_934_240_97;

/// Below this value of |ϑt| the sinc-type factors switch to series form to
/// avoid cancellation at the ϑ → 0 crossover.
const SERIES_THRESHOLD: f64 = 1e-4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DispersionError {
    #[error("finite-difference step h = {h} too large for t = {t} (need t > 2h)")]
    StepTooLarge { h: f64, t: f64 },
    #[error("complex-ray evaluation requires an even integer gamma, got {0}")]
    GammaNotEvenInteger(f64),
}

/// Damping rate `μ(k) = a0·k^γ/2`.
pub fn mu(k: f64, model: &WaveModel) -> f64 {
    debug_assert!(k >= 0.0);
    0.5 * model.a0() * k.powf(model.gamma())
}

/// Real ϑ², the discriminant of the dispersion quadratic:
/// `ϑ² = c0²k² + b0·k^{γ+1/2} - a0²k^{2γ}/4`.
pub fn theta_sq(k: f64, model: &WaveModel) -> f64 {
    debug_assert!(k >= 0.0);
    let c0 = model.c0();
    let kg = k.powf(model.gamma());
    c0 * c0 * k * k + model.b0() * k.powf(model.gamma() + 0.5) - 0.25 * kg * kg * model.a0() * model.a0()
}

/// Principal square root of ϑ²: real non-negative on the oscillatory branch,
/// positive imaginary on the overdamped branch.
pub fn theta(k: f64, model: &WaveModel) -> Complex64 {
    let ts = theta_sq(k, model);
    if ts >= 0.0 {
        Complex64::new(ts.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-ts).sqrt())
    }
}

/// Roots and derived rates of the dispersion quadratic
/// `λ² - a0·k^γ·λ + (c0²k² + b0·k^{γ+1/2}) = 0` at one wave number.
#[derive(Debug, Clone, Copy)]
pub struct DispersionSample {
    pub k: f64,
    pub mu: f64,
    pub theta_sq: f64,
    pub lambda1: Complex64,
    pub lambda2: Complex64,
}

impl DispersionSample {
    pub fn at(k: f64, model: &WaveModel) -> Self {
        let mu = mu(k, model);
        let ts = theta_sq(k, model);
        let th = theta(k, model);
        Self {
            k,
            mu,
            theta_sq: ts,
            lambda1: Complex64::new(mu, 0.0) + Complex64::i() * th,
            lambda2: Complex64::new(mu, 0.0) - Complex64::i() * th,
        }
    }
}

/// Both damped-oscillation factors needed by Ĝ and ∂Ĝ/∂t, with the envelope
/// folded in:
/// returns `(e^{-μt}·sin(ϑt)/ϑ, e^{-μt}·[cos(ϑt) - μ·sin(ϑt)/ϑ])`.
fn damped_factors(theta_sq: f64, mu: f64, t: f64) -> (f64, f64) {
    let x = theta_sq.abs().sqrt();
    if x * t < SERIES_THRESHOLD {
        // signed series: s < 0 reproduces the sinh/cosh branch automatically
        let s = theta_sq * t * t;
        let envelope = (-mu * t).exp();
        let sinc = t * (1.0 - s / 6.0 + s * s / 120.0);
        let cosl = 1.0 - s / 2.0 + s * s / 24.0;
        (envelope * sinc, envelope * (cosl - mu * sinc))
    } else if theta_sq > 0.0 {
        let envelope = (-mu * t).exp();
        let s = (x * t).sin() / x;
        let c = (x * t).cos();
        (envelope * s, envelope * (c - mu * s))
    } else {
        // e^{-μt}·sinh(xt) expressed through e^{(x-μ)t} and e^{-(x+μ)t}:
        // for damped media x <= μ, so neither exponential overflows
        let ep = ((x - mu) * t).exp();
        let em = (-(x + mu) * t).exp();
        let s = 0.5 * (ep - em) / x;
        let c = 0.5 * (ep + em);
        (s, c - mu * s)
    }
}

/// `Ĝ(k,t)`: real for all real k ≥ 0, zero for t ≤ 0.
pub fn green_spectrum(k: f64, t: f64, model: &WaveModel) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let (s, _) = damped_factors(theta_sq(k, model), mu(k, model), t);
    SPECTRAL_NORM * s
}

/// `∂Ĝ/∂t(k,t)` in closed form; equals `(2π)^{-3/2}` at t = 0⁺ for every k.
pub fn green_spectrum_dt(k: f64, t: f64, model: &WaveModel) -> f64 {
    if t < 0.0 {
        return 0.0;
    }
    let (_, d) = damped_factors(theta_sq(k, model), mu(k, model), t);
    SPECTRAL_NORM * d
}

fn require_even_integer_gamma(model: &WaveModel) -> Result<f64, DispersionError> {
    let gamma = model.gamma();
    if gamma <= 0.0 || gamma.fract() != 0.0 || !(gamma as u64).is_multiple_of(2) {
        return Err(DispersionError::GammaNotEvenInteger(gamma));
    }
    Ok(gamma)
}

/// Ĝ analytically continued to the complex wave vector `(z1, 0, 0)`.
///
/// Requires even integer γ, where `|k|^γ = (k·k)^{γ/2}` is entire; fractional
/// powers use the principal branch. On the Paley–Wiener ray `z1 = i^{2/γ}k1`
/// the continued `|k|^γ` equals `-k1^γ`, flipping the damping envelope into
/// growth.
pub fn green_spectrum_complex(
    z1: Complex64,
    t: f64,
    model: &WaveModel,
) -> Result<Complex64, DispersionError> {
    let gamma = require_even_integer_gamma(model)?;
    if t <= 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ksq = z1 * z1;
    let k_gamma = ksq.powf(0.5 * gamma);
    let k_gp = ksq.powf(0.5 * (gamma + 0.5));
    let c0 = model.c0();
    let mu_c = 0.5 * model.a0() * k_gamma;
    let th_sq = c0 * c0 * ksq + model.b0() * k_gp
        - 0.25 * model.a0() * model.a0() * k_gamma * k_gamma;
    let th = th_sq.sqrt();
    let w = th * t;
    let factor = if w.norm() < SERIES_THRESHOLD {
        let s = th_sq * t * t;
        t * (Complex64::new(1.0, 0.0) - s / 6.0 + s * s / 120.0)
    } else {
        w.sin() / th
    };
    Ok((-mu_c * t).exp() * SPECTRAL_NORM * factor)
}

/// `ln|Ĝ(i^{2/γ}k1, 0, 0, t)|` evaluated entirely in log space, so arguments
/// far past the f64 overflow point of Ĝ itself remain usable.
pub fn log_green_magnitude_on_ray(
    k1: f64,
    t: f64,
    model: &WaveModel,
) -> Result<f64, DispersionError> {
    let gamma = require_even_integer_gamma(model)?;
    let z1 = Complex64::from_polar(k1, std::f64::consts::PI / gamma);
    let ksq = z1 * z1;
    let k_gamma = ksq.powf(0.5 * gamma);
    let k_gp = ksq.powf(0.5 * (gamma + 0.5));
    let c0 = model.c0();
    let mu_c = 0.5 * model.a0() * k_gamma;
    let th_sq = c0 * c0 * ksq + model.b0() * k_gp
        - 0.25 * model.a0() * model.a0() * k_gamma * k_gamma;
    let th = th_sq.sqrt();
    let w = th * t;
    let log_factor = if w.norm() < SERIES_THRESHOLD {
        let s = th_sq * t * t;
        (t * (Complex64::new(1.0, 0.0) - s / 6.0 + s * s / 120.0)).norm().ln()
    } else {
        log_abs_sin(w) - th.norm().ln()
    };
    Ok(SPECTRAL_NORM.ln() - (mu_c * t).re + log_factor)
}

/// `ln|sin z|` without overflow: for large |Im z| uses
/// `|sin z| = e^{|y|}/2·|1 - e^{-2|y|}e^{∓2ix}|`.
fn log_abs_sin(z: Complex64) -> f64 {
    let y = z.im.abs();
    if y < 20.0 {
        return z.sin().norm().ln();
    }
    let r = (-2.0 * y).exp();
    y - std::f64::consts::LN_2
        + 0.5 * (-2.0 * r * (2.0 * z.re).cos() + r * r).ln_1p()
}

/// Residual of the damped-oscillator equation evaluated on Ĝ by second-order
/// centered differences in t, normalized by `max(|Ĝ|, (2π)^{-3/2})`.
pub fn helmholtz_residual(
    k: f64,
    t: f64,
    model: &WaveModel,
    h: f64,
) -> Result<f64, DispersionError> {
    if h <= 0.0 || 2.0 * h >= t {
        return Err(DispersionError::StepTooLarge { h, t });
    }
    let gm = green_spectrum(k, t - h, model);
    let g0 = green_spectrum(k, t, model);
    let gp = green_spectrum(k, t + h, model);
    let d2 = (gp - 2.0 * g0 + gm) / (h * h);
    let d1 = (gp - gm) / (2.0 * h);
    let kg = k.powf(model.gamma());
    let stiffness = model.c0() * model.c0() * k * k + model.b0() * k.powf(model.gamma() + 0.5);
    let residual = d2 + model.a0() * kg * d1 + stiffness * g0;
    Ok(residual.abs() / g0.abs().max(SPECTRAL_NORM))
}

/// Ĝ and ∂Ĝ/∂t sampled over a radial k-grid at fixed t.
#[derive(Debug, Clone, Serialize)]
pub struct GreenSpectrum {
    pub t: f64,
    pub model_id: String,
    pub samples: Vec<SpectrumSample>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectrumSample {
    pub k: f64,
    pub mu: f64,
    pub theta_sq: f64,
    pub g: f64,
    pub dg_dt: f64,
}

impl GreenSpectrum {
    pub fn sample(model: &WaveModel, t: f64, k_grid: &[f64]) -> Self {
        let samples = k_grid
            .iter()
            .map(|&k| SpectrumSample {
                k,
                mu: mu(k, model),
                theta_sq: theta_sq(k, model),
                g: green_spectrum(k, t, model),
                dg_dt: green_spectrum_dt(k, t, model),
            })
            .collect();
        Self {
            t,
            model_id: model.id(),
            samples,
        }
    }
}
