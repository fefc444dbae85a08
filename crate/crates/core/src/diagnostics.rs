//! Quantitative causality diagnostics: front-speed falsification sweeps,
//! finite-difference non-smoothness probes of spectra at k = 0, and the
//! complex-ray growth probe for even fractional orders.
//!
//! Each diagnostic turns a qualitative support statement into a decision
//! rule. "The field does not vanish beyond radius r0" becomes: its tail
//! fraction exceeds both 10× its own truncation-error bar and 10× the
//! matched lossless control run through identical numerics.

use serde::Serialize;
use thiserror::Error;

use crate::dispersion::{log_green_magnitude_on_ray, DispersionError};
use crate::fracop::RadialField;
use crate::model::WaveModel;
use crate::quad::{trapezoid, trapezoid_beyond};
use crate::synth::{green_spatial, GridConfig, SynthError};

/// Tail radii sit `TAIL_MARGIN_CELLS`·Δr past the nominal front radius so the
/// band-limit width of the lossless shell never leaks into its own tail.
pub const TAIL_MARGIN_CELLS: f64 = 5.0;

/// Cap on reported complex-ray log-magnitudes (spec'd so |Ĝ| itself would
/// still be representable).
pub const PW_LOG_CAP: f64 = 700.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagnosticsError {
    #[error("field mass below 1e-300: tail fraction undefined")]
    ZeroMass,
    #[error("tail radius r0 = {0} lies outside the field grid")]
    RadiusOutOfRange(f64),
    #[error("front-speed candidates must be positive and sorted ascending")]
    InvalidSweep,
    #[error("stencil order n = {order} must exceed the symbol degree d = {d}")]
    OrderTooLow { order: usize, d: f64 },
    #[error("probe needs at least {need} usable samples, got {got}")]
    InsufficientSamples { need: usize, got: usize },
    #[error(transparent)]
    Dispersion(#[from] DispersionError),
    #[error(transparent)]
    Synth(#[from] SynthError),
}

/// Tail mass fraction `τ = ∫_{r>r0}|g|r²dr / ∫|g|r²dr` with its propagated
/// Richardson error bar (difference against the half-k_max companion
/// synthesis when the field carries one).
pub fn tail_fraction(field: &RadialField, r0: f64) -> Result<(f64, f64), DiagnosticsError> {
    if r0 > field.r_max() {
        return Err(DiagnosticsError::RadiusOutOfRange(r0));
    }
    let total = field.abs_mass();
    if total < 1e-300 {
        return Err(DiagnosticsError::ZeroMass);
    }
    let tau = field.abs_mass_beyond(r0) / total;
    let trunc_err = match field.coarse_values() {
        Some(coarse) => {
            let w: Vec<f64> = coarse
                .iter()
                .zip(field.r_grid())
                .map(|(v, r)| v.abs() * r * r)
                .collect();
            let coarse_total = trapezoid(field.r_grid(), &w);
            if coarse_total < 1e-300 {
                f64::INFINITY
            } else {
                let coarse_tau = trapezoid_beyond(field.r_grid(), &w, r0) / coarse_total;
                (tau - coarse_tau).abs().max(1e-15)
            }
        }
        None => 0.0,
    };
    Ok((tau, trunc_err))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepEntry {
    pub c_f: f64,
    pub r0: f64,
    pub tau: f64,
    pub trunc_err: f64,
}

/// Tail-mass fractions over a sweep of candidate front speeds, paired with
/// the lossless control run through identical numerics.
#[derive(Debug, Clone, Serialize)]
pub struct FrontSpeedReport {
    pub model_id: String,
    pub t: f64,
    pub taper: String,
    pub k_max: f64,
    pub dr: f64,
    pub entries: Vec<SweepEntry>,
    pub control: Vec<SweepEntry>,
}

/// Synthesize G(·,t) once, then measure the tail fraction beyond
/// `r0 = c_F·t + 5Δr` for every candidate speed, alongside the matched
/// lossless control.
pub fn front_speed_sweep(
    model: &WaveModel,
    t: f64,
    cf_list: &[f64],
    cfg: &GridConfig,
) -> Result<FrontSpeedReport, DiagnosticsError> {
    if cf_list.is_empty()
        || cf_list[0] <= 0.0
        || cf_list.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(DiagnosticsError::InvalidSweep);
    }
    let field = green_spatial(model, t, cfg)?;
    let control_field = green_spatial(&model.lossless_control(), t, cfg)?;
    let sweep = |f: &RadialField| -> Result<Vec<SweepEntry>, DiagnosticsError> {
        cf_list
            .iter()
            .map(|&c_f| {
                let r0 = c_f * t + TAIL_MARGIN_CELLS * cfg.dr;
                let (tau, trunc_err) = tail_fraction(f, r0)?;
                Ok(SweepEntry {
                    c_f,
                    r0,
                    tau,
                    trunc_err,
                })
            })
            .collect()
    };
    Ok(FrontSpeedReport {
        model_id: model.id(),
        t,
        taper: cfg.taper.label(),
        k_max: cfg.k_max,
        dr: cfg.dr,
        entries: sweep(&field)?,
        control: sweep(&control_field)?,
    })
}

/// Grid sized for a front-speed sweep: the largest tail radius plus headroom.
pub fn front_speed_grid(t: f64, cf_max: f64) -> GridConfig {
    let r_max = 1.25 * cf_max * t;
    let dr = r_max / 250.0;
    GridConfig {
        r_max,
        dr,
        k_max: 40.0 / dr,
        nodes_per_period: 8,
        taper: crate::transform::TaperMode::default_raised_cosine(),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProbeSample {
    pub h: f64,
    pub magnitude: f64,
    /// True when the estimate sits below the floating-point cancellation
    /// floor of the stencil, i.e. the difference has converged to zero.
    pub converged: bool,
}

/// Divergence fingerprint of an n-th order centered difference at zero.
#[derive(Debug, Clone, Serialize)]
pub struct NonsmoothnessProbe {
    pub order: usize,
    pub samples: Vec<ProbeSample>,
    /// Log-log slope of |Dₙ(h)| vs h over the non-converged samples:
    /// ≈ d - n for a symbol |k|^d of non-integer degree, ≥ 0 when the target
    /// is smooth.
    pub slope: f64,
}

/// Probe the Fourier symbol `|k1|^{2γ}` of `(-Δ)^γ` along one axis.
pub fn nonsmoothness_probe(
    gamma: f64,
    order: usize,
    h_list: &[f64],
) -> Result<NonsmoothnessProbe, DiagnosticsError> {
    let d = 2.0 * gamma;
    if (order as f64) <= d {
        return Err(DiagnosticsError::OrderTooLow { order, d });
    }
    Ok(probe_divergence(|k| k.abs().powf(d), order, h_list))
}

/// Same probe against an arbitrary even target, e.g. `k1 ↦ Ĝ(k1,0,0,t)`.
pub fn probe_divergence<F: Fn(f64) -> f64>(
    target: F,
    order: usize,
    h_list: &[f64],
) -> NonsmoothnessProbe {
    let coeffs = stencil_coefficients(order);
    let half = order as f64 / 2.0;
    let samples: Vec<ProbeSample> = h_list
        .iter()
        .map(|&h| {
            let mut acc = 0.0;
            let mut abs_acc = 0.0;
            for (j, &c) in coeffs.iter().enumerate() {
                let x = (half - j as f64) * h;
                let v = target(x);
                acc += c * v;
                abs_acc += c.abs() * v.abs();
            }
            let hn = h.powi(order as i32);
            let estimate = acc / hn;
            let floor = 100.0 * f64::EPSILON * abs_acc / hn;
            ProbeSample {
                h,
                magnitude: estimate.abs(),
                converged: estimate.abs() <= floor,
            }
        })
        .collect();
    let live: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| !s.converged && s.magnitude > 0.0)
        .map(|s| (s.h.ln(), s.magnitude.ln()))
        .collect();
    let slope = if live.len() < 2 {
        0.0
    } else {
        linear_slope(&live)
    };
    NonsmoothnessProbe {
        order,
        samples,
        slope,
    }
}

/// Signed binomial stencil weights `(-1)^j·C(n,j)`.
fn stencil_coefficients(order: usize) -> Vec<f64> {
    let mut c = vec![1.0f64];
    for _ in 0..order {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &v) in c.iter().enumerate() {
            next[i] += v;
            next[i + 1] += v;
        }
        c = next;
    }
    c.iter_mut()
        .enumerate()
        .for_each(|(j, v)| *v *= if j % 2 == 0 { 1.0 } else { -1.0 });
    c
}

/// Geometric default step list, 1e-1 down to 1e-4.
pub fn default_h_list() -> Vec<f64> {
    (0..=6).map(|i| 10f64.powf(-1.0 - 0.5 * i as f64)).collect()
}

fn linear_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in points {
        cov += (x - mx) * (y - my);
        var += (x - mx) * (x - mx);
    }
    cov / var
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PwSample {
    pub k1: f64,
    pub log_magnitude: f64,
}

/// Complex-ray growth fingerprint: log|Ĝ(i^{2/γ}k1,0,0,t)| samples with a
/// fitted growth law `log|Ĝ| ≈ C·k1^p + q`. The free intercept q absorbs the
/// slowly varying `-ln(a0·k1^γ)` prefactor of the sinh asymptotic so it
/// cannot tilt the exponent.
#[derive(Debug, Clone, Serialize)]
pub struct PwProbeReport {
    pub gamma: f64,
    pub t: f64,
    pub samples: Vec<PwSample>,
    /// Fitted growth exponent p; compact support would force p ≤ 1.
    pub exponent: f64,
    /// Fitted growth coefficient C; the asymptotic value is a0·t.
    pub coefficient: f64,
    /// Fitted intercept q.
    pub offset: f64,
    /// R² of the fit over its window.
    pub r_squared: f64,
}

/// Evaluate the ray magnitudes in log space and fit the growth law over the
/// top decade of magnitudes. Samples past the `PW_LOG_CAP` are discarded.
pub fn pw_growth_probe(
    model: &WaveModel,
    t: f64,
    k1_list: &[f64],
) -> Result<PwProbeReport, DiagnosticsError> {
    let mut samples = Vec::with_capacity(k1_list.len());
    for &k1 in k1_list {
        let lm = log_green_magnitude_on_ray(k1, t, model)?;
        if lm.is_finite() && lm < PW_LOG_CAP {
            samples.push(PwSample {
                k1,
                log_magnitude: lm,
            });
        }
    }
    let y_max = samples
        .iter()
        .map(|s| s.log_magnitude)
        .fold(f64::NEG_INFINITY, f64::max);
    let window: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.log_magnitude > 0.0 && s.log_magnitude >= 0.1 * y_max)
        .map(|s| (s.k1, s.log_magnitude))
        .collect();
    if window.len() < 5 {
        return Err(DiagnosticsError::InsufficientSamples {
            need: 5,
            got: window.len(),
        });
    }
    let (coefficient, exponent, offset, r_squared) = fit_power_law(&window);
    Ok(PwProbeReport {
        gamma: model.gamma(),
        t,
        samples,
        exponent,
        coefficient,
        offset,
        r_squared,
    })
}

/// Geometric k1 list reaching the largest ray wave number whose
/// log-magnitude stays under the cap (growth ≈ a0·t·k1^γ).
pub fn default_k1_list(model: &WaveModel, t: f64, points: usize) -> Vec<f64> {
    let k1_hi = (PW_LOG_CAP / (model.a0() * t)).powf(1.0 / model.gamma());
    let k1_lo = k1_hi / 100.0;
    let ratio = (k1_hi / k1_lo).powf(1.0 / (points.saturating_sub(1).max(1)) as f64);
    (0..points).map(|i| k1_lo * ratio.powi(i as i32)).collect()
}

/// Least-squares fit of `y = C·x^p + q`: log-log regression seed, then
/// Gauss–Newton refinement on the absolute residuals (which weights the fit
/// toward the largest magnitudes, where the asymptotic law is cleanest).
/// Returns (C, p, q, R²).
fn fit_power_law(points: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let mut p = linear_slope(&logs);
    let n = points.len() as f64;
    let mean_ly = logs.iter().map(|l| l.1).sum::<f64>() / n;
    let mean_lx = logs.iter().map(|l| l.0).sum::<f64>() / n;
    let mut c = (mean_ly - p * mean_lx).exp();
    let mut q = 0.0f64;
    for _ in 0..80 {
        // residual r = y - (C·x^p + q), jacobian columns [x^p, C·x^p·ln x, 1]
        let mut jtj = [[0.0f64; 3]; 3];
        let mut jtr = [0.0f64; 3];
        for &(x, y) in points {
            let xp = x.powf(p);
            let r = y - (c * xp + q);
            let j = [xp, c * xp * x.ln(), 1.0];
            for a in 0..3 {
                for b in 0..3 {
                    jtj[a][b] += j[a] * j[b];
                }
                jtr[a] += j[a] * r;
            }
        }
        let Some(step) = solve3(&jtj, &jtr) else {
            break;
        };
        c += step[0];
        p += step[1];
        q += step[2];
        if step[0].abs() <= 1e-12 * c.abs().max(1e-30)
            && step[1].abs() <= 1e-12 * p.abs().max(1e-30)
        {
            break;
        }
    }
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    let mean_y = points.iter().map(|s| s.1).sum::<f64>() / n;
    for &(x, y) in points {
        ss_res += (y - (c * x.powf(p) + q)).powi(2);
        ss_tot += (y - mean_y).powi(2);
    }
    (c, p, q, 1.0 - ss_res / ss_tot)
}

/// Solve a 3x3 symmetric system by Gaussian elimination with partial
/// pivoting. Returns None when the system is numerically singular.
fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (cell, p) in m[row].iter_mut().zip(pivot_row).skip(col) {
                *cell -= f * p;
            }
        }
    }
    let mut x = [0.0f64; 3];
    for i in (0..3).rev() {
        let mut s = m[i][3];
        for k in i + 1..3 {
            s -= m[i][k] * x[k];
        }
        x[i] = s / m[i][i];
    }
    Some(x)
}
