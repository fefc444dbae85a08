//! Independent brute-force references used only by the fracwave test suites:
//! a time-domain integrator for the damped-oscillator equation behind Ĝ, a
//! dense matrix form of the radial transform pair, a quadruple-density
//! synthesis rerun, and a sine integral for closed-form shell masses.
//!
//! Everything here is deliberately single-threaded and free of the shortcuts
//! the shipping code takes; agreement between the two paths is what the
//! acceptance suite certifies. None of this is compiled into release
//! artifacts — the crate only ever appears as a dev-dependency.

use fracwave_core::dispersion::SPECTRAL_NORM;
use fracwave_core::fracop::{FieldMeta, RadialField};
use fracwave_core::model::WaveModel;
use fracwave_core::quad::PanelRule;
use fracwave_core::synth::{green_spatial, GridConfig};
use fracwave_core::SynthError;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    /// dt violates the explicit stability bound dt·|λ|max ≤ 2.5.
    StabilityError { dt: f64, lambda_max: f64 },
    /// Dense transform matrices are capped at 2048 nodes.
    SizeTooLarge(usize),
    /// The dense oracle only handles uniform radius grids.
    NonUniformGrid,
    Synth(SynthError),
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::StabilityError { dt, lambda_max } => write!(
                f,
                "dt = {dt} unstable for |λ|max = {lambda_max} (need dt·|λ|max ≤ 2.5)"
            ),
            OracleError::SizeTooLarge(n) => write!(f, "dense oracle capped at 2048 nodes, got {n}"),
            OracleError::NonUniformGrid => write!(f, "dense oracle needs a uniform radius grid"),
            OracleError::Synth(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Ĝ(k, ·) sampled on a uniform time grid by direct integration.
#[derive(Debug, Clone)]
pub struct OdeSolution {
    pub dt: f64,
    /// values[i] = Ĝ(k, i·dt)
    pub values: Vec<f64>,
}

impl OdeSolution {
    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.dt
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Integrate `u'' + a0k^γ·u' + (c0²k² + b0k^{γ+1/2})·u = 0` for t > 0 with
/// the impulse-equivalent initial data `u(0) = 0`, `u'(0) = (2π)^{-3/2}` by
/// classical fourth-order Runge–Kutta.
///
/// Callers should pick dt resolving both 1/μ and 1/|ϑ| by at least 50 steps;
/// dt beyond the explicit stability bound is rejected outright.
pub fn ode_green_oracle(
    k: f64,
    model: &WaveModel,
    t_end: f64,
    dt: f64,
) -> Result<OdeSolution, OracleError> {
    let damping = model.a0() * k.powf(model.gamma());
    let stiffness =
        model.c0() * model.c0() * k * k + model.b0() * k.powf(model.gamma() + 0.5);
    // |λ| for both roots of λ² - damping·λ + stiffness = 0
    let mu = 0.5 * damping;
    let disc = mu * mu - stiffness;
    let lambda_max = if disc >= 0.0 {
        mu + disc.sqrt()
    } else {
        stiffness.sqrt()
    };
    if dt * lambda_max > 2.5 {
        return Err(OracleError::StabilityError { dt, lambda_max });
    }
    let steps = (t_end / dt).ceil() as usize;
    let mut u = 0.0f64;
    let mut v = SPECTRAL_NORM;
    let mut values = Vec::with_capacity(steps + 1);
    values.push(u);
    let accel = |u: f64, v: f64| -damping * v - stiffness * u;
    for _ in 0..steps {
        let k1u = v;
        let k1v = accel(u, v);
        let k2u = v + 0.5 * dt * k1v;
        let k2v = accel(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v);
        let k3u = v + 0.5 * dt * k2v;
        let k3v = accel(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v);
        let k4u = v + dt * k3v;
        let k4v = accel(u + dt * k3u, v + dt * k3v);
        u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        values.push(u);
    }
    Ok(OdeSolution { dt, values })
}

/// Dense-matrix fractional Laplacian: explicit N×N trapezoid transform
/// matrices with the |k|^{2γ} multiplier in between, no panel quadrature, no
/// parallelism. `gamma = 0` gives the identity-multiplier round trip.
///
/// The k-side rows are built in the substituted variable u = √k
/// (dk = 2u·du), which turns every fractional power `k^{γ+m}` into a smooth
/// integrand at the origin; a plain uniform-k trapezoid rule would otherwise
/// carry an O(Δk^{2γ+1}) endpoint residue that swamps the comparison.
pub fn dense_transform_oracle(
    field: &RadialField,
    gamma: f64,
    n: usize,
) -> Result<RadialField, OracleError> {
    if n > 2048 {
        return Err(OracleError::SizeTooLarge(n));
    }
    let r = field.r_grid();
    let nr = r.len();
    if nr > 2048 {
        return Err(OracleError::SizeTooLarge(nr));
    }
    let dr = r[1] - r[0];
    if r.windows(2).any(|w| (w[1] - w[0] - dr).abs() > 1e-9 * dr) {
        return Err(OracleError::NonUniformGrid);
    }
    let k_max = field.meta.k_max;
    let du = k_max.sqrt() / (n - 1) as f64;
    let pref = SPECTRAL_NORM * 4.0 * std::f64::consts::PI;

    // forward matrix row per k node (trapezoid in r), k_j = (j·du)²
    let mut spectrum = vec![0.0f64; n];
    for (j, s) in spectrum.iter_mut().enumerate() {
        let k = (du * j as f64).powi(2);
        let mut row_sum = 0.0;
        for (i, &ri) in r.iter().enumerate() {
            let w = if i == 0 || i == nr - 1 { 0.5 * dr } else { dr };
            let kernel = if k == 0.0 { ri * ri } else { ri * (k * ri).sin() / k };
            row_sum += w * kernel * field.values()[i];
        }
        *s = pref * row_sum * k.powf(2.0 * gamma);
    }

    // inverse matrix row per output radius: ∫k·S·sin(kr)dk = ∫2u³·S·sin(u²r)du
    let mut out = vec![0.0f64; nr];
    for (i, o) in out.iter_mut().enumerate() {
        let ri = r[i];
        let mut row_sum = 0.0;
        for (j, &s) in spectrum.iter().enumerate() {
            let u = du * j as f64;
            let w = if j == 0 || j == n - 1 { 0.5 * du } else { du };
            let kernel = if ri == 0.0 {
                2.0 * u.powi(5)
            } else {
                2.0 * u.powi(3) * (u * u * ri).sin() / ri
            };
            row_sum += w * kernel * s;
        }
        *o = pref * row_sum;
    }

    let meta = FieldMeta {
        k_max,
        taper: "none".to_string(),
        quadrature: format!("dense-trapezoid-sqrt-{n}"),
        trunc_err: field.meta.trunc_err,
        model_id: field.meta.model_id.clone(),
        t: field.meta.t,
    };
    RadialField::new(r.to_vec(), out, meta).map_err(|e| OracleError::Synth(SynthError::Field(e)))
}

/// Reference synthesis at quadruple node density (32 nodes per oscillation
/// period instead of 8), otherwise identical configuration.
pub fn dense_synthesis_oracle(
    model: &WaveModel,
    t: f64,
    cfg: &GridConfig,
) -> Result<RadialField, OracleError> {
    let fine = GridConfig {
        nodes_per_period: cfg.nodes_per_period * 4,
        ..*cfg
    };
    green_spatial(model, t, &fine).map_err(OracleError::Synth)
}

/// Sine integral Si(x) = ∫₀ˣ sin(u)/u du.
///
/// Series below |x| = 4, panel quadrature to |x| = 40, asymptotic expansion
/// beyond; odd in x. Accurate to ~1e-10 everywhere, which is far below the
/// tolerances of the closed-form mass checks it serves.
pub fn sine_integral(x: f64) -> f64 {
    let ax = x.abs();
    let s = if ax <= 4.0 {
        si_series(ax)
    } else if ax < 40.0 {
        let rule = PanelRule::composite(0.0, ax, (ax / 3.0).ceil() as usize, 12);
        rule.integrate(|u| if u.abs() < 1e-8 { 1.0 } else { u.sin() / u })
    } else {
        si_asymptotic(ax)
    };
    if x < 0.0 {
        -s
    } else {
        s
    }
}

fn si_series(x: f64) -> f64 {
    // Si(x) = Σ (-1)^n x^{2n+1} / ((2n+1)·(2n+1)!); c_n carries the factorial
    let x2 = x * x;
    let mut c = x;
    let mut sum = x;
    for n in 1..40 {
        let two_n = 2.0 * n as f64;
        c *= -x2 / (two_n * (two_n + 1.0));
        let term = c / (two_n + 1.0);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

fn si_asymptotic(x: f64) -> f64 {
    // f(x) ~ (1/x)Σ(-1)^n (2n)!/x^{2n},  g(x) ~ (1/x²)Σ(-1)^n (2n+1)!/x^{2n}
    let mut f = 0.0;
    let mut g = 0.0;
    let mut term_f = 1.0 / x;
    let mut term_g = 1.0 / (x * x);
    let mut prev_f = f64::INFINITY;
    for n in 0..20 {
        if term_f.abs() > prev_f {
            break;
        }
        f += term_f;
        g += term_g;
        prev_f = term_f.abs();
        let m = (2 * n + 1) as f64;
        term_f *= -(m * (m + 1.0)) / (x * x);
        term_g *= -((m + 1.0) * (m + 2.0)) / (x * x);
    }
    std::f64::consts::FRAC_PI_2 - x.cos() * f - x.sin() * g
}
