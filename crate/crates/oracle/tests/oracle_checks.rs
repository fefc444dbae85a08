//! Reference-implementation checks: the closed forms in fracwave-core
//! against the brute-force paths in this crate.

use fracwave_core::dispersion::{green_spectrum, SPECTRAL_NORM};
use fracwave_core::fracop::{apply_fractional_laplacian, bump_profile, RadialField};
use fracwave_core::model::WaveModel;
use fracwave_core::quad::PanelRule;
use fracwave_core::synth::{lossless_reference, lossless_reference_signed_mass};
use fracwave_oracle::{dense_transform_oracle, ode_green_oracle, sine_integral, OracleError};

#[test]
fn ode_matches_lossless_sine() {
    let model = WaveModel::lossless(1.0).unwrap();
    let sol = ode_green_oracle(1.0, &model, 6.0, 1e-3).unwrap();
    for i in (0..sol.len()).step_by(250) {
        let t = sol.time(i);
        assert!(
            (sol.values[i] - SPECTRAL_NORM * t.sin()).abs() < 1e-8,
            "lossless ODE solution off at t = {t}"
        );
    }
}

#[test]
fn ode_matches_overdamped_sinh_branch() {
    // γ=1, a0=4, k=1: Ĝ = (2π)^{-3/2} e^{-2t} sinh(√3 t)/√3
    let model = WaveModel::chen_holm(1.0, 4.0, 1.0).unwrap();
    let sol = ode_green_oracle(1.0, &model, 4.0, 5e-4).unwrap();
    let s3 = 3.0f64.sqrt();
    for i in (0..sol.len()).step_by(400) {
        let t = sol.time(i);
        let closed = SPECTRAL_NORM * (-2.0 * t).exp() * (s3 * t).sinh() / s3;
        assert!(
            (sol.values[i] - closed).abs() < 1e-7,
            "sinh branch off at t = {t}: {} vs {closed}",
            sol.values[i]
        );
    }
}

#[test]
fn ode_matches_treeby_cox_oscillatory_branch() {
    let model = WaveModel::treeby_cox(1.0, 1.0, 0.75).unwrap();
    let sol = ode_green_oracle(2.0, &model, 3.0, 5e-4).unwrap();
    for i in (0..sol.len()).step_by(300) {
        let t = sol.time(i);
        let closed = green_spectrum(2.0, t, &model);
        assert!(
            (sol.values[i] - closed).abs() < 1e-7,
            "treeby-cox spectrum off at t = {t}"
        );
    }
}

#[test]
fn ode_rejects_unstable_step() {
    let model = WaveModel::chen_holm(1.0, 4.0, 1.0).unwrap();
    // λmax = k(2+√3) ≈ 37 at k = 10, so dt = 0.1 is far past the bound
    assert!(matches!(
        ode_green_oracle(10.0, &model, 1.0, 0.1),
        Err(OracleError::StabilityError { .. })
    ));
}

#[test]
fn dense_identity_round_trip() {
    let field = RadialField::from_profile(|r| (-0.5 * r * r).exp(), 12.0, 1023, 60.0).unwrap();
    let back = dense_transform_oracle(&field, 0.0, 1024).unwrap();
    for (a, b) in back.values().iter().zip(field.values()) {
        assert!((a - b).abs() < 1e-9, "round trip drift {}", (a - b).abs());
    }
}

#[test]
fn dense_gaussian_laplacian_matches_analytic() {
    let field = RadialField::from_profile(|r| (-0.5 * r * r).exp(), 12.0, 1023, 60.0).unwrap();
    let out = dense_transform_oracle(&field, 1.0, 1024).unwrap();
    for (r, v) in out.r_grid().iter().zip(out.values()) {
        let expect = (3.0 - r * r) * (-0.5 * r * r).exp();
        assert!(
            (v - expect).abs() < 1e-6,
            "dense -Δ gaussian off at r = {r}: {v} vs {expect}"
        );
    }
}

#[test]
fn dense_bump_matches_fast_path() {
    // same k_max, same grid: the two quadrature schemes must agree far below
    // the truncation scale they share
    let field = RadialField::from_profile(|r| bump_profile(r, 1.0), 2.0, 2047, 800.0).unwrap();
    let dense = dense_transform_oracle(&field, 0.75, 2048).unwrap();
    let fast = apply_fractional_laplacian(&field, 0.75).unwrap();
    let mut worst = 0.0f64;
    for (a, b) in dense.values().iter().zip(fast.values()) {
        worst = worst.max((a - b).abs());
    }
    assert!(worst < 1e-8, "dense vs fast path deviation {worst}");
}

#[test]
fn dense_oracle_rejects_oversize() {
    let field = RadialField::from_profile(|r| (-0.5 * r * r).exp(), 12.0, 4000, 60.0).unwrap();
    assert!(matches!(
        dense_transform_oracle(&field, 1.0, 4096),
        Err(OracleError::SizeTooLarge(_))
    ));
    assert!(matches!(
        dense_transform_oracle(&field, 1.0, 1024),
        Err(OracleError::SizeTooLarge(_))
    ));
}

#[test]
fn shell_signed_mass_closed_form_vs_quadrature() {
    // Dirichlet-kernel shell: 4π∫₀^R g r² dr via panel quadrature against the
    // sine-integral antiderivative
    let (t, c0, k_max, r_upper) = (1.0, 1.0, 200.0, 3.0);
    let rule = PanelRule::composite(0.0, r_upper, 400, 12);
    let quad = 4.0
        * std::f64::consts::PI
        * rule.integrate(|r| {
            let grid = [r, r + 1e-9];
            lossless_reference(&grid, t, c0, k_max).values()[0] * r * r
        });
    let closed = lossless_reference_signed_mass(t, c0, k_max, r_upper, sine_integral);
    assert!(
        (quad - closed).abs() < 1e-6,
        "quadrature {quad} vs closed form {closed}"
    );
}

#[test]
fn shell_signed_mass_approaches_t() {
    // total signed mass of the band-limited shell → t as K → ∞
    for (t, c0) in [(1.0, 1.0), (0.5, 2.0)] {
        let mass = lossless_reference_signed_mass(t, c0, 1e7, 5.0 * c0 * t, sine_integral);
        assert!(
            (mass - t).abs() < 1e-6,
            "signed mass {mass} should approach t = {t}"
        );
    }
}
