//! Wave-model parameter records and validation.
//!
//! The media modeled here follow the power-law absorption family of
//! Treeby & Cox (J. Acoust. Soc. Am. 127, 2010), which extends the
//! Chen & Holm (2004) fractional-Laplacian model with a dispersion term:
//! sound speed `c0`, dissipation `a0`, dispersion `b0` and fractional order
//! `gamma`, with the Treeby–Cox coupling `b0 = -a0·c0·tan(π·gamma)`.
//! Everything downstream treats a validated [`WaveModel`] as immutable, so
//! models can be shared freely across parallel workers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for the TreebyCox `b0` consistency check.
pub const B0_REL_TOL: f64 = 1e-12;

/// |cos(πγ)| below this counts as a pole of tan(πγ).
const TAN_POLE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("sound speed must be positive, got c0 = {0}")]
    NonPositiveSpeed(f64),
    #[error("dissipation coefficient must be non-negative, got a0 = {0}")]
    NegativeDissipation(f64),
    #[error("fractional order must be positive, got gamma = {0}")]
    NonPositiveGamma(f64),
    #[error("declared family {family:?} contradicts coefficients: {detail}")]
    FamilyMismatch { family: ModelFamily, detail: String },
    #[error("tan(π·gamma) has a pole at gamma = {0}: coupling b0 undefined")]
    SingularCoupling(f64),
    #[error("tan(π·gamma) pole: |cos(π·{0})| < 1e-12")]
    TanPole(f64),
    #[error("model parameter {0} is not finite")]
    NonFiniteInput(&'static str),
}

/// Model family tag. Explicit rather than inferred so experiments can force
/// `Custom` coefficient sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelFamily {
    /// `a0 = b0 = 0`: the non-dissipative reference medium.
    Lossless,
    /// `b0 = 0`, `a0 > 0`: dissipation only.
    ChenHolm,
    /// `a0 > 0`, `b0` tied to `a0, c0, gamma` by the tan coupling.
    TreebyCox,
    /// Unconstrained coefficients.
    Custom,
}

impl ModelFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ModelFamily::Lossless => "lossless",
            ModelFamily::ChenHolm => "chen-holm",
            ModelFamily::TreebyCox => "treeby-cox",
            ModelFamily::Custom => "custom",
        }
    }
}

/// Validated parameter set of the dissipative wave equation.
///
/// Invariants (enforced by [`WaveModel::validate`]): `c0 > 0`, `a0 >= 0`,
/// `gamma > 0`, and the family-specific coefficient constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveModel {
    c0: f64,
    a0: f64,
    b0: f64,
    gamma: f64,
    family: ModelFamily,
}

impl WaveModel {
    /// Validate a raw parameter set against the family invariants.
    pub fn validate(
        c0: f64,
        a0: f64,
        b0: f64,
        gamma: f64,
        family: ModelFamily,
    ) -> Result<Self, ModelError> {
        if !c0.is_finite() {
            return Err(ModelError::NonFiniteInput("c0"));
        }
        if !a0.is_finite() {
            return Err(ModelError::NonFiniteInput("a0"));
        }
        if !b0.is_finite() {
            return Err(ModelError::NonFiniteInput("b0"));
        }
        if !gamma.is_finite() {
            return Err(ModelError::NonFiniteInput("gamma"));
        }
        if c0 <= 0.0 {
            return Err(ModelError::NonPositiveSpeed(c0));
        }
        if a0 < 0.0 {
            return Err(ModelError::NegativeDissipation(a0));
        }
        if gamma <= 0.0 {
            return Err(ModelError::NonPositiveGamma(gamma));
        }
        match family {
            ModelFamily::Lossless => {
                if a0 != 0.0 || b0 != 0.0 {
                    return Err(ModelError::FamilyMismatch {
                        family,
                        detail: format!("lossless requires a0 = b0 = 0, got a0 = {a0}, b0 = {b0}"),
                    });
                }
            }
            ModelFamily::ChenHolm => {
                if a0 <= 0.0 {
                    return Err(ModelError::FamilyMismatch {
                        family,
                        detail: format!("chen-holm requires a0 > 0, got a0 = {a0}"),
                    });
                }
                if b0 != 0.0 {
                    return Err(ModelError::FamilyMismatch {
                        family,
                        detail: format!("chen-holm requires b0 = 0, got b0 = {b0}"),
                    });
                }
            }
            ModelFamily::TreebyCox => {
                if a0 <= 0.0 {
                    return Err(ModelError::FamilyMismatch {
                        family,
                        detail: format!("treeby-cox requires a0 > 0, got a0 = {a0}"),
                    });
                }
                let derived = derive_b0(a0, c0, gamma)
                    .map_err(|_| ModelError::SingularCoupling(gamma))?;
                let scale = derived.abs().max(b0.abs());
                if (b0 - derived).abs() > B0_REL_TOL * scale {
                    return Err(ModelError::FamilyMismatch {
                        family,
                        detail: format!(
                            "treeby-cox requires b0 = -a0·c0·tan(π·gamma) = {derived}, got {b0}"
                        ),
                    });
                }
            }
            ModelFamily::Custom => {}
        }
        Ok(Self {
            c0,
            a0,
            b0,
            gamma,
            family,
        })
    }

    /// Non-dissipative medium.
    pub fn lossless(c0: f64) -> Result<Self, ModelError> {
        Self::validate(c0, 0.0, 0.0, 1.0, ModelFamily::Lossless)
    }

    /// Dissipation-only model (`b0 = 0`).
    pub fn chen_holm(c0: f64, a0: f64, gamma: f64) -> Result<Self, ModelError> {
        Self::validate(c0, a0, 0.0, gamma, ModelFamily::ChenHolm)
    }

    /// Full model with `b0` derived from the tan coupling.
    pub fn treeby_cox(c0: f64, a0: f64, gamma: f64) -> Result<Self, ModelError> {
        let b0 = derive_b0(a0, c0, gamma).map_err(|_| ModelError::SingularCoupling(gamma))?;
        Self::validate(c0, a0, b0, gamma, ModelFamily::TreebyCox)
    }

    /// Unconstrained coefficient set (base invariants still apply).
    pub fn custom(c0: f64, a0: f64, b0: f64, gamma: f64) -> Result<Self, ModelError> {
        Self::validate(c0, a0, b0, gamma, ModelFamily::Custom)
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn b0(&self) -> f64 {
        self.b0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn family(&self) -> ModelFamily {
        self.family
    }

    pub fn is_lossless(&self) -> bool {
        self.a0 == 0.0 && self.b0 == 0.0
    }

    /// Lossless companion with the same sound speed, used as the matched
    /// numerical control in tail-mass experiments.
    pub fn lossless_control(&self) -> Self {
        Self {
            c0: self.c0,
            a0: 0.0,
            b0: 0.0,
            gamma: 1.0,
            family: ModelFamily::Lossless,
        }
    }

    /// Stable identifier used in reports and CSV headers.
    pub fn id(&self) -> String {
        format!(
            "{}(c0={},a0={},b0={},gamma={})",
            self.family.name(),
            self.c0,
            self.a0,
            self.b0,
            self.gamma
        )
    }
}

/// Dispersion coupling `b0 = -a0·c0·tan(π·gamma)`.
///
/// `tan(π·gamma)` is evaluated after reducing `gamma` modulo 1 so that
/// integer orders give an exact zero. Half-odd-integer orders are poles and
/// yield [`ModelError::TanPole`]. Callers are expected to pass `a0 > 0`,
/// `c0 > 0`, `gamma > 0`.
pub fn derive_b0(a0: f64, c0: f64, gamma: f64) -> Result<f64, ModelError> {
    let reduced = gamma - gamma.round();
    let arg = std::f64::consts::PI * reduced;
    if arg.cos().abs() < TAN_POLE_TOL {
        return Err(ModelError::TanPole(gamma));
    }
    let t = arg.tan();
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(-a0 * c0 * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn lossless_model_validates() {
        let m = WaveModel::validate(1.0, 0.0, 0.0, 1.0, ModelFamily::Lossless).unwrap();
        assert!(m.is_lossless());
        assert_eq!(m.c0(), 1.0);
    }

    #[test]
    fn treeby_cox_rejects_wrong_b0() {
        // derive_b0(1,1,0.75) = -tan(3π/4) = 1, so b0 = 0.5 is a mismatch
        let err = WaveModel::validate(1.0, 1.0, 0.5, 0.75, ModelFamily::TreebyCox).unwrap_err();
        assert!(matches!(err, ModelError::FamilyMismatch { .. }), "{err}");
    }

    #[test]
    fn negative_dissipation_rejected() {
        let err = WaveModel::validate(1.0, -1.0, 0.0, 1.0, ModelFamily::ChenHolm).unwrap_err();
        assert_eq!(err, ModelError::NegativeDissipation(-1.0));
    }

    #[test]
    fn derive_b0_tan_three_quarters() {
        // tan(3π/4) = -1
        assert_relative_eq!(derive_b0(1.0, 1.0, 0.75).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn derive_b0_integer_gamma_is_exact_zero() {
        assert_eq!(derive_b0(2.0, 3.0, 1.0).unwrap(), 0.0);
        assert_eq!(derive_b0(0.5, 1.0, 2.0).unwrap(), 0.0);
        assert_eq!(derive_b0(0.5, 1.0, 4.0).unwrap(), 0.0);
    }

    #[test]
    fn derive_b0_pole_at_half_odd_integers() {
        assert!(matches!(
            derive_b0(1.0, 1.0, 0.5).unwrap_err(),
            ModelError::TanPole(_)
        ));
        assert!(matches!(
            derive_b0(1.0, 1.0, 1.5).unwrap_err(),
            ModelError::TanPole(_)
        ));
    }

    #[test]
    fn treeby_cox_half_odd_integer_is_singular() {
        assert!(matches!(
            WaveModel::treeby_cox(1.0, 0.5, 1.5).unwrap_err(),
            ModelError::SingularCoupling(_)
        ));
        assert!(matches!(
            WaveModel::validate(1.0, 1.0, 0.0, 0.5, ModelFamily::TreebyCox).unwrap_err(),
            ModelError::SingularCoupling(_)
        ));
    }

    #[test]
    fn non_positive_parameters_rejected() {
        assert!(matches!(
            WaveModel::lossless(0.0).unwrap_err(),
            ModelError::NonPositiveSpeed(_)
        ));
        assert!(matches!(
            WaveModel::custom(1.0, 0.0, 0.0, 0.0).unwrap_err(),
            ModelError::NonPositiveGamma(_)
        ));
        assert!(matches!(
            WaveModel::validate(f64::NAN, 0.0, 0.0, 1.0, ModelFamily::Lossless).unwrap_err(),
            ModelError::NonFiniteInput("c0")
        ));
    }

    proptest! {
        /// b0 is linear in a0 through its prefactor.
        #[test]
        fn derive_b0_linear_in_a0(a0 in 1e-6f64..1e3, gamma in 0.05f64..4.0) {
            prop_assume!((std::f64::consts::PI * (gamma - gamma.round())).cos().abs() > 1e-6);
            let unit = derive_b0(1.0, 2.0, gamma).unwrap();
            let full = derive_b0(a0, 2.0, gamma).unwrap();
            let scale = full.abs().max(1e-300);
            prop_assert!((full - a0 * unit).abs() <= 1e-14 * scale.max(a0 * unit.abs()));
        }

        /// validate accepts exactly the b0 produced by derive_b0.
        #[test]
        fn treeby_cox_round_trip(c0 in 0.1f64..10.0, a0 in 1e-3f64..10.0, gamma in 0.05f64..4.0) {
            prop_assume!((std::f64::consts::PI * (gamma - gamma.round())).cos().abs() > 1e-6);
            let b0 = derive_b0(a0, c0, gamma).unwrap();
            let m = WaveModel::validate(c0, a0, b0, gamma, ModelFamily::TreebyCox).unwrap();
            prop_assert_eq!(m.b0(), b0);
            let direct = WaveModel::treeby_cox(c0, a0, gamma).unwrap();
            prop_assert_eq!(direct.b0(), b0);
        }
    }
}
