//! Werner's operator convolution and the inequality-certification harness.

mod chain;
mod conv;
mod estimate;
mod young;

pub use chain::{check_support, verify_bound_chain, BoundChain, BoundChainContext};
pub use conv::{check_eq2, op_conv, ConvMethod};
pub use estimate::{
    estimate_constant, estimate_constants, sample_ratio, ConstantEstimate, RatioSample, RatioStats,
};
pub use young::{random_low_rank_operator, werner_young_trial, young_bound, YoungTrialReport};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exponent::Exponent;

/// Tolerance for `L_τ ⋆ L_Φ = τ ∗ Φ`, relative to `‖τ ∗ Φ‖_∞`.
pub const INTERTWINING_TOLERANCE: f64 = 1e-6;
/// Relative slack allowed in a single Werner–Young trial.
pub const YOUNG_TOLERANCE: f64 = 1e-6;
/// Relative slack for `‖τ‖_p ≤ ‖L_{F_σΨ}‖_{S¹}·‖L_τ‖_{S^p}`.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-3;
/// Relative slack for the classical Young step.
pub const CLASSICAL_YOUNG_TOLERANCE: f64 = 1e-9;
/// Reconstruction `τ = τ ∗ F_σΨ`, relative L² error.
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-8;
/// Largest fraction of `F_σ(τ)` energy allowed outside Ω.
pub const SUPPORT_TOLERANCE: f64 = 1e-8;

/// One side-by-side comparison `lhs ≤ rhs·(1 + tolerance)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Exponent>,
    pub lhs: f64,
    pub rhs: f64,
    pub certificate: BTreeMap<String, f64>,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl BoundReport {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        BoundReport {
            label: label.into(),
            p: None,
            lhs,
            rhs,
            certificate: BTreeMap::new(),
            slack: rhs - lhs,
            tolerance,
            pass: lhs <= rhs * (1.0 + tolerance),
        }
    }

    pub fn with_p(mut self, p: Exponent) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.certificate.insert(name.to_string(), value);
        self
    }
}
