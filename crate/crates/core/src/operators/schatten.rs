use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::OperatorMatrix;
use crate::error::Result;
use crate::exponent::Exponent;

/// Relative threshold below which a singular value counts as zero for rank.
pub const RANK_THRESHOLD: f64 = 1e-12;

/// Descending operator singular values `h·σ_k(K)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// `(Σ σ_k^p)^{1/p}`, or `σ_max` for `p = ∞`.
    pub fn schatten(&self, p: Exponent) -> f64 {
        p.norm_of(self.values.iter().copied(), 1.0)
    }

    pub fn numerical_rank(&self) -> usize {
        let floor = RANK_THRESHOLD * self.largest();
        self.values.iter().filter(|&&s| s > floor).count()
    }
}

pub fn singular_spectrum(t: &OperatorMatrix) -> SingularSpectrum {
    let n = t.grid().n();
    let h = t.grid().spacing();
    let kernel = t.kernel();
    let m = DMatrix::<Complex64>::from_fn(n, n, |i, j| kernel[i * n + j] * h);
    let mut values: Vec<f64> = m.singular_values().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    SingularSpectrum { values }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchattenValue {
    pub p: Exponent,
    pub value: f64,
    pub singular_values: Vec<f64>,
    /// Count of singular values above `1e−12·σ_max`.
    pub rank: usize,
}

impl SchattenValue {
    pub fn from_spectrum(spectrum: &SingularSpectrum, p: Exponent) -> SchattenValue {
        SchattenValue {
            p,
            value: spectrum.schatten(p),
            singular_values: spectrum.values.clone(),
            rank: spectrum.numerical_rank(),
        }
    }
}

/// `‖T‖_{S^p} = (tr |T|^p)^{1/p}`.
pub fn schatten_norm(t: &OperatorMatrix, p: Exponent) -> Result<SchattenValue> {
    Ok(SchattenValue::from_spectrum(&singular_spectrum(t), p))
}
