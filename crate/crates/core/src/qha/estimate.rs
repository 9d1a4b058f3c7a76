use rayon::prelude::*;
use serde::Serialize;

use super::{op_conv, ConvMethod};
use crate::error::{invalid, QhaError, Result};
use crate::exponent::Exponent;
use crate::operators::{rank_one, singular_spectrum, OperatorMatrix, WindowVector};
use crate::phase_space::{lp_norm, random_bandlimited_sample, PhaseGrid, Region, SymbolGrid};
use crate::weyl::weyl_quantize;

/// Denominators below this fraction of the numerator are excluded.
pub const DEGENERATE_RATIO: f64 = 1e-14;

/// Numerator `‖L_τ‖_{S^p}` and denominator `‖L_τ ⋆ (φ₀⊗φ₀)‖_{L^p}` for one
/// sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioSample {
    pub numerator: f64,
    pub denominator: f64,
}

impl RatioSample {
    pub fn ratio(&self) -> Option<f64> {
        (self.denominator >= DEGENERATE_RATIO * self.numerator && self.denominator > 0.0)
            .then(|| self.numerator / self.denominator)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantEstimate {
    pub region: Region,
    pub p: Exponent,
    pub samples: usize,
    /// Samples dropped for a degenerate denominator.
    pub excluded: usize,
    pub ratios: RatioStats,
    pub grid: PhaseGrid,
    pub seed: u64,
    #[serde(skip)]
    pub values: Vec<Option<f64>>,
}

impl ConstantEstimate {
    pub fn from_samples(
        region: Region,
        p: Exponent,
        grid: PhaseGrid,
        seed: u64,
        samples: &[RatioSample],
    ) -> Result<Self> {
        let values: Vec<Option<f64>> = samples.iter().map(RatioSample::ratio).collect();
        let used: Vec<f64> = values.iter().flatten().copied().collect();
        if used.is_empty() {
            return Err(QhaError::Domain(format!(
                "all {} samples have a degenerate denominator",
                samples.len()
            )));
        }
        let ratios = RatioStats {
            min: used.iter().copied().fold(f64::INFINITY, f64::min),
            max: used.iter().copied().fold(0.0, f64::max),
            mean: used.iter().sum::<f64>() / used.len() as f64,
        };
        Ok(ConstantEstimate {
            region,
            p,
            samples: samples.len(),
            excluded: samples.len() - used.len(),
            ratios,
            grid,
            seed,
            values,
        })
    }
}

/// Ratio numerators and denominators of `τ` for each exponent in `ps`.
pub fn sample_ratio(
    tau: &SymbolGrid,
    projector: &OperatorMatrix,
    ps: &[Exponent],
) -> Result<Vec<RatioSample>> {
    let op = weyl_quantize(tau);
    let spectrum = singular_spectrum(&op);
    let smoothed = op_conv(&op, projector, ConvMethod::Direct)?;
    ps.iter()
        .map(|&p| {
            Ok(RatioSample {
                numerator: spectrum.schatten(p),
                denominator: lp_norm(&smoothed, p)?,
            })
        })
        .collect()
}

/// Empirical lower bound for `C(Ω)` in `‖L_τ‖_{S^p} ≤ C(Ω)‖L_τ ⋆ (g⊗h)‖_{L^p}`
/// with `g = h = φ₀`, over `samples` random symbols band-limited to Ω.
pub fn estimate_constant(
    region: &Region,
    p: Exponent,
    samples: usize,
    seed: u64,
    grid: &PhaseGrid,
) -> Result<ConstantEstimate> {
    Ok(estimate_constants(region, &[p], samples, seed, grid)?.remove(0))
}

/// [`estimate_constant`] for several exponents over the same sample set.
pub fn estimate_constants(
    region: &Region,
    ps: &[Exponent],
    samples: usize,
    seed: u64,
    grid: &PhaseGrid,
) -> Result<Vec<ConstantEstimate>> {
    if samples == 0 {
        return Err(invalid("at least one sample is required"));
    }
    let phi = WindowVector::standard_gaussian(grid);
    let projector = rank_one(&phi, &phi)?;
    let table: Vec<Vec<RatioSample>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let tau = random_bandlimited_sample(grid, region, seed, i, false)?;
            sample_ratio(&tau, &projector, ps)
        })
        .collect::<Result<_>>()?;
    ps.iter()
        .enumerate()
        .map(|(col, &p)| {
            let column: Vec<RatioSample> = table.iter().map(|row| row[col]).collect();
            ConstantEstimate::from_samples(*region, p, *grid, seed, &column)
        })
        .collect()
}
