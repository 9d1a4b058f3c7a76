use serde::Serialize;

use super::{
    op_conv, BoundReport, ConvMethod, CERTIFICATE_TOLERANCE, CLASSICAL_YOUNG_TOLERANCE,
    INTERTWINING_TOLERANCE, RECONSTRUCTION_TOLERANCE, SUPPORT_TOLERANCE,
};
use crate::error::{QhaError, Result};
use crate::exponent::Exponent;
use crate::operators::{rank_one, singular_spectrum, OperatorMatrix, WindowVector};
use crate::phase_space::{
    convolve_symbols, lp_norm, smooth_cutoff, symplectic_fourier, PhaseGrid, Region, SymbolGrid,
};
use crate::weyl::{cross_wigner, weyl_quantize};

/// Results of the two-sided bound chain for one symbol and one exponent.
#[derive(Clone, Debug, Serialize)]
pub struct BoundChain {
    pub p: Exponent,
    /// `‖τ − τ ∗ F_σΨ‖₂ ≤ 1e−8·‖τ‖₂`.
    pub reconstruction: BoundReport,
    /// `‖τ‖_{L^p} ≤ ‖L_{F_σΨ}‖_{S¹}·‖L_τ‖_{S^p}`.
    pub certificate_bound: BoundReport,
    /// `‖τ ∗ W(φ₀,φ₀)‖_{L^p} ≤ ‖W(φ₀,φ₀)‖_{L¹}·‖τ‖_{L^p}`.
    pub young_step: BoundReport,
    /// `L_τ ⋆ (φ₀ ⊗ φ₀) = τ ∗ W(φ₀,φ₀)`.
    pub intertwining: BoundReport,
}

impl BoundChain {
    pub fn pass(&self) -> bool {
        self.reconstruction.pass
            && self.certificate_bound.pass
            && self.young_step.pass
            && self.intertwining.pass
    }
}

/// Everything in the bound chain that depends only on `(grid, Ω, margin)`.
#[derive(Clone, Debug)]
pub struct BoundChainContext {
    grid: PhaseGrid,
    region: Region,
    cutoff_transform: SymbolGrid,
    cutoff_trace_norm: f64,
    wigner: SymbolGrid,
    wigner_l1: f64,
    projector: OperatorMatrix,
}

impl BoundChainContext {
    pub fn new(grid: &PhaseGrid, region: &Region, margin: f64) -> Result<Self> {
        let cutoff = smooth_cutoff(grid, region, margin)?;
        let cutoff_transform = symplectic_fourier(&cutoff);
        let cutoff_trace_norm =
            singular_spectrum(&weyl_quantize(&cutoff_transform)).schatten(Exponent::ONE);
        let phi = WindowVector::standard_gaussian(grid);
        let wigner = cross_wigner(&phi, &phi)?;
        let wigner_l1 = lp_norm(&wigner, Exponent::ONE)?;
        Ok(BoundChainContext {
            grid: *grid,
            region: *region,
            cutoff_transform,
            cutoff_trace_norm,
            wigner,
            wigner_l1,
            projector: rank_one(&phi, &phi)?,
        })
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    /// `‖L_{F_σΨ}‖_{S¹}`, computed from the singular values.
    pub fn cutoff_trace_norm(&self) -> f64 {
        self.cutoff_trace_norm
    }

    pub fn wigner_l1(&self) -> f64 {
        self.wigner_l1
    }

    /// Runs the chain for every exponent in `ps`, sharing one SVD of `L_τ`.
    pub fn verify(&self, tau: &SymbolGrid, ps: &[Exponent]) -> Result<Vec<BoundChain>> {
        self.grid.ensure_same(tau.grid())?;
        check_support(tau, &self.region)?;

        let rebuilt = convolve_symbols(tau, &self.cutoff_transform)?;
        let tau_l2 = lp_norm(tau, Exponent::TWO)?;
        let recon_err = lp_norm(&tau.sub(&rebuilt)?, Exponent::TWO)?;
        let reconstruction = BoundReport::new(
            "reconstruction",
            recon_err,
            RECONSTRUCTION_TOLERANCE * tau_l2,
            0.0,
        );

        let op = weyl_quantize(tau);
        let spectrum = singular_spectrum(&op);
        let smoothed = convolve_symbols(tau, &self.wigner)?;
        let opconv = op_conv(&op, &self.projector, ConvMethod::Direct)?;
        let inter_err = opconv.sub(&smoothed)?.max_abs();
        let smoothed_sup = smoothed.max_abs();
        let intertwining = BoundReport::new(
            "intertwining",
            inter_err,
            INTERTWINING_TOLERANCE * smoothed_sup,
            0.0,
        );

        ps.iter()
            .map(|&p| {
                let tau_p = lp_norm(tau, p)?;
                let op_p = spectrum.schatten(p);
                let certificate_bound = BoundReport::new(
                    "certificate",
                    tau_p,
                    self.cutoff_trace_norm * op_p,
                    CERTIFICATE_TOLERANCE,
                )
                .with_p(p)
                .with("cutoff_trace_norm", self.cutoff_trace_norm)
                .with("operator_schatten_p", op_p);
                let young_step = BoundReport::new(
                    "classical-young",
                    lp_norm(&smoothed, p)?,
                    self.wigner_l1 * tau_p,
                    CLASSICAL_YOUNG_TOLERANCE,
                )
                .with_p(p)
                .with("wigner_l1", self.wigner_l1);
                Ok(BoundChain {
                    p,
                    reconstruction: reconstruction.clone(),
                    certificate_bound,
                    young_step,
                    intertwining: intertwining.clone(),
                })
            })
            .collect()
    }
}

/// Fails with a hypothesis violation when more than a `1e−8` fraction of the
/// energy of `F_σ(τ)` lies outside `region`.
pub fn check_support(tau: &SymbolGrid, region: &Region) -> Result<()> {
    let outside = symplectic_fourier(tau).energy_outside(region);
    if outside > SUPPORT_TOLERANCE {
        return Err(QhaError::HypothesisViolation(format!(
            "fraction {outside:.3e} of the symplectic spectrum lies outside {region}"
        )));
    }
    Ok(())
}

/// Checks both halves of the L^p / Schatten-p equivalence for `τ` whose
/// symplectic spectrum lies in `region`, using the cutoff
/// `Ψ = smooth_cutoff(region, margin)` and `g = h = φ₀`.
pub fn verify_bound_chain(
    tau: &SymbolGrid,
    region: &Region,
    p: Exponent,
    margin: f64,
) -> Result<BoundChain> {
    let ctx = BoundChainContext::new(tau.grid(), region, margin)?;
    Ok(ctx.verify(tau, &[p])?.remove(0))
}
