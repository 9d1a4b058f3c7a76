//! Phase-space grids, sampled phase-space functions, the symplectic Fourier
//! transform, convolution, cutoffs and band-limited test symbols.

mod bandlimited;
mod fourier;
mod grid;
mod region;
mod symbol;

pub use bandlimited::{random_bandlimited_sample, random_bandlimited_symbol};
pub use fourier::symplectic_fourier;
pub use grid::{make_grid, PhaseGrid, MIN_SAMPLES};
pub use region::{bump_profile, smooth_cutoff, Region, DEFAULT_MARGIN};
pub use symbol::{build_symbol, convolve_symbols, lp_norm, Axis, SymbolGrid, SymbolSpec};

use serde::{Deserialize, Serialize};

/// A point `z = (x, ξ)` of phase space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: f64,
    pub xi: f64,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint { x: 0.0, xi: 0.0 };

    pub fn new(x: f64, xi: f64) -> Self {
        PhasePoint { x, xi }
    }

    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.xi * self.xi
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.xi.is_finite()
    }
}

impl std::ops::Neg for PhasePoint {
    type Output = PhasePoint;
    fn neg(self) -> PhasePoint {
        PhasePoint::new(-self.x, -self.xi)
    }
}

impl std::ops::Sub for PhasePoint {
    type Output = PhasePoint;
    fn sub(self, rhs: PhasePoint) -> PhasePoint {
        PhasePoint::new(self.x - rhs.x, self.xi - rhs.xi)
    }
}

impl std::ops::Add for PhasePoint {
    type Output = PhasePoint;
    fn add(self, rhs: PhasePoint) -> PhasePoint {
        PhasePoint::new(self.x + rhs.x, self.xi + rhs.xi)
    }
}

/// The symplectic form `σ(z, w) = ξ_z·x_w − x_z·ξ_w`.
///
/// With this sign the symplectic Fourier transform of a symbol agrees with
/// the Fourier–Weyl transform `tr(L_τ ρ(z)*)` of its Weyl quantisation.
pub fn symplectic_form(z: PhasePoint, w: PhasePoint) -> f64 {
    z.xi * w.x - z.x * w.xi
}
