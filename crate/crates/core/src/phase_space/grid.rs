use serde::{Deserialize, Serialize};

use super::PhasePoint;
use crate::error::{invalid, QhaError, Result};

pub const MIN_SAMPLES: usize = 8;

/// Square sampling of phase space: `N` positions `x_j = (j − N/2)·h` on
/// `[−L, L)` and `N` frequencies `ξ_k = (k − N/2)·Δξ` with `Δξ = 1/(2L)`.
///
/// The frequency window is `[−N/(4L), N/(4L))`; it equals the position
/// window exactly when `N = 4L²` (see [`PhaseGrid::self_dual`]).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "L")]
    half_width: f64,
}

pub fn make_grid(n: usize, half_width: f64) -> Result<PhaseGrid> {
    PhaseGrid::new(n, half_width)
}

impl PhaseGrid {
    pub fn new(n: usize, half_width: f64) -> Result<Self> {
        if n < MIN_SAMPLES || !n.is_multiple_of(2) {
            return Err(invalid(format!(
                "N must be even and at least {MIN_SAMPLES}, got {n}"
            )));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(invalid(format!(
                "L must be positive and finite, got {half_width}"
            )));
        }
        Ok(PhaseGrid { n, half_width })
    }

    /// The grid with `h = Δξ = 1/√N`, i.e. `L = √N / 2`.
    pub fn self_dual(n: usize) -> Result<Self> {
        PhaseGrid::new(n, (n as f64).sqrt() / 2.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Position spacing `h = 2L/N`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    /// Frequency spacing `Δξ = 1/(2L)`.
    pub fn freq_spacing(&self) -> f64 {
        0.5 / self.half_width
    }

    pub fn freq_half_width(&self) -> f64 {
        self.n as f64 * self.freq_spacing() / 2.0
    }

    /// Quadrature weight of one phase-space sample, `h·Δξ = 1/N`.
    pub fn cell_area(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn center(&self) -> usize {
        self.n / 2
    }

    pub fn position(&self, j: usize) -> f64 {
        (j as f64 - self.center() as f64) * self.spacing()
    }

    pub fn frequency(&self, k: usize) -> f64 {
        (k as f64 - self.center() as f64) * self.freq_spacing()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.position(j)).collect()
    }

    pub fn point(&self, i: usize, k: usize) -> PhasePoint {
        PhasePoint::new(self.position(i), self.frequency(k))
    }

    /// Index of `−x_j` under periodic reflection.
    pub fn reflect(&self, j: usize) -> usize {
        (self.n - j) % self.n
    }

    /// Nearest grid index pair to `z`, if `z` lies within the window.
    pub fn nearest_index(&self, z: PhasePoint) -> Option<(usize, usize)> {
        let i = (z.x / self.spacing()).round() + self.center() as f64;
        let k = (z.xi / self.freq_spacing()).round() + self.center() as f64;
        let range = 0.0..self.n as f64;
        (range.contains(&i) && range.contains(&k)).then_some((i as usize, k as usize))
    }

    pub(crate) fn ensure_same(&self, other: &PhaseGrid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(QhaError::GridMismatch(format!(
                "(N={}, L={}) vs (N={}, L={})",
                self.n, self.half_width, other.n, other.half_width
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_spacings() {
        let g = make_grid(8, 2.0).unwrap();
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.freq_spacing(), 0.25);
        assert_eq!(
            g.positions(),
            vec![-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5]
        );
    }

    #[test]
    fn default_grid_is_self_dual() {
        let g = make_grid(256, 8.0).unwrap();
        assert_eq!(g.spacing(), 0.0625);
        assert_eq!(g.freq_spacing(), 0.0625);
        assert_eq!(g, PhaseGrid::self_dual(256).unwrap());
        assert!((g.spacing() * g.freq_spacing() * g.n() as f64 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            make_grid(7, 2.0),
            Err(QhaError::InvalidParameter(_))
        ));
        assert!(make_grid(6, 2.0).is_err());
        assert!(make_grid(8, 0.0).is_err());
        assert!(make_grid(8, -1.0).is_err());
    }

    #[test]
    fn reflection_is_symmetric_about_zero() {
        let g = make_grid(16, 2.0).unwrap();
        for j in 0..16 {
            let r = g.reflect(j);
            assert_eq!(g.reflect(r), j);
            if j != 0 {
                assert_eq!(g.position(r), -g.position(j));
            }
        }
    }
}
