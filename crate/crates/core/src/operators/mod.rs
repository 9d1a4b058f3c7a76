//! Operators on the discretized L²(ℝ): kernels, time-frequency shifts,
//! parity, operator translation, rank-one operators, trace and Schatten
//! norms.
//!
//! An [`OperatorMatrix`] stores kernel samples `K[i][j] ≈ K(x_i, x_j)` and
//! acts by `(Tf)(x_i) = h·Σ_j K[i][j]·f(x_j)`. The matrix of the operator in
//! the sample basis is therefore `h·K`; traces, products and singular values
//! are all taken of `h·K`.

mod schatten;
mod shift;

pub use schatten::{schatten_norm, singular_spectrum, SchattenValue, SingularSpectrum};
pub use shift::{parity_conjugate, rank_one, tf_shift, trace, translate_operator, ShiftMode};

use num_complex::Complex64;

use crate::error::{invalid, QhaError, Result};
use crate::phase_space::PhaseGrid;

/// Samples of an L²(ℝ) function at the grid positions `x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowVector {
    grid: PhaseGrid,
    values: Vec<Complex64>,
}

impl WindowVector {
    pub fn new(grid: PhaseGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(QhaError::GridMismatch(format!(
                "vector of length {} on grid with N={}",
                values.len(),
                grid.n()
            )));
        }
        if values
            .iter()
            .any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(invalid("non-finite vector entry"));
        }
        Ok(WindowVector { grid, values })
    }

    pub fn from_fn(grid: &PhaseGrid, f: impl Fn(f64) -> Complex64) -> Self {
        WindowVector {
            grid: *grid,
            values: grid.positions().into_iter().map(f).collect(),
        }
    }

    /// `φ₀(t) = 2^{1/4}·e^{−πt²}`, unit norm in L²(ℝ).
    pub fn standard_gaussian(grid: &PhaseGrid) -> Self {
        let c = 2f64.powf(0.25);
        WindowVector::from_fn(grid, |t| {
            Complex64::new(c * (-std::f64::consts::PI * t * t).exp(), 0.0)
        })
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `⟨f, g⟩ = h·Σ f_j·conj(g_j)`.
    pub fn inner(&self, other: &WindowVector) -> Result<Complex64> {
        self.grid.ensure_same(&other.grid)?;
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(s * self.grid.spacing())
    }

    pub fn norm(&self) -> f64 {
        (self.grid.spacing() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn scale(&self, s: Complex64) -> WindowVector {
        WindowVector {
            grid: self.grid,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn normalized(&self) -> WindowVector {
        self.scale(Complex64::new(1.0 / self.norm(), 0.0))
    }

    pub fn sub(&self, other: &WindowVector) -> Result<WindowVector> {
        self.grid.ensure_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(WindowVector {
            grid: self.grid,
            values,
        })
    }

    pub fn add(&self, other: &WindowVector) -> Result<WindowVector> {
        self.grid.ensure_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(WindowVector {
            grid: self.grid,
            values,
        })
    }
}

/// A dense kernel `K[i][j]` on the position grid.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    grid: PhaseGrid,
    kernel: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn new(grid: PhaseGrid, kernel: Vec<Complex64>) -> Result<Self> {
        let n = grid.n();
        if kernel.len() != n * n {
            return Err(QhaError::GridMismatch(format!(
                "kernel of length {} on grid with N={n}",
                kernel.len()
            )));
        }
        if let Some(pos) = kernel
            .iter()
            .position(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(invalid(format!("non-finite kernel entry at index {pos}")));
        }
        Ok(OperatorMatrix { grid, kernel })
    }

    pub(crate) fn from_raw(grid: PhaseGrid, kernel: Vec<Complex64>) -> Self {
        debug_assert_eq!(kernel.len(), grid.n() * grid.n());
        OperatorMatrix { grid, kernel }
    }

    /// Builds the operator whose matrix in the sample basis is `matrix`
    /// (row-major), i.e. with kernel `matrix / h`.
    pub(crate) fn from_matrix(grid: PhaseGrid, mut matrix: Vec<Complex64>) -> Self {
        let inv_h = 1.0 / grid.spacing();
        for v in &mut matrix {
            *v *= inv_h;
        }
        OperatorMatrix::from_raw(grid, matrix)
    }

    pub fn from_fn(grid: &PhaseGrid, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let n = grid.n();
        OperatorMatrix {
            grid: *grid,
            kernel: (0..n * n).map(|idx| f(idx / n, idx % n)).collect(),
        }
    }

    pub fn zeros(grid: &PhaseGrid) -> Self {
        OperatorMatrix::from_fn(grid, |_, _| Complex64::new(0.0, 0.0))
    }

    /// The discrete identity, kernel `δ_ij / h`.
    pub fn identity(grid: &PhaseGrid) -> Self {
        let d = 1.0 / grid.spacing();
        OperatorMatrix::from_fn(grid, |i, j| {
            Complex64::new(if i == j { d } else { 0.0 }, 0.0)
        })
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn kernel(&self) -> &[Complex64] {
        &self.kernel
    }

    pub fn into_kernel(self) -> Vec<Complex64> {
        self.kernel
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.kernel[i * self.grid.n() + j]
    }

    /// Row-major matrix `h·K` of the operator in the sample basis.
    pub fn matrix(&self) -> Vec<Complex64> {
        let h = self.grid.spacing();
        self.kernel.iter().map(|v| v * h).collect()
    }

    pub fn apply(&self, f: &WindowVector) -> Result<WindowVector> {
        self.grid.ensure_same(&f.grid)?;
        let n = self.grid.n();
        let h = self.grid.spacing();
        let values = self
            .kernel
            .chunks_exact(n)
            .map(|row| {
                row.iter()
                    .zip(&f.values)
                    .map(|(k, v)| k * v)
                    .sum::<Complex64>()
                    * h
            })
            .collect();
        Ok(WindowVector {
            grid: self.grid,
            values,
        })
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        let n = self.grid.n();
        OperatorMatrix::from_fn(&self.grid, |i, j| self.kernel[j * n + i].conj())
    }

    /// Kernel of the product `self ∘ other`: `h·Σ_l K₁[i][l]·K₂[l][j]`.
    pub fn compose(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.grid.ensure_same(&other.grid)?;
        let n = self.grid.n();
        let h = self.grid.spacing();
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for l in 0..n {
                let a = self.kernel[i * n + l] * h;
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, b) in row.iter_mut().zip(&other.kernel[l * n..(l + 1) * n]) {
                    *o += a * b;
                }
            }
        }
        Ok(OperatorMatrix {
            grid: self.grid,
            kernel: out,
        })
    }

    fn zip_with(
        &self,
        other: &OperatorMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<OperatorMatrix> {
        self.grid.ensure_same(&other.grid)?;
        let kernel = self
            .kernel
            .iter()
            .zip(&other.kernel)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(OperatorMatrix {
            grid: self.grid,
            kernel,
        })
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> OperatorMatrix {
        OperatorMatrix {
            grid: self.grid,
            kernel: self.kernel.iter().map(|v| v * s).collect(),
        }
    }

    /// Largest kernel entry in modulus.
    pub fn max_abs(&self) -> f64 {
        self.kernel.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `h·‖K‖_F`, the L² norm of the kernel on the grid.
    pub fn kernel_l2(&self) -> f64 {
        self.grid.spacing() * self.kernel.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}
