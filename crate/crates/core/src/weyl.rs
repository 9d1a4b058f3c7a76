//! The Weyl dictionary between phase-space symbols and operators.
//!
//! Every map here goes through shift-diagonals of the operator matrix. For a
//! grid point `z = (d·h, β·Δξ)` (centered indices `d`, `β`) the discrete
//! time-frequency shift has matrix entries
//!
//! ```text
//! ρ(z)[j][l] = e^{−πidβ/N} · e^{2πiβ(j−c)/N} · [l ≡ j − d (mod N)]
//! ```
//!
//! so `tr(T·ρ(z)*)` only touches the `d`-th shift-diagonal of `T` and is a
//! centered DFT along it. These `N²` shifts, scaled by `1/√N`, are an
//! orthonormal basis of the `N × N` matrices, which makes quantisation and
//! symbol extraction exact inverses and the kernel-to-symbol map unitary.
//!
//! In kernel form, quantisation evaluates
//! `K(x, y) = ∫ τ((x+y)/2, ξ)·e^{2πiξ(x−y)} dξ` with `τ` taken at the
//! half-grid midpoint by band-limited (spectral) interpolation along `x`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::fft;
use crate::operators::{OperatorMatrix, WindowVector};
use crate::phase_space::{symplectic_fourier, PhaseGrid, SymbolGrid};

#[inline]
fn centered(idx: usize, n: usize) -> isize {
    idx as isize - (n / 2) as isize
}

#[inline]
fn half_phase(d: isize, beta: isize, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, PI * (d * beta) as f64 / n as f64)
}

/// `diags[a][j] ↦ e^{πidβ/N}·Σ_j diags[a][j]·e^{−2πiβ(j−c)/N}` in place.
fn diagonals_to_spectrum(diags: &mut [Complex64], n: usize) {
    fft::centered_forward(diags, n);
    for (a, row) in diags.chunks_exact_mut(n).enumerate() {
        let d = centered(a, n);
        for (b, v) in row.iter_mut().enumerate() {
            *v *= half_phase(d, centered(b, n), n);
        }
    }
}

fn shift_diagonals(matrix: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut diags = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        let d = centered(a, n);
        for j in 0..n {
            let l = (j as isize - d).rem_euclid(n as isize) as usize;
            diags[a * n + j] = matrix[j * n + l];
        }
    }
    diags
}

/// Fourier–Weyl transform `F_W(T)(z) = tr(T·ρ(z)*)`, evaluated at every grid
/// point in `O(N² log N)`.
pub fn fourier_weyl(t: &OperatorMatrix) -> SymbolGrid {
    let grid = *t.grid();
    let n = grid.n();
    let mut diags = shift_diagonals(&t.matrix(), n);
    diagonals_to_spectrum(&mut diags, n);
    SymbolGrid::from_raw(grid, diags)
}

/// Operator with prescribed Fourier–Weyl transform:
/// `T = (1/N)·Σ_z spectrum(z)·ρ(z)`.
pub(crate) fn from_fourier_weyl(spectrum: &SymbolGrid) -> OperatorMatrix {
    let grid = *spectrum.grid();
    let n = grid.n();
    let mut rows = spectrum.values().to_vec();
    for (a, row) in rows.chunks_exact_mut(n).enumerate() {
        let d = centered(a, n);
        for (b, v) in row.iter_mut().enumerate() {
            *v *= half_phase(d, centered(b, n), n).conj();
        }
    }
    fft::centered_inverse(&mut rows, n);
    let inv_n = 1.0 / n as f64;
    let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        let d = centered(a, n);
        for j in 0..n {
            let l = (j as isize - d).rem_euclid(n as isize) as usize;
            matrix[j * n + l] = rows[a * n + j] * inv_n;
        }
    }
    OperatorMatrix::from_matrix(grid, matrix)
}

/// Weyl quantisation `L_τ`, defined by `⟨L_τφ, ψ⟩ = ∫ τ·W(ψ, φ)`.
pub fn weyl_quantize(tau: &SymbolGrid) -> OperatorMatrix {
    from_fourier_weyl(&symplectic_fourier(tau))
}

/// Weyl symbol of `T`; the exact inverse of [`weyl_quantize`].
pub fn weyl_symbol(t: &OperatorMatrix) -> SymbolGrid {
    symplectic_fourier(&fourier_weyl(t))
}

/// Cross-Wigner distribution
/// `W(ψ, φ)(x, ξ) = ∫ φ(x + t/2)·conj ψ(x − t/2)·e^{−2πiξt} dt`,
/// the Weyl symbol of `φ ⊗ ψ`.
///
/// Each lag slice `φ(x_j)·conj ψ(x_j − d·h)` is centred at the half-grid
/// midpoint, transformed along `j`, and moved onto the grid by the
/// half-sample phase before the final symplectic transform.
pub fn cross_wigner(psi: &WindowVector, phi: &WindowVector) -> Result<SymbolGrid> {
    psi.grid().ensure_same(phi.grid())?;
    let grid: PhaseGrid = *psi.grid();
    let n = grid.n();
    let (p, q) = (psi.values(), phi.values());
    let h = grid.spacing();
    let mut lags = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        let d = centered(a, n);
        for j in 0..n {
            let l = (j as isize - d).rem_euclid(n as isize) as usize;
            lags[a * n + j] = q[j] * p[l].conj() * h;
        }
    }
    // lags now hold the d-th shift-diagonal of the matrix of φ ⊗ ψ
    diagonals_to_spectrum(&mut lags, n);
    Ok(symplectic_fourier(&SymbolGrid::from_raw(grid, lags)))
}
