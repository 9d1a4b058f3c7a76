//! Discretized quantum harmonic analysis on the phase space ℝ².
//!
//! Functions on phase space are sampled on a [`PhaseGrid`], operators on
//! L²(ℝ) are dense kernels on its position axis, and every transform is an
//! exact finite-dimensional map on that discrete torus. The crate provides
//! the Weyl dictionary (quantisation, symbol extraction, cross-Wigner
//! distribution, Fourier–Weyl transform), Werner's operator convolution,
//! Schatten norms, and a harness that checks the L^p / Schatten-p
//! equivalence for symbols whose symplectic Fourier transform has compact
//! support.
//!
//! # Conventions
//!
//! * Grid: `x_j = (j - N/2)·h` with `h = 2L/N`, `ξ_k = (k - N/2)·Δξ` with
//!   `Δξ = 1/(2L)`, so `h·Δξ·N = 1` and the phase-space cell area is `1/N`.
//! * Symplectic form: `σ((x,ξ),(x',ξ')) = ξ·x' − x·ξ'`, see
//!   [`phase_space::symplectic_form`].
//! * Time-frequency shift: `ρ(x,ξ)f(t) = e^{−πixξ} e^{2πiξt} f(t−x)`.
//! * Operator kernels act by `(Tf)(x_i) = h·Σ_j K[i][j]·f(x_j)`; traces and
//!   singular values carry the same factor `h`.

pub mod cli;
pub mod error;
pub mod exponent;
mod fft;
pub mod io;
pub mod operators;
pub mod phase_space;
pub mod qha;
mod rng;
pub mod weyl;

pub use error::{QhaError, Result};
pub use exponent::Exponent;
pub use operators::{
    parity_conjugate, rank_one, schatten_norm, tf_shift, trace, translate_operator, OperatorMatrix,
    SchattenValue, ShiftMode, SingularSpectrum, WindowVector,
};
pub use phase_space::{
    build_symbol, convolve_symbols, lp_norm, make_grid, random_bandlimited_symbol, smooth_cutoff,
    symplectic_fourier, PhaseGrid, PhasePoint, Region, SymbolGrid, SymbolSpec,
};
pub use qha::{
    check_eq2, estimate_constant, op_conv, verify_bound_chain, werner_young_trial, BoundChain,
    BoundReport, ConstantEstimate, ConvMethod, YoungTrialReport,
};
pub use weyl::{cross_wigner, fourier_weyl, weyl_quantize, weyl_symbol};

pub use num_complex::Complex64;
