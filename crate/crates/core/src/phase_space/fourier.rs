use super::SymbolGrid;
use crate::fft;

/// Symplectic Fourier transform `F_σS(ζ) = ∫ e^{−2πiσ(ζ,z)} S(z) dz`.
///
/// On the grid this is an inverse centered DFT along ξ (landing on the
/// output position axis), a forward centered DFT along x (landing on the
/// output frequency axis), and the quadrature weight `h·Δξ = 1/N`. Because
/// `h·Δξ·N = 1` the output samples coincide with the input grid, and the
/// map is a unitary involution.
pub fn symplectic_fourier(s: &SymbolGrid) -> SymbolGrid {
    let grid = *s.grid();
    let n = grid.n();
    let mut rows = s.values().to_vec();
    // rows[i][a] = Σ_k S(i,k)·e^{+2πi(a−c)(k−c)/N}
    fft::centered_inverse(&mut rows, n);
    let mut cols = fft::transpose(&rows, n);
    // cols[a][b] = Σ_i rows[i][a]·e^{−2πi(b−c)(i−c)/N}
    fft::centered_forward(&mut cols, n);
    let w = grid.cell_area();
    for v in &mut cols {
        *v *= w;
    }
    SymbolGrid::from_raw(grid, cols)
}
