use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use super::{smooth_cutoff, symplectic_fourier, PhaseGrid, Region, SymbolGrid, DEFAULT_MARGIN};
use crate::error::Result;
use crate::rng;

/// A random symbol `τ = F_σ(G)` whose symplectic Fourier transform `G` is
/// supported in `region`.
///
/// `G` is i.i.d. complex Gaussian noise on the grid points of `region`,
/// tapered to zero at its boundary by a smooth cutoff. With `real_valued`,
/// `G` is restricted to `Ω ∩ −Ω` and symmetrized to `G(−z) = conj G(z)`,
/// which makes `τ` real.
pub fn random_bandlimited_symbol(
    grid: &PhaseGrid,
    region: &Region,
    seed: u64,
    real_valued: bool,
) -> Result<SymbolGrid> {
    random_bandlimited_sample(grid, region, seed, 0, real_valued)
}

/// Sample `index` of the batch keyed by `seed`; independent of evaluation
/// order.
pub fn random_bandlimited_sample(
    grid: &PhaseGrid,
    region: &Region,
    seed: u64,
    index: u64,
    real_valued: bool,
) -> Result<SymbolGrid> {
    region.ensure_fits(grid, 0.0)?;
    let taper = DEFAULT_MARGIN.min(0.5 * region.inradius());
    let envelope = match region.shrink(taper) {
        Some(inner) => smooth_cutoff(grid, &inner, taper)?,
        None => SymbolGrid::from_real_fn(grid, |z| f64::from(region.contains(z))),
    };
    let mirrored = region.reflected();
    let mut rng = rng::stream(seed, index);
    let n = grid.n();
    let mut spectrum = vec![Complex64::new(0.0, 0.0); n * n];
    for (idx, slot) in spectrum.iter_mut().enumerate() {
        let z = grid.point(idx / n, idx % n);
        if !region.contains(z) || (real_valued && !mirrored.contains(z)) {
            continue;
        }
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        *slot = Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2 * envelope.values()[idx];
    }
    if real_valued {
        let sym: Vec<Complex64> = (0..n * n)
            .map(|idx| {
                let (i, k) = (idx / n, idx % n);
                let mirror = spectrum[grid.reflect(i) * n + grid.reflect(k)];
                0.5 * (spectrum[idx] + mirror.conj())
            })
            .collect();
        spectrum = sym;
    }
    Ok(symplectic_fourier(&SymbolGrid::from_raw(*grid, spectrum)))
}
