use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{BoundReport, INTERTWINING_TOLERANCE};
use crate::error::{QhaError, Result};
use crate::fft;
use crate::operators::{parity_conjugate, OperatorMatrix};
use crate::phase_space::{convolve_symbols, symplectic_fourier, SymbolGrid};
use crate::weyl::{fourier_weyl, weyl_quantize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ConvMethod {
    /// Trace `tr(T·α_z(PSP))` at every grid point.
    #[default]
    Direct,
    /// `F_σ(F_W(T)·F_W(S))`.
    Fast,
}

impl FromStr for ConvMethod {
    type Err = QhaError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(ConvMethod::Direct),
            "fast" => Ok(ConvMethod::Fast),
            other => Err(QhaError::Unknown {
                kind: "convolution method",
                name: other.into(),
            }),
        }
    }
}

impl fmt::Display for ConvMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConvMethod::Direct => "direct",
            ConvMethod::Fast => "fast",
        })
    }
}

/// Operator convolution `(T ⋆ S)(z) = tr(T·α_z(P S P))` on the grid.
pub fn op_conv(t: &OperatorMatrix, s: &OperatorMatrix, method: ConvMethod) -> Result<SymbolGrid> {
    t.grid().ensure_same(s.grid())?;
    Ok(match method {
        ConvMethod::Direct => direct(t, s),
        ConvMethod::Fast => {
            let ft = fourier_weyl(t);
            let fs = fourier_weyl(s);
            symplectic_fourier(&ft.mul(&fs)?)
        }
    })
}

/// For a snapped `z = (d·h, β·Δξ)`, `α_z(Q)[l][j] = e^{2πiβ(l−j)/N}·Q[l−d][j−d]`,
/// so with `δ = l − j`, `A_δ[j] = T[j][j+δ]` and `B_δ[m] = Q[m+δ][m]`
///
/// ```text
/// tr(T·α_z(Q)) = Σ_δ e^{2πiβδ/N} · Σ_j A_δ[j]·B_δ[j−d]
/// ```
///
/// and all `N` modulations of one translation come out of a single FFT.
fn direct(t: &OperatorMatrix, s: &OperatorMatrix) -> SymbolGrid {
    let grid = *t.grid();
    let n = grid.n();
    let tm = t.matrix();
    let qm = parity_conjugate(s).matrix();
    let mut a_diag = vec![Complex64::new(0.0, 0.0); n * n];
    let mut b_diag = vec![Complex64::new(0.0, 0.0); n * n];
    for delta in 0..n {
        for j in 0..n {
            let l = (j + delta) % n;
            a_diag[delta * n + j] = tm[j * n + l];
            b_diag[delta * n + j] = qm[l * n + j];
        }
    }
    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 {
        x.iter().zip(y).map(|(u, v)| u * v).sum()
    };
    let c = n / 2;
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|a| {
            // B_δ[j − d] for j = 0..N is B_δ rotated right by d
            let shift = (a + n - c) % n;
            let mut acc: Vec<Complex64> = (0..n)
                .map(|delta| {
                    let x = &a_diag[delta * n..(delta + 1) * n];
                    let y = &b_diag[delta * n..(delta + 1) * n];
                    let sum = dot(&x[..shift], &y[n - shift..]) + dot(&x[shift..], &y[..n - shift]);
                    // e^{2πi(b−c)δ/N} = (−1)^δ·e^{2πibδ/N}
                    if delta % 2 == 0 {
                        sum
                    } else {
                        -sum
                    }
                })
                .collect();
            fft::plan(n, true).process(&mut acc);
            acc
        })
        .collect();
    SymbolGrid::from_raw(grid, rows.concat())
}

/// Checks `L_τ ⋆ L_Φ = τ ∗ Φ` (direct operator convolution against the
/// function convolution) in relative sup norm.
pub fn check_eq2(tau: &SymbolGrid, phi: &SymbolGrid) -> Result<BoundReport> {
    let lhs_fn = op_conv(&weyl_quantize(tau), &weyl_quantize(phi), ConvMethod::Direct)?;
    let rhs_fn = convolve_symbols(tau, phi)?;
    let err = lhs_fn.sub(&rhs_fn)?.max_abs();
    let scale = rhs_fn.max_abs();
    let rel = if scale > 0.0 { err / scale } else { err };
    Ok(
        BoundReport::new("intertwining", err, INTERTWINING_TOLERANCE * scale, 0.0)
            .with("relative_error", rel)
            .with("convolution_sup", scale),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{trace, translate_operator, ShiftMode};
    use crate::phase_space::PhaseGrid;

    fn small_op(grid: &PhaseGrid, salt: f64) -> OperatorMatrix {
        OperatorMatrix::from_fn(grid, |i, j| {
            Complex64::new(
                (salt * i as f64 + 0.3 * j as f64).sin(),
                (i * j) as f64 * 0.05 - salt,
            )
        })
    }

    #[test]
    fn batched_direct_matches_per_point_traces() {
        let g = PhaseGrid::new(12, 1.8).unwrap();
        let t = small_op(&g, 0.7);
        let s = small_op(&g, 1.9);
        let fast_direct = op_conv(&t, &s, ConvMethod::Direct).unwrap();
        let pss = parity_conjugate(&s);
        for a in 0..g.n() {
            for b in 0..g.n() {
                let z = g.point(a, b);
                let shifted = translate_operator(&pss, z, ShiftMode::Snapped).unwrap();
                let want = trace(&t.compose(&shifted).unwrap());
                assert!((fast_direct.at(a, b) - want).norm() < 1e-12, "z = {z:?}");
            }
        }
    }

    #[test]
    fn zero_symbol_gives_zero_on_both_sides() {
        let g = PhaseGrid::self_dual(64).unwrap();
        let tau = SymbolGrid::from_real_fn(&g, |z| (-std::f64::consts::PI * z.norm_sqr()).exp());
        let report = check_eq2(&tau, &SymbolGrid::zeros(&g)).unwrap();
        assert_eq!(report.lhs, 0.0);
        assert_eq!(report.rhs, 0.0);
        assert!(report.pass);
    }

    #[test]
    fn method_names() {
        assert_eq!("fast".parse::<ConvMethod>().unwrap(), ConvMethod::Fast);
        assert!("slow".parse::<ConvMethod>().is_err());
    }
}
