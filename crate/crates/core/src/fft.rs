//! Centered DFTs on grids indexed `j - N/2`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

type PlanCache = HashMap<(usize, bool), Arc<dyn Fft<f64>>>;

thread_local! {
    static PLANNER: RefCell<(FftPlanner<f64>, PlanCache)> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
}

pub(crate) fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|cell| {
        let mut guard = cell.borrow_mut();
        let (planner, cache) = &mut *guard;
        cache
            .entry((len, inverse))
            .or_insert_with(|| {
                if inverse {
                    planner.plan_fft_inverse(len)
                } else {
                    planner.plan_fft_forward(len)
                }
            })
            .clone()
    })
}

#[inline]
fn alternate(data: &mut [Complex64], len: usize, scale: f64) {
    for chunk in data.chunks_exact_mut(len) {
        for (j, v) in chunk.iter_mut().enumerate() {
            let s = if j % 2 == 0 { scale } else { -scale };
            *v *= s;
        }
    }
}

/// `y_b = Σ_j x_j·exp(∓2πi(b−c)(j−c)/N)` with `c = N/2`, applied to every
/// length-`len` chunk of `data`. Unnormalized in both directions.
///
/// With `N` even the centered kernel factors as `(−1)^{N/2}·(−1)^b·(−1)^j`
/// times the plain DFT kernel.
pub(crate) fn centered(data: &mut [Complex64], len: usize, inverse: bool) {
    debug_assert!(len.is_multiple_of(2) && data.len().is_multiple_of(len));
    let sign = if (len / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    alternate(data, len, 1.0);
    plan(len, inverse).process(data);
    alternate(data, len, sign);
}

pub(crate) fn centered_forward(data: &mut [Complex64], len: usize) {
    centered(data, len, false);
}

pub(crate) fn centered_inverse(data: &mut [Complex64], len: usize) {
    centered(data, len, true);
}

pub(crate) fn transpose(values: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            out[k * n + i] = values[i * n + k];
        }
    }
    out
}

/// Plain (uncentered, unnormalized) 2D DFT of an `n × n` row-major array.
pub(crate) fn plain_2d(values: &mut Vec<Complex64>, n: usize, inverse: bool) {
    let fft = plan(n, inverse);
    fft.process(values);
    let mut t = transpose(values, n);
    fft.process(&mut t);
    *values = transpose(&t, n);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn naive(x: &[Complex64], inverse: bool) -> Vec<Complex64> {
        let n = x.len();
        let c = (n / 2) as f64;
        let s = if inverse { 1.0 } else { -1.0 };
        (0..n)
            .map(|b| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let ph = s * 2.0 * PI * (b as f64 - c) * (j as f64 - c) / n as f64;
                        v * Complex64::from_polar(1.0, ph)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_centered_dft() {
        for n in [8usize, 10, 16] {
            let x: Vec<Complex64> = (0..n)
                .map(|j| Complex64::new((j as f64 * 0.7).sin(), (j as f64 * 1.3).cos()))
                .collect();
            for inverse in [false, true] {
                let mut y = x.clone();
                centered(&mut y, n, inverse);
                let want = naive(&x, inverse);
                for (a, b) in y.iter().zip(&want) {
                    assert!((a - b).norm() < 1e-12, "n={n} inverse={inverse}");
                }
            }
        }
    }
}
