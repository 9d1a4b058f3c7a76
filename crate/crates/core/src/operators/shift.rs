use std::f64::consts::PI;

use num_complex::Complex64;

use super::{OperatorMatrix, WindowVector};
use crate::error::{QhaError, Result};
use crate::fft;
use crate::phase_space::{PhaseGrid, PhasePoint};

/// How translation by a phase-space point's position is realized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ShiftMode {
    /// Periodic index shift; the position must be a multiple of `h`.
    #[default]
    Snapped,
    /// Band-limited fractional shift via FFT phase ramp; exact for
    /// trigonometric polynomials of degree below `N/2`.
    Interpolated,
}

fn snap(grid: &PhaseGrid, x: f64) -> Result<isize> {
    let steps = x / grid.spacing();
    let m = steps.round();
    if (steps - m).abs() > 1e-12 * m.abs().max(1.0) {
        return Err(QhaError::GridAlignment(format!(
            "position {x} is not a multiple of h = {}",
            grid.spacing()
        )));
    }
    Ok(m as isize)
}

fn fractional_shift(values: &[Complex64], grid: &PhaseGrid, x: f64) -> Vec<Complex64> {
    let n = grid.n();
    let mut buf = values.to_vec();
    fft::plan(n, false).process(&mut buf);
    let dxi = grid.freq_spacing();
    for (q, v) in buf.iter_mut().enumerate() {
        // signed frequency, Nyquist bin taken as −N/2
        let signed = if q < n / 2 {
            q as f64
        } else {
            q as f64 - n as f64
        };
        *v *= Complex64::from_polar(1.0 / n as f64, -2.0 * PI * signed * dxi * x);
    }
    fft::plan(n, true).process(&mut buf);
    buf
}

/// `ρ(x,ξ)f(t) = e^{−πixξ}·e^{2πiξt}·f(t − x)`.
pub fn tf_shift(f: &WindowVector, z: PhasePoint, mode: ShiftMode) -> Result<WindowVector> {
    let grid = *f.grid();
    let n = grid.n();
    let shifted = match mode {
        ShiftMode::Snapped => {
            let m = snap(&grid, z.x)?;
            (0..n)
                .map(|j| f.values()[(j as isize - m).rem_euclid(n as isize) as usize])
                .collect::<Vec<_>>()
        }
        ShiftMode::Interpolated => fractional_shift(f.values(), &grid, z.x),
    };
    let phase = -PI * z.x * z.xi;
    let values = shifted
        .into_iter()
        .enumerate()
        .map(|(j, v)| v * Complex64::from_polar(1.0, phase + 2.0 * PI * z.xi * grid.position(j)))
        .collect();
    WindowVector::new(grid, values)
}

/// `P T P` with `P` the periodic reflection `j ↦ (N − j) mod N`.
pub fn parity_conjugate(t: &OperatorMatrix) -> OperatorMatrix {
    let grid = *t.grid();
    OperatorMatrix::from_fn(&grid, |i, j| t.at(grid.reflect(i), grid.reflect(j)))
}

/// Dense matrix of `ρ(z)` in the sample basis (columns are `ρ(z)e_l`).
fn shift_matrix(grid: &PhaseGrid, z: PhasePoint, mode: ShiftMode) -> Result<Vec<Complex64>> {
    let n = grid.n();
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for l in 0..n {
        let e = WindowVector::from_fn(grid, |_| Complex64::new(0.0, 0.0));
        let mut vals = e.values().to_vec();
        vals[l] = Complex64::new(1.0, 0.0);
        let col = tf_shift(&WindowVector::new(*grid, vals)?, z, mode)?;
        for (j, v) in col.values().iter().enumerate() {
            m[j * n + l] = *v;
        }
    }
    Ok(m)
}

/// Operator translation `α_z(T) = ρ(z)·T·ρ(−z)`.
pub fn translate_operator(
    t: &OperatorMatrix,
    z: PhasePoint,
    mode: ShiftMode,
) -> Result<OperatorMatrix> {
    let grid = *t.grid();
    let n = grid.n();
    match mode {
        ShiftMode::Snapped => {
            let m = snap(&grid, z.x)?;
            let wrap = |j: usize| (j as isize - m).rem_euclid(n as isize) as usize;
            let global = Complex64::from_polar(1.0, -2.0 * PI * z.x * z.xi);
            let left: Vec<Complex64> = (0..n)
                .map(|j| Complex64::from_polar(1.0, 2.0 * PI * z.xi * grid.position(j)))
                .collect();
            let right: Vec<Complex64> = (0..n)
                .map(|l| Complex64::from_polar(1.0, -2.0 * PI * z.xi * grid.position(wrap(l))))
                .collect();
            Ok(OperatorMatrix::from_fn(&grid, |j, l| {
                global * left[j] * right[l] * t.at(wrap(j), wrap(l))
            }))
        }
        ShiftMode::Interpolated => {
            let fwd = shift_matrix(&grid, z, mode)?;
            let back = shift_matrix(&grid, -z, mode)?;
            let as_op = |m: Vec<Complex64>| OperatorMatrix::from_matrix(grid, m);
            as_op(fwd).compose(t)?.compose(&as_op(back))
        }
    }
}

/// `g ⊗ h : f ↦ ⟨f, h⟩·g`, kernel `g(x)·conj(h(y))`.
pub fn rank_one(g: &WindowVector, h: &WindowVector) -> Result<OperatorMatrix> {
    g.grid().ensure_same(h.grid())?;
    let (gv, hv) = (g.values(), h.values());
    Ok(OperatorMatrix::from_fn(g.grid(), |i, j| {
        gv[i] * hv[j].conj()
    }))
}

/// `tr T = h·Σ_i K[i][i]`.
pub fn trace(t: &OperatorMatrix) -> Complex64 {
    let n = t.grid().n();
    (0..n).map(|i| t.at(i, i)).sum::<Complex64>() * t.grid().spacing()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> PhaseGrid {
        PhaseGrid::self_dual(128).unwrap()
    }

    fn grid_point(g: &PhaseGrid, a: isize, b: isize) -> PhasePoint {
        PhasePoint::new(a as f64 * g.spacing(), b as f64 * g.freq_spacing())
    }

    fn test_vector(g: &PhaseGrid) -> WindowVector {
        WindowVector::from_fn(g, |t| {
            Complex64::new(
                (-PI * (t - 0.3) * (t - 0.3)).exp(),
                0.4 * t * (-PI * t * t).exp(),
            )
        })
    }

    #[test]
    fn zero_shift_is_identity() {
        let g = grid();
        let f = test_vector(&g);
        assert_eq!(
            tf_shift(&f, PhasePoint::ORIGIN, ShiftMode::Snapped).unwrap(),
            f
        );
    }

    #[test]
    fn shifts_are_unitary() {
        let g = grid();
        let f = test_vector(&g);
        for (a, b) in [(3, 7), (-20, 5), (64, -64), (1, 0)] {
            let z = grid_point(&g, a, b);
            let out = tf_shift(&f, z, ShiftMode::Snapped).unwrap();
            assert!((out.norm() - f.norm()).abs() < 1e-12);
        }
        let z = PhasePoint::new(0.123, -0.77);
        let out = tf_shift(&f, z, ShiftMode::Interpolated).unwrap();
        assert!((out.norm() - f.norm()).abs() < 1e-12);
    }

    #[test]
    fn off_grid_position_needs_interpolation() {
        let g = grid();
        let f = test_vector(&g);
        let err = tf_shift(&f, PhasePoint::new(0.1, 0.0), ShiftMode::Snapped).unwrap_err();
        assert!(matches!(err, QhaError::GridAlignment(_)));
    }

    #[test]
    fn interpolated_agrees_with_snapped_on_grid() {
        let g = grid();
        let f = test_vector(&g);
        let z = grid_point(&g, 5, -9);
        let a = tf_shift(&f, z, ShiftMode::Snapped).unwrap();
        let b = tf_shift(&f, z, ShiftMode::Interpolated).unwrap();
        assert!(a.sub(&b).unwrap().norm() < 1e-12);
    }

    #[test]
    fn interpolated_shift_of_gaussian_is_accurate() {
        let g = grid();
        let phi = WindowVector::standard_gaussian(&g);
        let x = 0.37;
        let out = tf_shift(&phi, PhasePoint::new(x, 0.0), ShiftMode::Interpolated).unwrap();
        let want = WindowVector::from_fn(&g, |t| {
            Complex64::new(2f64.powf(0.25) * (-PI * (t - x) * (t - x)).exp(), 0.0)
        });
        assert!(out.sub(&want).unwrap().norm() < 1e-12);
    }

    #[test]
    fn parity_is_an_involution_fixing_even_operators() {
        let g = grid();
        let t = OperatorMatrix::from_fn(&g, |i, j| Complex64::new(i as f64, (j * j) as f64));
        assert_eq!(parity_conjugate(&parity_conjugate(&t)), t);
        let id = OperatorMatrix::identity(&g);
        assert_eq!(parity_conjugate(&id), id);
        let phi = WindowVector::standard_gaussian(&g);
        let p = rank_one(&phi, &phi).unwrap();
        let diff = parity_conjugate(&p).sub(&p).unwrap().max_abs();
        assert!(diff <= 1e-12 * p.max_abs());
        // (PTP)* = P T* P
        assert_eq!(
            parity_conjugate(&t).adjoint(),
            parity_conjugate(&t.adjoint())
        );
    }

    #[test]
    fn translation_group_property() {
        let g = grid();
        let f = test_vector(&g);
        let t = rank_one(&f, &WindowVector::standard_gaussian(&g)).unwrap();
        assert_eq!(
            translate_operator(&t, PhasePoint::ORIGIN, ShiftMode::Snapped).unwrap(),
            t
        );
        let z = grid_point(&g, 13, -6);
        let there = translate_operator(&t, -z, ShiftMode::Snapped).unwrap();
        let back = translate_operator(&there, z, ShiftMode::Snapped).unwrap();
        assert!(back.sub(&t).unwrap().max_abs() <= 1e-12 * t.max_abs());
    }

    #[test]
    fn translation_moves_rank_one_factors() {
        let g = grid();
        let f = test_vector(&g);
        let phi = WindowVector::standard_gaussian(&g);
        let z = grid_point(&g, -7, 11);
        let lhs = translate_operator(&rank_one(&f, &phi).unwrap(), z, ShiftMode::Snapped).unwrap();
        let rf = tf_shift(&f, z, ShiftMode::Snapped).unwrap();
        let rphi = tf_shift(&phi, z, ShiftMode::Snapped).unwrap();
        let rhs = rank_one(&rf, &rphi).unwrap();
        assert!(lhs.sub(&rhs).unwrap().max_abs() <= 1e-12 * rhs.max_abs());
        let interp =
            translate_operator(&rank_one(&f, &phi).unwrap(), z, ShiftMode::Interpolated).unwrap();
        assert!(interp.sub(&rhs).unwrap().max_abs() <= 1e-10 * rhs.max_abs());
    }

    #[test]
    fn rank_one_trace_and_action() {
        let g = grid();
        let f = test_vector(&g);
        let phi = WindowVector::standard_gaussian(&g);
        let t = rank_one(&f, &phi).unwrap();
        assert!((trace(&t) - f.inner(&phi).unwrap()).norm() < 1e-12);
        let out = t.apply(&phi).unwrap();
        assert!(out.sub(&f).unwrap().norm() < 1e-12 * f.norm());
        assert!((trace(&rank_one(&phi, &phi).unwrap()).re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn discrete_identity_trace_is_sample_count() {
        let g = PhaseGrid::self_dual(256).unwrap();
        assert!((trace(&OperatorMatrix::identity(&g)).re - 256.0).abs() < 1e-9);
    }
}
