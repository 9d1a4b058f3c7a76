use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::{op_conv, BoundReport, ConvMethod, YOUNG_TOLERANCE};
use crate::error::{invalid, Result};
use crate::exponent::Exponent;
use crate::operators::{
    rank_one, singular_spectrum, tf_shift, OperatorMatrix, ShiftMode, WindowVector,
};
use crate::phase_space::{lp_norm, PhaseGrid, PhasePoint};
use crate::rng;

/// Phase-space radius inside which random wave packets are centred.
const PACKET_RADIUS: f64 = 1.0;
const PACKETS_PER_FACTOR: usize = 2;

#[derive(Clone, Debug, Serialize)]
pub struct YoungTrialReport {
    pub p: Exponent,
    pub q: Exponent,
    pub r: Exponent,
    pub grid: PhaseGrid,
    pub seed: u64,
    pub trials: usize,
    pub violations: usize,
    /// Largest `lhs / rhs` over all trials.
    pub max_ratio: f64,
    pub min_slack: f64,
    pub pass: bool,
    #[serde(skip)]
    pub reports: Vec<BoundReport>,
}

fn complex_normal<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn random_packet_vector<R: Rng>(grid: &PhaseGrid, rng: &mut R) -> Result<WindowVector> {
    let phi = WindowVector::standard_gaussian(grid);
    let reach_x = (PACKET_RADIUS / grid.spacing()).floor() as i64;
    let reach_xi = (PACKET_RADIUS / grid.freq_spacing()).floor() as i64;
    let mut acc = WindowVector::from_fn(grid, |_| Complex64::new(0.0, 0.0));
    for _ in 0..PACKETS_PER_FACTOR {
        let z = loop {
            let a = rng.random_range(-reach_x..=reach_x) as f64 * grid.spacing();
            let b = rng.random_range(-reach_xi..=reach_xi) as f64 * grid.freq_spacing();
            let z = PhasePoint::new(a, b);
            if z.norm() <= PACKET_RADIUS {
                break z;
            }
        };
        let packet = tf_shift(&phi, z, ShiftMode::Snapped)?;
        acc = acc.add(&packet.scale(complex_normal(rng)))?;
    }
    Ok(acc)
}

/// A random operator of rank `rank` built from Gaussian wave packets near
/// the origin; positive semidefinite when `positive` is set.
pub fn random_low_rank_operator(
    grid: &PhaseGrid,
    rank: usize,
    seed: u64,
    index: u64,
    positive: bool,
) -> Result<OperatorMatrix> {
    let mut rng = rng::stream(seed, index);
    let mut op = OperatorMatrix::zeros(grid);
    for _ in 0..rank {
        let u = random_packet_vector(grid, &mut rng)?;
        let v = if positive {
            u.clone()
        } else {
            random_packet_vector(grid, &mut rng)?
        };
        let weight: f64 = StandardNormal.sample(&mut rng);
        op = op.add(&rank_one(&u, &v)?.scale(Complex64::new(weight.abs(), 0.0)))?;
    }
    Ok(op)
}

fn check_exponents(p: Exponent, q: Exponent, r: Exponent) -> Result<()> {
    let gap = 1.0 + r.reciprocal() - p.reciprocal() - q.reciprocal();
    if gap.abs() > 1e-12 {
        return Err(invalid(format!(
            "exponents must satisfy 1 + 1/r = 1/p + 1/q, got p={p}, q={q}, r={r}"
        )));
    }
    Ok(())
}

/// `‖S ⋆ T‖_{L^r}` against `‖S‖_{S^p}·‖T‖_{S^q}` for one pair.
pub fn young_bound(
    s: &OperatorMatrix,
    t: &OperatorMatrix,
    p: Exponent,
    q: Exponent,
    r: Exponent,
) -> Result<BoundReport> {
    check_exponents(p, q, r)?;
    let conv = op_conv(s, t, ConvMethod::Direct)?;
    let lhs = lp_norm(&conv, r)?;
    let sp = singular_spectrum(s).schatten(p);
    let tq = singular_spectrum(t).schatten(q);
    Ok(
        BoundReport::new("werner-young", lhs, sp * tq, YOUNG_TOLERANCE)
            .with("schatten_p", sp)
            .with("schatten_q", tq),
    )
}

/// Random trials of `‖S ⋆ T‖_{L^r} ≤ ‖S‖_{S^p}·‖T‖_{S^q}` with
/// `1 + 1/r = 1/p + 1/q`, on operators of rank at most 5.
pub fn werner_young_trial(
    p: Exponent,
    q: Exponent,
    r: Exponent,
    trials: usize,
    seed: u64,
    grid: &PhaseGrid,
) -> Result<YoungTrialReport> {
    check_exponents(p, q, r)?;
    let mut reports = Vec::with_capacity(trials);
    for trial in 0..trials as u64 {
        let mut pick = rng::stream(seed ^ 0x05ee_d0f7_a1a1, trial);
        let (rs, rt) = (pick.random_range(1..=5), pick.random_range(1..=5));
        let s = random_low_rank_operator(grid, rs, seed, 2 * trial, false)?;
        let t = random_low_rank_operator(grid, rt, seed, 2 * trial + 1, false)?;
        reports.push(young_bound(&s, &t, p, q, r)?);
    }
    let violations = reports.iter().filter(|b| !b.pass).count();
    let max_ratio = reports.iter().map(|b| b.lhs / b.rhs).fold(0.0, f64::max);
    let min_slack = reports
        .iter()
        .map(|b| b.slack)
        .fold(f64::INFINITY, f64::min);
    Ok(YoungTrialReport {
        p,
        q,
        r,
        grid: *grid,
        seed,
        trials,
        violations,
        max_ratio,
        min_slack,
        pass: violations == 0,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_relation_is_enforced() {
        let g = PhaseGrid::self_dual(16).unwrap();
        let err = werner_young_trial(Exponent::ONE, Exponent::ONE, Exponent::TWO, 1, 0, &g);
        assert!(err.is_err());
    }

    #[test]
    fn random_operators_have_requested_rank() {
        let g = PhaseGrid::self_dual(64).unwrap();
        for rank in 1..=5 {
            let op = random_low_rank_operator(&g, rank, 9, rank as u64, false).unwrap();
            assert_eq!(singular_spectrum(&op).numerical_rank(), rank);
        }
    }
}
