use num_complex::Complex64;

use super::{EXIT_BOUND_FAILED, EXIT_OK};
use crate::error::Result;
use crate::exponent::Exponent;
use crate::io::{decode, encode, FileKind};
use crate::operators::{
    parity_conjugate, rank_one, schatten_norm, singular_spectrum, tf_shift, trace,
    translate_operator, OperatorMatrix, ShiftMode, WindowVector,
};
use crate::phase_space::{
    convolve_symbols, lp_norm, random_bandlimited_sample, random_bandlimited_symbol, smooth_cutoff,
    symplectic_fourier, PhaseGrid, Region,
};
use crate::qha::{
    check_eq2, op_conv, random_low_rank_operator, verify_bound_chain, werner_young_trial,
    ConvMethod,
};
use crate::weyl::{cross_wigner, fourier_weyl, weyl_quantize, weyl_symbol};

struct Check {
    name: &'static str,
    value: f64,
    bound: f64,
}

impl Check {
    fn pass(&self) -> bool {
        self.value <= self.bound
    }
}

const SEED: u64 = 0x5e1f;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn window(grid: &PhaseGrid, index: u64) -> Result<WindowVector> {
    let t = random_low_rank_operator(grid, 1, SEED, index, false)?;
    let n = grid.n();
    let col: Vec<Complex64> = (0..n).map(|i| t.at(i, n / 2)).collect();
    Ok(WindowVector::new(*grid, col)?.normalized())
}

fn checks(grid: &PhaseGrid) -> Result<Vec<Check>> {
    let disc = Region::disc(1.5)?;
    let tau = random_bandlimited_sample(grid, &disc, SEED, 0, false)?;
    let phi_sym = random_bandlimited_sample(grid, &disc, SEED, 1, false)?;
    let real = random_bandlimited_symbol(grid, &disc, SEED, true)?;
    let l_tau = weyl_quantize(&tau);
    let g0 = WindowVector::standard_gaussian(grid);
    let (f, g) = (window(grid, 10)?, window(grid, 11)?);
    let t = random_low_rank_operator(grid, 3, SEED, 20, false)?;
    let s = random_low_rank_operator(grid, 3, SEED, 21, false)?;
    let tau_l2 = lp_norm(&tau, Exponent::TWO)?;
    let z = grid.point(grid.center() + 3, grid.center() - 2);
    let mut out = Vec::new();
    let mut add = |name, value: f64, bound| out.push(Check { name, value, bound });

    let ff = symplectic_fourier(&symplectic_fourier(&tau));
    add(
        "symplectic Fourier involution",
        ff.relative_l2_error(&tau)?,
        1e-12,
    );
    add(
        "Plancherel",
        rel(lp_norm(&symplectic_fourier(&tau), Exponent::TWO)?, tau_l2),
        1e-12,
    );
    let conv = convolve_symbols(&tau, &phi_sym)?;
    let product = symplectic_fourier(&tau).mul(&symplectic_fourier(&phi_sym))?;
    add(
        "convolution theorem",
        symplectic_fourier(&conv).relative_sup_error(&product)?,
        1e-10,
    );
    let (p, q, r) = (
        Exponent::Finite(1.5),
        Exponent::Finite(1.2),
        Exponent::Finite(2.0),
    );
    add(
        "classical Young",
        lp_norm(&conv, r)? / (lp_norm(&tau, p)? * lp_norm(&phi_sym, q)?),
        1.0 + 1e-9,
    );
    let cutoff = smooth_cutoff(grid, &disc, 0.5)?;
    let cutoff_err = (0..grid.n() * grid.n())
        .map(|idx| {
            let z = grid.point(idx / grid.n(), idx % grid.n());
            let v = cutoff.values()[idx].re;
            if disc.contains(z) {
                (v - 1.0).abs()
            } else if disc.distance(z) >= 0.5 {
                v.abs()
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max);
    add("cutoff exact on region and outside margin", cutoff_err, 0.0);

    add(
        "time-frequency shift unitarity",
        rel(tf_shift(&f, z, ShiftMode::Snapped)?.norm(), 1.0),
        1e-12,
    );
    let moved = translate_operator(&t, z, ShiftMode::Snapped)?;
    add(
        "Schatten norms invariant under translation",
        rel(
            schatten_norm(&moved, Exponent::ONE)?.value,
            schatten_norm(&t, Exponent::ONE)?.value,
        ),
        1e-10,
    );
    add(
        "parity commutes with adjoint",
        parity_conjugate(&t)
            .adjoint()
            .sub(&parity_conjugate(&t.adjoint()))?
            .max_abs(),
        0.0,
    );
    add(
        "Schatten norm of adjoint",
        rel(
            schatten_norm(&t.adjoint(), Exponent::Finite(3.0))?.value,
            schatten_norm(&t, Exponent::Finite(3.0))?.value,
        ),
        1e-12,
    );
    add(
        "Hilbert-Schmidt identity",
        rel(schatten_norm(&t, Exponent::TWO)?.value, t.kernel_l2()),
        1e-12,
    );
    let holder = trace(&t.compose(&s)?).norm()
        / (schatten_norm(&t, Exponent::Finite(3.0))?.value
            * schatten_norm(&s, Exponent::Finite(1.5))?.value);
    add("operator Hoelder", holder, 1.0 + 1e-9);

    add(
        "Weyl round trip",
        weyl_symbol(&l_tau).relative_l2_error(&tau)?,
        1e-10,
    );
    let back = weyl_quantize(&weyl_symbol(&t));
    add(
        "quantize after symbol",
        back.sub(&t)?.kernel_l2() / t.kernel_l2(),
        1e-10,
    );
    let lhs = l_tau.apply(&f)?.inner(&g)?;
    let w = cross_wigner(&g, &f)?;
    let rhs: Complex64 = tau
        .values()
        .iter()
        .zip(w.values())
        .map(|(a, b)| a * b)
        .sum::<Complex64>()
        * grid.cell_area();
    add(
        "pairing identity",
        (lhs - rhs).norm() / (tau_l2 * f.norm() * g.norm()),
        1e-8,
    );
    let l_real = weyl_quantize(&real);
    let skew = singular_spectrum(&l_real.sub(&l_real.adjoint())?).largest();
    add(
        "real symbols are self-adjoint",
        skew / singular_spectrum(&l_real).largest(),
        1e-10,
    );
    let di = (z.x / grid.spacing()).round() as isize;
    let dk = (z.xi / grid.freq_spacing()).round() as isize;
    let covariant = weyl_quantize(&tau.translate(di, dk));
    add(
        "translation covariance",
        covariant
            .sub(&translate_operator(&l_tau, z, ShiftMode::Snapped)?)?
            .max_abs()
            / l_tau.max_abs(),
        1e-8,
    );
    add(
        "parity covariance",
        weyl_quantize(&tau.reflect())
            .sub(&parity_conjugate(&l_tau))?
            .max_abs()
            / l_tau.max_abs(),
        1e-8,
    );
    add(
        "Pool isometry",
        rel(schatten_norm(&l_tau, Exponent::TWO)?.value, tau_l2),
        1e-10,
    );
    add(
        "Fourier-Weyl of quantisation",
        fourier_weyl(&l_tau).relative_l2_error(&symplectic_fourier(&tau))?,
        1e-8,
    );

    add(
        "intertwining",
        check_eq2(&tau, &phi_sym)?.lhs / check_eq2(&tau, &phi_sym)?.rhs,
        1.0,
    );
    let direct = op_conv(&t, &s, ConvMethod::Direct)?;
    let fast = op_conv(&t, &s, ConvMethod::Fast)?;
    add(
        "direct and fast convolution agree",
        fast.relative_sup_error(&direct)?,
        1e-8,
    );
    let integral: Complex64 = direct.values().iter().sum::<Complex64>() * grid.cell_area();
    add(
        "quantum Fubini",
        (integral - trace(&t) * trace(&s)).norm() / (trace(&t) * trace(&s)).norm(),
        1e-6,
    );
    let pos_t = random_low_rank_operator(grid, 3, SEED, 30, true)?;
    let pos_s = random_low_rank_operator(grid, 2, SEED, 31, true)?;
    let pos = op_conv(&pos_t, &pos_s, ConvMethod::Direct)?;
    let neg = pos
        .values()
        .iter()
        .map(|v| (-v.re).max(v.im.abs()))
        .fold(0.0, f64::max);
    add("positivity of convolution", neg / pos.max_abs(), 1e-10);
    for (p, q, r, name) in [
        (1.0, 1.0, 1.0, "Werner-Young (1,1,1)"),
        (1.0, 2.0, 2.0, "Werner-Young (1,2,2)"),
        (2.0, 2.0, f64::INFINITY, "Werner-Young (2,2,inf)"),
        (
            1.0,
            f64::INFINITY,
            f64::INFINITY,
            "Werner-Young (1,inf,inf)",
        ),
    ] {
        let rep = werner_young_trial(
            Exponent::new(p)?,
            Exponent::new(q)?,
            Exponent::new(r)?,
            10,
            SEED,
            grid,
        )?;
        add(name, rep.violations as f64, 0.0);
    }
    let projector = rank_one(&g0, &g0)?;
    add(
        "Gaussian projector trace",
        (trace(&projector) - 1.0).norm(),
        1e-10,
    );

    let chain = verify_bound_chain(&tau, &disc, Exponent::TWO, 0.5)?;
    add(
        "reconstruction",
        chain.reconstruction.lhs / chain.reconstruction.rhs.max(f64::MIN_POSITIVE),
        1.0,
    );
    add(
        "certificate bound",
        chain.certificate_bound.lhs / chain.certificate_bound.rhs,
        1.0 + 1e-3,
    );
    add(
        "classical Young step",
        chain.young_step.lhs / chain.young_step.rhs,
        1.0 + 1e-9,
    );

    let bytes = encode(FileKind::Operator, grid, t.kernel());
    let (_, decoded) = decode(FileKind::Operator, &bytes)?;
    let round = OperatorMatrix::new(*grid, decoded)?;
    add("file round trip", if round == t { 0.0 } else { 1.0 }, 0.0);
    Ok(out)
}

pub(super) fn run(n: usize) -> Result<i32> {
    let grid = PhaseGrid::self_dual(n)?;
    let results = checks(&grid)?;
    let mut failed = 0;
    let mut lines = Vec::with_capacity(results.len() + 1);
    for c in &results {
        let tag = if c.pass() { "PASS" } else { "FAIL" };
        failed += usize::from(!c.pass());
        lines.push(format!(
            "{tag}  {:<44} {:>11.3e} <= {:.1e}",
            c.name, c.value, c.bound
        ));
    }
    lines.push(format!("{} checks, {failed} failed", results.len()));
    super::print_text(&lines.join("\n"))?;
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_BOUND_FAILED
    })
}
