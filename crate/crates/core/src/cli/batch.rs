use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::Serialize;

use super::config::{RunConfig, ValidatedRun};
use super::{write_text, EXIT_BOUND_FAILED, EXIT_OK};
use crate::error::{QhaError, Result};
use crate::exponent::Exponent;
use crate::operators::{rank_one, WindowVector};
use crate::phase_space::{random_bandlimited_sample, PhaseGrid, Region};
use crate::qha::{
    check_support, estimate_constants, sample_ratio, BoundChain, BoundChainContext, BoundReport,
    ConstantEstimate, RatioSample,
};

#[derive(Serialize)]
struct SampleReport {
    sample: usize,
    #[serde(flatten)]
    report: BoundReport,
}

#[derive(Serialize)]
struct Certificates {
    cutoff_trace_norm: f64,
    wigner_l1: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    grid: PhaseGrid,
    region: Region,
    margin: f64,
    seed: u64,
    samples: usize,
    p: Vec<Exponent>,
    certificate: Certificates,
    /// `‖τ‖_p ≤ ‖L_{F_σΨ}‖_{S¹}·‖L_τ‖_{S^p}`, one per sample and exponent.
    reports: Vec<SampleReport>,
    young_reports: Vec<SampleReport>,
    reconstruction_reports: Vec<SampleReport>,
    intertwining_reports: Vec<SampleReport>,
    ratios: Vec<ConstantEstimate>,
    failures: usize,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

#[derive(Serialize)]
struct EstimateReport {
    command: &'static str,
    estimates: Vec<ConstantEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn timestamp(cfg: &RunConfig) -> Option<u64> {
    cfg.timestamp.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    })
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    write_text(
        path,
        &serde_json::to_string_pretty(value).expect("report serializes"),
    )
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_csv(path: &Path, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
    let io_err = |e: csv::Error| QhaError::Io {
        path: path.to_path_buf(),
        source: e.into(),
    };
    let mut w = csv::Writer::from_path(path).map_err(io_err)?;
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush().map_err(|source| QhaError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(super) fn verify(cfg: &RunConfig) -> Result<i32> {
    let ValidatedRun {
        grid,
        region,
        symbol,
        config,
    } = cfg.validate()?;
    let ps = &config.p;
    if let Some(tau) = &symbol {
        check_support(tau, &region)?;
    }
    let ctx = BoundChainContext::new(&grid, &region, config.margin)?;
    let chains: Vec<Vec<BoundChain>> = (0..config.samples as u64)
        .into_par_iter()
        .map(|i| match &symbol {
            Some(tau) => ctx.verify(tau, ps),
            None => {
                let tau = random_bandlimited_sample(&grid, &region, config.seed, i, false)?;
                ctx.verify(&tau, ps)
            }
        })
        .collect::<Result<_>>()?;

    let mut reports = Vec::new();
    let mut young_reports = Vec::new();
    let mut reconstruction_reports = Vec::new();
    let mut intertwining_reports = Vec::new();
    let mut rows = Vec::new();
    for (sample, per_p) in chains.iter().enumerate() {
        reconstruction_reports.push(SampleReport {
            sample,
            report: per_p[0].reconstruction.clone(),
        });
        intertwining_reports.push(SampleReport {
            sample,
            report: per_p[0].intertwining.clone(),
        });
        for chain in per_p {
            let op_p = chain.certificate_bound.certificate["operator_schatten_p"];
            let smoothed = chain.young_step.lhs;
            rows.push(vec![
                sample.to_string(),
                chain.p.to_string(),
                num(chain.certificate_bound.lhs),
                num(op_p),
                num(smoothed),
                num(op_p / smoothed),
                num(chain.certificate_bound.lhs / chain.certificate_bound.rhs),
            ]);
            reports.push(SampleReport {
                sample,
                report: chain.certificate_bound.clone(),
            });
            young_reports.push(SampleReport {
                sample,
                report: chain.young_step.clone(),
            });
        }
    }
    let ratios = ps
        .iter()
        .enumerate()
        .map(|(col, &p)| {
            let samples: Vec<RatioSample> = chains
                .iter()
                .map(|row| RatioSample {
                    numerator: row[col].certificate_bound.certificate["operator_schatten_p"],
                    denominator: row[col].young_step.lhs,
                })
                .collect();
            ConstantEstimate::from_samples(region, p, grid, config.seed, &samples)
        })
        .collect::<Result<Vec<_>>>()?;

    let failures = [
        &reports,
        &young_reports,
        &reconstruction_reports,
        &intertwining_reports,
    ]
    .iter()
    .flat_map(|list| list.iter())
    .filter(|r| !r.report.pass)
    .count();
    let report = VerifyReport {
        command: "verify",
        grid,
        region,
        margin: config.margin,
        seed: config.seed,
        samples: config.samples,
        p: ps.clone(),
        certificate: Certificates {
            cutoff_trace_norm: ctx.cutoff_trace_norm(),
            wigner_l1: ctx.wigner_l1(),
        },
        reports,
        young_reports,
        reconstruction_reports,
        intertwining_reports,
        ratios,
        failures,
        pass: failures == 0,
        timestamp: timestamp(&config),
    };
    write_json(config.output.as_deref(), &report)?;
    if let Some(path) = &config.csv {
        let header = [
            "sample",
            "p",
            "tau_lp",
            "schatten_p",
            "smoothed_lp",
            "ratio",
            "certificate_fraction",
        ];
        write_csv(path, &header, rows)?;
    }
    Ok(if report.pass {
        EXIT_OK
    } else {
        EXIT_BOUND_FAILED
    })
}

pub(super) fn estimate(cfg: &RunConfig) -> Result<i32> {
    let ValidatedRun {
        grid,
        region,
        symbol,
        config,
    } = cfg.validate()?;
    let estimates = match &symbol {
        Some(tau) => {
            check_support(tau, &region)?;
            let phi = WindowVector::standard_gaussian(&grid);
            let samples = sample_ratio(tau, &rank_one(&phi, &phi)?, &config.p)?;
            config
                .p
                .iter()
                .zip(samples)
                .map(|(&p, s)| ConstantEstimate::from_samples(region, p, grid, config.seed, &[s]))
                .collect::<Result<Vec<_>>>()?
        }
        None => estimate_constants(&region, &config.p, config.samples, config.seed, &grid)?,
    };
    if let Some(path) = &config.csv {
        let rows = estimates
            .iter()
            .flat_map(|est| {
                est.values.iter().enumerate().map(move |(i, v)| {
                    vec![
                        i.to_string(),
                        est.p.to_string(),
                        v.map(num).unwrap_or_default(),
                    ]
                })
            })
            .collect();
        write_csv(path, &["sample", "p", "ratio"], rows)?;
    }
    let report = EstimateReport {
        command: "estimate-constant",
        estimates,
        timestamp: timestamp(&config),
    };
    write_json(config.output.as_deref(), &report)?;
    Ok(EXIT_OK)
}
