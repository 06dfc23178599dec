//! `experiment`: seeded Monte Carlo trials of the two-stage codec with
//! per-trial rows and per-block-length summary rows in one CSV.
//!
//! Trial `t` at block length `n` always runs on `mix(seed, n, t)`, so the
//! output is independent of scheduling and worker count.

use std::thread;

use alwc_core::codec::{schedule_k, two_stage_encode, CodecStats, CoderKind};
use alwc_core::dist::Pmf;
use alwc_core::math::mix_seed;

use super::{parse_n_grid, parse_source};
use crate::args::{CoderArg, ExperimentArgs};
use crate::csvfmt::{float, opt_float};
use crate::{symio, CliError};

pub const CSV_HEADER: &str = "kind,n,k,trial,seed,emp_rate,emp_distortion,redundancy_vs_H,\
redundancy_vs_restricted,header_bytes,mean_rate,sd_rate,mean_distortion,sd_distortion,\
mean_redundancy_vs_H,mean_redundancy_vs_restricted,expected_distortion,entropy_bits,\
restricted_entropy_bits,kt_budget_bits";

struct Job {
    n: u64,
    k: u32,
    trial: u32,
    seed: u64,
}

fn run_trial(source: &Pmf, coder: CoderKind, job: &Job) -> Result<CodecStats, CliError> {
    let xs = source.sample(job.seed, job.n as usize);
    let (_, _, stats) = two_stage_encode(Some(source), &xs, job.k, coder)?;
    Ok(stats)
}

/// Sample mean and standard deviation (n-1 denominator; 0 for one trial).
fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.max(0.0).sqrt())
}

pub fn run(a: ExperimentArgs) -> Result<(), CliError> {
    let source = parse_source(&a.source)?;
    let n_grid = parse_n_grid(&a.n_grid)?;
    if a.trials == 0 {
        return Err(CliError::Usage("need at least one trial".into()));
    }
    let coder = match a.coder {
        CoderArg::Static => CoderKind::Static,
        CoderArg::Kt => CoderKind::Kt,
    };
    let k_for = |n: u64| -> Result<u32, CliError> {
        match (a.k, a.tau) {
            (Some(k), None) => Ok(k),
            (None, Some(tau)) => Ok(schedule_k(n, tau)?),
            _ => Err(CliError::Usage("give exactly one of --k or --tau".into())),
        }
    };
    let mut jobs = Vec::new();
    for &n in &n_grid {
        let k = k_for(n)?;
        for trial in 0..a.trials {
            jobs.push(Job { n, k, trial, seed: mix_seed(a.seed, n, trial as u64) });
        }
    }

    let workers = a.workers.max(1).min(jobs.len().max(1));
    let mut results: Vec<Option<CodecStats>> = (0..jobs.len()).map(|_| None).collect();
    if workers <= 1 {
        for (slot, job) in results.iter_mut().zip(&jobs) {
            *slot = Some(run_trial(&source, coder, job)?);
        }
    } else {
        let chunks = thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let jobs = &jobs;
                    let source = &source;
                    scope.spawn(move || {
                        jobs.iter()
                            .enumerate()
                            .skip(w)
                            .step_by(workers)
                            .map(|(i, job)| (i, run_trial(source, coder, job)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
        });
        for chunk in chunks {
            for (i, res) in chunk {
                results[i] = Some(res?);
            }
        }
    }

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    let mut cursor = 0usize;
    for &n in &n_grid {
        let k = k_for(n)?;
        let group: Vec<(&Job, CodecStats)> = (0..a.trials as usize)
            .map(|i| {
                let job = &jobs[cursor + i];
                let stats = results[cursor + i].clone().expect("trial completed");
                (job, stats)
            })
            .collect();
        cursor += a.trials as usize;
        for (job, stats) in &group {
            csv.push_str(&format!(
                "trial,{},{},{},{},{},{},{},{},{},,,,,,,,,,\n",
                n,
                k,
                job.trial,
                job.seed,
                float(stats.emp_rate),
                float(stats.emp_distortion),
                opt_float(stats.redundancy_vs_h),
                opt_float(stats.redundancy_vs_restricted),
                stats.header_bytes,
            ));
        }
        let rates: Vec<f64> = group.iter().map(|(_, s)| s.emp_rate).collect();
        let dists: Vec<f64> = group.iter().map(|(_, s)| s.emp_distortion).collect();
        let red_h: Vec<f64> =
            group.iter().filter_map(|(_, s)| s.redundancy_vs_h).collect();
        let red_r: Vec<f64> =
            group.iter().filter_map(|(_, s)| s.redundancy_vs_restricted).collect();
        let (mean_rate, sd_rate) = mean_sd(&rates);
        let (mean_dist, sd_dist) = mean_sd(&dists);
        let (mean_red_h, _) = mean_sd(&red_h);
        let (mean_red_r, _) = mean_sd(&red_r);
        let expected_dist = source.tail_mass(k as u64);
        let entropy = source.entropy_bits();
        let restricted = source.quantized(k as u64)?.entropy_bits();
        let kt_budget = (k as f64 - 1.0) / 2.0 * (n as f64).log2() / n as f64;
        csv.push_str(&format!(
            "summary,{},{},,,,,,,,{},{},{},{},{},{},{},{},{},{}\n",
            n,
            k,
            float(mean_rate),
            float(sd_rate),
            float(mean_dist),
            float(sd_dist),
            float(mean_red_h),
            float(mean_red_r),
            float(expected_dist),
            float(entropy),
            float(restricted),
            float(kt_budget),
        ));
    }
    symio::write_text(&a.out, &csv)
}
