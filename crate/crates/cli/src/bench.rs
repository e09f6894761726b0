use anyhow::Result;
use clap::Args;
use serde::Serialize;

use vca_core::exact::exact_optimum;
use vca_core::generate;
use vca_core::Instance;

use crate::solve::{solve, Algo, AlgoArgs};

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "8,10,12")]
    pub n_list: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "0.4")]
    pub p_list: Vec<f64>,
    /// Seeds `0..seeds`.
    #[arg(long, default_value_t = 3)]
    pub seeds: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "greedy,ls")]
    pub algos: Vec<Algo>,
    /// Largest `n` for which the exact optimum is computed for the ratio
    /// column.
    #[arg(long, default_value_t = 14)]
    pub exact_max_n: u32,
    #[command(flatten)]
    pub opts: AlgoArgs,
}

#[derive(Serialize)]
struct Row {
    n: u32,
    p: f64,
    seed: u64,
    links: usize,
    algo: &'static str,
    size: usize,
    exact: Option<usize>,
    ratio: Option<String>,
    lower_bound: String,
    time_ms: u64,
}

struct Job {
    n: u32,
    p: f64,
    seed: u64,
}

fn rows_for(job: &Job, args: &BenchArgs) -> Result<Vec<Row>> {
    let inst: Instance = generate::random(job.n, job.p, job.seed, generate::DEFAULT_ATTEMPTS)?;
    let exact = if job.n <= args.exact_max_n { Some(exact_optimum(&inst, args.opts.bnb())?.size) } else { None };
    args.algos
        .iter()
        .map(|&algo| {
            let res = solve(&inst, algo, &args.opts)?;
            Ok(Row {
                n: job.n,
                p: job.p,
                seed: job.seed,
                links: inst.len(),
                algo: algo.name(),
                size: res.size,
                exact,
                ratio: exact.map(|e| {
                    let r = vca_core::Ratio::new(res.size as i128, e as i128);
                    format!("{}/{}", r.numer(), r.denom())
                }),
                lower_bound: res.lower_bound,
                time_ms: res.time_ms,
            })
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn run_jobs(jobs: &[Job], args: &BenchArgs) -> Vec<Result<Vec<Row>>> {
    use rayon::prelude::*;
    jobs.par_iter().map(|j| rows_for(j, args)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_jobs(jobs: &[Job], args: &BenchArgs) -> Vec<Result<Vec<Row>>> {
    jobs.iter().map(|j| rows_for(j, args)).collect()
}

/// One CSV row per instance and algorithm, in input order whatever the
/// thread count.
pub fn bench(args: &BenchArgs) -> Result<String> {
    let mut jobs = Vec::new();
    for &n in &args.n_list {
        for &p in &args.p_list {
            for seed in 0..args.seeds {
                jobs.push(Job { n, p, seed });
            }
        }
    }
    let mut out = csv::Writer::from_writer(Vec::new());
    for rows in run_jobs(&jobs, args) {
        for row in rows? {
            out.serialize(row)?;
        }
    }
    Ok(String::from_utf8(out.into_inner()?)?)
}
