use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::Result;
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use vca_core::bounds::certify;
use vca_core::exact::{exact_optimum, BnbConfig};
use vca_core::feasibility::{is_three_connected, prune_minimal};
use vca_core::local_search::{alpha_schedule, local_search, min_n_max, refined_local_search, SearchOutcome, SearchParams};
use vca_core::rational::{int, parse_ratio};
use vca_core::{Chord, Instance, LinkSet, Ratio};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    /// Prune `S` to an inclusion-minimal solution.
    Greedy,
    /// Local search at one α.
    Ls,
    /// Refined local search over a rising α schedule.
    Rls,
    /// Branch and bound.
    Exact,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Greedy => "greedy",
            Algo::Ls => "ls",
            Algo::Rls => "rls",
            Algo::Exact => "exact",
        }
    }
}

/// Algorithm knobs shared by `solve` and `bench`.
#[derive(Args, Clone, Debug)]
pub struct AlgoArgs {
    /// α for `ls`, as p/q.
    #[arg(long, default_value = "3/4")]
    pub alpha: String,
    /// Largest set added per step; defaults to the smallest value the
    /// guarantees allow for the first α.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Comma-separated ascending α values for `rls`.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<String>,
    /// Build the `rls` schedule from the breakpoints up to this k.
    #[arg(long)]
    pub kmax: Option<u64>,
    /// Node budget for `exact`.
    #[arg(long, default_value_t = BnbConfig::default().node_budget)]
    pub node_budget: u64,
    /// Wall-clock limit in milliseconds for `exact` and the local searches.
    #[arg(long)]
    pub time_limit_ms: Option<u64>,
    /// Report zero elapsed time so output is byte-for-byte reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args)]
pub struct SolveArgs {
    /// Instance file (JSON or text), `-` for stdin.
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Ls)]
    pub algo: Algo,
    #[command(flatten)]
    pub opts: AlgoArgs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub alphas: Vec<String>,
    pub n_max: usize,
    pub f_size: usize,
    pub covered_by_f: usize,
    pub iterations: usize,
    pub candidates_examined: u64,
    /// The size bound that applies to this run, `p/q`.
    pub size_bound: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub n: u32,
    pub algo: Algo,
    pub solution: Vec<[u32; 2]>,
    pub size: usize,
    pub lower_bound: String,
    pub lp_bound: Option<String>,
    pub ratio: String,
    pub time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<TraceSummary>,
}

fn fraction(r: Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl AlgoArgs {
    pub fn params(&self, algo: Algo) -> Result<SearchParams> {
        let alphas: Vec<Ratio> = match algo {
            Algo::Rls => match (self.kmax, self.alphas.is_empty()) {
                (Some(_), false) => return Err(Failure::Validation("give either --alphas or --kmax, not both".into()).into()),
                (Some(k), true) => alpha_schedule(k),
                (None, false) => self.alphas.iter().map(|a| parse_ratio(a)).collect::<vca_core::Result<_>>()?,
                (None, true) => return Err(Failure::Validation("rls needs --alphas or --kmax".into()).into()),
            },
            _ => vec![parse_ratio(&self.alpha)?],
        };
        let n_max = match (self.nmax, alphas.first()) {
            (Some(n), _) => n,
            (None, Some(&a)) => min_n_max(a)?,
            (None, None) => 1,
        };
        let mut params = SearchParams::refined(alphas, n_max)?;
        params.time_budget = self.time_limit();
        Ok(params)
    }

    fn time_limit(&self) -> Option<Duration> {
        self.time_limit_ms.map(Duration::from_millis)
    }

    pub fn bnb(&self) -> BnbConfig {
        BnbConfig { node_budget: self.node_budget, time_budget: self.time_limit() }
    }
}

/// The bound `|F ∪ Q|` must meet: `n − 3 − (1−α)|V(F)|` once `F` has a
/// component, otherwise the general bound on minimal solutions.
fn size_bound(n: u32, out: &SearchOutcome, alpha: Ratio) -> Ratio {
    if out.f.is_empty() {
        int(n as i128 - 2)
    } else {
        int(n as i128 - 3) - (int(1) - alpha) * int(out.covered_by_f() as i128)
    }
}

pub fn solve(inst: &Instance, algo: Algo, opts: &AlgoArgs) -> Result<SolveResult> {
    let n = inst.n();
    let start = Instant::now();
    let half = int(n.div_ceil(2) as i128);
    let (solution, lower_bound, lp_bound, trace): (LinkSet, Ratio, Option<Ratio>, Option<TraceSummary>) = match algo {
        Algo::Greedy => (prune_minimal(n, inst.links())?, half, None, None),
        Algo::Exact => {
            let opt = exact_optimum(inst, opts.bnb())?;
            let size = int(opt.size as i128);
            (opt.witness, size, None, None)
        }
        Algo::Ls | Algo::Rls => {
            let params = opts.params(algo)?;
            let out = if algo == Algo::Ls { local_search(inst, &params)? } else { refined_local_search(inst, &params)? };
            let alpha = params.alpha();
            let solution = out.solution();
            let bound = size_bound(n, &out, alpha);
            if int(solution.len() as i128) > bound {
                return Err(Failure::Validation(format!(
                    "internal error: {} links exceed the size bound {bound}",
                    solution.len()
                ))
                .into());
            }
            let report = certify(inst, &out.f, &solution, alpha, params.n_max)?;
            let trace = TraceSummary {
                alphas: params.alphas.iter().map(|&a| fraction(a)).collect(),
                n_max: params.n_max,
                f_size: out.f.len(),
                covered_by_f: out.covered_by_f(),
                iterations: out.trace.iterations.len(),
                candidates_examined: out.trace.candidates_examined,
                size_bound: fraction(bound),
            };
            (solution, report.lower_bound, report.lp_bound, Some(trace))
        }
    };
    let elapsed = start.elapsed();
    if !is_three_connected(n, &solution) {
        return Err(Failure::Infeasible(format!("internal error: {} output is not 3-connected", algo.name())).into());
    }
    let size = solution.len();
    Ok(SolveResult {
        n,
        algo,
        solution: solution.iter().map(|&c: &Chord| c.into()).collect(),
        size,
        lower_bound: fraction(lower_bound),
        lp_bound: lp_bound.map(fraction),
        ratio: fraction(int(size as i128) / lower_bound),
        time_ms: if opts.no_timing { 0 } else { elapsed.as_millis() as u64 },
        trace,
    })
}
