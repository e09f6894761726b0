//! Utility-driven local search.
//!
//! Phase one grows a singleton-free set `F` by adding small sets `K` whose
//! utility gain pays for the vertices they newly cover; phase two adds a
//! minimal completion. The refined variant repeats phase one for a rising
//! sequence of α values before completing.

pub mod audit;
mod enumerate;

use std::sync::atomic::AtomicU64;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::circle;
use crate::error::{Error, Result};
use crate::feasibility;
use crate::instance::{Chord, Instance, LinkSet};
use crate::rational::{ceil, check_alpha, int, ratio, Ratio};

use enumerate::{Context, Limits};

/// `U(F) = −|F| + Σ (|V(J)| − 3)` over the circle components of `F`.
pub fn utility(n: u32, f: &[Chord]) -> Result<i64> {
    let partition = circle::components(n, f);
    if let Some(&s) = partition.singletons.first() {
        return Err(Error::Singleton(s));
    }
    let set: LinkSet = f.iter().copied().collect();
    let weights: i64 = partition.components.iter().map(|c| c.covered().len() as i64 - 3).sum();
    Ok(weights - set.len() as i64)
}

/// `(U(F ∪ K) − U(F), |V(F ∪ K) \ V(F)|)`.
pub fn utility_gain(n: u32, f: &[Chord], k: &[Chord]) -> Result<(i64, u32)> {
    let f: LinkSet = f.iter().copied().collect();
    if let Some(&c) = k.iter().find(|c| f.contains(**c)) {
        return Err(Error::Params(format!("{c} is already in F")));
    }
    let both = f.union(k);
    let gain = utility(n, &both)? - utility(n, &f)?;
    let new = both.covered_vertices().len() - f.covered_vertices().len();
    Ok((gain, new as u32))
}

/// Smallest `N_max` for which the matching bounds hold at `α`:
/// `⌈(5−2α)/(2α−1)⌉ + 1`.
pub fn min_n_max(alpha: Ratio) -> Result<usize> {
    let alpha = check_alpha(alpha)?;
    let ell = ceil((int(5) - alpha * 2) / (alpha * 2 - 1));
    Ok(ell as usize + 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchParams {
    /// Ascending α values, one phase-one pass each. A single entry is the
    /// plain local search.
    pub alphas: Vec<Ratio>,
    pub n_max: usize,
    /// Skip the `N_max` lower-bound check. The size bound of the returned
    /// solution does not depend on it; the ratio guarantees do.
    pub relaxed: bool,
    pub max_candidates: Option<u64>,
    pub time_budget: Option<Duration>,
}

impl SearchParams {
    pub fn new(alpha: Ratio, n_max: usize) -> Result<Self> {
        Self::refined(vec![alpha], n_max)
    }

    pub fn refined(alphas: Vec<Ratio>, n_max: usize) -> Result<Self> {
        let params = SearchParams { alphas, n_max, relaxed: false, max_candidates: None, time_budget: None };
        params.validate()?;
        Ok(params)
    }

    /// Parameters without the `N_max` lower-bound check.
    pub fn relaxed(alpha: Ratio, n_max: usize) -> Result<Self> {
        let params = SearchParams { alphas: vec![alpha], n_max, relaxed: true, max_candidates: None, time_budget: None };
        params.validate()?;
        Ok(params)
    }

    pub fn alpha(&self) -> Ratio {
        *self.alphas.last().expect("validated nonempty")
    }

    pub fn validate(&self) -> Result<()> {
        let first = *self.alphas.first().ok_or_else(|| Error::Params("empty alpha list".into()))?;
        for &a in &self.alphas {
            check_alpha(a)?;
        }
        if self.alphas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Params("alphas must be strictly ascending".into()));
        }
        if self.n_max == 0 {
            return Err(Error::Params("n_max must be at least 1".into()));
        }
        let need = min_n_max(first)?;
        if !self.relaxed && self.n_max < need {
            return Err(Error::Params(format!("n_max = {} is below {need} required at alpha = {first}", self.n_max)));
        }
        Ok(())
    }

    fn limits(&self) -> Limits {
        Limits {
            max_candidates: self.max_candidates,
            deadline: self.time_budget.map(|d| Instant::now() + d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Iteration {
    pub pass: usize,
    pub added: LinkSet,
    pub utility_before: i64,
    pub utility_after: i64,
    pub new_vertices: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchTrace {
    pub iterations: Vec<Iteration>,
    /// `|F|` at the end of each pass.
    pub pass_sizes: Vec<usize>,
    /// `|V(F)|` at the end of each pass.
    pub pass_covered: Vec<usize>,
    pub candidates_examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub f: LinkSet,
    pub q: LinkSet,
    pub trace: SearchTrace,
}

impl SearchOutcome {
    pub fn solution(&self) -> LinkSet {
        self.f.union(&self.q)
    }

    pub fn size(&self) -> usize {
        self.f.len() + self.q.len()
    }

    pub fn covered_by_f(&self) -> usize {
        self.f.covered_vertices().len()
    }

    /// `|F ∪ Q| ≤ n − 3 − (1−α)|V(F)|`.
    pub fn satisfies_size_bound(&self, n: u32, alpha: Ratio) -> bool {
        let bound = int(n as i128 - 3) - (int(1) - alpha) * int(self.covered_by_f() as i128);
        int(self.size() as i128) <= bound
    }
}

/// The canonically first improving set for `F`, or `None` if `F` is critical.
pub fn find_improving_set(inst: &Instance, f: &LinkSet, alpha: Ratio, n_max: usize) -> Result<Option<LinkSet>> {
    check_alpha(alpha)?;
    let counter = AtomicU64::new(0);
    improving_set(inst, f, alpha, n_max, Limits::default(), &counter)
}

fn improving_set(
    inst: &Instance,
    f: &LinkSet,
    alpha: Ratio,
    n_max: usize,
    limits: Limits,
    counter: &AtomicU64,
) -> Result<Option<LinkSet>> {
    let partition = circle::components(inst.n(), f);
    if let Some(&s) = partition.singletons.first() {
        return Err(Error::Singleton(s));
    }
    let ctx = Context::new(inst, f, &partition, alpha)?;
    ctx.find(n_max, limits, counter)
}

pub fn is_critical(inst: &Instance, f: &LinkSet, alpha: Ratio, n_max: usize) -> Result<bool> {
    Ok(find_improving_set(inst, f, alpha, n_max)?.is_none())
}

/// Runs phase one from `f` at one α, appending to `trace`.
fn grow(
    inst: &Instance,
    f: &mut LinkSet,
    alpha: Ratio,
    params: &SearchParams,
    pass: usize,
    limits: Limits,
    trace: &mut SearchTrace,
) -> Result<()> {
    let counter = AtomicU64::new(0);
    let n = inst.n();
    let mut before = utility(n, f)?;
    while let Some(k) = improving_set(inst, f, alpha, params.n_max, limits, &counter)? {
        let old_cover = f.covered_vertices().len();
        *f = f.union(&k);
        let after = utility(n, f)?;
        trace.iterations.push(Iteration {
            pass,
            added: k,
            utility_before: before,
            utility_after: after,
            new_vertices: (f.covered_vertices().len() - old_cover) as u32,
        });
        before = after;
    }
    trace.pass_sizes.push(f.len());
    trace.pass_covered.push(f.covered_vertices().len());
    trace.candidates_examined += counter.into_inner();
    Ok(())
}

/// Local search at a single α.
pub fn local_search(inst: &Instance, params: &SearchParams) -> Result<SearchOutcome> {
    let single = SearchParams { alphas: vec![params.alpha()], ..params.clone() };
    refined_local_search(inst, &single)
}

/// One phase-one pass per α in `params.alphas`, then a minimal completion.
pub fn refined_local_search(inst: &Instance, params: &SearchParams) -> Result<SearchOutcome> {
    params.validate()?;
    let limits = params.limits();
    let mut f = LinkSet::new();
    let mut trace = SearchTrace::default();
    for (pass, &alpha) in params.alphas.iter().enumerate() {
        grow(inst, &mut f, alpha, params, pass, limits, &mut trace)?;
    }
    let q = feasibility::minimal_completion(inst, &f)?;
    Ok(SearchOutcome { f, q, trace })
}

/// Breakpoints `(k+4)/(2k+3)` and `(k+2)/(2k+3)` for `1 ≤ k ≤ k_max` inside
/// `(1/2, 1]`, ascending, ending with 1.
pub fn alpha_schedule(k_max: u64) -> Vec<Ratio> {
    let half = ratio(1, 2);
    let mut out: Vec<Ratio> = (1..=k_max as i128)
        .flat_map(|k| [ratio(k + 4, 2 * k + 3), ratio(k + 2, 2 * k + 3)])
        .filter(|a| *a > half && *a <= int(1))
        .chain([int(1)])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
