//! Exact minimum solutions by branch and bound.
//!
//! Every solution covers every vertex and crosses every chord, so a partial
//! set is extended by branching over the links at its smallest uncovered
//! vertex, or, once everything is covered, over the links crossing a chord
//! it leaves uncrossed. Branch `i` includes the `i`-th option and excludes
//! the earlier ones, so no solution is visited twice.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::feasibility::{is_feasible_components, is_feasible_subset, prune_minimal};
use crate::instance::{Chord, Instance, LinkSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BnbConfig {
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
}

impl Default for BnbConfig {
    fn default() -> Self {
        BnbConfig { node_budget: 50_000_000, time_budget: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSolution {
    pub size: usize,
    /// Lexicographically smallest optimal solution.
    pub witness: LinkSet,
    pub nodes: u64,
}

struct Search<'a> {
    inst: &'a Instance,
    incident: Vec<Vec<usize>>,
    nodes: u64,
    cfg: BnbConfig,
    deadline: Option<Instant>,
}

/// What a search is looking for.
#[derive(Clone, Copy)]
enum Goal {
    /// Any solution with fewer than `bound` links.
    Below(usize),
    /// Any solution with at most `bound` links.
    AtMost(usize),
}

impl Goal {
    fn admits(self, size: usize) -> bool {
        match self {
            Goal::Below(b) => size < b,
            Goal::AtMost(b) => size <= b,
        }
    }
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, cfg: BnbConfig) -> Self {
        let mut incident = vec![Vec::new(); inst.n() as usize + 1];
        for (i, c) in inst.links().iter().enumerate() {
            incident[c.a() as usize].push(i);
            incident[c.b() as usize].push(i);
        }
        Search { inst, incident, nodes: 0, cfg, deadline: cfg.time_budget.map(|d| Instant::now() + d) }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cfg.node_budget {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        if self.nodes % 4096 == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        Ok(())
    }

    /// Depth-first search for a completion of `chosen` that meets `goal`,
    /// never using links in `excluded`.
    fn dfs(
        &mut self,
        chosen: &mut FixedBitSet,
        excluded: &mut FixedBitSet,
        size: usize,
        goal: Goal,
    ) -> Result<Option<FixedBitSet>> {
        self.tick()?;
        let n = self.inst.n();
        let mut covered = vec![false; n as usize + 1];
        for i in chosen.ones() {
            let c = self.inst.link(i);
            covered[c.a() as usize] = true;
            covered[c.b() as usize] = true;
        }
        let uncovered: Vec<u32> = (1..=n).filter(|&v| !covered[v as usize]).collect();
        let feasible = uncovered.is_empty() && is_feasible_subset(self.inst, chosen);
        if feasible {
            return Ok(goal.admits(size).then(|| chosen.clone()));
        }
        let needed = if uncovered.is_empty() { 1 } else { uncovered.len().div_ceil(2) };
        if !goal.admits(size + needed) {
            return Ok(None);
        }

        let options: Vec<usize> = match uncovered.first() {
            Some(&v) => self.incident[v as usize].clone(),
            None => {
                let links: Vec<Chord> = chosen.ones().map(|i| self.inst.link(i)).collect();
                let w = is_feasible_components(n, &links)
                    .uncrossed_chord()
                    .expect("infeasible cover leaves a chord uncrossed");
                (0..self.inst.len()).filter(|&i| self.inst.link(i).crosses(w)).collect()
            }
        };
        let options: Vec<usize> = options.into_iter().filter(|&i| !excluded.contains(i) && !chosen.contains(i)).collect();
        let mut found = None;
        for &i in &options {
            chosen.insert(i);
            let hit = self.dfs(chosen, excluded, size + 1, goal);
            chosen.set(i, false);
            found = hit?;
            if found.is_some() {
                break;
            }
            excluded.insert(i);
        }
        for &j in &options {
            excluded.set(j, false);
        }
        Ok(found)
    }
}

/// Minimum number of links that 3-connect the cycle, with the
/// lexicographically smallest optimal witness.
pub fn exact_optimum(inst: &Instance, cfg: BnbConfig) -> Result<ExactSolution> {
    let m = inst.len();
    let mut search = Search::new(inst, cfg);
    let mut best = prune_minimal(inst.n(), inst.links())?;

    // Shrink the incumbent until no smaller solution exists.
    loop {
        let mut chosen = FixedBitSet::with_capacity(m);
        let mut excluded = FixedBitSet::with_capacity(m);
        match search.dfs(&mut chosen, &mut excluded, 0, Goal::Below(best.len()))? {
            Some(sol) => best = sol.ones().map(|i| inst.link(i)).collect(),
            None => break,
        }
    }
    let size = best.len();

    // Fix the witness one position at a time: the smallest next link for
    // which an optimal solution extending the prefix still exists, using
    // no smaller link outside the prefix.
    let mut prefix: Vec<usize> = Vec::new();
    while prefix.len() < size {
        let start = prefix.last().map_or(0, |&i| i + 1);
        let mut next = None;
        for e in start..m {
            let mut chosen = FixedBitSet::with_capacity(m);
            for &i in &prefix {
                chosen.insert(i);
            }
            chosen.insert(e);
            let mut excluded = FixedBitSet::with_capacity(m);
            for j in 0..e {
                if !chosen.contains(j) {
                    excluded.insert(j);
                }
            }
            if search.dfs(&mut chosen, &mut excluded, prefix.len() + 1, Goal::AtMost(size))?.is_some() {
                next = Some(e);
                break;
            }
        }
        prefix.push(next.expect("an optimal solution extends every accepted prefix"));
    }
    let witness: LinkSet = prefix.into_iter().map(|i| inst.link(i)).collect();
    Ok(ExactSolution { size, witness, nodes: search.nodes })
}
