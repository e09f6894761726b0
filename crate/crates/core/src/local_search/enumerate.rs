//! Improvement-set search.
//!
//! Candidates `K ⊆ S \ F` are connected subsets of a candidate graph on
//! `S \ F`: two links are adjacent when they cross, when they both cross the
//! same component of `F`, or when they share an endpoint outside `V(F)`.
//! If `K` splits into parts with no edge between them, the parts touch
//! disjoint components and disjoint new vertices, so both the utility gain
//! and the new-vertex count add up over the parts. An improving `K` then has
//! an improving part, and enumerating connected subsets is complete.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use fixedbitset::FixedBitSet;

use crate::circle::ComponentPartition;
use crate::error::{Error, Result};
use crate::instance::{Chord, Instance, LinkSet};
use crate::par;
use crate::rational::Ratio;

pub(crate) const MAX_N: u32 = 128;
const MAX_COMPONENTS: usize = 64;

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Limits {
    pub max_candidates: Option<u64>,
    pub deadline: Option<Instant>,
}

pub(crate) struct Context<'a> {
    inst: &'a Instance,
    cand: Vec<usize>,
    vmask: Vec<u128>,
    touches: Vec<u64>,
    comp_weight: Vec<i64>,
    comp_mask: Vec<u128>,
    adj: Vec<FixedBitSet>,
    neighbors: Vec<Vec<usize>>,
    cover: u128,
    f_len: i64,
    utility: i64,
    p: i64,
    q: i64,
}

fn bit(v: u32) -> u128 {
    1u128 << (v - 1)
}

fn chord_mask(c: Chord) -> u128 {
    bit(c.a()) | bit(c.b())
}

impl<'a> Context<'a> {
    pub fn new(inst: &'a Instance, f: &LinkSet, partition: &ComponentPartition, alpha: Ratio) -> Result<Self> {
        if inst.n() > MAX_N {
            return Err(Error::CapExceeded(format!("local search supports n <= {MAX_N}, got {}", inst.n())));
        }
        if partition.components.len() > MAX_COMPONENTS {
            return Err(Error::CapExceeded(format!("more than {MAX_COMPONENTS} components")));
        }
        let comp_mask: Vec<u128> = partition
            .components
            .iter()
            .map(|c| c.covered().iter().fold(0, |m, &v| m | bit(v)))
            .collect();
        let comp_weight = partition.components.iter().map(|c| c.covered().len() as i64 - 3).collect();
        let cover = comp_mask.iter().fold(0, |m, x| m | x);
        let cand: Vec<usize> = (0..inst.len()).filter(|&i| !f.contains(inst.link(i))).collect();
        let vmask: Vec<u128> = cand.iter().map(|&i| chord_mask(inst.link(i))).collect();
        let touches: Vec<u64> = cand
            .iter()
            .map(|&i| {
                let e = inst.link(i);
                partition
                    .components
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.crosses_chord(e))
                    .fold(0u64, |m, (k, _)| m | (1 << k))
            })
            .collect();

        let m = cand.len();
        let mut adj = vec![FixedBitSet::with_capacity(m); m];
        for x in 0..m {
            for y in x + 1..m {
                let linked = inst.crossing(cand[x]).contains(cand[y])
                    || touches[x] & touches[y] != 0
                    || vmask[x] & vmask[y] & !cover != 0;
                if linked {
                    adj[x].insert(y);
                    adj[y].insert(x);
                }
            }
        }
        let neighbors = adj.iter().map(|row| row.ones().collect()).collect();
        let utility = -(f.len() as i64) + partition.components.iter().map(|c| c.covered().len() as i64 - 3).sum::<i64>();
        let (p, q) = (*alpha.numer() as i64, *alpha.denom() as i64);
        Ok(Context {
            inst,
            cand,
            vmask,
            touches,
            comp_weight,
            comp_mask,
            adj,
            neighbors,
            cover,
            f_len: f.len() as i64,
            utility,
            p,
            q,
        })
    }

    #[cfg(test)]
    fn candidate_count(&self) -> usize {
        self.cand.len()
    }

    fn covered_count(&self) -> i64 {
        self.cover.count_ones() as i64
    }

    /// `gain ≥ (1−α)·new` in integers.
    fn accepts(&self, gain: i64, new: i64) -> bool {
        gain * self.q >= (self.q - self.p) * new
    }

    /// Largest size an improving set can have. Any singleton-free `F ∪ K`
    /// has a minimal completion of at least `⌈u/2⌉` links for `u`
    /// uncovered vertices, and at most `n − 3 − Σ(|V(J)| − 3)`; this caps
    /// the utility of `F ∪ K`.
    pub fn size_cap(&self, n_max: usize) -> usize {
        let n = self.inst.n() as i64;
        let c = self.covered_count();
        let limit = n_max.min(self.cand.len());
        (1..=limit)
            .filter(|&s| {
                let s = s as i64;
                let hi = (2 * s).min(n - c);
                (0..=hi).any(|new| {
                    let uncovered = n - c - new;
                    let best = n - 3 - self.f_len - s - (uncovered + 1) / 2 - self.utility;
                    self.accepts(best, new)
                })
            })
            .max()
            .unwrap_or(0)
    }

    /// Utility gain and new-vertex count of `K`, or `None` when `F ∪ K`
    /// has a singleton.
    pub fn evaluate(&self, k: &[usize]) -> Option<(i64, i64)> {
        let s = k.len();
        let touched: u64 = k.iter().fold(0, |m, &x| m | self.touches[x]);
        let comps: Vec<usize> = (0..MAX_COMPONENTS).filter(|c| touched >> c & 1 == 1).collect();
        let size = s + comps.len();
        let mut parent: Vec<usize> = (0..size).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut linked = vec![false; s];
        let union = |parent: &mut Vec<usize>, x: usize, y: usize| {
            let (rx, ry) = (find(parent, x), find(parent, y));
            if rx != ry {
                parent[rx] = ry;
            }
        };
        for i in 0..s {
            for j in i + 1..s {
                if self.inst.crossing(self.cand[k[i]]).contains(self.cand[k[j]]) {
                    union(&mut parent, i, j);
                    linked[i] = true;
                    linked[j] = true;
                }
            }
            for (pos, &c) in comps.iter().enumerate() {
                if self.touches[k[i]] >> c & 1 == 1 {
                    union(&mut parent, i, s + pos);
                    linked[i] = true;
                }
            }
        }
        if linked.iter().any(|l| !l) {
            return None;
        }
        let mut group = vec![0u128; size];
        for i in 0..s {
            let r = find(&mut parent, i);
            group[r] |= self.vmask[k[i]];
        }
        for (pos, &c) in comps.iter().enumerate() {
            let r = find(&mut parent, s + pos);
            group[r] |= self.comp_mask[c];
        }
        let merged: i64 = group.iter().filter(|m| **m != 0).map(|m| m.count_ones() as i64 - 3).sum();
        let lost: i64 = comps.iter().map(|&c| self.comp_weight[c]).sum();
        let gain = -(s as i64) + merged - lost;
        let new = k.iter().fold(0u128, |m, &x| m | self.vmask[x]) & !self.cover;
        Some((gain, new.count_ones() as i64))
    }

    /// The first improving set in canonical order: by size, then by
    /// smallest member, then by enumeration order.
    pub fn find(&self, n_max: usize, limits: Limits, counter: &AtomicU64) -> Result<Option<LinkSet>> {
        let cap = self.size_cap(n_max);
        for size in 1..=cap {
            let hit = par::find_map_first(self.cand.len(), |root| {
                match self.search_root(root, size, limits, counter) {
                    Ok(Some(k)) => Some(Ok(k)),
                    Ok(None) => None,
                    Err(e) => Some(Err(e)),
                }
            });
            if let Some(found) = hit {
                let k = found?;
                return Ok(Some(k.iter().map(|&x| self.inst.link(self.cand[x])).collect()));
            }
        }
        Ok(None)
    }

    fn search_root(&self, root: usize, size: usize, limits: Limits, counter: &AtomicU64) -> Result<Option<Vec<usize>>> {
        let ext: Vec<usize> = self.neighbors[root].iter().copied().filter(|&u| u > root).collect();
        let mut sub = vec![root];
        self.extend(&mut sub, ext, root, size, limits, counter)
    }

    // Enumeration of connected vertex sets with minimum `root`, each
    // visited once: a vertex joins the extension only through the first
    // chosen member it is adjacent to.
    fn extend(
        &self,
        sub: &mut Vec<usize>,
        mut ext: Vec<usize>,
        root: usize,
        size: usize,
        limits: Limits,
        counter: &AtomicU64,
    ) -> Result<Option<Vec<usize>>> {
        if sub.len() == size {
            let seen = counter.fetch_add(1, Ordering::Relaxed) + 1;
            check_limits(seen, limits)?;
            return Ok(match self.evaluate(sub) {
                Some((gain, new)) if self.accepts(gain, new) => Some(sub.clone()),
                _ => None,
            });
        }
        while !ext.is_empty() {
            let w = ext.remove(0);
            let mut next = ext.clone();
            for &u in &self.neighbors[w] {
                if u > root && !sub.contains(&u) && !ext.contains(&u) && !sub.iter().any(|&x| self.adj[x].contains(u)) {
                    next.push(u);
                }
            }
            sub.push(w);
            let found = self.extend(sub, next, root, size, limits, counter)?;
            sub.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn check_limits(seen: u64, limits: Limits) -> Result<()> {
    if let Some(max) = limits.max_candidates {
        if seen > max {
            return Err(Error::CapExceeded(format!("more than {max} candidate sets examined")));
        }
    }
    if seen % 1024 == 0 {
        if let Some(deadline) = limits.deadline {
            if Instant::now() > deadline {
                return Err(Error::CapExceeded("time budget exhausted".into()));
            }
        }
    }
    Ok(())
}
