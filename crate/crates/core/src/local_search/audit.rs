//! Structural checks that every critical `F` must pass.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::ell_budget;
use crate::circle::{self, CircleGraph};
use crate::error::Result;
use crate::instance::{Chord, Instance, LinkSet};
use crate::rational::Ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    PerimeterCrossings { link: Chord, crossed: usize },
    OutsideLinkCrossesPerimeter { link: Chord },
    ComponentCrossings { link: Chord, crossed: usize },
    ConnectBudget { link: Chord, connected: usize, budget: i64, seed: u64 },
    SmallPerimeter { perimeter: usize, border: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PerimeterCrossings { link, crossed } => {
                write!(f, "{link} crosses {crossed} perimeter chords")
            }
            Violation::OutsideLinkCrossesPerimeter { link } => {
                write!(f, "{link} lies outside V(F) but crosses the perimeter")
            }
            Violation::ComponentCrossings { link, crossed } => {
                write!(f, "{link} crosses {crossed} components")
            }
            Violation::ConnectBudget { link, connected, budget, seed } => {
                write!(f, "{link} connects {connected} matching links, budget {budget} (seed {seed})")
            }
            Violation::SmallPerimeter { perimeter, border } => {
                write!(f, "|P(F)| = {perimeter} < |B(F)|/2 = {border}/2")
            }
        }
    }
}

/// A maximal matching among links with both endpoints outside `V(F)`,
/// built greedily in a seeded random order.
pub fn greedy_maximal_matching(inst: &Instance, f: &LinkSet, seed: u64) -> LinkSet {
    let covered = f.covered_vertices();
    let outside = |v: u32| covered.binary_search(&v).is_err();
    let mut pool: Vec<Chord> = inst.links().iter().copied().filter(|c| outside(c.a()) && outside(c.b())).collect();
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut used = vec![false; inst.n() as usize + 1];
    let mut m = LinkSet::new();
    for c in pool {
        if !used[c.a() as usize] && !used[c.b() as usize] {
            used[c.a() as usize] = true;
            used[c.b() as usize] = true;
            m.insert(c);
        }
    }
    m
}

/// Size of the largest `X ⊆ m` that `e` connects: the circle-graph
/// component of `e` in `m ∪ {e}`, minus `e`.
pub fn connected_count(e: Chord, m: &[Chord]) -> usize {
    let mut nodes: Vec<Chord> = m.iter().copied().filter(|&c| c != e).collect();
    nodes.push(e);
    let graph = CircleGraph::new(&nodes);
    let last = nodes.len() - 1;
    graph
        .component_indices()
        .into_iter()
        .find(|g| g.contains(&last))
        .map_or(0, |g| g.len() - 1)
}

/// Runs every check on `F` against all links of the instance, using one
/// greedy maximal matching per seed for the connect budgets.
pub fn audit(inst: &Instance, f: &LinkSet, alpha: Ratio, seeds: &[u64]) -> Result<Vec<Violation>> {
    let n = inst.n();
    let partition = circle::components(n, f);
    let perimeter = partition.perimeter();
    let covered = f.covered_vertices();
    let in_f = |v: u32| covered.binary_search(&v).is_ok();
    let mut out = Vec::new();

    for &e in inst.links() {
        let crossed = perimeter.iter().filter(|p| p.crosses(e)).count();
        if crossed > 1 {
            out.push(Violation::PerimeterCrossings { link: e, crossed });
        }
        if crossed > 0 && !in_f(e.a()) && !in_f(e.b()) {
            out.push(Violation::OutsideLinkCrossesPerimeter { link: e });
        }
        let comps = partition.components.iter().filter(|c| c.crosses_chord(e)).count();
        if comps > 1 {
            out.push(Violation::ComponentCrossings { link: e, crossed: comps });
        }
    }

    for &seed in seeds {
        let m = greedy_maximal_matching(inst, f, seed);
        let m_cover = m.covered_vertices();
        for &e in inst.links() {
            if f.contains(e) || m.contains(e) {
                continue;
            }
            let x = f.iter().any(|l| l.crosses(e));
            let v_m = e.endpoints().iter().filter(|v| m_cover.binary_search(v).is_ok()).count();
            let v_f = e.endpoints().iter().filter(|&&v| in_f(v)).count();
            let budget = ell_budget(x, v_m as u8, v_f as u8, alpha)?;
            let connected = connected_count(e, &m);
            if connected as i64 > budget {
                out.push(Violation::ConnectBudget { link: e, connected, budget, seed });
            }
        }
    }

    let border: usize = {
        let mut b: Vec<u32> = partition.components.iter().flat_map(|c| c.border_vertices()).collect();
        b.sort_unstable();
        b.dedup();
        b.len()
    };
    if 2 * perimeter.len() < border {
        out.push(Violation::SmallPerimeter { perimeter: perimeter.len(), border });
    }
    Ok(out)
}
