//! Feasibility oracles, minimal solutions and minimal completions.
//!
//! A link set `S'` makes `C_n ∪ S'` 3-connected iff every chord of `C_n` is
//! crossed by some link, iff `S'` covers every vertex and its circle graph
//! is a single component. The brute-force separating-pair oracle is kept as
//! an independent check.

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;

use crate::circle;
use crate::error::{Error, Result};
use crate::instance::{all_chords, covered_vertices, cyc, Chord, Instance, LinkSet};
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A chord no link crosses; its endpoints are a separating pair.
    Uncrossed(Chord),
    /// The links form one circle component covering the cycle.
    Component(LinkSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub witness: Witness,
}

impl FeasibilityReport {
    fn infeasible(c: Chord) -> Self {
        FeasibilityReport { feasible: false, witness: Witness::Uncrossed(c) }
    }

    fn feasible(links: &[Chord]) -> Self {
        FeasibilityReport {
            feasible: true,
            witness: Witness::Component(links.iter().copied().collect()),
        }
    }

    pub fn uncrossed_chord(&self) -> Option<Chord> {
        match self.witness {
            Witness::Uncrossed(c) => Some(c),
            Witness::Component(_) => None,
        }
    }
}

/// Scans every chord of `C_n`; the witness is the first uncrossed one.
pub fn is_feasible_crossing(n: u32, links: &[Chord]) -> FeasibilityReport {
    match all_chords(n).into_iter().find(|&c| !links.iter().any(|l| l.crosses(c))) {
        Some(c) => FeasibilityReport::infeasible(c),
        None => FeasibilityReport::feasible(links),
    }
}

/// Edge cover plus a connected circle graph without singletons.
pub fn is_feasible_components(n: u32, links: &[Chord]) -> FeasibilityReport {
    let covered = covered_vertices(links);
    if let Some(v) = (1..=n).find(|v| covered.binary_search(v).is_err()) {
        return FeasibilityReport::infeasible(Chord::unchecked(cyc::prev(v, n), cyc::next(v, n)));
    }
    let partition = circle::components(n, links);
    if let Some(&s) = partition.singletons.first() {
        // nothing crosses an isolated link
        return FeasibilityReport::infeasible(s);
    }
    if partition.components.len() == 1 {
        return FeasibilityReport::feasible(links);
    }
    // With two or more non-crossing components none covers the whole cycle,
    // and a border chord of any of them is crossed by no link.
    let border = partition
        .components
        .iter()
        .find_map(|c| c.border_chords().first().copied())
        .expect("a component of a disconnected cover has a zone");
    FeasibilityReport::infeasible(border)
}

pub fn is_feasible(n: u32, links: &[Chord]) -> bool {
    is_feasible_components(n, links).feasible
}

/// True iff `C_n ∪ links` stays connected after deleting any two vertices.
pub fn is_three_connected(n: u32, links: &[Chord]) -> bool {
    if n < 4 {
        return false;
    }
    let pairs: Vec<(u32, u32)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    !par::any(&pairs, |&(u, v)| separates(n, links, u, v))
}

fn separates(n: u32, links: &[Chord], u: u32, v: u32) -> bool {
    let mut uf = UnionFind::<u32>::new(n as usize + 1);
    let keep = |x: u32| x != u && x != v;
    for x in 1..=n {
        let y = cyc::next(x, n);
        if keep(x) && keep(y) {
            uf.union(x, y);
        }
    }
    for l in links {
        if keep(l.a()) && keep(l.b()) {
            uf.union(l.a(), l.b());
        }
    }
    let mut rest = (1..=n).filter(|&x| keep(x));
    let first = rest.next().expect("n >= 4 leaves a vertex");
    rest.any(|x| !uf.equiv(first, x))
}

/// Feasibility of a subset of an instance's links given as an index set,
/// using the instance's precomputed crossing matrix.
pub fn is_feasible_subset(inst: &Instance, members: &FixedBitSet) -> bool {
    let n = inst.n() as usize;
    let mut cover = FixedBitSet::with_capacity(n + 1);
    let mut count = 0;
    for i in members.ones() {
        let c = inst.link(i);
        cover.insert(c.a() as usize);
        cover.insert(c.b() as usize);
        count += 1;
    }
    if count < 2 || cover.count_ones(1..) != n {
        return false;
    }
    let start = members.ones().next().expect("nonempty");
    let mut seen = FixedBitSet::with_capacity(inst.len());
    seen.insert(start);
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(i) = stack.pop() {
        let mut next = inst.crossing(i).clone();
        next.intersect_with(members);
        next.difference_with(&seen);
        for j in next.ones() {
            seen.insert(j);
            stack.push(j);
            reached += 1;
        }
    }
    reached == count
}

fn index_set(inst: &Instance, links: &[Chord]) -> Result<FixedBitSet> {
    let mut set = FixedBitSet::with_capacity(inst.len());
    for i in inst.indices_of(links)? {
        set.insert(i);
    }
    Ok(set)
}

fn prune_within(inst: &Instance, members: &mut FixedBitSet, removable: &[usize]) {
    // Feasibility is monotone, so a link that cannot be dropped now cannot
    // be dropped after later removals either; one pass suffices.
    for &i in removable {
        members.set(i, false);
        if !is_feasible_subset(inst, members) {
            members.insert(i);
        }
    }
}

/// Drops links in lexicographic order while the set stays feasible.
pub fn prune_minimal(n: u32, links: &[Chord]) -> Result<LinkSet> {
    let report = is_feasible_components(n, links);
    if let Some(witness) = report.uncrossed_chord() {
        return Err(Error::InfeasibleInput { witness });
    }
    let inst = Instance::new(n, links.iter().map(|c| (c.a(), c.b())))?;
    let mut members = FixedBitSet::with_capacity(inst.len());
    members.insert_range(..);
    let order: Vec<usize> = (0..inst.len()).collect();
    prune_within(&inst, &mut members, &order);
    Ok(members.ones().map(|i| inst.link(i)).collect())
}

/// An inclusion-minimal `Q ⊆ S \ F` with `F ∪ Q` feasible.
pub fn minimal_completion(inst: &Instance, f: &[Chord]) -> Result<LinkSet> {
    let fixed = index_set(inst, f)?;
    let mut members = FixedBitSet::with_capacity(inst.len());
    members.insert_range(..);
    let removable: Vec<usize> = (0..inst.len()).filter(|&i| !fixed.contains(i)).collect();
    prune_within(inst, &mut members, &removable);
    Ok(removable.into_iter().filter(|&i| members.contains(i)).map(|i| inst.link(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(a: u32, b: u32) -> Chord {
        Chord::unchecked(a, b)
    }

    #[test]
    fn three_oracles_on_small_examples() {
        let cases: [(u32, Vec<Chord>, bool); 3] = [
            (4, vec![ch(1, 3), ch(2, 4)], true),
            (5, vec![ch(1, 3), ch(2, 4), ch(3, 5)], true),
            (6, vec![ch(1, 3), ch(4, 6)], false),
        ];
        for (n, links, expected) in &cases {
            assert_eq!(is_feasible_crossing(*n, links).feasible, *expected, "n={n} {links:?}");
            assert_eq!(is_feasible_components(*n, links).feasible, *expected);
            assert_eq!(is_three_connected(*n, links), *expected);
        }
    }

    #[test]
    fn dropping_a_link_of_the_five_cycle_path_breaks_it() {
        let s = [ch(1, 3), ch(2, 4), ch(3, 5)];
        for skip in 0..3 {
            let rest: Vec<Chord> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, c)| *c).collect();
            let w = is_feasible_crossing(5, &rest).uncrossed_chord().unwrap();
            assert!(!rest.iter().any(|l| l.crosses(w)));
        }
    }

    #[test]
    fn witnesses_are_uncrossed() {
        let s = [ch(1, 3), ch(4, 6)];
        for r in [is_feasible_crossing(6, &s), is_feasible_components(6, &s)] {
            let w = r.uncrossed_chord().unwrap();
            assert!(!s.iter().any(|l| l.crosses(w)), "{w}");
        }
        // two crossing pairs sharing no link crossing
        let s = [ch(1, 3), ch(2, 4), ch(4, 6), ch(5, 1)];
        let w = is_feasible_components(6, &s).uncrossed_chord().unwrap();
        assert!(!s.iter().any(|l| l.crosses(w)), "{w}");
    }

    #[test]
    fn bare_cycle_is_not_three_connected() {
        assert!(!is_three_connected(6, &[]));
        assert!(is_three_connected(4, &[ch(1, 3), ch(2, 4)]));
    }

    #[test]
    fn prune_examples() {
        let all = all_chords(4);
        assert_eq!(prune_minimal(4, &all).unwrap().len(), 2);
        let min = [ch(1, 3), ch(2, 4)];
        assert_eq!(prune_minimal(4, &min).unwrap().members(), &min);
        assert!(matches!(prune_minimal(6, &[ch(1, 3)]), Err(Error::InfeasibleInput { .. })));
        for n in 4..=10 {
            let out = prune_minimal(n, &all_chords(n)).unwrap();
            assert!(is_feasible(n, &out));
            assert!(out.len() as u32 <= n - 2);
            for &c in out.iter() {
                let mut less = out.clone();
                less.remove(c);
                assert!(!is_feasible(n, &less));
            }
        }
    }

    #[test]
    fn completion_examples() {
        let inst = Instance::new(4, [(1, 3), (2, 4)]).unwrap();
        assert!(minimal_completion(&inst, inst.links()).unwrap().is_empty());
        let inst = Instance::new(8, all_chords(8).iter().map(|c| (c.a(), c.b()))).unwrap();
        let q = minimal_completion(&inst, &[]).unwrap();
        assert!(is_feasible(8, &q) && q.len() <= 6);
        let f = [ch(1, 3), ch(2, 4)];
        let q = minimal_completion(&inst, &f).unwrap();
        assert!(is_feasible(8, &q.union(&f)));
        assert!(q.len() <= 8 - 4);
        assert!(matches!(minimal_completion(&inst, &[ch(1, 8)]), Err(Error::UnknownLink(_))));
    }
}
