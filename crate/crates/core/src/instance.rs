//! Cycles, chords and candidate link sets.
//!
//! Vertices are the integers `1..=n` in cyclic order, so `n + 1` wraps to `1`
//! and `0` wraps to `n`. All wrap-around arithmetic goes through [`cyc`].

use std::fmt;
use std::ops::Deref;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility;

/// Cyclic vertex arithmetic on `[1, n]`.
pub mod cyc {
    #[inline]
    pub fn next(v: u32, n: u32) -> u32 {
        if v == n {
            1
        } else {
            v + 1
        }
    }

    #[inline]
    pub fn prev(v: u32, n: u32) -> u32 {
        if v == 1 {
            n
        } else {
            v - 1
        }
    }

    /// True when `u` and `v` are joined by an edge of the cycle.
    #[inline]
    pub fn adjacent(u: u32, v: u32, n: u32) -> bool {
        next(u, n) == v || next(v, n) == u
    }

    /// Number of vertices strictly between `from` and `to` walking forward.
    #[inline]
    pub fn gap(from: u32, to: u32, n: u32) -> u32 {
        if to > from {
            to - from - 1
        } else {
            n - from + to - 1
        }
    }
}

/// A chord of `C_n`, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[u32; 2]", try_from = "[u32; 2]")]
pub struct Chord {
    a: u32,
    b: u32,
}

impl Chord {
    /// Normalizes the endpoint order and rejects loops and cycle edges.
    pub fn new(a: u32, b: u32, n: u32) -> Result<Self> {
        for v in [a, b] {
            if v == 0 || v > n {
                return Err(Error::VertexRange { vertex: v, n });
            }
        }
        if a == b {
            return Err(Error::Loop(a));
        }
        if cyc::adjacent(a, b, n) {
            return Err(Error::CycleEdge { a: a.min(b), b: a.max(b) });
        }
        Ok(Self::unchecked(a, b))
    }

    /// Builds a chord without checking it against a cycle size.
    pub(crate) fn unchecked(a: u32, b: u32) -> Self {
        if a < b {
            Chord { a, b }
        } else {
            Chord { a: b, b: a }
        }
    }

    pub fn a(self) -> u32 {
        self.a
    }

    pub fn b(self) -> u32 {
        self.b
    }

    pub fn endpoints(self) -> [u32; 2] {
        [self.a, self.b]
    }

    pub fn has_endpoint(self, v: u32) -> bool {
        self.a == v || self.b == v
    }

    /// True iff the endpoints interleave; chords sharing a vertex never cross.
    #[inline]
    pub fn crosses(self, other: Chord) -> bool {
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }

    /// Whether `v` lies strictly inside the side `a+1..b-1`.
    #[inline]
    pub fn inner_side_contains(self, v: u32) -> bool {
        self.a < v && v < self.b
    }

    /// The two open sides of the chord, each listed in cyclic order.
    pub fn sides(self, n: u32) -> (Vec<u32>, Vec<u32>) {
        let inner = (self.a + 1..self.b).collect();
        let outer = (self.b + 1..=n).chain(1..self.a).collect();
        (inner, outer)
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

impl From<Chord> for [u32; 2] {
    fn from(c: Chord) -> Self {
        [c.a, c.b]
    }
}

impl TryFrom<[u32; 2]> for Chord {
    type Error = Error;

    fn try_from([a, b]: [u32; 2]) -> Result<Self> {
        if a == b {
            return Err(Error::Loop(a));
        }
        Ok(Chord::unchecked(a, b))
    }
}

/// Free-standing form of [`Chord::crosses`].
#[inline]
pub fn crosses(x: Chord, y: Chord) -> bool {
    x.crosses(y)
}

/// Every chord of `C_n` in lexicographic order; `n(n-3)/2` of them.
pub fn all_chords(n: u32) -> Vec<Chord> {
    let mut out = Vec::with_capacity((n as usize * n.saturating_sub(3) as usize) / 2);
    for a in 1..=n {
        for b in a + 2..=n {
            if !(a == 1 && b == n) {
                out.push(Chord { a, b });
            }
        }
    }
    out
}

/// A sorted, duplicate-free set of chords.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkSet {
    members: Vec<Chord>,
}

impl LinkSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn members(&self) -> &[Chord] {
        &self.members
    }

    pub fn into_vec(self) -> Vec<Chord> {
        self.members
    }

    pub fn contains(&self, c: Chord) -> bool {
        self.members.binary_search(&c).is_ok()
    }

    pub fn insert(&mut self, c: Chord) -> bool {
        match self.members.binary_search(&c) {
            Ok(_) => false,
            Err(i) => {
                self.members.insert(i, c);
                true
            }
        }
    }

    pub fn remove(&mut self, c: Chord) -> bool {
        match self.members.binary_search(&c) {
            Ok(i) => {
                self.members.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn union(&self, other: &[Chord]) -> LinkSet {
        self.members.iter().chain(other).copied().collect()
    }

    pub fn difference(&self, other: &LinkSet) -> LinkSet {
        self.members
            .iter()
            .filter(|c| !other.contains(**c))
            .copied()
            .collect()
    }

    /// `V(L)`: vertices incident to at least one member, ascending.
    pub fn covered_vertices(&self) -> Vec<u32> {
        covered_vertices(&self.members)
    }

    /// Links incident to each vertex; index 0 is unused.
    pub fn incidence(&self, n: u32) -> Vec<Vec<Chord>> {
        let mut inc = vec![Vec::new(); n as usize + 1];
        for &c in &self.members {
            inc[c.a as usize].push(c);
            inc[c.b as usize].push(c);
        }
        inc
    }
}

impl Deref for LinkSet {
    type Target = [Chord];

    fn deref(&self) -> &[Chord] {
        &self.members
    }
}

impl FromIterator<Chord> for LinkSet {
    fn from_iter<I: IntoIterator<Item = Chord>>(iter: I) -> Self {
        let mut members: Vec<Chord> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        LinkSet { members }
    }
}

impl<'a> IntoIterator for &'a LinkSet {
    type Item = &'a Chord;
    type IntoIter = std::slice::Iter<'a, Chord>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

pub(crate) fn covered_vertices(links: &[Chord]) -> Vec<u32> {
    let mut vs: Vec<u32> = links.iter().flat_map(|c| c.endpoints()).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// A cycle VCA instance: `C_n` plus a feasible candidate link set `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    n: u32,
    links: Vec<Chord>,
    crossing: Vec<FixedBitSet>,
}

impl Instance {
    /// Validates the chords, rejects duplicates and an infeasible `S`.
    pub fn new(n: u32, links: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let chords = validate_links(n, links)?;
        let report = feasibility::is_feasible_components(n, &chords);
        if let Some(witness) = report.uncrossed_chord() {
            return Err(Error::InfeasibleCandidateSet { witness });
        }
        Ok(Self::from_sorted(n, chords))
    }

    fn from_sorted(n: u32, links: Vec<Chord>) -> Self {
        let m = links.len();
        let mut crossing = vec![FixedBitSet::with_capacity(m); m];
        for i in 0..m {
            for j in i + 1..m {
                if links[i].crosses(links[j]) {
                    crossing[i].insert(j);
                    crossing[j].insert(i);
                }
            }
        }
        Instance { n, links, crossing }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn links(&self) -> &[Chord] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn index_of(&self, c: Chord) -> Option<usize> {
        self.links.binary_search(&c).ok()
    }

    pub fn link(&self, i: usize) -> Chord {
        self.links[i]
    }

    /// Indices of links crossing link `i`.
    pub fn crossing(&self, i: usize) -> &FixedBitSet {
        &self.crossing[i]
    }

    pub fn all_links(&self) -> LinkSet {
        LinkSet { members: self.links.clone() }
    }

    /// Builds a [`LinkSet`] after checking every chord belongs to `S`.
    pub fn link_set(&self, chords: impl IntoIterator<Item = Chord>) -> Result<LinkSet> {
        let set: LinkSet = chords.into_iter().collect();
        if let Some(&c) = set.iter().find(|c| self.index_of(**c).is_none()) {
            return Err(Error::UnknownLink(c));
        }
        Ok(set)
    }

    pub fn indices_of(&self, set: &[Chord]) -> Result<Vec<usize>> {
        set.iter()
            .map(|&c| self.index_of(c).ok_or(Error::UnknownLink(c)))
            .collect()
    }

    /// Reads the JSON or plain-text instance format.
    pub fn parse(input: &str) -> Result<Self> {
        let (n, links) = parse_links(input)?;
        Instance::new(n, links.into_iter().map(|c| (c.a, c.b)))
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            n: self.n,
            links: self.links.iter().map(|&c| c.into()).collect(),
        };
        serde_json::to_string(&file).expect("instance serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for c in &self.links {
            out.push_str(&format!("{} {}\n", c.a, c.b));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    n: u32,
    links: Vec<[u32; 2]>,
}

/// Sorted, validated chords without a feasibility check.
pub fn validate_links(n: u32, links: impl IntoIterator<Item = (u32, u32)>) -> Result<Vec<Chord>> {
    if n < 4 {
        return Err(Error::CycleTooSmall(n));
    }
    let mut chords = Vec::new();
    for (a, b) in links {
        chords.push(Chord::new(a, b, n)?);
    }
    chords.sort_unstable();
    if let Some(w) = chords.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateLink(w[0]));
    }
    Ok(chords)
}

/// Parses either instance format into `n` and validated chords, leaving
/// feasibility to the caller.
pub fn parse_links(input: &str) -> Result<(u32, Vec<Chord>)> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let file: InstanceFile = serde_json::from_str(trimmed).map_err(|e| Error::Format(e.to_string()))?;
        Ok((file.n, validate_links(file.n, file.links.into_iter().map(|[a, b]| (a, b)))?))
    } else {
        parse_text(input)
    }
}

fn parse_text(input: &str) -> Result<(u32, Vec<Chord>)> {
    let mut lines = input
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, first) = lines.next().ok_or_else(|| Error::Format("empty input".into()))?;
    let n: u32 = first
        .parse()
        .map_err(|_| Error::Format(format!("line 1: expected cycle size, got {first:?}")))?;
    let mut links = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed: Option<Vec<u32>> = fields.iter().map(|f| f.parse().ok()).collect();
        match parsed.as_deref() {
            Some(&[a, b]) => links.push((a, b)),
            _ => return Err(Error::Format(format!("line {}: expected two vertices, got {line:?}", i + 1))),
        }
    }
    Ok((n, validate_links(n, links)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chord_normalization_and_rejections() {
        assert_eq!(Chord::new(3, 1, 6).unwrap(), Chord::unchecked(1, 3));
        assert!(matches!(Chord::new(1, 2, 6), Err(Error::CycleEdge { .. })));
        assert!(matches!(Chord::new(1, 6, 6), Err(Error::CycleEdge { .. })));
        assert!(matches!(Chord::new(2, 2, 6), Err(Error::Loop(2))));
        assert!(matches!(Chord::new(0, 3, 6), Err(Error::VertexRange { .. })));
    }

    #[test]
    fn crossing_examples() {
        let c = |a, b| Chord::new(a, b, 6).unwrap();
        assert!(c(1, 4).crosses(c(2, 5)));
        assert!(!c(1, 3).crosses(c(3, 5)));
        assert!(!c(1, 3).crosses(c(4, 6)));
    }

    #[test]
    fn sides_partition_the_cycle() {
        let c = |a, b, n| Chord::new(a, b, n).unwrap();
        assert_eq!(c(1, 4, 6).sides(6), (vec![2, 3], vec![5, 6]));
        assert_eq!(c(2, 6, 6).sides(6), (vec![3, 4, 5], vec![1]));
        assert_eq!(c(1, 3, 4).sides(4), (vec![2], vec![4]));
    }

    #[test]
    fn all_chords_count() {
        for n in 4..=12 {
            assert_eq!(all_chords(n).len() as u32, n * (n - 3) / 2);
        }
    }

    #[test]
    fn parse_json_and_text() {
        let inst = Instance::parse(r#"{"n":4,"links":[[1,3],[2,4]]}"#).unwrap();
        assert_eq!(inst.n(), 4);
        assert_eq!(inst.len(), 2);
        let text = Instance::parse("4\n2 4\n3 1\n").unwrap();
        assert_eq!(text, inst);
        assert_eq!(inst.to_text(), "4\n1 3\n2 4\n");
        assert_eq!(inst.to_json(), r#"{"n":4,"links":[[1,3],[2,4]]}"#);
    }

    #[test]
    fn parse_rejects_infeasible_and_malformed() {
        assert!(matches!(
            Instance::parse(r#"{"n":6,"links":[[1,3]]}"#),
            Err(Error::InfeasibleCandidateSet { .. })
        ));
        assert!(matches!(Instance::parse("4\n1 3\n1 3\n2 4\n"), Err(Error::DuplicateLink(_))));
        assert!(matches!(Instance::parse("4\n1 x\n"), Err(Error::Format(_))));
        assert!(matches!(Instance::parse(""), Err(Error::Format(_))));
        assert!(matches!(Instance::parse(r#"{"n":4}"#), Err(Error::Format(_))));
        assert!(matches!(Instance::parse("3\n"), Err(Error::CycleTooSmall(3))));
    }

    #[test]
    fn link_set_membership() {
        let inst = Instance::parse("5\n1 3\n2 4\n3 5\n1 4\n2 5\n").unwrap();
        let c = Chord::new(1, 3, 5).unwrap();
        assert!(inst.link_set([c]).is_ok());
        let inst4 = Instance::parse("4\n1 3\n2 4\n").unwrap();
        assert!(matches!(
            inst4.link_set([Chord::unchecked(1, 4)]),
            Err(Error::UnknownLink(_))
        ));
    }
}
