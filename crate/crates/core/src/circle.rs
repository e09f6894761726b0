//! Circle graphs, circle components and zone instances.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::instance::{covered_vertices, cyc, Chord, Instance, LinkSet};

/// Graph on chords where two chords are adjacent iff they cross.
#[derive(Clone, Debug)]
pub struct CircleGraph {
    nodes: Vec<Chord>,
    adjacency: Vec<Vec<usize>>,
}

impl CircleGraph {
    pub fn new(links: &[Chord]) -> Self {
        let mut adjacency = vec![Vec::new(); links.len()];
        for i in 0..links.len() {
            for j in i + 1..links.len() {
                if links[i].crosses(links[j]) {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        CircleGraph { nodes: links.to_vec(), adjacency }
    }

    pub fn nodes(&self) -> &[Chord] {
        &self.nodes
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Connected components as index lists, ordered by smallest member.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.nodes.len());
        for (i, adj) in self.adjacency.iter().enumerate() {
            for &j in adj {
                uf.union(i, j);
            }
        }
        group_by_root(uf.into_labeling())
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() <= 1
    }
}

pub(crate) fn group_by_root(labels: Vec<usize>) -> Vec<Vec<usize>> {
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, root) in labels.into_iter().enumerate() {
        by_root.entry(root).or_default().push(i);
    }
    let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
    groups.sort_by_key(|g| g[0]);
    groups
}

pub fn circle_graph(links: &[Chord]) -> CircleGraph {
    CircleGraph::new(links)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexRole {
    Internal,
    Border,
    External,
}

/// Open zone of a border chord: the vertices strictly between `from` and
/// `to` walking forward around the cycle. None of them is covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zone {
    pub border: Chord,
    pub from: u32,
    pub to: u32,
    pub vertices: Vec<u32>,
}

/// A circle component `L` together with `V(L)`, its border chords `P(L)`
/// and one zone per border chord.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleComponent {
    n: u32,
    links: LinkSet,
    covered: Vec<u32>,
    zones: Vec<Zone>,
}

impl CircleComponent {
    fn build(n: u32, links: LinkSet) -> Self {
        let covered = covered_vertices(&links);
        let k = covered.len();
        let mut zones = Vec::new();
        for i in 0..k {
            let from = covered[i];
            let to = covered[(i + 1) % k];
            // Consecutive covered vertices that are also neighbours on the
            // cycle bound an empty gap; there is no chord between them.
            if cyc::gap(from, to, n) == 0 {
                continue;
            }
            let mut vertices = Vec::new();
            let mut v = cyc::next(from, n);
            while v != to {
                vertices.push(v);
                v = cyc::next(v, n);
            }
            zones.push(Zone { border: Chord::unchecked(from, to), from, to, vertices });
        }
        zones.sort_by_key(|z| z.border);
        CircleComponent { n, links, covered, zones }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn links(&self) -> &LinkSet {
        &self.links
    }

    /// `V(L)`, ascending.
    pub fn covered(&self) -> &[u32] {
        &self.covered
    }

    pub fn covers(&self, v: u32) -> bool {
        self.covered.binary_search(&v).is_ok()
    }

    /// `P(L)`, ascending.
    pub fn border_chords(&self) -> Vec<Chord> {
        self.zones.iter().map(|z| z.border).collect()
    }

    pub fn zones(&self) -> &[Zone] {
        &self.zones
    }

    pub fn zone(&self, border: Chord) -> Option<&Zone> {
        self.zones.iter().find(|z| z.border == border)
    }

    pub fn border_vertices(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.zones.iter().flat_map(|z| [z.from, z.to]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn internal_vertices(&self) -> Vec<u32> {
        let border = self.border_vertices();
        self.covered
            .iter()
            .copied()
            .filter(|v| border.binary_search(v).is_err())
            .collect()
    }

    pub fn role(&self, v: u32) -> VertexRole {
        if !self.covers(v) {
            VertexRole::External
        } else if self.zones.iter().any(|z| z.from == v || z.to == v) {
            VertexRole::Border
        } else {
            VertexRole::Internal
        }
    }

    /// A chord between two covered vertices that are not consecutive in `V(L)`.
    pub fn is_internal_chord(&self, c: Chord) -> bool {
        let (Ok(i), Ok(j)) = (self.covered.binary_search(&c.a()), self.covered.binary_search(&c.b())) else {
            return false;
        };
        let k = self.covered.len();
        j - i != 1 && !(i == 0 && j == k - 1)
    }

    /// Whether some link of the component crosses `c`, decided from the
    /// component's outline: `c` is internal or crosses a border chord.
    pub fn crosses_chord(&self, c: Chord) -> bool {
        self.is_internal_chord(c) || self.zones.iter().any(|z| z.border.crosses(c))
    }

    /// Direct scan over the component's links; same answer as [`Self::crosses_chord`].
    pub fn crosses_chord_scan(&self, c: Chord) -> bool {
        self.links.iter().any(|l| l.crosses(c))
    }
}

/// Checks that `links` form a circle component and computes its outline.
pub fn component_profile(n: u32, links: &[Chord]) -> Result<CircleComponent> {
    let set: LinkSet = links.iter().copied().collect();
    if set.len() < 2 || !CircleGraph::new(&set).is_connected() {
        return Err(Error::NotAComponent);
    }
    Ok(CircleComponent::build(n, set))
}

pub fn component_crosses_chord(component: &CircleComponent, c: Chord) -> bool {
    component.crosses_chord(c)
}

/// Circle components (size >= 2) and circle-graph singletons of a link set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentPartition {
    pub components: Vec<CircleComponent>,
    pub singletons: LinkSet,
}

impl ComponentPartition {
    pub fn is_singleton_free(&self) -> bool {
        self.singletons.is_empty()
    }

    /// `P(F)`: the union of border chords over all components.
    pub fn perimeter(&self) -> Vec<Chord> {
        let mut p: Vec<Chord> = self.components.iter().flat_map(|c| c.border_chords()).collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    pub fn covered(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.components.iter().flat_map(|c| c.covered().iter().copied()).collect();
        vs.extend(self.singletons.iter().flat_map(|c| c.endpoints()));
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

pub fn components(n: u32, links: &[Chord]) -> ComponentPartition {
    let set: LinkSet = links.iter().copied().collect();
    let graph = CircleGraph::new(&set);
    let mut partition = ComponentPartition::default();
    for group in graph.component_indices() {
        if group.len() == 1 {
            partition.singletons.insert(set[group[0]]);
        } else {
            let members: LinkSet = group.iter().map(|&i| set[i]).collect();
            partition.components.push(CircleComponent::build(n, members));
        }
    }
    partition
}

/// True iff `x ∪ {e}` is a circle component.
pub fn connects(e: Chord, x: &[Chord]) -> bool {
    let mut all: LinkSet = x.iter().copied().collect();
    all.insert(e);
    all.len() >= 2 && CircleGraph::new(&all).is_connected()
}

/// A smaller instance obtained by contracting everything outside the closed
/// zone of a border chord into one vertex.
#[derive(Clone, Debug)]
pub struct ZoneInstance {
    pub instance: Instance,
    /// Image of each original link that survives the contraction.
    pub psi: BTreeMap<Chord, Chord>,
    /// Smallest original link of each parallel class in the zone.
    pub representative: BTreeMap<Chord, Chord>,
    /// `labels[v - 1]` is the original vertex behind zone vertex `v`;
    /// the contracted vertex is labelled 0.
    pub labels: Vec<u32>,
}

impl ZoneInstance {
    pub fn image(&self, links: &[Chord]) -> LinkSet {
        links.iter().filter_map(|c| self.psi.get(c).copied()).collect()
    }

    pub fn contracted_vertex(&self) -> u32 {
        self.labels.len() as u32
    }
}

/// Builds the zone instance of border chord `ab` of `component` over the
/// candidate links `s`. The cycle has `|I(ab, L)| + 3` vertices: the zone
/// path from one border endpoint to the other, then the contracted vertex.
pub fn zone_instance(ab: Chord, component: &CircleComponent, s: &[Chord]) -> Result<ZoneInstance> {
    let zone = component.zone(ab).ok_or(Error::NotABorderChord(ab))?;
    let n = component.n();
    let m = zone.vertices.len() as u32;
    let n_zone = m + 3;
    let v0 = n_zone;

    let mut relabel = vec![v0; n as usize + 1];
    let mut labels = vec![zone.from];
    relabel[zone.from as usize] = 1;
    for (i, &v) in zone.vertices.iter().enumerate() {
        relabel[v as usize] = i as u32 + 2;
        labels.push(v);
    }
    relabel[zone.to as usize] = m + 2;
    labels.push(zone.to);
    labels.push(0);

    let mut psi = BTreeMap::new();
    let mut representative: BTreeMap<Chord, Chord> = BTreeMap::new();
    for &link in s {
        if component.links().contains(link) {
            continue;
        }
        let (x, y) = (relabel[link.a() as usize], relabel[link.b() as usize]);
        if x == y || cyc::adjacent(x, y, n_zone) {
            continue;
        }
        let image = Chord::unchecked(x, y);
        psi.insert(link, image);
        representative.entry(image).or_insert(link);
    }
    let border_image = Chord::unchecked(1, m + 2);
    let mut zone_links: Vec<(u32, u32)> = representative.keys().map(|c| (c.a(), c.b())).collect();
    if !representative.contains_key(&border_image) {
        zone_links.push((border_image.a(), border_image.b()));
    }
    let instance = Instance::new(n_zone, zone_links)?;
    Ok(ZoneInstance { instance, psi, representative, labels })
}
