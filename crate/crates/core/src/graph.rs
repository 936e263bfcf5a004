//! Undirected simple graphs, breadth-first distances, per-edge unbalance
//! counts and the Mostar index.
//!
//! Disconnected graphs are supported: an unreachable vertex sits at
//! distance [`Distance::Unreachable`], which compares greater than every
//! finite distance and equal to itself. A vertex unreachable from both
//! endpoints of an edge is therefore counted as equidistant.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Shortest-path distance, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Neighbor lists are sorted; the edge list holds each edge once as
/// `(u, v)` with `u < v`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from vertex pairs, collapsing duplicates.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in pairs {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { u, v, id, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            edges: set.into_iter().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let pairs: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list(self.n, &pairs)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        bfs_distances(self, 0)
            .distances
            .iter()
            .all(|d| *d != Distance::Unreachable)
    }

    /// Degrees sorted in nonincreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }
}

/// Distances from one source vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceVector {
    pub source: usize,
    pub distances: Vec<Distance>,
}

/// Breadth-first distances from `src`.
///
/// Panics if `src` is not a vertex of `g`.
pub fn bfs_distances(g: &Graph, src: usize) -> DistanceVector {
    assert!(src < g.n, "source {src} out of range for order {}", g.n);
    let mut dist = vec![Distance::Unreachable; g.n];
    dist[src] = Distance::Finite(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else { unreachable!() };
        for &w in &g.adj[u] {
            if dist[w] == Distance::Unreachable {
                dist[w] = Distance::Finite(du + 1);
                queue.push_back(w);
            }
        }
    }
    DistanceVector {
        source: src,
        distances: dist,
    }
}

/// All-pairs distance matrix, one BFS per vertex.
pub fn all_pairs_distances(g: &Graph) -> Vec<Vec<Distance>> {
    (0..g.n).map(|s| bfs_distances(g, s).distances).collect()
}

/// Vertex counts on either side of an edge `uv`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeUnbalance {
    pub u: usize,
    pub v: usize,
    /// Vertices strictly closer to `u` (including `u`).
    pub n_uv: usize,
    /// Vertices strictly closer to `v` (including `v`).
    pub n_vu: usize,
    pub equidistant: usize,
}

impl EdgeUnbalance {
    pub fn abs_diff(&self) -> usize {
        self.n_uv.abs_diff(self.n_vu)
    }
}

fn tally(u: usize, v: usize, du: &[Distance], dv: &[Distance]) -> EdgeUnbalance {
    let (mut n_uv, mut n_vu, mut equidistant) = (0, 0, 0);
    for (a, b) in du.iter().zip(dv) {
        match a.cmp(b) {
            std::cmp::Ordering::Less => n_uv += 1,
            std::cmp::Ordering::Greater => n_vu += 1,
            std::cmp::Ordering::Equal => equidistant += 1,
        }
    }
    EdgeUnbalance {
        u,
        v,
        n_uv,
        n_vu,
        equidistant,
    }
}

pub fn edge_unbalance(g: &Graph, u: usize, v: usize) -> Result<EdgeUnbalance> {
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge(u, v));
    }
    let du = bfs_distances(g, u).distances;
    let dv = bfs_distances(g, v).distances;
    Ok(tally(u, v, &du, &dv))
}

/// Unbalance of every edge, in edge-list order.
pub fn all_edge_unbalances(g: &Graph) -> Vec<EdgeUnbalance> {
    let dist = all_pairs_distances(g);
    g.edges
        .iter()
        .map(|&(u, v)| tally(u, v, &dist[u], &dist[v]))
        .collect()
}

/// Mo(G): the sum over all edges `uv` of `|n_uv - n_vu|`.
pub fn mostar_index(g: &Graph) -> u64 {
    all_edge_unbalances(g)
        .iter()
        .map(|e| e.abs_diff() as u64)
        .sum()
}

/// A two-coloring `(side_a, side_b)`, each side sorted.
pub type Bipartition = (Vec<usize>, Vec<usize>);

/// Finds a proper two-coloring, or validates `override_sides` when given.
///
/// Each component is colored from its smallest vertex, which goes to side A.
/// Isolated vertices are placed on side B. Returns `Ok(None)` when the
/// graph has an odd cycle.
pub fn bipartition(g: &Graph, override_sides: Option<&Bipartition>) -> Result<Option<Bipartition>> {
    if let Some(sides) = override_sides {
        validate_bipartition(g, sides)?;
        let (mut a, mut b) = sides.clone();
        a.sort_unstable();
        b.sort_unstable();
        return Ok(Some((a, b)));
    }
    let mut color: Vec<Option<bool>> = vec![None; g.n];
    for start in 0..g.n {
        if color[start].is_some() {
            continue;
        }
        if g.adj[start].is_empty() {
            color[start] = Some(false);
            continue;
        }
        color[start] = Some(true);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in &g.adj[u] {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return Ok(None),
                    Some(_) => {}
                }
            }
        }
    }
    let (a, b): (Vec<usize>, Vec<usize>) = (0..g.n).partition(|&v| color[v] == Some(true));
    Ok(Some((a, b)))
}

pub(crate) fn validate_bipartition(g: &Graph, (a, b): &Bipartition) -> Result<()> {
    let mut side = vec![None; g.n];
    for (vs, tag) in [(a, true), (b, false)] {
        for &v in vs {
            if v >= g.n {
                return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
            }
            if side[v].is_some() {
                return Err(Error::InvalidPartition(format!("vertex {v} listed twice")));
            }
            side[v] = Some(tag);
        }
    }
    if let Some(v) = side.iter().position(Option::is_none) {
        return Err(Error::InvalidPartition(format!("vertex {v} not assigned")));
    }
    if let Some(&(u, v)) = g.edges.iter().find(|&&(u, v)| side[u] == side[v]) {
        return Err(Error::InvalidPartition(format!("edge ({u}, {v}) inside one side")));
    }
    Ok(())
}
