//! Complete bipartite graphs, complete split graphs and the near-extremal
//! split graphs that realize the split-graph bound up to lower-order terms.
//!
//! Split graphs always number the clique first (`0..k`) and the independent
//! set after it (`k..n`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// K_{a,b} with side A = `0..a` and side B = `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let pairs: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_edge_list(a + b, &pairs).expect("complete bipartite pairs are valid")
}

/// Mo(K_{a,b}) = a·b·|a − b|.
pub fn mo_complete_bipartite(a: usize, b: usize) -> u64 {
    (a * b * a.abs_diff(b)) as u64
}

/// S_{k,n−k}: a k-clique joined to every vertex of an (n−k)-independent set.
pub fn split_join(k: usize, n: usize) -> Graph {
    assert!(k <= n, "clique size {k} exceeds order {n}");
    let mut pairs = Vec::new();
    for u in 0..k {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    Graph::from_edge_list(n, &pairs).expect("split join pairs are valid")
}

/// Mo(S_{k,n−k}) = k(n−k)(n−k−1).
pub fn mo_split_join(k: usize, n: usize) -> u64 {
    let rest = n - k;
    (k * rest * rest.saturating_sub(1)) as u64
}

/// A split graph described by the cross-degrees of its clique vertices.
///
/// Cross edges are assigned round-robin: the clique vertices are visited in
/// id order and each takes the next `d` independent-set vertices, wrapping
/// around. This keeps independent-set degrees within one of each other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitSpec {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub cross_degrees: Vec<usize>,
}

impl SplitSpec {
    pub fn new(n: usize, k: usize, cross_degrees: Vec<usize>) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidSplit(format!("clique size {k} exceeds order {n}")));
        }
        if cross_degrees.len() != k {
            return Err(Error::InvalidSplit(format!(
                "{} cross-degrees given for a clique of size {k}",
                cross_degrees.len()
            )));
        }
        if cross_degrees.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSplit("cross-degrees must be nonincreasing".into()));
        }
        if let Some(&d) = cross_degrees.iter().find(|&&d| d > n - k) {
            return Err(Error::InvalidSplit(format!(
                "cross-degree {d} exceeds independent set size {}",
                n - k
            )));
        }
        let m = cross_degrees.iter().sum();
        Ok(SplitSpec { n, k, m, cross_degrees })
    }

    pub fn alpha(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

pub fn split_from_spec(spec: &SplitSpec) -> Result<Graph> {
    let checked = SplitSpec::new(spec.n, spec.k, spec.cross_degrees.clone())?;
    if checked.m != spec.m {
        return Err(Error::InvalidSplit(format!(
            "cross-degrees sum to {}, not m = {}",
            checked.m, spec.m
        )));
    }
    let (n, k) = (spec.n, spec.k);
    let width = n - k;
    let mut pairs = Vec::new();
    for u in 0..k {
        for w in u + 1..k {
            pairs.push((u, w));
        }
    }
    let mut next = 0;
    for (u, &d) in spec.cross_degrees.iter().enumerate() {
        for t in 0..d {
            pairs.push((u, k + (next + t) % width));
        }
        if width > 0 {
            next = (next + d) % width;
        }
    }
    Graph::from_edge_list(n, &pairs)
}

/// The split graph with `r = ⌊m/(n−k)⌋` universal clique vertices, one clique
/// vertex adjacent to the first `s = m − r(n−k)` independent-set vertices and
/// all other clique vertices without cross edges.
pub fn extremal_split(n: usize, k: usize, m: usize) -> Result<(SplitSpec, Graph)> {
    if k > n {
        return Err(Error::InvalidSplit(format!("clique size {k} exceeds order {n}")));
    }
    let width = n - k;
    let max = k * width;
    if m > max {
        return Err(Error::EdgeCountOutOfRange { m, max });
    }
    let (r, s) = m.checked_div(width).map_or((0, 0), |r| (r, m % width));
    let mut degrees = vec![0; k];
    degrees[..r].fill(width);
    if r < k {
        degrees[r] = s;
    }
    let spec = SplitSpec::new(n, k, degrees)?;
    let g = split_from_spec(&spec)?;
    Ok((spec, g))
}

/// The side size `a ∈ 1..=⌊n/2⌋` maximizing Mo(K_{a,n−a}) = a(n−a)(n−2a),
/// smallest on ties, with that maximum.
pub fn best_complete_bipartite(n: usize) -> (usize, u128) {
    assert!(n >= 2, "need n >= 2");
    let n128 = n as u128;
    let mut best = (1, 0u128);
    for a in 1..=n / 2 {
        let a128 = a as u128;
        let v = a128 * (n128 - a128) * (n128 - 2 * a128);
        if v > best.1 || a == 1 {
            best = (a, v);
        }
    }
    best
}
