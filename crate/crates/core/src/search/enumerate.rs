//! Enumeration of bipartite and split graphs by their biadjacency (cross)
//! matrices.
//!
//! A matrix is a list of row bitmasks. Only row-sorted matrices are
//! produced (rows nondecreasing as integers); for square bipartite
//! matrices the row-sorted transpose must not be smaller either. Both
//! reductions are relabelings, which leave the Mostar index unchanged.
//! Work is sharded by the value of the first row.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default upper bound on the number of matrix entries.
pub const CAPACITY_BITS: usize = 30;

fn guard(bits: usize, force: bool) -> Result<()> {
    if bits > CAPACITY_BITS && !force {
        return Err(Error::Capacity {
            bits,
            limit: CAPACITY_BITS,
        });
    }
    if bits >= 63 {
        return Err(Error::Capacity { bits, limit: 62 });
    }
    Ok(())
}

/// Bipartite graph on sides `0..a` and `a..a+b`; row `u` lists the
/// neighbors of `u` as bits over side B.
pub fn bipartite_from_rows(a: usize, b: usize, rows: &[u64]) -> Graph {
    let mut pairs = Vec::new();
    for (u, &mask) in rows.iter().enumerate() {
        for bit in 0..b {
            if mask >> bit & 1 == 1 {
                pairs.push((u, a + bit));
            }
        }
    }
    Graph::from_edge_list(a + b, &pairs).expect("rows describe a valid graph")
}

/// Split graph with clique `0..k` and independent set `k..n`; row `u`
/// lists the independent-set neighbors of clique vertex `u`.
pub fn split_from_rows(n: usize, k: usize, rows: &[u64]) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..k {
        for w in u + 1..k {
            pairs.push((u, w));
        }
    }
    for (u, &mask) in rows.iter().enumerate() {
        for bit in 0..n - k {
            if mask >> bit & 1 == 1 {
                pairs.push((u, k + bit));
            }
        }
    }
    Graph::from_edge_list(n, &pairs).expect("rows describe a valid graph")
}

fn transpose_sorted(rows: &[u64], width: usize) -> Vec<u64> {
    let mut t: Vec<u64> = (0..width)
        .map(|bit| {
            rows.iter()
                .enumerate()
                .fold(0, |acc, (r, &mask)| acc | ((mask >> bit & 1) << r))
        })
        .collect();
    t.sort_unstable();
    t
}

/// Walks all nondecreasing row sequences of `len` rows below `limit`,
/// starting with `first`.
fn walk_rows<T>(
    len: usize,
    limit: u64,
    first: u64,
    acc: T,
    fold: &(impl Fn(T, &[u64]) -> T + Sync),
) -> T {
    fn rec<T>(
        rows: &mut Vec<u64>,
        len: usize,
        limit: u64,
        acc: T,
        fold: &(impl Fn(T, &[u64]) -> T + Sync),
    ) -> T {
        if rows.len() == len {
            return fold(acc, rows);
        }
        let lo = *rows.last().unwrap();
        let mut acc = acc;
        for next in lo..limit {
            rows.push(next);
            acc = rec(rows, len, limit, acc, fold);
            rows.pop();
        }
        acc
    }
    let mut rows = Vec::with_capacity(len);
    rows.push(first);
    rec(&mut rows, len, limit, acc, fold)
}

/// Folds over the row-sorted `rows × width` matrices in parallel shards and
/// merges the shard results. `keep` filters matrices before folding.
pub(crate) fn fold_matrices<T: Send>(
    rows: usize,
    width: usize,
    keep: impl Fn(&[u64]) -> bool + Sync,
    init: impl Fn() -> T + Sync + Send,
    fold: impl Fn(T, &[u64]) -> T + Sync + Send,
    merge: impl Fn(T, T) -> T + Sync + Send,
) -> T {
    if rows == 0 {
        return fold(init(), &[]);
    }
    let limit = 1u64 << width;
    let filtered = |acc: T, m: &[u64]| if keep(m) { fold(acc, m) } else { acc };
    (0..limit)
        .into_par_iter()
        .map(|first| walk_rows(rows, limit, first, init(), &filtered))
        .reduce(&init, &merge)
}

fn square_canonical(a: usize, b: usize) -> impl Fn(&[u64]) -> bool + Sync {
    move |rows: &[u64]| a != b || rows <= transpose_sorted(rows, b).as_slice()
}

/// Folds over pruned biadjacency matrices of K_{a,b} subgraphs.
pub fn fold_bipartite<T: Send>(
    a: usize,
    b: usize,
    force: bool,
    init: impl Fn() -> T + Sync + Send,
    fold: impl Fn(T, &Graph, &[u64]) -> T + Sync + Send,
    merge: impl Fn(T, T) -> T + Sync + Send,
) -> Result<T> {
    if a > b {
        return Err(Error::InvalidPartition(format!(
            "side sizes ({a}, {b}) must be given smaller side first"
        )));
    }
    guard(a * b, force)?;
    Ok(fold_matrices(
        a,
        b,
        square_canonical(a, b),
        init,
        |acc, rows| fold(acc, &bipartite_from_rows(a, b, rows), rows),
        merge,
    ))
}

/// Visits every pruned bipartite graph with sides `a ≤ b`; returns the
/// number visited.
pub fn enumerate_bipartite(
    a: usize,
    b: usize,
    force: bool,
    visitor: impl Fn(&Graph) + Sync + Send,
) -> Result<u64> {
    fold_bipartite(
        a,
        b,
        force,
        || 0u64,
        |c, g, _| {
            visitor(g);
            c + 1
        },
        |x, y| x + y,
    )
}

/// Visits all `2^(a·b)` biadjacency matrices without pruning.
pub fn enumerate_bipartite_raw(a: usize, b: usize, visitor: impl Fn(&Graph, &[u64]) + Sync) -> Result<u64> {
    guard(a * b, false)?;
    let total = 1u64 << (a * b);
    let mask = (1u64 << b) - 1;
    (0..total).into_par_iter().for_each(|code| {
        let rows: Vec<u64> = (0..a).map(|r| code >> (r * b) & mask).collect();
        visitor(&bipartite_from_rows(a, b, &rows), &rows);
    });
    Ok(total)
}

pub fn fold_split<T: Send>(
    n: usize,
    k: usize,
    force: bool,
    init: impl Fn() -> T + Sync + Send,
    fold: impl Fn(T, &Graph, &[u64]) -> T + Sync + Send,
    merge: impl Fn(T, T) -> T + Sync + Send,
) -> Result<T> {
    if k > n {
        return Err(Error::InvalidSplit(format!("clique size {k} exceeds order {n}")));
    }
    guard(k * (n - k), force)?;
    Ok(fold_matrices(
        k,
        n - k,
        |_| true,
        init,
        |acc, rows| fold(acc, &split_from_rows(n, k, rows), rows),
        merge,
    ))
}

/// Visits every pruned split graph with clique `0..k`; returns the number
/// visited.
pub fn enumerate_split(
    n: usize,
    k: usize,
    force: bool,
    visitor: impl Fn(&Graph) + Sync + Send,
) -> Result<u64> {
    fold_split(
        n,
        k,
        force,
        || 0u64,
        |c, g, _| {
            visitor(g);
            c + 1
        },
        |x, y| x + y,
    )
}
