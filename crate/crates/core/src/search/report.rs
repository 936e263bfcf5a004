//! Maximum Mostar index over enumerated classes, with every bound of both
//! chains re-checked on every instance.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::duality::{certified_bound, sqrt3_over_18, theorem1_check};
use crate::error::{Error, Result};
use crate::families::mo_split_join;
use crate::graph::{mostar_index, Graph};
use crate::lp::relaxation_bound;
use crate::rational::{int, to_f64, Rational};
use crate::search::enumerate::{bipartite_from_rows, fold_bipartite, fold_split, split_from_rows};
use crate::split_bounds::{audit_split_edges, cap, claim3_bound, g_bound, split_bound_chain, SplitBoundChain};

/// Largest order searched without `force`, per class.
pub const MAX_BIPARTITE_ORDER: usize = 10;
pub const MAX_SPLIT_ORDER: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeListRecord {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for EdgeListRecord {
    fn from(g: &Graph) -> Self {
        EdgeListRecord {
            n: g.order(),
            edges: g.edges().to_vec(),
        }
    }
}

/// Running maximum; ties go to the smallest `(part, rows)` key.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Best {
    value: u64,
    key: (usize, Vec<u64>),
}

fn pick(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if y.value > x.value || (y.value == x.value && y.key < x.key) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Acc {
    instances: u64,
    best: Option<Best>,
    best_connected: Option<Best>,
    violations: [u64; 8],
}

impl Acc {
    fn offer(&mut self, value: u64, connected: bool, key: (usize, Vec<u64>)) {
        let cand = Some(Best { value, key });
        if connected {
            self.best_connected = pick(self.best_connected.take(), cand.clone());
        }
        self.best = pick(self.best.take(), cand);
        self.instances += 1;
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.instances += other.instances;
        self.best = pick(self.best, other.best);
        self.best_connected = pick(self.best_connected, other.best_connected);
        for (a, b) in self.violations.iter_mut().zip(other.violations) {
            *a += b;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BipartiteSideReport {
    pub a: usize,
    pub b: usize,
    pub instances: u64,
    pub max_mostar: u64,
    pub maximizer_rows: Vec<u64>,
    pub maximizer: EdgeListRecord,
    pub max_connected: Option<u64>,
    pub maximizer_connected: Option<EdgeListRecord>,
    /// exact k(n−k)n(p+q) for the explicit dual pair; absent when a = 0
    #[serde(serialize_with = "crate::rational::serialize_opt")]
    pub certified_bound: Option<Rational>,
    /// graphs with Mo > relaxation bound
    pub relaxation_violations: u64,
    /// graphs with relaxation bound > certified bound
    pub certified_violations: u64,
    /// graphs with 108·Mo² > n⁶
    pub theorem1_violations: u64,
}

impl BipartiteSideReport {
    pub fn violations(&self) -> u64 {
        self.relaxation_violations + self.certified_violations + self.theorem1_violations
    }
}

/// Exhaustive search over bipartite graphs with sides `a ≤ b`.
pub fn search_bipartite_sides(a: usize, b: usize, force: bool) -> Result<BipartiteSideReport> {
    let n = a + b;
    let cert = if a >= 1 && a <= b { Some(certified_bound(n, a)?) } else { None };
    // relaxation values are integers, so compare against the floor
    let cert_floor = cert.as_ref().map(|c| c.floor().to_integer().to_i64().unwrap_or(i64::MAX));
    let sides = ((0..a).collect::<Vec<_>>(), (a..n).collect::<Vec<_>>());

    let acc = fold_bipartite(
        a,
        b,
        force,
        Acc::default,
        |mut acc, g, rows| {
            let mo = mostar_index(g);
            let relax = relaxation_bound(g, Some(&sides))
                .expect("enumerated graphs are bipartite")
                .to_integer()
                .to_i64()
                .unwrap();
            if mo as i64 > relax {
                acc.violations[0] += 1;
            }
            if let Some(cf) = cert_floor {
                if relax > cf {
                    acc.violations[1] += 1;
                }
            }
            if !theorem1_check(mo, n) {
                acc.violations[2] += 1;
            }
            acc.offer(mo, g.is_connected(), (a, rows.to_vec()));
            acc
        },
        Acc::merge,
    )?;
    let best = acc.best.expect("at least one matrix");
    let maximizer = bipartite_from_rows(a, b, &best.key.1);
    Ok(BipartiteSideReport {
        a,
        b,
        instances: acc.instances,
        max_mostar: best.value,
        maximizer: EdgeListRecord::from(&maximizer),
        maximizer_rows: best.key.1,
        max_connected: acc.best_connected.as_ref().map(|b| b.value),
        maximizer_connected: acc
            .best_connected
            .map(|bc| EdgeListRecord::from(&bipartite_from_rows(a, b, &bc.key.1))),
        certified_bound: cert,
        relaxation_violations: acc.violations[0],
        certified_violations: acc.violations[1],
        theorem1_violations: acc.violations[2],
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitKReport {
    pub n: usize,
    pub k: usize,
    pub instances: u64,
    pub max_mostar: u64,
    pub maximizer_rows: Vec<u64>,
    pub maximizer: EdgeListRecord,
    pub max_connected: Option<u64>,
    pub maximizer_connected: Option<EdgeListRecord>,
    /// edges breaking the cross bound or the clique identity
    pub edge_identity_violations: u64,
    /// graphs with Mo above the per-edge decomposition or its Cauchy–Schwarz form
    pub decomposition_violations: u64,
    /// graphs whose clique degree-difference sum exceeds km − m²/(n−k)
    pub claim3_violations: u64,
    /// graphs with Mo > g(n,k,m)
    pub g_violations: u64,
    /// (n,k,m) with g > piecewise or piecewise > 4n³/27
    pub chain_violations: u64,
}

impl SplitKReport {
    pub fn violations(&self) -> u64 {
        self.edge_identity_violations
            + self.decomposition_violations
            + self.claim3_violations
            + self.g_violations
            + self.chain_violations
    }
}

/// Exhaustive search over split graphs with clique `0..k`.
pub fn search_split_k(n: usize, k: usize, force: bool) -> Result<SplitKReport> {
    if k > n {
        return Err(Error::InvalidSplit(format!("clique size {k} exceeds order {n}")));
    }
    let w = n - k;
    let max_m = k * w;
    let g_table: Vec<Rational> = (0..=max_m).map(|m| g_bound(n, k, m)).collect::<Result<_>>()?;
    let c3_table: Vec<Rational> = (0..=max_m).map(|m| claim3_bound(n, k, m)).collect::<Result<_>>()?;
    let chain_bad = (0..=max_m)
        .map(|m| split_bound_chain(n, k, m).map(|c| !c.is_ordered()))
        .collect::<Result<Vec<bool>>>()?;

    let acc = fold_split(
        n,
        k,
        force,
        Acc::default,
        |mut acc, g, rows| {
            let audit = audit_split_edges(g, k);
            let m = audit.cross_edges;
            let mo = int(audit.mostar as i64);
            acc.violations[0] += (audit.cross_violations + audit.clique_mismatches + audit.structural_errors) as u64;
            if audit.mostar > audit.decomposition_bound() || mo > audit.cauchy_schwarz_bound(n, k) {
                acc.violations[1] += 1;
            }
            if int(audit.clique_sum as i64) > c3_table[m] {
                acc.violations[2] += 1;
            }
            if mo > g_table[m] {
                acc.violations[3] += 1;
            }
            if chain_bad[m] {
                acc.violations[4] += 1;
            }
            acc.offer(audit.mostar, g.is_connected(), (k, rows.to_vec()));
            acc
        },
        Acc::merge,
    )?;
    let best = acc.best.expect("at least one matrix");
    Ok(SplitKReport {
        n,
        k,
        instances: acc.instances,
        max_mostar: best.value,
        maximizer: EdgeListRecord::from(&split_from_rows(n, k, &best.key.1)),
        maximizer_rows: best.key.1,
        max_connected: acc.best_connected.as_ref().map(|b| b.value),
        maximizer_connected: acc
            .best_connected
            .map(|bc| EdgeListRecord::from(&split_from_rows(n, k, &bc.key.1))),
        edge_identity_violations: acc.violations[0],
        decomposition_violations: acc.violations[1],
        claim3_violations: acc.violations[2],
        g_violations: acc.violations[3],
        chain_violations: acc.violations[4],
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartSummary {
    /// side size a (bipartite) or clique size k (split)
    pub part: usize,
    pub instances: u64,
    pub max_mostar: u64,
    pub max_connected: Option<u64>,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    /// "bipartite" or "split"
    pub class: String,
    pub n: usize,
    pub instances: u64,
    pub max_mostar: u64,
    pub maximizer: EdgeListRecord,
    /// side size a of the maximizer (bipartite) or its clique size k (split)
    pub maximizer_part: usize,
    pub max_connected: Option<u64>,
    pub maximizer_connected: Option<EdgeListRecord>,
    /// bipartite: relaxation bound of the maximizer
    #[serde(serialize_with = "crate::rational::serialize_opt")]
    pub relaxation_bound: Option<Rational>,
    /// bipartite: certified bound at the maximizer's sides
    #[serde(serialize_with = "crate::rational::serialize_opt")]
    pub certified_bound: Option<Rational>,
    /// bipartite: √3/18 · n³
    pub theorem1_bound: Option<f64>,
    pub theorem1_holds: Option<bool>,
    /// split: bound chain at the maximizer's (n, k, m)
    pub split_chain: Option<SplitBoundChain>,
    /// split: best complete split graph S_{k,n−k}, as (k, Mo)
    pub best_split_join: Option<(usize, u64)>,
    /// headline bound minus the maximum (√3/18 n³ or 4n³/27)
    pub gap: f64,
    pub violations: u64,
    pub parts: Vec<PartSummary>,
}

impl SearchReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.theorem1_holds != Some(false)
    }
}

/// Maximum Mostar index over all bipartite graphs of order `n`.
pub fn max_mostar_bipartite(n: usize, force: bool) -> Result<SearchReport> {
    if n > MAX_BIPARTITE_ORDER && !force {
        return Err(Error::Capacity {
            bits: (n / 2) * (n - n / 2),
            limit: (MAX_BIPARTITE_ORDER / 2) * (MAX_BIPARTITE_ORDER - MAX_BIPARTITE_ORDER / 2),
        });
    }
    let sides: Vec<BipartiteSideReport> = (0..=n / 2)
        .map(|a| search_bipartite_sides(a, n - a, force))
        .collect::<Result<_>>()?;

    let best = sides
        .iter()
        .map(|s| Some(Best { value: s.max_mostar, key: (s.a, s.maximizer_rows.clone()) }))
        .fold(None, pick)
        .expect("at least one side split");
    let top = sides.iter().find(|s| s.a == best.key.0).unwrap();
    let connected = sides
        .iter()
        .filter_map(|s| s.max_connected.map(|v| (v, s)))
        .max_by(|x, y| x.0.cmp(&y.0).then(y.1.a.cmp(&x.1.a)));

    let maximizer = bipartite_from_rows(top.a, top.b, &top.maximizer_rows);
    let bound = sqrt3_over_18() * (n as f64).powi(3);
    Ok(SearchReport {
        class: "bipartite".into(),
        n,
        instances: sides.iter().map(|s| s.instances).sum(),
        max_mostar: best.value,
        maximizer: EdgeListRecord::from(&maximizer),
        maximizer_part: top.a,
        max_connected: connected.map(|c| c.0),
        maximizer_connected: connected.and_then(|c| c.1.maximizer_connected.clone()),
        relaxation_bound: Some(relaxation_bound(&maximizer, None)?),
        certified_bound: top.certified_bound.clone(),
        theorem1_bound: Some(bound),
        theorem1_holds: Some(theorem1_check(best.value, n)),
        split_chain: None,
        best_split_join: None,
        gap: bound - best.value as f64,
        violations: sides.iter().map(BipartiteSideReport::violations).sum(),
        parts: sides
            .iter()
            .map(|s| PartSummary {
                part: s.a,
                instances: s.instances,
                max_mostar: s.max_mostar,
                max_connected: s.max_connected,
                violations: s.violations(),
            })
            .collect(),
    })
}

/// Maximum Mostar index over all split graphs of order `n`, every clique size.
pub fn max_mostar_split(n: usize, force: bool) -> Result<SearchReport> {
    if n > MAX_SPLIT_ORDER && !force {
        return Err(Error::Capacity {
            bits: (n / 2) * (n - n / 2),
            limit: (MAX_SPLIT_ORDER / 2) * (MAX_SPLIT_ORDER - MAX_SPLIT_ORDER / 2),
        });
    }
    let parts: Vec<SplitKReport> = (0..=n)
        .map(|k| search_split_k(n, k, force))
        .collect::<Result<_>>()?;
    let best = parts
        .iter()
        .map(|s| Some(Best { value: s.max_mostar, key: (s.k, s.maximizer_rows.clone()) }))
        .fold(None, pick)
        .expect("at least one clique size");
    let top = parts.iter().find(|s| s.k == best.key.0).unwrap();
    let connected = parts
        .iter()
        .filter_map(|s| s.max_connected.map(|v| (v, s)))
        .max_by(|x, y| x.0.cmp(&y.0).then(y.1.k.cmp(&x.1.k)));
    let maximizer = split_from_rows(n, top.k, &top.maximizer_rows);
    let m = maximizer.size() - top.k * top.k.saturating_sub(1) / 2;
    let chain = split_bound_chain(n, top.k, m)?;
    let best_join = (0..=n)
        .map(|k| (k, mo_split_join(k, n)))
        .max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)));
    Ok(SearchReport {
        class: "split".into(),
        n,
        instances: parts.iter().map(|s| s.instances).sum(),
        max_mostar: best.value,
        maximizer: EdgeListRecord::from(&maximizer),
        maximizer_part: top.k,
        max_connected: connected.map(|c| c.0),
        maximizer_connected: connected.and_then(|c| c.1.maximizer_connected.clone()),
        relaxation_bound: None,
        certified_bound: None,
        theorem1_bound: None,
        theorem1_holds: None,
        split_chain: Some(chain),
        best_split_join: best_join,
        gap: to_f64(&(cap(n) - int(best.value as i64))),
        violations: parts.iter().map(SplitKReport::violations).sum(),
        parts: parts
            .iter()
            .map(|s| PartSummary {
                part: s.k,
                instances: s.instances,
                max_mostar: s.max_mostar,
                max_connected: s.max_connected,
                violations: s.violations(),
            })
            .collect(),
    })
}
