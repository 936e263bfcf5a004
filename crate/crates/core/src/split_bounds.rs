//! The split-graph bound chain, in exact rational arithmetic.
//!
//! A split graph here has clique `C = 0..k` and independent set
//! `I = k..n`, with `m` cross edges between them. The chain is
//!
//! ```text
//! Mo(G) ≤ g(n,k,m) = (n+k−1)m − 2m²/(n−k) ≤ piecewise(n,k) ≤ 4n³/27
//! ```
//!
//! where `piecewise` is `g` at `m = k(n−k)` when `3k ≤ n−1` and `g` at its
//! vertex `m* = (n−k)(n+k−1)/4` otherwise.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{all_edge_unbalances, Graph};
use crate::rational::{int, ratio, Rational};

/// Upper bound `n − d(v) − 1` on the unbalance of a cross edge `uv` with
/// `v` in the independent set.
pub fn cross_edge_bound(n: usize, dv: usize) -> usize {
    assert!(dv >= 1 && dv < n, "cross-edge endpoint degree {dv} outside [1, {}]", n - 1);
    n - dv - 1
}

/// `|d(u) − d(u')|` for two clique vertices; equals their edge unbalance.
pub fn clique_pair_unbalance(g: &Graph, k: usize, u: usize, w: usize) -> Result<usize> {
    if u >= k || w >= k || u == w {
        return Err(Error::NotInClique(u, w));
    }
    if !g.has_edge(u, w) {
        return Err(Error::NotAnEdge(u, w));
    }
    Ok(g.degree(u).abs_diff(g.degree(w)))
}

/// Σ_{i<j} (d_i − d_j) for a nonincreasing sequence, as Σ_i (L+1−2i) d_i.
pub fn weighted_absdiff_sum(degseq: &[usize]) -> Result<i64> {
    if degseq.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotSorted);
    }
    let len = degseq.len() as i64;
    Ok(degseq
        .iter()
        .enumerate()
        .map(|(idx, &d)| (len + 1 - 2 * (idx as i64 + 1)) * d as i64)
        .sum())
}

fn check_split_params(n: usize, k: usize, m: usize) -> Result<Option<Rational>> {
    if k > n {
        return Err(Error::InvalidSplit(format!("clique size {k} exceeds order {n}")));
    }
    let max = k * (n - k);
    if m > max {
        return Err(Error::EdgeCountOutOfRange { m, max });
    }
    // no clique or no independent set: no cross edges, every bound is 0
    if k == 0 || k == n {
        return Ok(Some(Rational::zero()));
    }
    Ok(None)
}

/// `km − m²/(n−k)`, bounding Σ over clique pairs of `|d(u) − d(u')|`.
pub fn claim3_bound(n: usize, k: usize, m: usize) -> Result<Rational> {
    if let Some(z) = check_split_params(n, k, m)? {
        return Ok(z);
    }
    let (k, m, w) = (k as i64, m as i64, (n - k) as i64);
    Ok(int(k * m) - ratio(m * m, w))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim3Extremal {
    pub value: i64,
    pub r: usize,
    pub s: usize,
    /// `claim3_bound − value`, always `s((n−k)−s)/(n−k)`
    #[serde(serialize_with = "crate::rational::serialize")]
    pub slack: Rational,
}

/// The pairwise degree-difference sum of the sequence
/// `(n−k, …, n−k, s, 0, …, 0)` with `r` full entries, `m = (n−k)r + s`.
pub fn claim3_extremal_value(n: usize, k: usize, m: usize) -> Result<Claim3Extremal> {
    if check_split_params(n, k, m)?.is_some() {
        return Err(Error::Degenerate { n, k });
    }
    let w = n - k;
    let (r, s) = (m / w, m % w);
    let (ki, ri, si, wi) = (k as i64, r as i64, s as i64, w as i64);
    let value = (ki - ri) * ri * wi + (ki - 1 - 2 * ri) * si;
    let slack = claim3_bound(n, k, m)? - int(value);
    Ok(Claim3Extremal { value, r, s, slack })
}

/// `g(n,k,m) = (n+k−1)m − 2m²/(n−k)`.
pub fn g_bound(n: usize, k: usize, m: usize) -> Result<Rational> {
    if let Some(z) = check_split_params(n, k, m)? {
        return Ok(z);
    }
    let (m, w) = (m as i64, (n - k) as i64);
    Ok(int((n + k - 1) as i64 * m) - ratio(2 * m * m, w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SplitCase {
    /// 3k ≤ n − 1: every m ≤ k(n−k) lies left of the vertex m*
    Low,
    High,
}

/// `m* = (n−k)(n+k−1)/4`, the vertex of `g` in `m`.
pub fn m_star(n: usize, k: usize) -> Rational {
    if k == n {
        return Rational::zero();
    }
    ratio(((n - k) * (n + k - 1)) as i64, 4)
}

pub fn split_case(n: usize, k: usize) -> SplitCase {
    if 3 * k < n {
        SplitCase::Low
    } else {
        SplitCase::High
    }
}

/// `4n³/27`.
pub fn cap(n: usize) -> Rational {
    ratio(4 * (n as i64).pow(3), 27)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiecewiseBound {
    pub case: SplitCase,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub m_star: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub value: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub cap: Rational,
}

/// The largest value of `g(n,k,·)` over admissible `m`.
pub fn theorem2_piecewise(n: usize, k: usize) -> Result<PiecewiseBound> {
    if k > n || n == 0 {
        return Err(Error::InvalidSplit(format!("clique size {k} with order {n}")));
    }
    let case = split_case(n, k);
    let w = (n - k) as i64;
    let value = match case {
        SplitCase::Low => int(k as i64 * w * (w - 1).max(0)),
        SplitCase::High => ratio(w * ((n + k - 1) as i64).pow(2), 8),
    };
    Ok(PiecewiseBound {
        case,
        m_star: m_star(n, k),
        value,
        cap: cap(n),
    })
}

/// The full chain for one `(n, k, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitBoundChain {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub g_value: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub piecewise_value: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub cap_value: Rational,
    pub case_taken: SplitCase,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub m_star: Rational,
    /// `claim3_bound − claim3_extremal_value`; absent for degenerate k
    #[serde(serialize_with = "crate::rational::serialize_opt")]
    pub claim3_slack: Option<Rational>,
}

impl SplitBoundChain {
    pub fn is_ordered(&self) -> bool {
        self.g_value <= self.piecewise_value && self.piecewise_value <= self.cap_value
    }
}

pub fn split_bound_chain(n: usize, k: usize, m: usize) -> Result<SplitBoundChain> {
    let g_value = g_bound(n, k, m)?;
    let pw = theorem2_piecewise(n, k)?;
    let claim3_slack = claim3_extremal_value(n, k, m).ok().map(|c| c.slack);
    Ok(SplitBoundChain {
        n,
        k,
        m,
        g_value,
        piecewise_value: pw.value,
        cap_value: pw.cap,
        case_taken: pw.case,
        m_star: pw.m_star,
        claim3_slack,
    })
}

/// Edge-level accounting of a split graph with clique `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitEdgeAudit {
    pub mostar: u64,
    pub cross_edges: usize,
    /// Σ over cross edges of `n − d(v) − 1`
    pub cross_bound_sum: u64,
    /// Σ over clique pairs of `|d(u) − d(u')|`
    pub clique_sum: u64,
    /// Σ over independent-set vertices of d(v)²
    pub sum_sq_independent: u64,
    /// cross edges whose unbalance exceeds `n − d(v) − 1`
    pub cross_violations: usize,
    /// clique edges whose unbalance differs from `|d(u) − d(u')|`
    pub clique_mismatches: usize,
    /// vertex sets failing the split structure (edge inside I)
    pub structural_errors: usize,
}

impl SplitEdgeAudit {
    /// `m(n−1) − m²/(n−k) + Σ|d(u) − d(u')|`, the bound after the
    /// Cauchy–Schwarz step.
    pub fn cauchy_schwarz_bound(&self, n: usize, k: usize) -> Rational {
        let m = self.cross_edges as i64;
        let mut v = int(m * (n as i64 - 1)) + int(self.clique_sum as i64);
        if k < n {
            v -= ratio(m * m, (n - k) as i64);
        }
        v
    }

    /// Σ d(v)² − m²/(n−k) ≥ 0.
    pub fn cauchy_schwarz_slack(&self, n: usize, k: usize) -> Rational {
        if k == n {
            return Rational::zero();
        }
        let m = self.cross_edges as i64;
        int(self.sum_sq_independent as i64) - ratio(m * m, (n - k) as i64)
    }

    pub fn decomposition_bound(&self) -> u64 {
        self.cross_bound_sum + self.clique_sum
    }

    pub fn identities_hold(&self) -> bool {
        self.cross_violations == 0 && self.clique_mismatches == 0 && self.structural_errors == 0
    }
}

pub fn audit_split_edges(g: &Graph, k: usize) -> SplitEdgeAudit {
    let n = g.order();
    let mut audit = SplitEdgeAudit {
        mostar: 0,
        cross_edges: 0,
        cross_bound_sum: 0,
        clique_sum: 0,
        sum_sq_independent: (k..n).map(|v| (g.degree(v) * g.degree(v)) as u64).sum(),
        cross_violations: 0,
        clique_mismatches: 0,
        structural_errors: 0,
    };
    for u in 0..k {
        for w in u + 1..k {
            match clique_pair_unbalance(g, k, u, w) {
                Ok(d) => audit.clique_sum += d as u64,
                Err(_) => audit.structural_errors += 1,
            }
        }
    }
    for e in all_edge_unbalances(g) {
        let diff = e.abs_diff();
        audit.mostar += diff as u64;
        match (e.u < k, e.v < k) {
            (true, true) => {
                if Some(diff) != clique_pair_unbalance(g, k, e.u, e.v).ok() {
                    audit.clique_mismatches += 1;
                }
            }
            (true, false) | (false, true) => {
                let v = if e.u < k { e.v } else { e.u };
                let bound = cross_edge_bound(n, g.degree(v));
                audit.cross_edges += 1;
                audit.cross_bound_sum += bound as u64;
                if diff > bound {
                    audit.cross_violations += 1;
                }
            }
            (false, false) => audit.structural_errors += 1,
        }
    }
    audit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{extremal_split, split_join};
    use crate::graph::{edge_unbalance, mostar_index};

    #[test]
    fn cross_bound_examples() {
        let g = split_join(2, 6);
        assert_eq!(cross_edge_bound(6, g.degree(3)), 3);
        assert_eq!(edge_unbalance(&g, 0, 3).unwrap().abs_diff(), 3);
        assert_eq!(cross_edge_bound(4, 1), 2);
        assert_eq!(cross_edge_bound(7, 6), 0);
    }

    #[test]
    fn clique_pair_examples() {
        assert_eq!(clique_pair_unbalance(&split_join(2, 6), 2, 0, 1).unwrap(), 0);
        let (_, g) = extremal_split(6, 2, 5).unwrap();
        assert_eq!((g.degree(0), g.degree(1)), (5, 2));
        assert_eq!(clique_pair_unbalance(&g, 2, 0, 1).unwrap(), 3);
        assert_eq!(edge_unbalance(&g, 0, 1).unwrap().abs_diff(), 3);
        assert_eq!(clique_pair_unbalance(&g, 2, 0, 3), Err(Error::NotInClique(0, 3)));
    }

    #[test]
    fn weighted_sum_examples() {
        assert_eq!(weighted_absdiff_sum(&[3, 1, 0]).unwrap(), 6);
        assert_eq!(weighted_absdiff_sum(&[4, 1]).unwrap(), 3);
        assert_eq!(weighted_absdiff_sum(&[2, 2, 2]).unwrap(), 0);
        assert_eq!(weighted_absdiff_sum(&[]).unwrap(), 0);
        assert_eq!(weighted_absdiff_sum(&[1, 2]), Err(Error::NotSorted));
    }

    #[test]
    fn claim3_examples() {
        assert_eq!(claim3_bound(6, 2, 8).unwrap(), int(0));
        assert_eq!(claim3_bound(6, 2, 5).unwrap(), ratio(15, 4));
        assert_eq!(claim3_bound(9, 3, 0).unwrap(), int(0));

        let c = claim3_extremal_value(6, 2, 5).unwrap();
        assert_eq!((c.value, c.r, c.s), (3, 1, 1));
        assert_eq!(c.slack, ratio(3, 4));
        let c = claim3_extremal_value(6, 2, 8).unwrap();
        assert_eq!((c.value, c.r, c.s, c.slack), (0, 2, 0, int(0)));
        for m in (0..=12).step_by(4) {
            assert_eq!(claim3_extremal_value(7, 3, m).unwrap().slack, int(0));
        }
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_bound(6, 2, 8).unwrap(), int(24));
        assert_eq!(mostar_index(&split_join(2, 6)), 24);
        assert_eq!(g_bound(6, 2, 7).unwrap(), ratio(49, 2));
        assert_eq!(g_bound(6, 2, 0).unwrap(), int(0));
        assert_eq!(g_bound(6, 6, 0).unwrap(), int(0));
        assert_eq!(g_bound(6, 0, 0).unwrap(), int(0));
        assert!(g_bound(6, 2, 9).is_err());
    }

    #[test]
    fn piecewise_examples() {
        let b = theorem2_piecewise(6, 1).unwrap();
        assert_eq!((b.case, b.value.clone()), (SplitCase::Low, int(20)));
        let b = theorem2_piecewise(6, 2).unwrap();
        assert_eq!((b.case, b.value.clone()), (SplitCase::High, ratio(49, 2)));
        assert_eq!(b.m_star, int(7));
        assert_eq!(b.cap, int(32));
        assert!(b.value <= b.cap);
    }

    #[test]
    fn cap_identity() {
        // max over α of max{α(1−α)², (1+α)²(1−α)/8} is 4/27 at α = 1/3
        let third = ratio(1, 3);
        let one = int(1);
        let a = &third * (&one - &third) * (&one - &third);
        let b = (&one + &third) * (&one + &third) * (&one - &third) / int(8);
        assert_eq!(a, ratio(4, 27));
        assert_eq!(b, ratio(4, 27));
        for t in 0..=10_000 {
            let x = t as f64 / 10_000.0;
            let v = (x * (1.0 - x) * (1.0 - x)).max((1.0 + x).powi(2) * (1.0 - x) / 8.0);
            assert!(v <= 4.0 / 27.0 + 1e-15, "alpha = {x}");
        }
    }

    #[test]
    fn audit_extremal() {
        let (_, g) = extremal_split(6, 2, 5).unwrap();
        let audit = audit_split_edges(&g, 2);
        assert!(audit.identities_hold());
        assert_eq!(audit.mostar, mostar_index(&g));
        assert_eq!(audit.cross_edges, 5);
        assert!(int(audit.mostar as i64) <= audit.cauchy_schwarz_bound(6, 2));
        assert!(audit.mostar <= audit.decomposition_bound());
        assert!(audit.cauchy_schwarz_slack(6, 2) >= int(0));
    }
}
