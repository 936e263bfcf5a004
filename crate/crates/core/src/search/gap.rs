//! Closed-form scan of complete bipartite side ratios, and sharpness tables
//! comparing constructed graphs with the bounds they nearly attain.

use rayon::prelude::*;
use serde::Serialize;

use crate::duality::sqrt3_over_18;
use crate::error::{Error, Result};
use crate::families::{best_complete_bipartite, extremal_split};
use crate::graph::mostar_index;
use crate::rational::{int, to_f64, Rational};
use crate::split_bounds::{g_bound, split_case, theorem2_piecewise, SplitCase};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture19Row {
    pub n: usize,
    pub third_a: usize,
    pub mo_third: u128,
    pub best_a: usize,
    pub mo_best: u128,
    /// the best side size strictly beats ⌊n/3⌋
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture19Scan {
    pub rows: Vec<Conjecture19Row>,
    pub flagged: usize,
    pub smallest_flagged: Option<usize>,
}

/// Compares Mo(K_{⌊n/3⌋, n−⌊n/3⌋}) with the best complete bipartite graph
/// of each order `3..=n_max`.
pub fn conjecture19_scan(n_max: usize) -> Conjecture19Scan {
    assert!(n_max >= 3, "need n_max >= 3");
    let rows: Vec<Conjecture19Row> = (3..=n_max)
        .map(|n| {
            let third_a = n / 3;
            let (a, b) = (third_a as u128, (n - third_a) as u128);
            let mo_third = a * b * (b - a);
            let (best_a, mo_best) = best_complete_bipartite(n);
            Conjecture19Row {
                n,
                third_a,
                mo_third,
                best_a,
                mo_best,
                flagged: mo_best > mo_third,
            }
        })
        .collect();
    let smallest_flagged = rows.iter().find(|r| r.flagged).map(|r| r.n);
    Conjecture19Scan {
        flagged: rows.iter().filter(|r| r.flagged).count(),
        rows,
        smallest_flagged,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum KPolicy {
    /// the clique size maximizing the piecewise bound at this order
    BestPiecewise,
    /// k = round(num · n / den)
    Fraction { num: usize, den: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GapFamily {
    /// K_{a,n−a} at the best a, against √3/18 · n³
    CompleteBipartiteAlpha1,
    /// extremal split graph with m at the case-optimal value, against the
    /// piecewise bound
    ExtremalSplit { k: KPolicy },
}

impl GapFamily {
    pub fn name(&self) -> String {
        match self {
            GapFamily::CompleteBipartiteAlpha1 => "complete-bipartite-alpha1".into(),
            GapFamily::ExtremalSplit { k: KPolicy::BestPiecewise } => "extremal-split".into(),
            GapFamily::ExtremalSplit {
                k: KPolicy::Fraction { num, den },
            } => format!("extremal-split-{num}/{den}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRow {
    pub n: usize,
    /// side size a or clique size k
    pub part: usize,
    pub m: Option<usize>,
    pub bound: f64,
    #[serde(serialize_with = "crate::rational::serialize_opt")]
    pub bound_exact: Option<Rational>,
    pub mostar: u64,
    pub gap: f64,
    pub gap_over_n2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapTable {
    pub family: String,
    pub rows: Vec<GapRow>,
    pub max_gap_over_n2: f64,
    pub all_nonnegative: bool,
}

impl GapTable {
    /// max gap/n² over the upper half of the rows divided by the max over
    /// the lower half. A gap of order n³ would push this toward 2 when the
    /// range spans a doubling of n; an O(n²) gap keeps it near or below 1.
    pub fn growth_ratio(&self) -> f64 {
        let half = self.rows.len() / 2;
        let max = |rows: &[GapRow]| rows.iter().map(|r| r.gap_over_n2).fold(f64::MIN, f64::max);
        max(&self.rows[half..]) / max(&self.rows[..half])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,part,m,bound,mostar,gap,gap_over_n2\n");
        for r in &self.rows {
            let m = r.m.map(|m| m.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.n, r.part, m, r.bound, r.mostar, r.gap, r.gap_over_n2
            ));
        }
        out
    }
}

fn pick_k(n: usize, policy: KPolicy) -> Result<usize> {
    match policy {
        KPolicy::BestPiecewise => {
            let mut best = (1, int(-1));
            for k in 1..n {
                let v = theorem2_piecewise(n, k)?.value;
                if v > best.1 {
                    best = (k, v);
                }
            }
            Ok(best.0)
        }
        KPolicy::Fraction { num, den } => {
            if den == 0 || num > den {
                return Err(Error::InvalidSplit(format!("clique fraction {num}/{den}")));
            }
            let k = (num * n + den / 2) / den;
            Ok(k.clamp(1, n - 1))
        }
    }
}

/// The integer cross-edge count maximizing `g(n,k,·)` on `0..=k(n−k)`.
fn case_optimal_m(n: usize, k: usize) -> Result<usize> {
    let max = k * (n - k);
    if split_case(n, k) == SplitCase::Low {
        return Ok(max);
    }
    let star = (n - k) * (n + k - 1) / 4;
    let mut best = (0, int(-1));
    for m in [star, star + 1] {
        let m = m.min(max);
        let v = g_bound(n, k, m)?;
        if v > best.1 {
            best = (m, v);
        }
    }
    Ok(best.0)
}

fn gap_row(family: GapFamily, n: usize) -> Result<GapRow> {
    let n2 = (n * n) as f64;
    match family {
        GapFamily::CompleteBipartiteAlpha1 => {
            let (a, mo) = best_complete_bipartite(n);
            let bound = sqrt3_over_18() * (n as f64).powi(3);
            let gap = bound - mo as f64;
            Ok(GapRow {
                n,
                part: a,
                m: None,
                bound,
                bound_exact: None,
                mostar: mo as u64,
                gap,
                gap_over_n2: gap / n2,
            })
        }
        GapFamily::ExtremalSplit { k: policy } => {
            let k = pick_k(n, policy)?;
            let m = case_optimal_m(n, k)?;
            let (_, g) = extremal_split(n, k, m)?;
            let bound = theorem2_piecewise(n, k)?.value;
            let mo = mostar_index(&g);
            let gap = &bound - int(mo as i64);
            Ok(GapRow {
                n,
                part: k,
                m: Some(m),
                bound: to_f64(&bound),
                bound_exact: Some(bound),
                mostar: mo,
                gap: to_f64(&gap),
                gap_over_n2: to_f64(&gap) / n2,
            })
        }
    }
}

/// One row per order in `orders`, computed in parallel.
pub fn sharpness_gap(family: GapFamily, orders: impl IntoIterator<Item = usize>) -> Result<GapTable> {
    let orders: Vec<usize> = orders.into_iter().collect();
    if let Some(&n) = orders.iter().find(|&&n| n < 3) {
        return Err(Error::Degenerate { n, k: 0 });
    }
    let rows: Vec<GapRow> = orders
        .par_iter()
        .map(|&n| gap_row(family, n))
        .collect::<Result<_>>()?;
    let all_nonnegative = rows.iter().all(|r| match &r.bound_exact {
        Some(b) => *b >= int(r.mostar as i64),
        None => r.gap >= 0.0,
    });
    Ok(GapTable {
        family: family.name(),
        max_gap_over_n2: rows.iter().map(|r| r.gap_over_n2).fold(f64::MIN, f64::max),
        all_nonnegative,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_small() {
        let scan = conjecture19_scan(10);
        let row6 = scan.rows.iter().find(|r| r.n == 6).unwrap();
        assert_eq!((row6.mo_third, row6.best_a, row6.mo_best), (16, 1, 20));
        assert!(row6.flagged);
        assert!(!scan.rows[0].flagged);
        assert_eq!(scan.rows[0].n, 3);
    }

    #[test]
    fn gap_rows_small() {
        let t = sharpness_gap(GapFamily::CompleteBipartiteAlpha1, [6]).unwrap();
        let r = &t.rows[0];
        assert_eq!((r.part, r.mostar), (1, 20));
        assert!((r.bound - 20.7846).abs() < 1e-3);
        assert!((r.gap - 0.7846).abs() < 1e-3);

        // extremal split with S_{2,4}: g(6,2,8) = Mo = 24
        let (_, g) = extremal_split(6, 2, 8).unwrap();
        assert_eq!(g_bound(6, 2, 8).unwrap(), int(mostar_index(&g) as i64));
    }

    #[test]
    fn case_optimal_choice() {
        // n = 6, k = 2 is high case with m* = 7
        assert_eq!(case_optimal_m(6, 2).unwrap(), 7);
        // n = 10, k = 2 is low case: all cross edges
        assert_eq!(case_optimal_m(10, 2).unwrap(), 16);
    }
}
