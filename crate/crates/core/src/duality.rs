//! Dual certificates for the bipartite Mostar bound.
//!
//! A pair `(p, q)` feasible for the two-variable nonlinear program lifts to
//! a feasible solution of the dual of the degree-profile LP via
//! `p_0 = q_0 = 1`, `p_i = (n−k)p/i`, `q_j = kq/j`. Weak duality then bounds
//! every bipartite graph with sides `k ≤ n − k` by `k(n−k)n·(p+q)`.
//!
//! The explicit pairs are rational, so certificates and bounds are checked
//! exactly. Floating point only enters through the square roots of the
//! nonlinear constraints and the margin functions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, ratio, to_f64, Rational};

/// (1 − 1/√3)/2, the maximizer of α(1−α)(1−2α) on [0, 1/2].
pub fn alpha1() -> f64 {
    0.5 * (1.0 - 1.0 / 3f64.sqrt())
}

/// (5 − √17)/4, the root of 2α² − 5α + 1 in [0, 1/2].
pub fn alpha2() -> f64 {
    (5.0 - 17f64.sqrt()) / 4.0
}

/// √3/18 = α₁(1−α₁)(1−2α₁).
pub fn sqrt3_over_18() -> f64 {
    3f64.sqrt() / 18.0
}

/// 0.42, the slope of `p` in the high-α pair.
pub fn high_p_slope() -> Rational {
    ratio(42, 100)
}

/// 0.09622, the value of α(1−α)(p+q) in the high-α pair.
pub fn high_level() -> Rational {
    ratio(9622, 100_000)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    LowAlpha,
    HighAlpha,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualPair {
    #[serde(serialize_with = "crate::rational::serialize")]
    pub p: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub q: Rational,
    pub case: CaseTag,
}

impl DualPair {
    pub fn sum(&self) -> Rational {
        &self.p + &self.q
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.p), to_f64(&self.q))
    }
}

/// Infimum of `β/x + γx` over `(0, δ]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperbolaMin {
    pub value: f64,
    /// `None` when the infimum is not attained (β = 0)
    pub argmin: Option<f64>,
}

pub fn min_affine_hyperbola(beta: f64, gamma: f64, delta: f64) -> Result<HyperbolaMin> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::InvalidHyperbola(format!("beta = {beta} must be >= 0")));
    }
    if !(gamma > 0.0 && delta > 0.0) {
        return Err(Error::InvalidHyperbola(format!(
            "gamma = {gamma} and delta = {delta} must be > 0"
        )));
    }
    if beta == 0.0 {
        return Ok(HyperbolaMin {
            value: 0.0,
            argmin: None,
        });
    }
    let turn = (beta / gamma).sqrt();
    Ok(if delta >= turn {
        HyperbolaMin {
            value: 2.0 * (beta * gamma).sqrt(),
            argmin: Some(turn),
        }
    } else {
        HyperbolaMin {
            value: beta / delta + gamma * delta,
            argmin: Some(delta),
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DPrimeConstraint {
    /// p + q ≥ 1 − 2α
    SumFloor,
    /// p + 2√(2qα) ≥ 1, active when q < 2α
    QBranch,
    /// 2√(2p(1−α)) + q ≥ 1, active when p < 2α²/(1−α)
    PBranch,
    NonNegative,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DPrimeReport {
    pub feasible: bool,
    pub violated: Vec<DPrimeConstraint>,
    /// slack of each checked constraint, inactive branches omitted
    pub slacks: Vec<(DPrimeConstraint, f64)>,
}

pub fn dprime_feasible(p: f64, q: f64, alpha: f64, tol: f64) -> Result<DPrimeReport> {
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let mut slacks = vec![
        (DPrimeConstraint::NonNegative, p.min(q)),
        (DPrimeConstraint::SumFloor, p + q - (1.0 - 2.0 * alpha)),
    ];
    if q < 2.0 * alpha {
        slacks.push((
            DPrimeConstraint::QBranch,
            p + 2.0 * (2.0 * q.max(0.0) * alpha).sqrt() - 1.0,
        ));
    }
    if p < 2.0 * alpha * alpha / (1.0 - alpha) {
        slacks.push((
            DPrimeConstraint::PBranch,
            2.0 * (2.0 * p.max(0.0) * (1.0 - alpha)).sqrt() + q - 1.0,
        ));
    }
    let violated: Vec<_> = slacks
        .iter()
        .filter(|(_, s)| *s < -tol)
        .map(|(c, _)| *c)
        .collect();
    Ok(DPrimeReport {
        feasible: violated.is_empty(),
        violated,
        slacks,
    })
}

/// The explicit pair for a rational side ratio `alpha ∈ (0, 1/2]`.
///
/// Low case (2α² − 5α + 1 ≥ 0): p = 2α²/(1−α), q = 1 − 2α − p.
/// High case: p = 0.42α, q = 0.09622/(α(1−α)) − p.
pub fn claim2_pair(alpha: &Rational) -> DualPair {
    let one = Rational::one();
    let two = int(2);
    let disc = &two * alpha * alpha - int(5) * alpha + &one;
    if !disc.is_negative() {
        let p = &two * alpha * alpha / (&one - alpha);
        let q = &one - &two * alpha - &p;
        DualPair {
            p,
            q,
            case: CaseTag::LowAlpha,
        }
    } else {
        let p = high_p_slope() * alpha;
        let q = high_level() / (alpha * (&one - alpha)) - &p;
        DualPair {
            p,
            q,
            case: CaseTag::HighAlpha,
        }
    }
}

pub fn claim2_solution(n: usize, k: usize) -> Result<DualPair> {
    check_sides(n, k)?;
    Ok(claim2_pair(&ratio(k as i64, n as i64)))
}

fn check_sides(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::Degenerate { n, k });
    }
    if 2 * k > n {
        return Err(Error::AlphaAboveHalf { n, k });
    }
    Ok(())
}

/// A full solution of the dual LP for sides `k`, `n − k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    pub n: usize,
    pub k: usize,
    pub p: Rational,
    pub q: Rational,
    /// p_0 ..= p_{n−k}
    pub p_vec: Vec<Rational>,
    /// q_0 ..= q_k
    pub q_vec: Vec<Rational>,
}

pub fn lift_certificate(pair: &DualPair, n: usize, k: usize) -> DualCertificate {
    let rest = int((n - k) as i64);
    let kk = int(k as i64);
    let p_vec = (0..=n - k)
        .map(|i| {
            if i == 0 {
                Rational::one()
            } else {
                &rest * &pair.p / int(i as i64)
            }
        })
        .collect();
    let q_vec = (0..=k)
        .map(|j| {
            if j == 0 {
                Rational::one()
            } else {
                &kk * &pair.q / int(j as i64)
            }
        })
        .collect();
    DualCertificate {
        n,
        k,
        p: pair.p.clone(),
        q: pair.q.clone(),
        p_vec,
        q_vec,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DualConstraint {
    /// p_i + q_j ≥ 1 − 2 min{i,j}/n
    Pair { i: usize, j: usize },
    /// p ≥ i p_i/(n−k)
    PRow { i: usize },
    /// q ≥ j q_j / k
    QCol { j: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualFeasibility {
    pub feasible: bool,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub worst_slack: Rational,
    pub worst_at: DualConstraint,
    pub violations: usize,
}

/// Checks every constraint of the dual LP exactly; a constraint counts as
/// violated when its slack is below `−tol`.
pub fn dual_feasible(cert: &DualCertificate, tol: f64) -> DualFeasibility {
    let (n, k) = (cert.n, cert.k);
    let tol = Rational::from_float(tol.max(0.0)).unwrap_or_else(Rational::zero);
    let neg_tol = -tol;
    let nn = int(n as i64);
    let rest = int((n - k) as i64);
    let kk = int(k as i64);

    type Acc = (Rational, DualConstraint, usize);
    let better = |a: Acc, b: Acc| -> Acc {
        let count = a.2 + b.2;
        if b.0 < a.0 {
            (b.0, b.1, count)
        } else {
            (a.0, a.1, count)
        }
    };
    let start = || -> Acc { (int(BigInt::from(i64::MAX)), DualConstraint::PRow { i: 0 }, 0) };

    let pairs = (0..=n - k)
        .into_par_iter()
        .map(|i| {
            let mut acc = start();
            for j in 0..=k {
                let rhs = Rational::one() - int(2 * i.min(j) as i64) / &nn;
                let slack = &cert.p_vec[i] + &cert.q_vec[j] - rhs;
                let bad = usize::from(slack < neg_tol);
                acc = better(acc, (slack, DualConstraint::Pair { i, j }, bad));
            }
            acc
        })
        .reduce(start, better);

    let mut acc = pairs;
    for (i, pi) in cert.p_vec.iter().enumerate() {
        let slack = &cert.p - int(i as i64) * pi / &rest;
        let bad = usize::from(slack < neg_tol);
        acc = better(acc, (slack, DualConstraint::PRow { i }, bad));
    }
    for (j, qj) in cert.q_vec.iter().enumerate() {
        let slack = &cert.q - int(j as i64) * qj / &kk;
        let bad = usize::from(slack < neg_tol);
        acc = better(acc, (slack, DualConstraint::QCol { j }, bad));
    }
    DualFeasibility {
        feasible: acc.2 == 0,
        worst_slack: acc.0,
        worst_at: acc.1,
        violations: acc.2,
    }
}

/// `k(n−k)n·(p+q)` for the explicit pair at α = k/n: an upper bound on the
/// Mostar index of every bipartite graph with sides `k ≤ n − k`.
pub fn certified_bound(n: usize, k: usize) -> Result<Rational> {
    let pair = claim2_solution(n, k)?;
    Ok(int((k * (n - k) * n) as i64) * pair.sum())
}

/// Exact test of `mo ≤ (√3/18)n³`, i.e. `108·mo² ≤ n⁶`.
pub fn theorem1_check(mo: u64, n: usize) -> bool {
    let mo = BigInt::from(mo);
    let n = BigInt::from(n);
    BigInt::from(108) * &mo * &mo <= n.pow(6)
}

/// The high-case pair as floats, for margin evaluation on a real grid.
pub fn high_pair_f64(alpha: f64) -> (f64, f64) {
    let p = 0.42 * alpha;
    (p, 0.09622 / (alpha * (1.0 - alpha)) - p)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MarginMin {
    pub min: f64,
    pub argmin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginReport {
    pub grid_points: usize,
    pub q: MarginMin,
    pub f1: MarginMin,
    pub f2: MarginMin,
    pub f3: MarginMin,
    pub q_nonincreasing: bool,
    pub f1_nondecreasing: bool,
    pub f2_nondecreasing: bool,
    pub f3_nonincreasing: bool,
}

impl MarginReport {
    pub fn all_positive(&self) -> bool {
        [self.q, self.f1, self.f2, self.f3].iter().all(|m| m.min > 0.0)
    }
}

/// The four margin functions of the high-case pair at `alpha`:
/// `q`, `p + q − (1 − 2α)`, `p + 2√(2qα) − 1`, `2√(2p(1−α)) + q − 1`.
pub fn margin_values(alpha: f64) -> [f64; 4] {
    let (p, q) = high_pair_f64(alpha);
    [
        q,
        p + q - (1.0 - 2.0 * alpha),
        p + 2.0 * (2.0 * q * alpha).sqrt() - 1.0,
        2.0 * (2.0 * p * (1.0 - alpha)).sqrt() + q - 1.0,
    ]
}

/// Evaluates the margins on a uniform grid over `[α₂, 1/2]`.
pub fn claim2_margins(grid_points: usize) -> MarginReport {
    assert!(grid_points >= 2, "need at least two grid points");
    let (lo, hi) = (alpha2(), 0.5);
    let step = (hi - lo) / (grid_points - 1) as f64;
    let grid: Vec<f64> = (0..grid_points)
        .map(|t| if t + 1 == grid_points { hi } else { lo + step * t as f64 })
        .collect();
    let values: Vec<[f64; 4]> = grid.iter().map(|&a| margin_values(a)).collect();

    let min_of = |idx: usize| {
        let (t, v) = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1[idx].total_cmp(&b.1[idx]))
            .unwrap();
        MarginMin {
            min: v[idx],
            argmin: grid[t],
        }
    };
    let monotone = |idx: usize, up: bool| {
        values.windows(2).all(|w| {
            if up {
                w[1][idx] >= w[0][idx]
            } else {
                w[1][idx] <= w[0][idx]
            }
        })
    };
    MarginReport {
        grid_points,
        q: min_of(0),
        f1: min_of(1),
        f2: min_of(2),
        f3: min_of(3),
        q_nonincreasing: monotone(0, false),
        f1_nondecreasing: monotone(1, true),
        f2_nondecreasing: monotone(2, true),
        f3_nonincreasing: monotone(3, false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbola_examples() {
        let m = min_affine_hyperbola(2.0, 2.0, 3.0).unwrap();
        assert_eq!((m.value, m.argmin), (4.0, Some(1.0)));
        let m = min_affine_hyperbola(2.0, 2.0, 0.5).unwrap();
        assert_eq!((m.value, m.argmin), (5.0, Some(0.5)));
        let m = min_affine_hyperbola(0.0, 1.0, 1.0).unwrap();
        assert_eq!((m.value, m.argmin), (0.0, None));
        assert!(min_affine_hyperbola(1.0, 0.0, 1.0).is_err());
        assert!(min_affine_hyperbola(1.0, 1.0, -1.0).is_err());
        assert!(min_affine_hyperbola(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn dprime_examples() {
        let r = dprime_feasible(0.21, 0.17488, 0.5, 1e-9).unwrap();
        assert!(r.feasible);
        let q_branch = r
            .slacks
            .iter()
            .find(|(c, _)| *c == DPrimeConstraint::QBranch)
            .unwrap()
            .1;
        assert!((q_branch + 1.0 - 1.0464).abs() < 1e-4, "{q_branch}");

        // low-case shape: both conditional constraints vacuous
        let alpha = 0.1;
        let p = 2.0 * alpha * alpha / (1.0 - alpha);
        let r = dprime_feasible(p, 1.0 - 2.0 * alpha - p, alpha, 1e-12).unwrap();
        assert!(r.feasible);
        assert_eq!(r.slacks.len(), 2);

        let r = dprime_feasible(0.0, 0.0, 0.25, 1e-9).unwrap();
        assert!(!r.feasible);
        assert!(r.violated.contains(&DPrimeConstraint::SumFloor));

        assert!(dprime_feasible(0.1, 0.1, 0.6, 0.0).is_err());
        assert!(dprime_feasible(0.1, 0.1, 0.0, 0.0).is_err());
    }

    #[test]
    fn claim2_examples() {
        let pair = claim2_solution(6, 1).unwrap();
        assert_eq!(pair.case, CaseTag::LowAlpha);
        assert_eq!(pair.p, ratio(1, 15));
        assert_eq!(pair.q, ratio(3, 5));
        assert_eq!(pair.sum(), ratio(2, 3));

        let pair = claim2_solution(2, 1).unwrap();
        assert_eq!(pair.case, CaseTag::HighAlpha);
        assert_eq!(pair.p, ratio(21, 100));
        assert_eq!(pair.q, ratio(17488, 100_000));

        assert_eq!(claim2_solution(6, 4), Err(Error::AlphaAboveHalf { n: 6, k: 4 }));
        assert_eq!(claim2_solution(6, 0), Err(Error::Degenerate { n: 6, k: 0 }));
    }

    #[test]
    fn low_case_at_threshold_has_q_equal_two_alpha() {
        // 2α² − 5α + 1 = 0 gives q = 1 − 2α − 2α²/(1−α) = 2α
        let a = alpha2();
        assert!((2.0 * a * a - 5.0 * a + 1.0).abs() < 1e-12);
        let p = 2.0 * a * a / (1.0 - a);
        assert!((1.0 - 2.0 * a - p - 2.0 * a).abs() < 1e-12);
        // rational side ratios never hit the irrational threshold; the nearest
        // ones fall on the expected sides
        assert_eq!(claim2_pair(&ratio(21, 100)).case, CaseTag::LowAlpha);
        assert_eq!(claim2_pair(&ratio(22, 100)).case, CaseTag::HighAlpha);
    }

    #[test]
    fn lifting_examples() {
        let pair = DualPair {
            p: ratio(21, 100),
            q: ratio(17488, 100_000),
            case: CaseTag::HighAlpha,
        };
        let cert = lift_certificate(&pair, 6, 3);
        assert_eq!(cert.p_vec[0], int(1));
        assert_eq!(cert.q_vec[0], int(1));
        assert_eq!(cert.p_vec[1], ratio(63, 100));
        assert_eq!(cert.p_vec[3], ratio(21, 100));
        assert_eq!(cert.q_vec[1], int(3) * ratio(17488, 100_000));

        let cert = lift_certificate(&claim2_solution(6, 1).unwrap(), 6, 1);
        assert_eq!(cert.p_vec[5], cert.p);
        let cert = lift_certificate(&claim2_solution(6, 1).unwrap(), 6, 1);
        assert_eq!(cert.q_vec.len(), 2);
        let cert2 = lift_certificate(&claim2_solution(6, 2).unwrap(), 6, 2);
        assert_eq!(cert2.q_vec[2], cert2.q);
    }

    #[test]
    fn dual_feasibility_examples() {
        let cert = lift_certificate(&claim2_solution(6, 1).unwrap(), 6, 1);
        let rep = dual_feasible(&cert, 0.0);
        assert!(rep.feasible, "{rep:?}");
        assert!(!rep.worst_slack.is_negative());

        let cert = lift_certificate(&claim2_solution(2, 1).unwrap(), 2, 1);
        assert!(dual_feasible(&cert, 1e-9).feasible);

        let mut bad = lift_certificate(&claim2_solution(6, 1).unwrap(), 6, 1);
        bad.p_vec[0] = int(0);
        bad.q_vec[0] = ratio(1, 2);
        let rep = dual_feasible(&bad, 0.0);
        assert!(!rep.feasible);
        assert_eq!(rep.worst_at, DualConstraint::Pair { i: 0, j: 0 });
        assert_eq!(rep.worst_slack, ratio(-1, 2));
    }

    #[test]
    fn certified_bound_examples() {
        assert_eq!(certified_bound(6, 1).unwrap(), int(20));
        assert_eq!(certified_bound(2, 1).unwrap(), ratio(76976, 100_000));
        assert!(certified_bound(6, 4).is_err());
    }

    #[test]
    fn theorem1_examples() {
        assert!(theorem1_check(20, 6));
        assert!(theorem1_check(0, 9));
        assert!(!theorem1_check(21, 6));
    }

    #[test]
    fn margins_small_grid() {
        let r = claim2_margins(101);
        assert!(r.all_positive());
        assert!((r.q.min - 0.17488).abs() < 1e-9);
        assert_eq!(r.q.argmin, 0.5);
        assert!(r.f1_nondecreasing && r.f2_nondecreasing && r.f3_nonincreasing);
    }
}
