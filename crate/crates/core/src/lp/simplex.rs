//! Two-phase dense-tableau simplex over exact rationals with Bland's rule.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::lp::program::{LinearProgram, Sense};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SimplexStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexResult {
    pub status: SimplexStatus,
    pub value: Option<Rational>,
    pub point: Option<Vec<Rational>>,
    pub pivots: usize,
}

impl SimplexResult {
    /// Re-checks an optimal result against the program: exact feasibility
    /// and an independently recomputed objective.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        match (&self.status, &self.value, &self.point) {
            (SimplexStatus::Optimal, Some(v), Some(x)) => {
                lp.is_feasible(x) && lp.objective_value(x) == *v
            }
            (SimplexStatus::Optimal, _, _) => false,
            _ => true,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Maximizes `cost · x` over the columns marked in `allowed`.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> Outcome {
        loop {
            let mut in_basis = vec![false; self.width];
            for &c in &self.basis {
                in_basis[c] = true;
            }
            // Bland: lowest-index column with positive reduced cost
            let entering = (0..self.width).find(|&j| {
                if !allowed[j] || in_basis[j] {
                    return false;
                }
                let mut d = cost[j].clone();
                for (row, &bc) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[bc].is_zero() {
                        d -= &cost[bc] * &row[j];
                    }
                }
                d.is_positive()
            });
            let Some(c) = entering else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let coef = &self.rows[r][c];
                if !coef.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / coef;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Outcome::Unbounded,
            }
        }
    }
}

pub fn solve_simplex(lp: &LinearProgram) -> Result<SimplexResult> {
    lp.validate()?;
    let nv = lp.num_vars();

    // standard-form columns: each free variable becomes a difference of two
    let mut columns: Vec<(usize, bool)> = Vec::new();
    for v in 0..nv {
        columns.push((v, true));
        if !lp.nonneg[v] {
            columns.push((v, false));
        }
    }
    let ns = columns.len();
    let m = lp.num_constraints();
    let width = ns + m;

    let mut rows = Vec::with_capacity(m);
    for (r, (row, rhs)) in lp.a.iter().zip(&lp.b).enumerate() {
        let flip = rhs.is_negative();
        let mut t = vec![Rational::zero(); width + 1];
        for (s, &(v, pos)) in columns.iter().enumerate() {
            let mut c = row[v].clone();
            if !pos {
                c = -c;
            }
            t[s] = if flip { -c } else { c };
        }
        t[ns + r] = Rational::one();
        t[width] = if flip { -rhs.clone() } else { rhs.clone() };
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        basis: (ns..width).collect(),
        width,
        pivots: 0,
    };

    // phase 1: maximize minus the sum of artificials
    let mut cost1 = vec![Rational::zero(); width];
    for c in cost1.iter_mut().skip(ns) {
        *c = -Rational::one();
    }
    let all = vec![true; width];
    tab.optimize(&cost1, &all);
    let infeasibility: Rational = (0..tab.rows.len())
        .filter(|&r| tab.basis[r] >= ns)
        .map(|r| tab.rhs(r).clone())
        .sum();
    if infeasibility.is_positive() {
        return Ok(SimplexResult {
            status: SimplexStatus::Infeasible,
            value: None,
            point: None,
            pivots: tab.pivots,
        });
    }

    // drive zero-level artificials out; drop rows that are redundant
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= ns {
            match (0..ns).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let sign = match lp.sense {
        Sense::Maximize => Rational::one(),
        Sense::Minimize => -Rational::one(),
    };
    let mut cost2 = vec![Rational::zero(); width];
    for (s, &(v, pos)) in columns.iter().enumerate() {
        let c = &lp.objective[v] * &sign;
        cost2[s] = if pos { c } else { -c };
    }
    let mut allowed = vec![true; width];
    for a in allowed.iter_mut().skip(ns) {
        *a = false;
    }
    if let Outcome::Unbounded = tab.optimize(&cost2, &allowed) {
        return Ok(SimplexResult {
            status: SimplexStatus::Unbounded,
            value: None,
            point: None,
            pivots: tab.pivots,
        });
    }

    let mut std_x = vec![Rational::zero(); width];
    for (r, &b) in tab.basis.iter().enumerate() {
        std_x[b] = tab.rhs(r).clone();
    }
    let mut x = vec![Rational::zero(); nv];
    for (s, &(v, pos)) in columns.iter().enumerate() {
        if pos {
            x[v] += &std_x[s];
        } else {
            x[v] -= &std_x[s];
        }
    }
    let value = lp.objective_value(&x);
    Ok(SimplexResult {
        status: SimplexStatus::Optimal,
        value: Some(value),
        point: Some(x),
        pivots: tab.pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn lp(
        sense: Sense,
        objective: Vec<Rational>,
        a: Vec<Vec<Rational>>,
        b: Vec<Rational>,
        nonneg: Vec<bool>,
    ) -> LinearProgram {
        LinearProgram {
            sense,
            names: (0..objective.len()).map(|i| format!("v{i}")).collect(),
            objective,
            a,
            b,
            nonneg,
        }
    }

    #[test]
    fn textbook_instance() {
        let p = lp(
            Sense::Maximize,
            vec![int(1), int(0)],
            vec![vec![int(1), int(1)]],
            vec![int(1)],
            vec![true, true],
        );
        let res = solve_simplex(&p).unwrap();
        assert_eq!(res.status, SimplexStatus::Optimal);
        assert_eq!(res.value, Some(int(1)));
        assert_eq!(res.point, Some(vec![int(1), int(0)]));
        assert!(res.verify(&p));
    }

    #[test]
    fn slack_form_with_fractions() {
        // max 2a + 3b s.t. 2a + b + s1 = 18, 6a + 5b + s2 = 60, 2a + 5b + s3 = 40
        let z = || int(0);
        let p = lp(
            Sense::Maximize,
            vec![int(2), int(3), z(), z(), z()],
            vec![
                vec![int(2), int(1), int(1), z(), z()],
                vec![int(6), int(5), z(), int(1), z()],
                vec![int(2), int(5), z(), z(), int(1)],
            ],
            vec![int(18), int(60), int(40)],
            vec![true; 5],
        );
        let res = solve_simplex(&p).unwrap();
        assert_eq!(res.value, Some(int(28)));
        assert!(res.verify(&p));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = lp(
            Sense::Maximize,
            vec![int(1)],
            vec![vec![int(1)]],
            vec![int(-1)],
            vec![true],
        );
        assert_eq!(solve_simplex(&p).unwrap().status, SimplexStatus::Infeasible);

        let p = lp(
            Sense::Maximize,
            vec![int(1), int(0)],
            vec![vec![int(1), int(-1)]],
            vec![int(0)],
            vec![true, true],
        );
        assert_eq!(solve_simplex(&p).unwrap().status, SimplexStatus::Unbounded);
    }

    #[test]
    fn free_variables_and_minimize() {
        // min x s.t. x - y = -3/2, y nonneg, x free  => x = -3/2 at y = 0
        let p = lp(
            Sense::Minimize,
            vec![int(1), int(0)],
            vec![vec![int(1), int(-1)]],
            vec![ratio(-3, 2)],
            vec![false, true],
        );
        let res = solve_simplex(&p).unwrap();
        assert_eq!(res.value, Some(ratio(-3, 2)));
        assert!(res.verify(&p));
    }

    #[test]
    fn redundant_rows() {
        let p = lp(
            Sense::Maximize,
            vec![int(1), int(2)],
            vec![vec![int(1), int(1)], vec![int(2), int(2)]],
            vec![int(1), int(2)],
            vec![true, true],
        );
        let res = solve_simplex(&p).unwrap();
        assert_eq!(res.value, Some(int(2)));
        assert!(res.verify(&p));
    }
}
