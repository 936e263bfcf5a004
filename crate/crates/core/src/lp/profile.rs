//! Degree profiles of bipartite graphs and the per-edge relaxation of the
//! Mostar index.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bipartition, validate_bipartition, Bipartition, Graph};
use crate::lp::program::{build_primal, PrimalLayout};
use crate::rational::{int, Rational};

/// Degree statistics of a bipartite graph with sides `V1` (`k` vertices) and
/// `V2` (`n - k` vertices), stored as raw counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub n: usize,
    pub k: usize,
    /// degree i -> number of V1 vertices of degree i
    pub x: BTreeMap<usize, usize>,
    /// degree j -> number of V2 vertices of degree j
    pub y: BTreeMap<usize, usize>,
    /// (i, j) -> number of edges between a degree-i V1 vertex and a degree-j V2 vertex
    pub m: BTreeMap<(usize, usize), usize>,
}

impl DegreeProfile {
    /// Checks the counting identities every graph-derived profile satisfies.
    pub fn check(&self) -> Result<()> {
        let (n, k) = (self.n, self.k);
        let fail = |msg: String| Err(Error::InfeasibleProfile(msg));
        if k > n {
            return fail(format!("side size {k} exceeds order {n}"));
        }
        if self.x.values().sum::<usize>() != k {
            return fail("V1 degree counts do not sum to k".into());
        }
        if self.y.values().sum::<usize>() != n - k {
            return fail("V2 degree counts do not sum to n - k".into());
        }
        if let Some(i) = self.x.keys().find(|&&i| i > n - k) {
            return fail(format!("V1 degree {i} exceeds n - k"));
        }
        if let Some(j) = self.y.keys().find(|&&j| j > k) {
            return fail(format!("V2 degree {j} exceeds k"));
        }
        let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
        let mut cols: BTreeMap<usize, usize> = BTreeMap::new();
        for (&(i, j), &c) in &self.m {
            *rows.entry(i).or_default() += c;
            *cols.entry(j).or_default() += c;
        }
        for i in self.x.keys().chain(rows.keys()) {
            let lhs = rows.get(i).copied().unwrap_or(0);
            let rhs = i * self.x.get(i).copied().unwrap_or(0);
            if lhs != rhs {
                return fail(format!("row {i}: {lhs} edges but {rhs} expected"));
            }
        }
        for j in self.y.keys().chain(cols.keys()) {
            let lhs = cols.get(j).copied().unwrap_or(0);
            let rhs = j * self.y.get(j).copied().unwrap_or(0);
            if lhs != rhs {
                return fail(format!("column {j}: {lhs} edges but {rhs} expected"));
            }
        }
        Ok(())
    }
}

pub fn degree_profile(g: &Graph, partition: &Bipartition) -> Result<DegreeProfile> {
    validate_bipartition(g, partition)?;
    let (a, b) = partition;
    let mut in_a = vec![false; g.order()];
    for &v in a {
        in_a[v] = true;
    }
    let mut x = BTreeMap::new();
    let mut y = BTreeMap::new();
    for &v in a {
        *x.entry(g.degree(v)).or_default() += 1;
    }
    for &v in b {
        *y.entry(g.degree(v)).or_default() += 1;
    }
    let mut m = BTreeMap::new();
    for &(u, v) in g.edges() {
        let (s, t) = if in_a[u] { (u, v) } else { (v, u) };
        *m.entry((g.degree(s), g.degree(t))).or_default() += 1;
    }
    Ok(DegreeProfile {
        n: g.order(),
        k: a.len(),
        x,
        y,
        m,
    })
}

/// Σ over edges of `n - 2 min{d(u), d(v)}`, an upper bound on Mo(G) for
/// bipartite `G`. Uses the greedy coloring when no partition is given.
pub fn relaxation_bound(g: &Graph, partition: Option<&Bipartition>) -> Result<Rational> {
    // the value is partition independent, but an invalid override is still an error
    bipartition(g, partition)?.ok_or(Error::NotBipartite)?;
    let n = g.order() as i64;
    let total: i64 = g
        .edges()
        .iter()
        .map(|&(u, v)| n - 2 * g.degree(u).min(g.degree(v)) as i64)
        .sum();
    Ok(int(total))
}

/// A profile normalized into a point of the primal program.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimalPoint {
    pub values: Vec<Rational>,
    pub objective: Rational,
    /// largest absolute equality residual; zero for every graph profile
    pub max_residual: Rational,
    pub feasible: bool,
}

pub fn profile_to_point(p: &DegreeProfile) -> Result<PrimalPoint> {
    p.check()?;
    let (n, k) = (p.n, p.k);
    let lp = build_primal(n, k)?;
    let layout = PrimalLayout::new(n, k);
    let mut values = vec![Rational::zero(); layout.len()];
    let kk = int(k as i64);
    let rest = int((n - k) as i64);
    for (&i, &c) in &p.x {
        values[layout.x(i)] = int(c as i64) / &kk;
    }
    for (&j, &c) in &p.y {
        values[layout.y(j)] = int(c as i64) / &rest;
    }
    let denom = &kk * &rest;
    for (&(i, j), &c) in &p.m {
        values[layout.m(i, j)] = int(c as i64) / &denom;
    }
    let max_residual = lp
        .residuals(&values)
        .into_iter()
        .map(|r| if r < Rational::zero() { -r } else { r })
        .max()
        .unwrap_or_else(Rational::zero);
    let feasible = max_residual.is_zero() && values.iter().all(|v| *v >= Rational::zero());
    if !feasible {
        return Err(Error::InfeasibleProfile(format!(
            "normalized point violates the primal constraints (residual {max_residual})"
        )));
    }
    Ok(PrimalPoint {
        objective: lp.objective_value(&values),
        values,
        max_residual,
        feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::complete_bipartite;
    use crate::rational::ratio;

    fn sides(a: usize, n: usize) -> Bipartition {
        ((0..a).collect(), (a..n).collect())
    }

    #[test]
    fn profiles() {
        let p = degree_profile(&complete_bipartite(2, 4), &sides(2, 6)).unwrap();
        assert_eq!(p.x, BTreeMap::from([(4, 2)]));
        assert_eq!(p.y, BTreeMap::from([(2, 4)]));
        assert_eq!(p.m, BTreeMap::from([((4, 2), 8)]));

        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let p = degree_profile(&p3, &(vec![0, 2], vec![1])).unwrap();
        assert_eq!(p.x, BTreeMap::from([(1, 2)]));
        assert_eq!(p.y, BTreeMap::from([(2, 1)]));
        assert_eq!(p.m, BTreeMap::from([((1, 2), 2)]));

        let p = degree_profile(&Graph::empty(3), &sides(1, 3)).unwrap();
        assert_eq!(p.x, BTreeMap::from([(0, 1)]));
        assert_eq!(p.y, BTreeMap::from([(0, 2)]));
        assert!(p.m.is_empty());

        assert!(degree_profile(&p3, &(vec![0, 1], vec![2])).is_err());
    }

    #[test]
    fn relaxation_examples() {
        assert_eq!(relaxation_bound(&complete_bipartite(2, 4), None).unwrap(), int(16));
        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(relaxation_bound(&p3, None).unwrap(), int(2));
        assert_eq!(relaxation_bound(&complete_bipartite(1, 5), None).unwrap(), int(20));
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(relaxation_bound(&k3, None), Err(Error::NotBipartite));
    }

    #[test]
    fn normalized_points() {
        let p = degree_profile(&complete_bipartite(2, 4), &sides(2, 6)).unwrap();
        let pt = profile_to_point(&p).unwrap();
        let layout = PrimalLayout::new(6, 2);
        assert_eq!(pt.values[layout.m(4, 2)], int(1));
        assert_eq!(pt.objective, ratio(1, 3));
        assert_eq!(int(2 * 4 * 6) * &pt.objective, int(16));

        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let p = degree_profile(&p3, &(vec![1], vec![0, 2])).unwrap();
        assert_eq!(profile_to_point(&p).unwrap().objective, ratio(1, 3));

        let p = degree_profile(&Graph::empty(4), &sides(2, 4)).unwrap();
        assert_eq!(profile_to_point(&p).unwrap().objective, int(0));
    }

    #[test]
    fn tampered_profile_rejected() {
        let mut p = degree_profile(&complete_bipartite(2, 4), &sides(2, 6)).unwrap();
        p.m.insert((4, 2), 7);
        assert!(matches!(profile_to_point(&p), Err(Error::InfeasibleProfile(_))));
    }
}
