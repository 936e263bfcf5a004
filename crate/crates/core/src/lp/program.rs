//! Equality-form linear programs over exact rationals, and the primal
//! degree-profile program for a bipartite graph class with sides `k`, `n - k`.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, parse_fraction, ratio, to_fraction_string, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

/// optimize `objective · x` subject to `a x = b`, with `x_v >= 0` where
/// `nonneg[v]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub names: Vec<String>,
    pub objective: Vec<Rational>,
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub nonneg: Vec<bool>,
}

impl LinearProgram {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.a.len()
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.num_vars();
        if self.names.len() != nv || self.nonneg.len() != nv {
            return Err(Error::MalformedLp("variable metadata length mismatch".into()));
        }
        if self.b.len() != self.a.len() {
            return Err(Error::MalformedLp("right-hand side length mismatch".into()));
        }
        if let Some(r) = self.a.iter().position(|row| row.len() != nv) {
            return Err(Error::MalformedLp(format!("constraint {r} has wrong width")));
        }
        Ok(())
    }

    /// `a x - b`, one entry per constraint.
    pub fn residuals(&self, x: &[Rational]) -> Vec<Rational> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, rhs)| dot(row, x) - rhs)
            .collect()
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self.residuals(x).iter().all(Zero::is_zero)
            && x.iter().zip(&self.nonneg).all(|(v, &nn)| !nn || *v >= Rational::zero())
    }

    /// Debug text format, one line per item:
    ///
    /// ```text
    /// max 1/1 0/1 ...
    /// var x_0 nonneg
    /// con 1/1 -1/2 ... = 0/1
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let sense = match self.sense {
            Sense::Maximize => "max",
            Sense::Minimize => "min",
        };
        let _ = writeln!(out, "{sense} {}", join(&self.objective));
        for (name, &nn) in self.names.iter().zip(&self.nonneg) {
            let _ = writeln!(out, "var {name} {}", if nn { "nonneg" } else { "free" });
        }
        for (row, rhs) in self.a.iter().zip(&self.b) {
            let _ = writeln!(out, "con {} = {}", join(row), to_fraction_string(rhs));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let perr = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let parse_row = |line: usize, s: &str| -> Result<Vec<Rational>> {
            s.split_whitespace()
                .map(|t| parse_fraction(t).ok_or_else(|| perr(line, &format!("bad rational `{t}`"))))
                .collect()
        };
        let mut lp = LinearProgram {
            sense: Sense::Maximize,
            names: vec![],
            objective: vec![],
            a: vec![],
            b: vec![],
            nonneg: vec![],
        };
        let mut seen_sense = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() {
                continue;
            }
            let (head, rest) = body.split_once(' ').unwrap_or((body, ""));
            match head {
                "max" | "min" => {
                    lp.sense = if head == "max" { Sense::Maximize } else { Sense::Minimize };
                    lp.objective = parse_row(line, rest)?;
                    seen_sense = true;
                }
                "var" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    match toks.as_slice() {
                        [name, "nonneg"] => {
                            lp.names.push(name.to_string());
                            lp.nonneg.push(true);
                        }
                        [name, "free"] => {
                            lp.names.push(name.to_string());
                            lp.nonneg.push(false);
                        }
                        _ => return Err(perr(line, "expected `var <name> nonneg|free`")),
                    }
                }
                "con" => {
                    let (lhs, rhs) = rest
                        .split_once('=')
                        .ok_or_else(|| perr(line, "constraint without `=`"))?;
                    lp.a.push(parse_row(line, lhs)?);
                    lp.b.push(
                        parse_fraction(rhs).ok_or_else(|| perr(line, "bad right-hand side"))?,
                    );
                }
                _ => return Err(perr(line, &format!("unknown directive `{head}`"))),
            }
        }
        if !seen_sense {
            return Err(perr(1, "missing objective line"));
        }
        lp.validate()?;
        Ok(lp)
    }
}

fn dot(row: &[Rational], x: &[Rational]) -> Rational {
    row.iter()
        .zip(x)
        .filter(|(c, _)| !c.is_zero())
        .fold(Rational::zero(), |acc, (c, v)| acc + c * v)
}

fn join(row: &[Rational]) -> String {
    row.iter().map(to_fraction_string).collect::<Vec<_>>().join(" ")
}

/// Variable positions of the primal program: `x_0..x_{n-k}`, then
/// `y_0..y_k`, then `m_{i,j}` row-major over `i`, `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimalLayout {
    pub n: usize,
    pub k: usize,
}

impl PrimalLayout {
    pub fn new(n: usize, k: usize) -> Self {
        PrimalLayout { n, k }
    }

    /// |I| = n - k + 1
    pub fn rows(&self) -> usize {
        self.n - self.k + 1
    }

    /// |J| = k + 1
    pub fn cols(&self) -> usize {
        self.k + 1
    }

    pub fn x(&self, i: usize) -> usize {
        i
    }

    pub fn y(&self, j: usize) -> usize {
        self.rows() + j
    }

    pub fn m(&self, i: usize, j: usize) -> usize {
        self.rows() + self.cols() + i * self.cols() + j
    }

    pub fn len(&self) -> usize {
        self.rows() + self.cols() + self.rows() * self.cols()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The primal program over normalized degree profiles with `α = k/n`:
///
/// maximize Σ m_{i,j} (1 − 2 min{i,j}/n) subject to Σ x_i = 1, Σ y_j = 1,
/// Σ_j m_{i,j} − i x_i/(n−k) = 0 for each i, Σ_i m_{i,j} − j y_j/k = 0 for
/// each j, all variables nonnegative.
pub fn build_primal(n: usize, k: usize) -> Result<LinearProgram> {
    if k == 0 || k >= n {
        return Err(Error::Degenerate { n, k });
    }
    let layout = PrimalLayout::new(n, k);
    let (ni, nj, nv) = (layout.rows(), layout.cols(), layout.len());

    let mut names = Vec::with_capacity(nv);
    names.extend((0..ni).map(|i| format!("x_{i}")));
    names.extend((0..nj).map(|j| format!("y_{j}")));
    for i in 0..ni {
        names.extend((0..nj).map(|j| format!("m_{i}_{j}")));
    }

    let mut objective = vec![Rational::zero(); nv];
    for i in 0..ni {
        for j in 0..nj {
            objective[layout.m(i, j)] = Rational::one() - ratio(2 * i.min(j) as i64, n as i64);
        }
    }

    let mut a = Vec::new();
    let mut b = Vec::new();
    let blank = || vec![Rational::zero(); nv];

    let mut row = blank();
    for i in 0..ni {
        row[layout.x(i)] = Rational::one();
    }
    a.push(row);
    b.push(Rational::one());

    let mut row = blank();
    for j in 0..nj {
        row[layout.y(j)] = Rational::one();
    }
    a.push(row);
    b.push(Rational::one());

    for i in 0..ni {
        let mut row = blank();
        for j in 0..nj {
            row[layout.m(i, j)] = Rational::one();
        }
        row[layout.x(i)] = -ratio(i as i64, (n - k) as i64);
        a.push(row);
        b.push(Rational::zero());
    }
    for j in 0..nj {
        let mut row = blank();
        for i in 0..ni {
            row[layout.m(i, j)] = Rational::one();
        }
        row[layout.y(j)] = -ratio(j as i64, k as i64);
        a.push(row);
        b.push(Rational::zero());
    }

    Ok(LinearProgram {
        sense: Sense::Maximize,
        names,
        objective,
        a,
        b,
        nonneg: vec![true; nv],
    })
}

/// `α(1−α)n³ = k(n−k)n`, the factor turning a primal objective into a
/// Mostar-scale value.
pub fn primal_scale(n: usize, k: usize) -> Rational {
    int((k * (n - k) * n) as i64)
}
