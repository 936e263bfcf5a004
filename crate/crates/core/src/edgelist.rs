//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! n m
//! u v
//! ...
//! ```
//!
//! Vertex ids are 0-based; tokens are whitespace-separated and anything
//! after `#` on a line is ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let [n, m] = parse_pair(hline, header)?;

    let mut pairs = Vec::with_capacity(m);
    for (line, body) in lines {
        if pairs.len() == m {
            return Err(Error::Parse {
                line,
                msg: format!("more than the declared {m} edges"),
            });
        }
        let [u, v] = parse_pair(line, body)?;
        if u == v || u >= n || v >= n {
            let err = Graph::from_edge_list(n, &[(u, v)]).unwrap_err();
            return Err(Error::Parse {
                line,
                msg: err.to_string(),
            });
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("expected {m} edges, found {}", pairs.len()),
        });
    }
    Graph::from_edge_list(n, &pairs)
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2]> {
    let toks: Vec<&str> = body.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::Parse {
            line,
            msg: format!("expected two integers, found `{body}`"),
        });
    }
    let mut out = [0; 2];
    for (slot, tok) in out.iter_mut().zip(&toks) {
        *slot = tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("`{tok}` is not a nonnegative integer"),
        })?;
    }
    Ok(out)
}

pub fn write(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
