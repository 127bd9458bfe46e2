//! Line-oriented text format:
//!
//! ```text
//! # comment
//! graph <n> <m>
//! v <id> <weight>
//! e <u> <v> <weight>
//! ```
//!
//! `v` lines are optional (missing vertices weigh 1); exactly `m` edge lines
//! are required. Ids are 1-based.

use std::fmt::Write as _;

use super::{Edge, Graph};
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut weights: Vec<Option<i64>> = Vec::new();
    let mut edges = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::input(format!("line {}: {msg}: `{line}`", lineno + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "graph" => {
                if header.is_some() {
                    return Err(err("second graph header"));
                }
                let [_, n, m] = fields[..] else {
                    return Err(err("expected `graph <n> <m>`"));
                };
                let n = n.parse().map_err(|_| err("bad vertex count"))?;
                let m = m.parse().map_err(|_| err("bad edge count"))?;
                weights = vec![None; n];
                header = Some((n, m));
            }
            "v" => {
                let (n, _) = header.ok_or_else(|| err("`v` before header"))?;
                let [_, id, w] = fields[..] else {
                    return Err(err("expected `v <id> <weight>`"));
                };
                let id = parse_id(id, n).ok_or_else(|| err("vertex id out of range"))?;
                let w = w.parse().map_err(|_| err("bad weight"))?;
                if weights[id].replace(w).is_some() {
                    return Err(err("vertex listed twice"));
                }
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| err("`e` before header"))?;
                let (u, v, w) = match fields[..] {
                    [_, u, v, w] => (u, v, w.parse().map_err(|_| err("bad weight"))?),
                    [_, u, v] => (u, v, 1),
                    _ => return Err(err("expected `e <u> <v> <weight>`")),
                };
                let u = parse_id(u, n).ok_or_else(|| err("vertex id out of range"))?;
                let v = parse_id(v, n).ok_or_else(|| err("vertex id out of range"))?;
                edges.push(Edge { u, v, weight: w });
            }
            _ => return Err(err("unknown record")),
        }
    }

    let (_, m) = header.ok_or_else(|| Error::input("missing `graph <n> <m>` header"))?;
    if edges.len() != m {
        return Err(Error::input(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::new(weights.into_iter().map(|w| w.unwrap_or(1)).collect(), edges)
}

fn parse_id(s: &str, n: usize) -> Option<usize> {
    let id: usize = s.parse().ok()?;
    (1..=n).contains(&id).then(|| id - 1)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {}", g.n(), g.m());
    for (v, w) in g.vertex_weights().iter().enumerate() {
        let _ = writeln!(out, "v {} {}", v + 1, w);
    }
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, e.weight);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_defaults_and_comments() {
        let g = parse_graph("# a weighted P_3\ngraph 3 2\nv 2 -4\n\n# edges\ne 1 2 5\ne 2 3 0\n").unwrap();
        assert_eq!(g.vertex_weights(), &[1, -4, 1]);
        assert_eq!(g.edge(0).weight, 5);
        assert_eq!((g.edge(1).u, g.edge(1).v), (1, 2));
    }

    #[test]
    fn strictness() {
        let bad = [
            "graph 2 1\ne 1 1 1\n",          // loop
            "graph 3 2\ne 1 2 1\ne 2 1 1\n", // parallel
            "graph 2 1\ne 1 3 1\n",          // out of range
            "graph 2 1\ne 0 1 1\n",          // ids are 1-based
            "graph 2 2\ne 1 2 1\n",          // edge count mismatch
            "graph 2 0\nv 1 3\nv 1 4\n",     // duplicate vertex line
            "v 1 3\ngraph 1 0\n",            // record before header
            "graph 2 0\nx 1\n",              // unknown record
            "",                              // no header
        ];
        for text in bad {
            assert!(parse_graph(text).is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn write_then_parse() {
        let g = Graph::new(
            vec![3, -1, 0, 8],
            vec![
                Edge {
                    u: 0,
                    v: 3,
                    weight: -2,
                },
                Edge {
                    u: 2,
                    v: 1,
                    weight: 7,
                },
            ],
        )
        .unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }
}
