//! Maximum-weight total matchings: a stable set and a matching with no
//! chosen vertex touching a chosen edge.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structure::{compute_decomposition, DecompositionOutcome};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalMatching {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub weight: i64,
}

impl TotalMatching {
    fn from_parts(g: &Graph, mut vertices: Vec<usize>, mut edges: Vec<usize>) -> Self {
        vertices.sort_unstable();
        edges.sort_unstable();
        let weight = vertices.iter().map(|&v| g.vertex_weight(v)).sum::<i64>()
            + edges.iter().map(|&e| g.edge(e).weight).sum::<i64>();
        TotalMatching {
            vertices,
            edges,
            weight,
        }
    }

    /// Feasible in `g` and carrying the right weight.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        Ok(is_total_matching(g, &self.vertices, &self.edges)?
            && TotalMatching::from_parts(g, self.vertices.clone(), self.edges.clone()).weight == self.weight)
    }

    /// Renders as `weight: W / vertices: v1 v3 / edges: (2,4)` with 1-based ids.
    pub fn to_text(&self, g: &Graph) -> String {
        let vs: Vec<String> = self.vertices.iter().map(|v| format!("v{}", v + 1)).collect();
        let es: Vec<String> = self
            .edges
            .iter()
            .map(|&e| format!("({},{})", g.edge(e).u + 1, g.edge(e).v + 1))
            .collect();
        format!(
            "weight: {}\nvertices: {}\nedges: {}",
            self.weight,
            vs.join(" "),
            es.join(" ")
        )
    }
}

impl fmt::Display for TotalMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "weight {} ({} vertices, {} edges)",
            self.weight,
            self.vertices.len(),
            self.edges.len()
        )
    }
}

pub fn is_total_matching(g: &Graph, vertices: &[usize], edges: &[usize]) -> Result<bool> {
    if let Some(v) = vertices.iter().find(|&&v| v >= g.n()) {
        return Err(Error::input(format!("vertex {} out of range", v + 1)));
    }
    if let Some(e) = edges.iter().find(|&&e| e >= g.m()) {
        return Err(Error::input(format!("edge {} out of range", e + 1)));
    }
    let mut chosen = vec![false; g.n()];
    for &v in vertices {
        if std::mem::replace(&mut chosen[v], true) {
            return Ok(false);
        }
    }
    if g.edges().iter().any(|e| chosen[e.u] && chosen[e.v]) {
        return Ok(false);
    }
    let mut covered = vec![false; g.n()];
    for &e in edges {
        let (u, v) = (g.edge(e).u, g.edge(e).v);
        if chosen[u] || chosen[v] || covered[u] || covered[v] {
            return Ok(false);
        }
        covered[u] = true;
        covered[v] = true;
    }
    Ok(true)
}

/// Backtracking over every total matching inside `elements` (element
/// indices of `g`, vertices before edges). `visit` sees each one with its
/// element bitmask over positions in `elements`.
fn for_each_total_matching(g: &Graph, elements: &[usize], mut visit: impl FnMut(u64, i64)) {
    struct Walk<'a, F> {
        g: &'a Graph,
        elements: &'a [usize],
        chosen: Vec<bool>,
        covered: Vec<bool>,
        visit: F,
    }
    impl<F: FnMut(u64, i64)> Walk<'_, F> {
        fn go(&mut self, i: usize, mask: u64, weight: i64) {
            if i == self.elements.len() {
                (self.visit)(mask, weight);
                return;
            }
            self.go(i + 1, mask, weight);
            let x = self.elements[i];
            let n = self.g.n();
            if x < n {
                let free = self.g.neighbors(x).iter().all(|&(w, _)| !self.chosen[w]) && !self.covered[x];
                if free {
                    self.chosen[x] = true;
                    self.go(i + 1, mask | 1 << i, weight + self.g.vertex_weight(x));
                    self.chosen[x] = false;
                }
            } else {
                let e = self.g.edge(x - n);
                let (u, v) = (e.u, e.v);
                if !(self.chosen[u] || self.chosen[v] || self.covered[u] || self.covered[v]) {
                    self.covered[u] = true;
                    self.covered[v] = true;
                    self.go(i + 1, mask | 1 << i, weight + e.weight);
                    self.covered[u] = false;
                    self.covered[v] = false;
                }
            }
        }
    }
    let mut walk = Walk {
        g,
        elements,
        chosen: vec![false; g.n()],
        covered: vec![false; g.n()],
        visit: &mut visit,
    };
    walk.go(0, 0, 0);
}

fn from_mask(g: &Graph, elements: &[usize], mask: u64) -> TotalMatching {
    let (mut vs, mut es) = (Vec::new(), Vec::new());
    for (i, &x) in elements.iter().enumerate() {
        if mask >> i & 1 == 1 {
            if x < g.n() {
                vs.push(x);
            } else {
                es.push(x - g.n());
            }
        }
    }
    TotalMatching::from_parts(g, vs, es)
}

pub const DEFAULT_BRUTE_CAP: usize = 20;

/// Exhaustive search. Ties go to the smallest element bitmask, with bit `i`
/// standing for element `i` in the order `v1..vn, e1..em`.
pub fn solve_brute(g: &Graph, cap: usize) -> Result<TotalMatching> {
    let n = g.element_count();
    if n > cap.min(63) {
        return Err(Error::Size {
            what: "elements for brute-force total matching",
            size: n,
            cap: cap.min(63),
        });
    }
    let elements: Vec<usize> = (0..n).collect();
    let mut best = (0i64, 0u64);
    for_each_total_matching(g, &elements, |mask, w| {
        if w > best.0 || (w == best.0 && mask < best.1) {
            best = (w, mask);
        }
    });
    Ok(from_mask(g, &elements, best.1))
}

/// One path `v_1 e_1 v_2 … v_k` with weights and a per-vertex flag saying
/// whether the vertex itself may be chosen. Ids refer to a host graph and
/// are only carried through to the solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathInstance {
    pub vertices: Vec<(usize, i64)>,
    pub edges: Vec<(usize, i64)>,
    pub selectable: Vec<bool>,
}

impl PathInstance {
    pub fn new(vertices: Vec<(usize, i64)>, edges: Vec<(usize, i64)>, selectable: Vec<bool>) -> Result<Self> {
        if selectable.len() != vertices.len() {
            return Err(Error::input("one selectable flag per vertex required"));
        }
        if edges.len() + 1 != vertices.len().max(1) {
            return Err(Error::input("a path on k vertices has k - 1 edges"));
        }
        Ok(PathInstance {
            vertices,
            edges,
            selectable,
        })
    }

    /// The path of `g` through `seq`, every vertex selectable.
    pub fn from_graph(g: &Graph, seq: &[usize]) -> Result<Self> {
        let mut edges = Vec::with_capacity(seq.len().saturating_sub(1));
        for w in seq.windows(2) {
            let e = g
                .find_edge(w[0], w[1])
                .ok_or_else(|| Error::input(format!("v{} and v{} are not adjacent", w[0] + 1, w[1] + 1)))?;
            edges.push((e, g.edge(e).weight));
        }
        let vertices = seq.iter().map(|&v| (v, g.vertex_weight(v))).collect();
        PathInstance::new(vertices, edges, vec![true; seq.len()])
    }
}

/// Best total matching of a union of paths, solved path by path.
pub fn solve_paths_dp(paths: &[PathInstance]) -> TotalMatching {
    let mut out = TotalMatching::default();
    for p in paths {
        let (w, vs, es) = path_dp(p);
        out.weight += w;
        out.vertices.extend(vs);
        out.edges.extend(es);
    }
    out.vertices.sort_unstable();
    out.edges.sort_unstable();
    out
}

const FREE: usize = 0;
const BY_EDGE: usize = 1;
const CHOSEN: usize = 2;

fn path_dp(p: &PathInstance) -> (i64, Vec<usize>, Vec<usize>) {
    let k = p.vertices.len();
    if k == 0 {
        return (0, Vec::new(), Vec::new());
    }
    let none = i64::MIN / 4;
    // best[i][s]: optimum on v_1..v_i with v_i in state s
    let mut best = vec![[none; 3]; k];
    let mut from = vec![[FREE; 3]; k];
    best[0][FREE] = 0;
    if p.selectable[0] {
        best[0][CHOSEN] = p.vertices[0].1;
    }
    let argmax = |row: &[i64; 3], allowed: &[usize]| -> (i64, usize) {
        let mut pick = (none, FREE);
        for &s in allowed {
            if row[s] > pick.0 {
                pick = (row[s], s);
            }
        }
        pick
    };
    for i in 1..k {
        let prev = best[i - 1];
        let (v, s) = argmax(&prev, &[FREE, BY_EDGE, CHOSEN]);
        best[i][FREE] = v;
        from[i][FREE] = s;
        if prev[FREE] > none {
            best[i][BY_EDGE] = prev[FREE] + p.edges[i - 1].1;
            from[i][BY_EDGE] = FREE;
        }
        if p.selectable[i] {
            let (v, s) = argmax(&prev, &[FREE, BY_EDGE]);
            if v > none {
                best[i][CHOSEN] = v + p.vertices[i].1;
                from[i][CHOSEN] = s;
            }
        }
    }
    let (value, mut s) = argmax(&best[k - 1], &[FREE, BY_EDGE, CHOSEN]);
    let (mut vs, mut es) = (Vec::new(), Vec::new());
    for i in (0..k).rev() {
        match s {
            CHOSEN => vs.push(p.vertices[i].0),
            BY_EDGE => es.push(p.edges[i - 1].0),
            _ => {}
        }
        s = from[i][s];
    }
    (value, vs, es)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FptConfig {
    /// Largest number of elements incident to the decomposition set.
    pub incident_cap: usize,
}

impl Default for FptConfig {
    fn default() -> Self {
        FptConfig { incident_cap: 40 }
    }
}

/// Enumerates the part of the solution touching the decomposition set `Z`
/// and fills in the rest with the path program.
pub fn solve_fpt(g: &Graph, bound: u64, cfg: &FptConfig) -> Result<TotalMatching> {
    let d = match compute_decomposition(g, bound)? {
        DecompositionOutcome::Structured(d) => d,
        DecompositionOutcome::Exceeds(cert) => return Err(Error::BoundExceeded(Box::new(cert))),
    };
    let n = g.n();
    let mut in_z = vec![false; n];
    for &v in &d.z {
        in_z[v] = true;
    }
    let mut incident: Vec<usize> = d.z.clone();
    incident.extend(
        (0..g.m())
            .filter(|&e| in_z[g.edge(e).u] || in_z[g.edge(e).v])
            .map(|e| n + e),
    );
    if incident.len() > cfg.incident_cap.min(63) {
        return Err(Error::Size {
            what: "elements incident to the decomposition set",
            size: incident.len(),
            cap: cfg.incident_cap.min(63),
        });
    }

    let mut candidates = Vec::new();
    for_each_total_matching(g, &incident, |mask, _| candidates.push(mask));
    let solved: Vec<TotalMatching> = candidates
        .par_iter()
        .map(|&mask| complete(g, &in_z, from_mask(g, &incident, mask)))
        .collect::<Result<_>>()?;
    // first maximum in enumeration order
    let best = solved
        .into_iter()
        .reduce(|a, b| if b.weight > a.weight { b } else { a })
        .expect("the empty selection is always a candidate");
    Ok(best)
}

fn complete(g: &Graph, in_z: &[bool], m1: TotalMatching) -> Result<TotalMatching> {
    let mut removed: Vec<usize> = in_z
        .iter()
        .enumerate()
        .filter(|(_, &z)| z)
        .map(|(v, _)| v)
        .collect();
    for &e in &m1.edges {
        let (u, v) = (g.edge(e).u, g.edge(e).v);
        removed.extend([u, v].into_iter().filter(|&x| !in_z[x]));
    }
    let mut blocked = vec![false; g.n()];
    for &z in &m1.vertices {
        for &(w, _) in g.neighbors(z) {
            blocked[w] = true;
        }
    }
    let rest = g.delete_vertices(&removed);
    let pc = rest.graph.classify_paths_and_cycles()?;
    if !pc.cycles.is_empty() {
        return Err(Error::precondition(
            "graph minus the decomposition set has a cycle",
        ));
    }
    let paths = pc
        .paths
        .iter()
        .map(|p| {
            let seq: Vec<usize> = p.iter().map(|&v| rest.vertex_map[v]).collect();
            let mut inst = PathInstance::from_graph(g, &seq)?;
            inst.selectable = seq.iter().map(|&v| !blocked[v]).collect();
            Ok(inst)
        })
        .collect::<Result<Vec<_>>>()?;
    let m2 = solve_paths_dp(&paths);
    let mut vertices = m1.vertices;
    vertices.extend(m2.vertices);
    let mut edges = m1.edges;
    edges.extend(m2.edges);
    Ok(TotalMatching::from_parts(g, vertices, edges))
}
