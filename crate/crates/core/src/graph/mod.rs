//! Simple undirected graphs with integer weights on vertices and edges.
//!
//! Vertices and edges are indexed from 0 inside the library. The text
//! format and every rendered element name (`v3`, `e7`) use 1-based ids.

mod generate;
mod io;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use generate::{generate, with_random_weights, Family};
pub use io::{parse_graph, write_graph};

/// A vertex or an edge of a graph; the index set of `M(G)`.
///
/// The derived order puts all vertices before all edges, which is the row
/// and column order of the constraint matrix.
/// Serialized by name (`"v3"`, `"e7"`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Element {
    Vertex(usize),
    Edge(usize),
}

impl Element {
    pub fn is_vertex(self) -> bool {
        matches!(self, Element::Vertex(_))
    }

    pub fn is_edge(self) -> bool {
        matches!(self, Element::Edge(_))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{}", v + 1),
            Element::Edge(e) => write!(f, "e{}", e + 1),
        }
    }
}

impl From<Element> for String {
    fn from(x: Element) -> String {
        x.to_string()
    }
}

impl TryFrom<String> for Element {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, digits) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let id: usize = digits
            .parse()
            .map_err(|_| Error::input(format!("bad element `{s}`: expected v<id> or e<id>")))?;
        if id == 0 {
            return Err(Error::input(format!("bad element `{s}`: ids start at 1")));
        }
        match kind {
            "v" | "V" => Ok(Element::Vertex(id - 1)),
            "e" | "E" => Ok(Element::Edge(id - 1)),
            _ => Err(Error::input(format!(
                "bad element `{s}`: expected v<id> or e<id>"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: i64,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn has_endpoint(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GraphData", try_from = "GraphData")]
pub struct Graph {
    vertex_weights: Vec<i64>,
    edges: Vec<Edge>,
    /// `adjacency[v]` lists `(neighbor, edge index)` in edge order.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range
    /// endpoints.
    pub fn new(vertex_weights: Vec<i64>, edges: Vec<Edge>) -> Result<Self> {
        let n = vertex_weights.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::input(format!(
                    "edge {} has endpoint outside 1..{n}",
                    i + 1
                )));
            }
            if e.u == e.v {
                return Err(Error::input(format!("edge {} is a loop at v{}", i + 1, e.u + 1)));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::input(format!(
                    "edge {} duplicates v{}-v{}",
                    i + 1,
                    e.u + 1,
                    e.v + 1
                )));
            }
            adjacency[e.u].push((e.v, i));
            adjacency[e.v].push((e.u, i));
        }
        Ok(Graph {
            vertex_weights,
            edges,
            adjacency,
        })
    }

    /// Unit weights everywhere.
    pub fn unweighted(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs.iter().map(|&(u, v)| Edge { u, v, weight: 1 }).collect();
        Graph::new(vec![1; n], edges)
    }

    pub fn empty() -> Self {
        Graph {
            vertex_weights: Vec::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// `n + m`, the order of `M(G)`.
    pub fn element_count(&self) -> usize {
        self.n() + self.m()
    }

    pub fn vertex_weight(&self, v: usize) -> i64 {
        self.vertex_weights[v]
    }

    pub fn vertex_weights(&self) -> &[i64] {
        &self.vertex_weights
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.adjacency
            .get(u)?
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.n())
            .map(Element::Vertex)
            .chain((0..self.m()).map(Element::Edge))
    }

    pub fn check_element(&self, x: Element) -> Result<()> {
        match x {
            Element::Vertex(v) if v < self.n() => Ok(()),
            Element::Edge(e) if e < self.m() => Ok(()),
            _ => Err(Error::input(format!("element {x} is not in the graph"))),
        }
    }

    /// Row/column index of `x` in `M(G)`: vertices first, then edges.
    pub fn element_index(&self, x: Element) -> usize {
        match x {
            Element::Vertex(v) => v,
            Element::Edge(e) => self.n() + e,
        }
    }

    pub fn element_at(&self, index: usize) -> Element {
        if index < self.n() {
            Element::Vertex(index)
        } else {
            Element::Edge(index - self.n())
        }
    }

    pub fn element_weight(&self, x: Element) -> i64 {
        match x {
            Element::Vertex(v) => self.vertex_weights[v],
            Element::Edge(e) => self.edges[e].weight,
        }
    }

    /// Equal, or an edge together with one of its endpoints. Two distinct
    /// vertices are never incident, adjacent or not.
    pub fn incident(&self, a: Element, b: Element) -> Result<bool> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.incident_unchecked(a, b))
    }

    pub(crate) fn incident_unchecked(&self, a: Element, b: Element) -> bool {
        match (a, b) {
            _ if a == b => true,
            (Element::Vertex(v), Element::Edge(e)) | (Element::Edge(e), Element::Vertex(v)) => {
                self.edges[e].has_endpoint(v)
            }
            _ => false,
        }
    }

    /// Elements incident to `x` other than `x` itself.
    pub fn incident_elements(&self, x: Element) -> Vec<Element> {
        match x {
            Element::Vertex(v) => self.adjacency[v].iter().map(|&(_, e)| Element::Edge(e)).collect(),
            Element::Edge(e) => {
                let edge = &self.edges[e];
                vec![Element::Vertex(edge.u), Element::Vertex(edge.v)]
            }
        }
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new((0..self.n()).map(|v| self.degree(v)).collect())
    }

    /// Component label per vertex, labels in order of smallest vertex.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adjacency[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// Connected components as induced subgraphs, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Subgraph> {
        let (count, label) = self.component_labels();
        let mut groups = vec![Vec::new(); count];
        for v in 0..self.n() {
            groups[label[v]].push(v);
        }
        groups.iter().map(|vs| self.induced_subgraph(vs)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().0 <= 1
    }

    pub fn is_forest(&self) -> bool {
        let (count, _) = self.component_labels();
        self.m() + count == self.n()
    }

    /// Subgraph induced by `vertices`, kept in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Subgraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let weights = vertices.iter().map(|&v| self.vertex_weights[v]).collect();
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if local[e.u] != usize::MAX && local[e.v] != usize::MAX {
                edges.push(Edge {
                    u: local[e.u],
                    v: local[e.v],
                    weight: e.weight,
                });
                edge_map.push(i);
            }
        }
        Subgraph {
            graph: Graph::new(weights, edges).expect("induced subgraph of a simple graph"),
            vertex_map: vertices.to_vec(),
            edge_map,
        }
    }

    /// `G - S` for a vertex set `S`.
    pub fn delete_vertices(&self, removed: &[usize]) -> Subgraph {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Same vertex set, only the listed edges.
    pub fn edge_subgraph(&self, edges: &[usize]) -> Graph {
        let kept = edges.iter().map(|&e| self.edges[e]).collect();
        Graph::new(self.vertex_weights.clone(), kept).expect("edge subset of a simple graph")
    }

    /// Vertices of `other` are renumbered after those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut weights = self.vertex_weights.clone();
        weights.extend_from_slice(&other.vertex_weights);
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            u: e.u + shift,
            v: e.v + shift,
            weight: e.weight,
        }));
        Graph::new(weights, edges).expect("union of simple graphs")
    }

    pub fn with_weights(&self, vertex_weights: Vec<i64>, edge_weights: &[i64]) -> Result<Graph> {
        if vertex_weights.len() != self.n() || edge_weights.len() != self.m() {
            return Err(Error::input("weight vector lengths do not match the graph"));
        }
        let edges = self
            .edges
            .iter()
            .zip(edge_weights)
            .map(|(e, &w)| Edge { weight: w, ..*e })
            .collect();
        Graph::new(vertex_weights, edges)
    }

    /// Splits a graph of maximum degree at most 2 into paths and cycles.
    pub fn classify_paths_and_cycles(&self) -> Result<PathsAndCycles> {
        if let Some(v) = (0..self.n()).find(|&v| self.degree(v) > 2) {
            return Err(Error::precondition(format!(
                "v{} has degree {} > 2",
                v + 1,
                self.degree(v)
            )));
        }
        let mut visited = vec![false; self.n()];
        let mut out = PathsAndCycles::default();
        // Paths first from their lower endpoint, so that whatever is left
        // unvisited afterwards lies on cycles.
        for s in 0..self.n() {
            if visited[s] || self.degree(s) == 2 {
                continue;
            }
            out.paths.push(self.walk(s, &mut visited));
        }
        for s in 0..self.n() {
            if visited[s] {
                continue;
            }
            out.cycles.push(self.walk(s, &mut visited));
        }
        out.paths.sort_by_key(|p| p.iter().copied().min());
        Ok(out)
    }

    /// Follows unvisited neighbors from `start`, preferring the smaller id
    /// at the first step.
    fn walk(&self, start: usize, visited: &mut [bool]) -> Vec<usize> {
        let mut seq = vec![start];
        visited[start] = true;
        let mut cur = start;
        loop {
            let next = self.adjacency[cur]
                .iter()
                .map(|&(w, _)| w)
                .filter(|&w| !visited[w])
                .min();
            match next {
                Some(w) => {
                    visited[w] = true;
                    seq.push(w);
                    cur = w;
                }
                None => break,
            }
        }
        seq
    }
}

/// Serialized form of [`Graph`]; adjacency is rebuilt and re-validated.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct GraphData {
    vertex_weights: Vec<i64>,
    edges: Vec<Edge>,
}

impl From<Graph> for GraphData {
    fn from(g: Graph) -> Self {
        GraphData {
            vertex_weights: g.vertex_weights,
            edges: g.edges,
        }
    }
}

impl TryFrom<GraphData> for Graph {
    type Error = Error;

    fn try_from(d: GraphData) -> Result<Self> {
        Graph::new(d.vertex_weights, d.edges)
    }
}

/// An induced or edge subgraph together with the ids it had in its host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// local vertex index -> host vertex index
    pub vertex_map: Vec<usize>,
    /// local edge index -> host edge index
    pub edge_map: Vec<usize>,
}

impl Subgraph {
    pub fn to_host(&self, x: Element) -> Element {
        match x {
            Element::Vertex(v) => Element::Vertex(self.vertex_map[v]),
            Element::Edge(e) => Element::Edge(self.edge_map[e]),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathsAndCycles {
    /// Vertex sequences; an isolated vertex is a path with one vertex.
    pub paths: Vec<Vec<usize>>,
    /// Cyclic vertex sequences starting at their smallest vertex.
    pub cycles: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence {
    /// Sorted in non-increasing order.
    pub degrees: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence { degrees }
    }

    /// `n_d`: number of vertices of degree at least `d`.
    pub fn at_least(&self, d: usize) -> usize {
        self.degrees.partition_point(|&x| x >= d)
    }

    /// The `n_d` largest degrees.
    pub fn top(&self, d: usize) -> &[usize] {
        &self.degrees[..self.at_least(d)]
    }
}
