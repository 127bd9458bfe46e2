//! Subdeterminants of forests through the matrix
//! `L̃(G', G'') = A(G'') + diag(d_{G'}(v) - 1)`.
//!
//! For a principal selection `S = V'' ∪ E'` of `M(G)`, a Schur complement
//! turns `M[S, S]` into `-L̃` where `G'` is the edge set `E'` on all vertices
//! and `G''` is `G'[V'']`, so `|det M[S, S]| = |det L̃|`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Element, Graph};
use crate::matrix::{bareiss, ExactMatrix};
use crate::subdet::{ElementColoring, SubdetMode, SubdetResult};

/// `edges` spans `G'`; `vertices` induces `G''` inside it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForestPair {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl ForestPair {
    pub fn new(mut edges: Vec<usize>, mut vertices: Vec<usize>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        vertices.sort_unstable();
        vertices.dedup();
        ForestPair { edges, vertices }
    }

    /// The pair behind the principal selection `elements`.
    pub fn from_elements(elements: &[Element]) -> Self {
        let mut edges = Vec::new();
        let mut vertices = Vec::new();
        for x in elements {
            match *x {
                Element::Vertex(v) => vertices.push(v),
                Element::Edge(e) => edges.push(e),
            }
        }
        ForestPair::new(edges, vertices)
    }

    pub fn elements(&self) -> Vec<Element> {
        self.vertices
            .iter()
            .map(|&v| Element::Vertex(v))
            .chain(self.edges.iter().map(|&e| Element::Edge(e)))
            .collect()
    }

    fn validate(&self, f: &Graph) -> Result<()> {
        if !f.is_forest() {
            return Err(Error::precondition("graph is not a forest"));
        }
        let sorted = |xs: &[usize]| xs.windows(2).all(|w| w[0] < w[1]);
        if !sorted(&self.edges) || !sorted(&self.vertices) {
            return Err(Error::input("pair lists must be strictly increasing"));
        }
        if let Some(e) = self.edges.iter().find(|&&e| e >= f.m()) {
            return Err(Error::input(format!("edge e{} not in graph", e + 1)));
        }
        if let Some(v) = self.vertices.iter().find(|&&v| v >= f.n()) {
            return Err(Error::input(format!("vertex v{} not in graph", v + 1)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LTildeMatrix {
    /// Rows and columns follow `vertices`.
    pub base: ExactMatrix<i64>,
    pub vertices: Vec<usize>,
}

impl LTildeMatrix {
    pub fn determinant(&self) -> Result<BigInt> {
        self.base.determinant()
    }
}

pub fn l_tilde(f: &Graph, pair: &ForestPair) -> Result<LTildeMatrix> {
    pair.validate(f)?;
    let mut degree = vec![0i64; f.n()];
    let mut in_g2 = vec![usize::MAX; f.n()];
    for (i, &v) in pair.vertices.iter().enumerate() {
        in_g2[v] = i;
    }
    let k = pair.vertices.len();
    let mut base = ExactMatrix::<i64>::zeros(k, k);
    for &e in &pair.edges {
        let edge = f.edge(e);
        degree[edge.u] += 1;
        degree[edge.v] += 1;
        let (i, j) = (in_g2[edge.u], in_g2[edge.v]);
        if i != usize::MAX && j != usize::MAX {
            base.set(i, j, 1);
            base.set(j, i, 1);
        }
    }
    for (i, &v) in pair.vertices.iter().enumerate() {
        base.set(i, i, degree[v] - 1);
    }
    let labels: Vec<Element> = pair.vertices.iter().map(|&v| Element::Vertex(v)).collect();
    Ok(LTildeMatrix {
        base: base.with_labels(labels.clone(), labels),
        vertices: pair.vertices.clone(),
    })
}

pub const DEFAULT_FORMULA_CAP: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub result: SubdetResult,
    pub pair: ForestPair,
    /// Whether the restricted family of pairs was enumerated.
    pub restricted: bool,
}

/// Maximum `|det L̃|` over pairs, edge sets by ascending bitmask and then
/// vertex sets by ascending bitmask; the first maximizer is reported.
///
/// When every component has at least three vertices only pairs where each
/// edge of `G'` meets `G''` and each vertex of `G''` has `d_{G'} >= 2` are
/// visited.
pub fn delta_forest_formula(f: &Graph, cap: usize) -> Result<FormulaResult> {
    if !f.is_forest() {
        return Err(Error::precondition("graph is not a forest"));
    }
    if f.n() > cap.min(30) {
        return Err(Error::Size {
            what: "vertices for the forest formula",
            size: f.n(),
            cap: cap.min(30),
        });
    }
    let restricted = f.components().iter().all(|c| c.graph.n() >= 3);
    let (n, m) = (f.n(), f.m());

    let scan = |emask: u64| -> (BigInt, u64) {
        let mut degree = vec![0i64; n];
        let mut ends = Vec::new();
        let mut covers = Vec::new();
        for e in 0..m {
            if emask >> e & 1 == 1 {
                let edge = f.edge(e);
                degree[edge.u] += 1;
                degree[edge.v] += 1;
                ends.push((edge.u, edge.v));
                covers.push(1u64 << edge.u | 1u64 << edge.v);
            }
        }
        let universe: u64 = if restricted {
            (0..n).filter(|&v| degree[v] >= 2).map(|v| 1u64 << v).sum()
        } else {
            (1u64 << n) - 1
        };
        let mut best = (BigInt::zero(), 0u64);
        let mut buf = Vec::new();
        let mut idx = vec![usize::MAX; n];
        // ascending submasks of `universe`
        let mut s = 0u64;
        loop {
            if !restricted || covers.iter().all(|c| c & s != 0) {
                let verts: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
                let k = verts.len();
                for (i, &v) in verts.iter().enumerate() {
                    idx[v] = i;
                }
                buf.clear();
                buf.resize(k * k, 0i64);
                for (i, &v) in verts.iter().enumerate() {
                    buf[i * k + i] = degree[v] - 1;
                }
                for &(u, v) in &ends {
                    if s >> u & 1 == 1 && s >> v & 1 == 1 {
                        buf[idx[u] * k + idx[v]] = 1;
                        buf[idx[v] * k + idx[u]] = 1;
                    }
                }
                let d = match bareiss(&mut buf, k) {
                    Some(d) => BigInt::from(d).abs(),
                    None => small_det_big(&verts, &degree, &ends, s),
                };
                if d > best.0 {
                    best = (d, s);
                }
            }
            if s == universe {
                break;
            }
            s = (s.wrapping_sub(universe)) & universe;
        }
        best
    };

    let results: Vec<(BigInt, u64)> = (0..1u64 << m).into_par_iter().map(scan).collect();
    let (emask, (value, vmask)) = results
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1 .0 > a.1 .0 { b } else { a })
        .expect("at least the empty edge set");
    let pair = ForestPair::new(
        (0..m).filter(|&e| emask >> e & 1 == 1).collect(),
        (0..n).filter(|&v| vmask >> v & 1 == 1).collect(),
    );
    Ok(FormulaResult {
        result: SubdetResult {
            value,
            witness: ElementColoring::principal(pair.elements()),
            mode: SubdetMode::Principal,
            exact: true,
        },
        pair,
        restricted,
    })
}

fn small_det_big(verts: &[usize], degree: &[i64], ends: &[(usize, usize)], s: u64) -> BigInt {
    let k = verts.len();
    let mut a = vec![BigInt::zero(); k * k];
    for (i, &v) in verts.iter().enumerate() {
        a[i * k + i] = BigInt::from(degree[v] - 1);
    }
    for &(u, v) in ends {
        if s >> u & 1 == 1 && s >> v & 1 == 1 {
            let i = verts.iter().position(|&x| x == u).unwrap();
            let j = verts.iter().position(|&x| x == v).unwrap();
            a[i * k + j] = BigInt::one();
            a[j * k + i] = BigInt::one();
        }
    }
    bareiss(&mut a, k).expect("bigint").abs()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeBounds {
    /// Number of vertices of degree at least 2.
    pub n2: usize,
    pub lower: f64,
    /// `∏ (d_i - 1)` over vertices of degree at least 2.
    pub lower_exact_square: BigInt,
    pub upper: f64,
    /// `(Σ d_i / n2)^n2`.
    pub upper_exact: BigRational,
    /// No vertex of degree 2 or more: every component is a path of at most
    /// two vertices and `Δ = 1`.
    pub degenerate: bool,
}

impl DegreeBounds {
    /// `lower <= delta`, compared as `lower_exact_square <= delta^2`.
    pub fn lower_holds(&self, delta: &BigInt) -> bool {
        self.lower_exact_square <= delta * delta
    }

    /// `delta <= upper`, in integers when the average degree is integral.
    pub fn upper_holds(&self, delta: &BigInt) -> bool {
        if self.upper_exact.is_integer() {
            *delta <= self.upper_exact.to_integer()
        } else {
            BigRational::from_integer(delta.clone()) <= self.upper_exact
        }
    }
}

pub fn degree_sequence_bounds(f: &Graph) -> Result<DegreeBounds> {
    if !f.is_forest() {
        return Err(Error::precondition("graph is not a forest"));
    }
    let seq = f.degree_sequence();
    let top = seq.top(2);
    if top.is_empty() {
        return Ok(DegreeBounds {
            n2: 0,
            lower: 1.0,
            lower_exact_square: BigInt::one(),
            upper: 1.0,
            upper_exact: BigRational::one(),
            degenerate: true,
        });
    }
    let n2 = top.len();
    let square: BigInt = top.iter().map(|&d| BigInt::from(d - 1)).product();
    let sum: usize = top.iter().sum();
    let upper_exact = Pow::pow(BigRational::new(BigInt::from(sum), BigInt::from(n2)), n2);
    Ok(DegreeBounds {
        n2,
        lower: big_to_f64(&square).sqrt(),
        lower_exact_square: square,
        upper: (sum as f64 / n2 as f64).powi(n2 as i32),
        upper_exact,
        degenerate: false,
    })
}

fn big_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::INFINITY)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionWitness {
    /// The side with the larger determinant (the first on ties).
    pub side: Vec<usize>,
    pub value: BigInt,
    pub other_side: Vec<usize>,
    pub other_value: BigInt,
}

/// Two-colors the forest induced by the vertices of degree at least 2 and
/// evaluates `det L̃(G, G[S_i])` for both color classes.
pub fn bipartition_lower_witness(f: &Graph) -> Result<BipartitionWitness> {
    if !f.is_forest() {
        return Err(Error::precondition("graph is not a forest"));
    }
    let high: Vec<usize> = (0..f.n()).filter(|&v| f.degree(v) >= 2).collect();
    let sub = f.induced_subgraph(&high);
    let h = &sub.graph;
    let mut color = vec![u8::MAX; h.n()];
    for start in 0..h.n() {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in h.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                }
            }
        }
    }
    let side = |c: u8| -> Vec<usize> {
        (0..h.n())
            .filter(|&v| color[v] == c)
            .map(|v| sub.vertex_map[v])
            .collect()
    };
    let all_edges: Vec<usize> = (0..f.m()).collect();
    let (s1, s2) = (side(0), side(1));
    let d1 = l_tilde(f, &ForestPair::new(all_edges.clone(), s1.clone()))?.determinant()?;
    let d2 = l_tilde(f, &ForestPair::new(all_edges, s2.clone()))?.determinant()?;
    Ok(if d2.abs() > d1.abs() {
        BipartitionWitness {
            side: s2,
            value: d2,
            other_side: s1,
            other_value: d1,
        }
    } else {
        BipartitionWitness {
            side: s1,
            value: d1,
            other_side: s2,
            other_value: d2,
        }
    })
}
