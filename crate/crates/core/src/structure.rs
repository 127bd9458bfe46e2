//! Structure of graphs with bounded `Δ(G)` and the recognition pipeline.
//!
//! [`compute_decomposition`] either finds a vertex set `Z` such that `G - Z`
//! is a disjoint union of paths, or returns a [`Certificate`] proving
//! `Δ(G) > bound`. [`recognize`] shrinks the graph around `Z` without
//! changing `Δ` and finishes with a bounded exact search.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Subgraph};
use crate::matrix::near_pencil;
use crate::subdet::{max_subdet_brute, principal_search, ElementColoring, SubdetConfig};

/// Evidence that `Δ(G)` exceeds some bound. Each variant can be checked
/// against the graph without trusting the code that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `M(G)` contains the near-pencil `N_degree`, so `Δ(G) >= degree - 1`.
    DegreeExceeds { vertex: usize, degree: usize },
    /// A vertex set whose near-pencil blocks multiply to `product <= Δ(G)`.
    TooManyHighDegreeVertices { d_set: Vec<usize>, product: BigInt },
    /// Vertex-disjoint cycles, each a vertex sequence; `Δ(G) >= 2^k`.
    TooManyDisjointCycles { cycles: Vec<Vec<usize>> },
    /// A submatrix of `M(graph)` with `|det| = value`. `graph` is the shrunken
    /// core the search ran on, which has the same `Δ` as the input.
    SubdeterminantFound {
        graph: Graph,
        witness: ElementColoring,
        value: BigInt,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::DegreeExceeds { .. } => "degree_exceeds",
            Certificate::TooManyHighDegreeVertices { .. } => "too_many_high_degree_vertices",
            Certificate::TooManyDisjointCycles { .. } => "too_many_disjoint_cycles",
            Certificate::SubdeterminantFound { .. } => "subdeterminant_found",
        }
    }

    /// The lower bound on `Δ(G)` the certificate claims.
    pub fn lower_bound(&self) -> BigInt {
        match self {
            Certificate::DegreeExceeds { degree, .. } => BigInt::from(*degree) - 1,
            Certificate::TooManyHighDegreeVertices { product, .. } => product.clone(),
            Certificate::TooManyDisjointCycles { cycles } => BigInt::one() << cycles.len(),
            Certificate::SubdeterminantFound { value, .. } => value.clone(),
        }
    }

    /// Re-derives the claimed lower bound from `g` and checks that it
    /// exceeds `bound`. A found subdeterminant is checked on the carried core
    /// graph, which must be the shrunken form of `g`.
    pub fn verify(&self, g: &Graph, bound: u64) -> Result<bool> {
        let bound = BigInt::from(bound);
        let holds = match self {
            Certificate::DegreeExceeds { vertex, degree } => {
                *vertex < g.n()
                    && g.degree(*vertex) == *degree
                    && near_pencil::<i64>(*degree)?.determinant()?.abs() == BigInt::from(*degree) - 1
            }
            Certificate::TooManyHighDegreeVertices { d_set, product } => {
                near_pencil_lower_bound(g, d_set)? == *product
            }
            Certificate::TooManyDisjointCycles { cycles } => cycles_are_disjoint_cycles(g, cycles),
            Certificate::SubdeterminantFound {
                graph,
                witness,
                value,
            } => *graph == shrink_unchecked(g) && witness.determinant(graph)?.abs() == *value,
        };
        Ok(holds && self.lower_bound() > bound)
    }
}

impl fmt::Display for Certificate {
    /// Labeled lines with 1-based ids, e.g. `kind: degree_exceeds`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |vs: &[usize]| {
            vs.iter()
                .map(|v| format!("v{}", v + 1))
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "kind: {}", self.kind())?;
        match self {
            Certificate::DegreeExceeds { vertex, degree } => {
                writeln!(f, "vertex: v{}", vertex + 1)?;
                writeln!(f, "degree: {degree}")?;
            }
            Certificate::TooManyHighDegreeVertices { d_set, .. } => {
                writeln!(f, "vertices: {}", names(d_set))?;
            }
            Certificate::TooManyDisjointCycles { cycles } => {
                for c in cycles {
                    writeln!(f, "cycle: {}", names(c))?;
                }
            }
            Certificate::SubdeterminantFound { graph, witness, .. } => {
                writeln!(f, "core: {} vertices, {} edges", graph.n(), graph.m())?;
                writeln!(f, "witness: {witness}")?;
            }
        }
        write!(f, "value: {}", self.lower_bound())
    }
}

fn cycles_are_disjoint_cycles(g: &Graph, cycles: &[Vec<usize>]) -> bool {
    let mut used = BTreeSet::new();
    cycles.iter().all(|c| {
        c.len() >= 3
            && c.iter().all(|&v| v < g.n() && used.insert(v))
            && (0..c.len()).all(|i| g.find_edge(c[i], c[(i + 1) % c.len()]).is_some())
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeltaOutcome {
    Exact { value: BigInt },
    Exceeds { certificate: Certificate },
}

impl DeltaOutcome {
    pub fn exact_value(&self) -> Option<&BigInt> {
        match self {
            DeltaOutcome::Exact { value } => Some(value),
            DeltaOutcome::Exceeds { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// `X ∪ Y`, sorted.
    pub z: Vec<usize>,
    /// Vertices of degree at least 3.
    pub x: Vec<usize>,
    /// Smallest vertex of each cycle of `G - X`.
    pub y: Vec<usize>,
    /// `|δ(Z)|`.
    pub cut_size: usize,
    /// `G - Z` with its embedding into `G`.
    pub residual: Subgraph,
    /// Vertex sequences (ids of `G`) of the paths of `G - Z`.
    pub paths: Vec<Vec<usize>>,
    /// For each path, the edges of `G` joining it to `Z`.
    pub attachments: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionOutcome {
    Structured(Decomposition),
    Exceeds(Certificate),
}

/// `∏_{v ∈ D} (d_H(v) - 1)`, where `H` keeps only the edges between `D` and
/// its complement. Each `v ∈ D` needs two neighbors outside `D`.
pub fn near_pencil_lower_bound(g: &Graph, d_set: &[usize]) -> Result<BigInt> {
    let mut in_d = vec![false; g.n()];
    for &v in d_set {
        if v >= g.n() {
            return Err(Error::input(format!("vertex {} not in graph", v + 1)));
        }
        if std::mem::replace(&mut in_d[v], true) {
            return Err(Error::input(format!("v{} listed twice", v + 1)));
        }
    }
    let mut product = BigInt::one();
    for &v in d_set {
        let outside = g.neighbors(v).iter().filter(|&&(w, _)| !in_d[w]).count();
        if outside < 2 {
            return Err(Error::precondition(format!(
                "v{} has {outside} neighbors outside the set",
                v + 1
            )));
        }
        product *= outside - 1;
    }
    Ok(product)
}

/// Greedy maximal packing of vertex-disjoint `K_{1,3}`s; returns the centers
/// and the covered vertices.
fn claw_packing(g: &Graph) -> (Vec<usize>, Vec<bool>) {
    let mut covered = vec![false; g.n()];
    let mut centers = Vec::new();
    for v in 0..g.n() {
        if covered[v] {
            continue;
        }
        let mut free: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&(w, _)| w)
            .filter(|&w| !covered[w])
            .collect();
        if free.len() < 3 {
            continue;
        }
        free.sort_unstable();
        covered[v] = true;
        for &w in &free[..3] {
            covered[w] = true;
        }
        centers.push(v);
    }
    (centers, covered)
}

/// Proper coloring with colors `0..3` of a graph of maximum degree 2.
fn three_color(g: &Graph) -> Vec<u8> {
    let pc = g
        .classify_paths_and_cycles()
        .expect("maximum degree is at most 2");
    let mut color = vec![0u8; g.n()];
    for p in &pc.paths {
        for (i, &v) in p.iter().enumerate() {
            color[v] = (i % 2) as u8;
        }
    }
    for c in &pc.cycles {
        for (i, &v) in c.iter().enumerate() {
            color[v] = (i % 2) as u8;
        }
        if c.len() % 2 == 1 {
            color[*c.last().unwrap()] = 2;
        }
    }
    color
}

/// The two near-pencil certificates behind the count of degree-3 vertices:
/// the centers of a maximal claw packing, and the largest color class of
/// high-degree vertices in a 3-coloring of what the packing leaves.
fn high_degree_sets(g: &Graph) -> [Vec<usize>; 2] {
    let (centers, covered) = claw_packing(g);
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !covered[v]).collect();
    let rest = g.induced_subgraph(&keep);
    let color = three_color(&rest.graph);
    let mut classes: [Vec<usize>; 3] = Default::default();
    for (local, &v) in rest.vertex_map.iter().enumerate() {
        if g.degree(v) >= 3 {
            classes[color[local] as usize].push(v);
        }
    }
    let largest = (0..3)
        .max_by_key(|&c| (classes[c].len(), std::cmp::Reverse(c)))
        .unwrap();
    [centers, std::mem::take(&mut classes[largest])]
}

/// Drops vertices with fewer than two neighbors outside the set, lowest
/// outside-degree first, until every remaining vertex qualifies.
fn prune_to_near_pencil(g: &Graph, mut set: Vec<usize>) -> Vec<usize> {
    loop {
        let mut in_d = vec![false; g.n()];
        for &v in &set {
            in_d[v] = true;
        }
        let outside = |v: usize| g.neighbors(v).iter().filter(|&&(w, _)| !in_d[w]).count();
        match set
            .iter()
            .copied()
            .filter(|&v| outside(v) < 2)
            .min_by_key(|&v| (outside(v), v))
        {
            Some(v) => set.retain(|&w| w != v),
            None => return set,
        }
    }
}

/// The best near-pencil lower bound among a few cheap candidate sets: a
/// vertex of maximum degree, the centers of a greedy claw packing, a color
/// class of high-degree vertices, and all vertices of degree at least 3
/// pruned until valid.
pub fn near_pencil_heuristic(g: &Graph) -> (Vec<usize>, BigInt) {
    let mut candidates: Vec<Vec<usize>> = high_degree_sets(g).into();
    if let Some(v) = (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) {
        candidates.push(vec![v]);
    }
    let high: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 3).collect();
    candidates.push(prune_to_near_pencil(g, high));
    let mut best = (Vec::new(), BigInt::one());
    for set in candidates {
        if let Ok(p) = near_pencil_lower_bound(g, &set) {
            if p > best.1 {
                best = (set, p);
            }
        }
    }
    best
}

pub fn compute_decomposition(g: &Graph, bound: u64) -> Result<DecompositionOutcome> {
    if bound < 1 {
        return Err(Error::input("bound must be at least 1"));
    }
    let big_bound = BigInt::from(bound);

    if let Some(v) = (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) {
        let d = g.degree(v);
        if d as u128 > bound as u128 + 1 {
            return Ok(DecompositionOutcome::Exceeds(Certificate::DegreeExceeds {
                vertex: v,
                degree: d,
            }));
        }
    }

    for d_set in high_degree_sets(g) {
        let product = near_pencil_lower_bound(g, &d_set)?;
        if product > big_bound {
            return Ok(DecompositionOutcome::Exceeds(
                Certificate::TooManyHighDegreeVertices { d_set, product },
            ));
        }
    }

    let x: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 3).collect();
    let minus_x = g.delete_vertices(&x);
    let pc = minus_x
        .graph
        .classify_paths_and_cycles()
        .expect("G - X has maximum degree 2");
    let cycles: Vec<Vec<usize>> = pc
        .cycles
        .iter()
        .map(|c| c.iter().map(|&v| minus_x.vertex_map[v]).collect())
        .collect();
    if cycles.len() >= 64 || (1u64 << cycles.len()) > bound {
        return Ok(DecompositionOutcome::Exceeds(
            Certificate::TooManyDisjointCycles { cycles },
        ));
    }
    let y: Vec<usize> = cycles.iter().map(|c| *c.iter().min().unwrap()).collect();
    let mut z: Vec<usize> = x.iter().chain(&y).copied().collect();
    z.sort_unstable();

    let mut in_z = vec![false; g.n()];
    for &v in &z {
        in_z[v] = true;
    }
    let cut_size = g.edges().iter().filter(|e| in_z[e.u] != in_z[e.v]).count();
    let residual = g.delete_vertices(&z);
    let rpc = residual
        .graph
        .classify_paths_and_cycles()
        .expect("G - Z has maximum degree 2");
    debug_assert!(rpc.cycles.is_empty());
    let paths: Vec<Vec<usize>> = rpc
        .paths
        .iter()
        .map(|p| p.iter().map(|&v| residual.vertex_map[v]).collect())
        .collect();
    let attachments = paths
        .iter()
        .map(|p| {
            let mut es: Vec<usize> = p
                .iter()
                .flat_map(|&v| g.neighbors(v).iter())
                .filter(|&&(w, _)| in_z[w])
                .map(|&(_, e)| e)
                .collect();
            es.sort_unstable();
            es
        })
        .collect();

    Ok(DecompositionOutcome::Structured(Decomposition {
        z,
        x,
        y,
        cut_size,
        residual,
        paths,
        attachments,
    }))
}

/// Whether `b` is at distance at least `d` from `a` once `avoid` is deleted.
fn at_least_apart(g: &Graph, a: usize, b: usize, avoid: &[usize], d: usize) -> bool {
    let mut dist = vec![usize::MAX; g.n()];
    for &x in avoid {
        dist[x] = 0;
    }
    dist[a] = 0;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            return dist[x] >= d;
        }
        if dist[x] + 1 >= d {
            continue;
        }
        for &(w, _) in g.neighbors(x) {
            if dist[w] == usize::MAX {
                dist[w] = dist[x] + 1;
                queue.push_back(w);
            }
        }
    }
    true
}

/// A contractible run `v_0, v_1..v_7, v_8`: seven consecutive vertices of
/// degree 2 with outer neighbors `v_0 != v_8`.
///
/// Inside a longer structure the contracted vertex must not end up on a
/// cycle shorter than 6, so `v_0` and `v_8` have to be at distance at least
/// 4 without the run. Contracting next to a short cycle can lower `Δ`: a
/// 9-cycle with one pendant vertex has `Δ = 3`, a triangle with one has 2,
/// and an 11-cycle with pendants on two adjacent vertices has `Δ = 4` while
/// the 5-cycle version has 3. A component that is a cycle only needs length
/// at least 9, since `Δ(C_n)` depends on `n mod 3` alone.
pub fn contractible_run(g: &Graph) -> Option<[usize; 9]> {
    let deg2: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 2).collect();
    let chains = g.induced_subgraph(&deg2);
    let pc = chains
        .graph
        .classify_paths_and_cycles()
        .expect("degree-2 vertices induce paths and cycles");
    let outer = |v: usize, inner: usize| -> usize {
        g.neighbors(v)
            .iter()
            .map(|&(w, _)| w)
            .find(|&w| w != inner)
            .expect("degree 2")
    };
    let mut runs: Vec<[usize; 9]> = Vec::new();
    for p in &pc.paths {
        if p.len() < 7 {
            continue;
        }
        let w: Vec<usize> = p.iter().map(|&v| chains.vertex_map[v]).collect();
        let k = w.len();
        let mut ext = Vec::with_capacity(k + 2);
        ext.push(outer(w[0], w[1]));
        ext.extend(&w);
        ext.push(outer(w[k - 1], w[k - 2]));
        for window in ext.windows(9) {
            let (v0, v8) = (window[0], window[8]);
            if v0 != v8 && at_least_apart(g, v0, v8, &window[1..8], 4) {
                runs.push(window.try_into().unwrap());
                break;
            }
        }
    }
    for c in &pc.cycles {
        if c.len() < 9 {
            continue;
        }
        let w: Vec<usize> = c.iter().map(|&v| chains.vertex_map[v]).collect();
        let mut run = [0; 9];
        run[0] = w[w.len() - 1];
        run[1..9].copy_from_slice(&w[..8]);
        runs.push(run);
    }
    runs.into_iter().min_by_key(|r| r[1])
}

/// Contracts seven consecutive degree-2 vertices into one. `None` when the
/// graph has no such run whose contraction stays simple.
pub fn contract_degree2_run(g: &Graph) -> Option<Graph> {
    let run = contractible_run(g)?;
    let (v1, v8) = (run[1], run[8]);
    let removed: BTreeSet<usize> = run[2..8].iter().copied().collect();
    let keep: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        local[v] = i;
    }
    let last_edge = g.find_edge(run[7], v8).expect("run edge");
    let mut edges = Vec::with_capacity(g.m() - 6);
    for (i, e) in g.edges().iter().enumerate() {
        if i == last_edge {
            edges.push(Edge {
                u: local[v1],
                v: local[v8],
                weight: e.weight,
            });
        } else if !removed.contains(&e.u) && !removed.contains(&e.v) {
            edges.push(Edge {
                u: local[e.u],
                v: local[e.v],
                weight: e.weight,
            });
        }
    }
    let weights = keep.iter().map(|&v| g.vertex_weight(v)).collect();
    Some(Graph::new(weights, edges).expect("contraction of a valid run stays simple"))
}

fn is_bare_path(c: &Graph) -> bool {
    c.max_degree() <= 2 && c.m() + 1 == c.n()
}

/// Deletes path components, then contracts degree-2 runs until none is left.
pub fn shrink_to_core(g: &Graph, bound: u64) -> Result<Graph> {
    if let DecompositionOutcome::Exceeds(cert) = compute_decomposition(g, bound)? {
        return Err(Error::BoundExceeded(Box::new(cert)));
    }
    Ok(shrink_unchecked(g))
}

fn shrink_unchecked(g: &Graph) -> Graph {
    let (count, label) = g.component_labels();
    let mut drop = vec![false; count];
    for (i, c) in g.components().iter().enumerate() {
        drop[i] = is_bare_path(&c.graph);
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !drop[label[v]]).collect();
    let mut core = g.induced_subgraph(&keep).graph;
    while let Some(next) = contract_degree2_run(&core) {
        core = next;
    }
    core
}

/// Computes `Δ(G)` when it is at most `bound`, and otherwise certifies that
/// it is larger.
pub fn recognize(g: &Graph, bound: u64, cfg: &SubdetConfig) -> Result<DeltaOutcome> {
    let decomposition = compute_decomposition(g, bound)?;
    if let DecompositionOutcome::Exceeds(certificate) = decomposition {
        return Ok(DeltaOutcome::Exceeds { certificate });
    }
    let core = shrink_unchecked(g);
    let threshold = BigInt::from(bound);

    let mut product = BigInt::one();
    let mut red = Vec::new();
    let mut cyan = Vec::new();
    for comp in core.components() {
        let c = &comp.graph;
        let result = if c.is_forest() && c.element_count() <= cfg.principal_cap {
            principal_search(c, &[], Some(&threshold), cfg)?
        } else {
            max_subdet_brute(c, Some(&threshold), cfg)?
        };
        product *= &result.value;
        red.extend(result.witness.red.iter().map(|&x| comp.to_host(x)));
        cyan.extend(result.witness.cyan.iter().map(|&x| comp.to_host(x)));
        if product > threshold {
            return Ok(DeltaOutcome::Exceeds {
                certificate: Certificate::SubdeterminantFound {
                    graph: core.clone(),
                    witness: ElementColoring::new(red, cyan),
                    value: product,
                },
            });
        }
    }
    Ok(DeltaOutcome::Exact { value: product })
}
