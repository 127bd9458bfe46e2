//! Shared corpora and independent oracles for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tmdelta::{generate, Family, Graph, SubdetConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cofactor expansion along the first row. Exponential, only for tiny inputs.
pub fn laplace_det(a: &[Vec<i64>]) -> BigInt {
    let k = a.len();
    if k == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::from(0);
    for j in 0..k {
        if a[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let term = BigInt::from(a[0][j]) * laplace_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `M(G)` written out directly from the definition.
pub fn dense_m(g: &Graph) -> Vec<Vec<i64>> {
    let (n, m) = (g.n(), g.m());
    let mut a = vec![vec![0i64; n + m]; n + m];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1;
    }
    for (e, edge) in g.edges().iter().enumerate() {
        for v in [edge.u, edge.v] {
            a[v][n + e] = 1;
            a[n + e][v] = 1;
        }
    }
    a
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Maximum `|det|` over every square submatrix by cofactor expansion.
pub fn laplace_max_subdet(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    let mut best = BigInt::from(1);
    for k in 1..=n {
        let sets = subsets(n, k);
        for r in &sets {
            for c in &sets {
                let sub: Vec<Vec<i64>> = r.iter().map(|&i| c.iter().map(|&j| a[i][j]).collect()).collect();
                let d = laplace_det(&sub);
                let d = if d < BigInt::from(0) { -d } else { d };
                if d > best {
                    best = d;
                }
            }
        }
    }
    best
}

/// Random simple graph with `n + m <= max_elements`, at least one vertex.
pub fn random_graph(r: &mut ChaCha8Rng, max_elements: usize) -> Graph {
    let n = r.gen_range(1..=max_elements.clamp(1, 10));
    let room = (max_elements - n).min(n * (n - 1) / 2);
    let m = r.gen_range(0..=room);
    generate(Family::RandomSparse { n, m }, r.gen()).unwrap()
}

pub fn random_forest(r: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = r.gen_range(1..=max_n);
    generate(Family::RandomForest { n }, r.gen()).unwrap()
}

pub fn random_weights(r: &mut ChaCha8Rng, g: &Graph, lo: i64, hi: i64) -> Graph {
    let vw = (0..g.n()).map(|_| r.gen_range(lo..=hi)).collect();
    let ew: Vec<i64> = (0..g.m()).map(|_| r.gen_range(lo..=hi)).collect();
    g.with_weights(vw, &ew).unwrap()
}

fn distance(g: &Graph, a: usize, b: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[a] = 0;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for &(w, _) in g.neighbors(x) {
            if dist[w] == usize::MAX {
                dist[w] = dist[x] + 1;
                queue.push_back(w);
            }
        }
    }
    (dist[b] != usize::MAX).then_some(dist[b])
}

/// A random graph with a path of at least seven degree-2 vertices spliced
/// between two vertices of a small random core that are at distance at
/// least 4 (or disconnected), so the run can be contracted.
pub fn graph_with_long_run(r: &mut ChaCha8Rng, core_elements: usize, extra: usize) -> Graph {
    loop {
        let core = random_graph(r, core_elements);
        if core.n() < 2 {
            continue;
        }
        let a = r.gen_range(0..core.n());
        let b = (a + 1 + r.gen_range(0..core.n() - 1)) % core.n();
        if distance(&core, a, b).is_some_and(|d| d < 4) {
            continue;
        }
        let len = 7 + r.gen_range(0..=extra);
        let n = core.n() + len;
        let mut pairs: Vec<(usize, usize)> = core.edges().iter().map(|e| (e.u, e.v)).collect();
        let mut prev = a;
        for i in 0..len {
            pairs.push((prev, core.n() + i));
            prev = core.n() + i;
        }
        pairs.push((prev, b));
        return Graph::unweighted(n, &pairs).unwrap();
    }
}

pub fn roomy() -> SubdetConfig {
    SubdetConfig::default().with_full_cap(40)
}
