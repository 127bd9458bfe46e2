use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Edge, Graph};
use crate::error::{Error, Result};

/// Graph families used for tests and corpora. All weights are 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    /// `K_{1,k}`, center first.
    Star {
        k: usize,
    },
    /// A center joined to `branches` vertices, each carrying `leaves` leaves.
    Spider {
        branches: usize,
        leaves: usize,
    },
    /// Every vertex `i > 0` attaches to a uniform choice among "no parent"
    /// and the vertices `0..i`.
    RandomForest {
        n: usize,
    },
    /// `m` distinct edges drawn uniformly without replacement.
    RandomSparse {
        n: usize,
        m: usize,
    },
}

/// Deterministic for a fixed `seed`; the deterministic families ignore it.
pub fn generate(family: Family, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)>;
    let n;
    match family {
        Family::Path { n: k } => {
            n = k;
            pairs = (1..k).map(|i| (i - 1, i)).collect();
        }
        Family::Cycle { n: k } => {
            if k < 3 {
                return Err(Error::input(format!("cycle needs n >= 3, got {k}")));
            }
            n = k;
            pairs = (0..k).map(|i| (i, (i + 1) % k)).collect();
        }
        Family::Star { k } => {
            n = k + 1;
            pairs = (1..=k).map(|i| (0, i)).collect();
        }
        Family::Spider { branches, leaves } => {
            n = 1 + branches * (1 + leaves);
            let mut p: Vec<(usize, usize)> = (1..=branches).map(|b| (0, b)).collect();
            for b in 1..=branches {
                let first_leaf = 1 + branches + (b - 1) * leaves;
                p.extend((first_leaf..first_leaf + leaves).map(|l| (b, l)));
            }
            pairs = p;
        }
        Family::RandomForest { n: k } => {
            n = k;
            pairs = (1..k)
                .filter_map(|i| {
                    let parent = rng.gen_range(0..=i);
                    (parent < i).then_some((parent, i))
                })
                .collect();
        }
        Family::RandomSparse { n: k, m } => {
            let slots = k * k.saturating_sub(1) / 2;
            if m > slots {
                return Err(Error::input(format!(
                    "random_sparse: {m} edges do not fit in {k} vertices"
                )));
            }
            n = k;
            let mut chosen: Vec<usize> = sample(&mut rng, slots, m).into_vec();
            chosen.sort_unstable();
            pairs = chosen.into_iter().map(unrank_pair).collect();
        }
    }
    Graph::unweighted(n, &pairs)
}

/// The `s`-th pair `(u, v)`, `u < v`, in colexicographic order.
fn unrank_pair(s: usize) -> (usize, usize) {
    let mut v = 1;
    while v * (v + 1) / 2 <= s {
        v += 1;
    }
    (s - v * (v - 1) / 2, v)
}

/// Replaces all weights by independent uniform draws from `lo..=hi`.
pub fn with_random_weights(g: &Graph, lo: i64, hi: i64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vw = (0..g.n()).map(|_| rng.gen_range(lo..=hi)).collect();
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge {
            weight: rng.gen_range(lo..=hi),
            ..*e
        })
        .collect();
    Graph::new(vw, edges).expect("reweighting keeps the graph simple")
}
