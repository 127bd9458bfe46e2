//! Maximum absolute subdeterminant `Δ(G)` of the constraint matrix `M(G)`.
//!
//! Three engines compute it exactly:
//!
//! * [`Engine::Sweep`] (default) sweeps the rows of `M(G)` and merges partial
//!   selections whose pending minors are proportional; see `sweep.rs`.
//! * [`Engine::Exhaustive`] evaluates every square submatrix separately.
//!   Slow, but it shares no code with the sweep beyond the matrix builder,
//!   which makes it the reference for cross-checks.
//! * [`max_subdet_principal`] enumerates principal submatrices only, which
//!   is exact for forests.
//!
//! All engines report the witness with the lexicographically smallest
//! `(row mask, column mask)` among the maximizers, where bit `i` is the
//! element with index `i` in `M(G)`.

mod enumerate;
mod sweep;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Element, Graph};
use crate::matrix::{constraint_matrix, SubmatrixSelector};
use crate::scalar::ExactInt;

use self::enumerate::Best;
use self::sweep::{SweepInput, SweepOutcome};

/// Rows (red) and columns (cyan) of a square submatrix of `M(G)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementColoring {
    pub red: Vec<Element>,
    pub cyan: Vec<Element>,
}

impl ElementColoring {
    pub fn new(mut red: Vec<Element>, mut cyan: Vec<Element>) -> Self {
        red.sort();
        red.dedup();
        cyan.sort();
        cyan.dedup();
        ElementColoring { red, cyan }
    }

    pub fn from_masks(g: &Graph, rows: u64, cols: u64) -> Self {
        let pick = |mask: u64| {
            crate::matrix::bits(mask)
                .into_iter()
                .map(|i| g.element_at(i))
                .collect()
        };
        ElementColoring {
            red: pick(rows),
            cyan: pick(cols),
        }
    }

    pub fn principal(elements: Vec<Element>) -> Self {
        Self::new(elements.clone(), elements)
    }

    pub fn is_square(&self) -> bool {
        self.red.len() == self.cyan.len()
    }

    pub fn bichromatic(&self) -> Vec<Element> {
        self.red
            .iter()
            .filter(|x| self.cyan.binary_search(x).is_ok())
            .copied()
            .collect()
    }

    pub fn monochromatic(&self) -> Vec<Element> {
        let mut out: Vec<Element> = self
            .red
            .iter()
            .filter(|x| self.cyan.binary_search(x).is_err())
            .chain(self.cyan.iter().filter(|x| self.red.binary_search(x).is_err()))
            .copied()
            .collect();
        out.sort();
        out
    }

    pub fn selector(&self, g: &Graph) -> Result<SubmatrixSelector> {
        for &x in self.red.iter().chain(&self.cyan) {
            g.check_element(x)?;
        }
        Ok(SubmatrixSelector::new(
            self.red.iter().map(|&x| g.element_index(x)).collect(),
            self.cyan.iter().map(|&x| g.element_index(x)).collect(),
        ))
    }

    /// `det M(G)[red, cyan]` with rows and columns in element order.
    pub fn determinant(&self, g: &Graph) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::input(
                "coloring has different numbers of red and cyan elements",
            ));
        }
        constraint_matrix::<i64>(g)
            .extract(&self.selector(g)?)?
            .determinant()
    }

    /// Parses `red: v1 e2 / cyan: v1 e1`.
    pub fn parse(text: &str) -> Result<Self> {
        let (red, cyan) = text
            .split_once('/')
            .ok_or_else(|| Error::input("coloring must look like `red: ... / cyan: ...`"))?;
        let list = |part: &str, key: &str| -> Result<Vec<Element>> {
            let body = part
                .trim()
                .strip_prefix(key)
                .ok_or_else(|| Error::input(format!("expected `{key}` in coloring")))?;
            body.split_whitespace().map(str::parse).collect()
        };
        Ok(Self::new(list(red, "red:")?, list(cyan, "cyan:")?))
    }
}

impl fmt::Display for ElementColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[Element]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        write!(f, "red: {} / cyan: {}", join(&self.red), join(&self.cyan))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubdetMode {
    Full,
    Principal,
    Forced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdetResult {
    /// Largest `|det|` found; `Δ(G)` when `exact` is set.
    pub value: BigInt,
    pub witness: ElementColoring,
    pub mode: SubdetMode,
    /// Cleared when an early-exit threshold stopped the search; `value` is
    /// then only known to exceed the threshold.
    pub exact: bool,
}

impl SubdetResult {
    fn from_masks(g: &Graph, value: BigInt, rows: u64, cols: u64, mode: SubdetMode, exact: bool) -> Self {
        SubdetResult {
            value,
            witness: ElementColoring::from_masks(g, rows, cols),
            mode,
            exact,
        }
    }

    /// Recomputes the witness determinant and compares it with `value`.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        Ok(self.witness.determinant(g)?.abs() == self.value)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Sweep,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdetConfig {
    /// Largest `n + m` for full and forced searches.
    pub full_cap: usize,
    /// Largest `n + m` for a full search that has an early-exit threshold.
    pub early_exit_cap: usize,
    /// Largest `n + m` for principal enumeration.
    pub principal_cap: usize,
    pub engine: Engine,
}

impl Default for SubdetConfig {
    fn default() -> Self {
        SubdetConfig {
            full_cap: 14,
            early_exit_cap: 24,
            principal_cap: 22,
            engine: Engine::Sweep,
        }
    }
}

impl SubdetConfig {
    pub fn with_full_cap(mut self, cap: usize) -> Self {
        self.full_cap = cap;
        self.early_exit_cap = self.early_exit_cap.max(cap);
        self
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }
}

/// Row order for the sweep: breadth-first over the incidence relation,
/// each component started from an element of least degree, neighbors taken
/// by ascending degree.
fn sweep_order(g: &Graph) -> Vec<usize> {
    let n = g.element_count();
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            g.incident_elements(g.element_at(i))
                .into_iter()
                .map(|x| g.element_index(x))
                .collect()
        })
        .collect();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&i| (nbrs[i].len(), i));
    let mut queue = VecDeque::new();
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            let mut next: Vec<usize> = nbrs[x].iter().copied().filter(|&y| !seen[y]).collect();
            next.sort_by_key(|&y| (nbrs[y].len(), y));
            for y in next {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    order
}

fn forced_mask(g: &Graph, forced: &[Element]) -> Result<u64> {
    let mut mask = 0u64;
    for &x in forced {
        g.check_element(x)?;
        mask |= 1u64 << g.element_index(x);
    }
    Ok(mask)
}

fn run_sweep(g: &Graph, forced: u64, threshold: Option<&BigInt>) -> SweepOutcome<BigInt> {
    let n = g.element_count();
    let order = sweep_order(g);
    let rows_i64: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|i| {
            let mut row: Vec<(usize, i64)> = std::iter::once(i)
                .chain(
                    g.incident_elements(g.element_at(i))
                        .into_iter()
                        .map(|x| g.element_index(x)),
                )
                .map(|j| (j, 1))
                .collect();
            row.sort_unstable();
            row
        })
        .collect();
    let input = SweepInput {
        rows: &rows_i64,
        ncols: n,
        order: &order,
        forced_rows: forced,
        forced_cols: forced,
        threshold,
    };
    if let Some(out) = sweep::sweep(&input) {
        return SweepOutcome {
            value: out.value.to_bigint(),
            rows: out.rows,
            cols: out.cols,
            complete: out.complete,
        };
    }
    let rows_big: Vec<Vec<(usize, BigInt)>> = rows_i64
        .iter()
        .map(|r| r.iter().map(|&(j, x)| (j, BigInt::from(x))).collect())
        .collect();
    let input = SweepInput {
        rows: &rows_big,
        ncols: n,
        order: &order,
        forced_rows: forced,
        forced_cols: forced,
        threshold,
    };
    sweep::sweep(&input).expect("bigint sweep cannot overflow")
}

fn full_search(
    g: &Graph,
    forced: u64,
    early_exit: Option<&BigInt>,
    cfg: &SubdetConfig,
    mode: SubdetMode,
) -> Result<SubdetResult> {
    let size = g.element_count();
    let cap = if early_exit.is_some() {
        cfg.early_exit_cap.max(cfg.full_cap)
    } else {
        cfg.full_cap
    };
    if size > cap || size > 63 {
        return Err(Error::Size {
            what: "n + m",
            size,
            cap: cap.min(63),
        });
    }
    let (value, rows, cols, complete) = match cfg.engine {
        Engine::Sweep => {
            let out = run_sweep(g, forced, early_exit);
            (out.value, out.rows, out.cols, out.complete)
        }
        Engine::Exhaustive => {
            let best = enumerate::exhaustive(&constraint_matrix(g), forced, forced, early_exit);
            (best.value, best.rows, best.cols, best.complete)
        }
    };
    Ok(SubdetResult::from_masks(g, value, rows, cols, mode, complete))
}

/// `Δ(G)` over all square submatrices of `M(G)`.
///
/// With `early_exit = Some(t)` the search may stop at the first submatrix
/// whose `|det|` exceeds `t`; the result then has `exact == false`.
pub fn max_subdet_brute(g: &Graph, early_exit: Option<&BigInt>, cfg: &SubdetConfig) -> Result<SubdetResult> {
    full_search(g, 0, early_exit, cfg, SubdetMode::Full)
}

/// Maximum `|det|` over square submatrices whose rows and columns both
/// contain every forced element.
pub fn max_subdet_forced(g: &Graph, forced: &[Element], cfg: &SubdetConfig) -> Result<SubdetResult> {
    let mask = forced_mask(g, forced)?;
    let mode = if forced.is_empty() {
        SubdetMode::Full
    } else {
        SubdetMode::Forced
    };
    full_search(g, mask, None, cfg, mode)
}

/// Maximum `|det M[S, S]|` over element sets `S`; equals `Δ(G)` on forests.
pub fn max_subdet_principal(g: &Graph, cfg: &SubdetConfig) -> Result<SubdetResult> {
    principal_search(g, &[], None, cfg)
}

/// Principal search with forced elements and an optional early exit.
pub fn principal_search(
    g: &Graph,
    forced: &[Element],
    early_exit: Option<&BigInt>,
    cfg: &SubdetConfig,
) -> Result<SubdetResult> {
    if !g.is_forest() {
        return Err(Error::precondition("principal mode needs a forest"));
    }
    let size = g.element_count();
    if size > cfg.principal_cap || size > 62 {
        return Err(Error::Size {
            what: "n + m",
            size,
            cap: cfg.principal_cap.min(62),
        });
    }
    let mask = forced_mask(g, forced)?;
    let Best {
        value,
        rows,
        cols,
        complete,
    } = enumerate::principal(&constraint_matrix(g), mask, early_exit);
    let mode = if forced.is_empty() {
        SubdetMode::Principal
    } else {
        SubdetMode::Forced
    };
    Ok(SubdetResult::from_masks(g, value, rows, cols, mode, complete))
}

/// Principal enumeration on forests, full search otherwise.
pub fn max_subdet_auto(g: &Graph, early_exit: Option<&BigInt>, cfg: &SubdetConfig) -> Result<SubdetResult> {
    if g.is_forest() && g.element_count() <= cfg.principal_cap {
        principal_search(g, &[], early_exit, cfg)
    } else {
        max_subdet_brute(g, early_exit, cfg)
    }
}

/// `Δ(G)` as the product of `Δ` over the connected components.
pub fn delta_by_components<F>(g: &Graph, mut per_component: F) -> Result<BigInt>
where
    F: FnMut(&Graph) -> Result<BigInt>,
{
    let mut product = BigInt::one();
    for c in g.components() {
        product *= per_component(&c.graph)?;
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn brute(g: &Graph) -> BigInt {
        max_subdet_brute(g, None, &SubdetConfig::default().with_full_cap(24))
            .unwrap()
            .value
    }

    #[test]
    fn small_named_graphs() {
        let p4 = generate(Family::Path { n: 4 }, 0).unwrap();
        assert_eq!(brute(&p4), BigInt::from(1));
        let c4 = generate(Family::Cycle { n: 4 }, 0).unwrap();
        assert_eq!(brute(&c4), BigInt::from(3));
        let k13 = generate(Family::Star { k: 3 }, 0).unwrap();
        assert_eq!(brute(&k13), BigInt::from(2));
    }

    #[test]
    fn principal_on_forests() {
        let cfg = SubdetConfig::default();
        let k14 = generate(Family::Star { k: 4 }, 0).unwrap();
        assert_eq!(max_subdet_principal(&k14, &cfg).unwrap().value, BigInt::from(3));
        let edge = generate(Family::Path { n: 2 }, 0).unwrap();
        assert_eq!(max_subdet_principal(&edge, &cfg).unwrap().value, BigInt::from(1));
        let c3 = generate(Family::Cycle { n: 3 }, 0).unwrap();
        assert!(matches!(
            max_subdet_principal(&c3, &cfg),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn forced_elements() {
        let cfg = SubdetConfig::default();
        let p3 = generate(Family::Path { n: 3 }, 0).unwrap();
        let r = max_subdet_forced(&p3, &[Element::Vertex(1)], &cfg).unwrap();
        assert_eq!(r.value, BigInt::from(1));
        assert!(r.witness.red.contains(&Element::Vertex(1)));
        assert!(r.witness.cyan.contains(&Element::Vertex(1)));
        assert!(max_subdet_forced(&p3, &[Element::Edge(5)], &cfg).is_err());

        let c5 = generate(Family::Cycle { n: 5 }, 0).unwrap();
        let free = max_subdet_forced(&c5, &[], &cfg).unwrap();
        assert_eq!(free, max_subdet_brute(&c5, None, &cfg).unwrap());
    }

    #[test]
    fn size_cap() {
        let c9 = generate(Family::Cycle { n: 9 }, 0).unwrap();
        let err = max_subdet_brute(&c9, None, &SubdetConfig::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::Size {
                size: 18,
                cap: 14,
                ..
            }
        ));
        // allowed with a threshold
        let t = BigInt::from(1);
        let r = max_subdet_brute(&c9, Some(&t), &SubdetConfig::default()).unwrap();
        assert!(r.value > t);
        assert!(r.verify(&c9).unwrap());
    }

    #[test]
    fn components_multiply() {
        let two = generate(Family::Cycle { n: 3 }, 0)
            .unwrap()
            .disjoint_union(&generate(Family::Cycle { n: 3 }, 0).unwrap());
        let d = delta_by_components(&two, |c| Ok(brute(c))).unwrap();
        assert_eq!(d, BigInt::from(4));
        let mixed = generate(Family::Cycle { n: 3 }, 0)
            .unwrap()
            .disjoint_union(&generate(Family::Path { n: 5 }, 0).unwrap());
        assert_eq!(
            delta_by_components(&mixed, |c| Ok(brute(c))).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            delta_by_components(&Graph::empty(), |c| Ok(brute(c))).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn coloring_text() {
        let c = ElementColoring::new(
            vec![Element::Edge(1), Element::Vertex(0), Element::Vertex(2)],
            vec![Element::Vertex(0), Element::Edge(0), Element::Edge(1)],
        );
        assert_eq!(c.to_string(), "red: v1 v3 e2 / cyan: v1 e1 e2");
        assert_eq!(ElementColoring::parse(&c.to_string()).unwrap(), c);
        assert_eq!(c.bichromatic(), vec![Element::Vertex(0), Element::Edge(1)]);
        assert_eq!(c.monochromatic(), vec![Element::Vertex(2), Element::Edge(0)]);
        assert!(ElementColoring::parse("v1 / e1").is_err());
    }
}
