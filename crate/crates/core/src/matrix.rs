//! Dense exact integer matrices and the matrices attached to a graph.

use std::fmt::Write as _;

use num_bigint::BigInt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Element, Graph};
use crate::scalar::ExactInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<T = BigInt> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
    row_labels: Option<Vec<Element>>,
    col_labels: Option<Vec<Element>>,
}

impl<T: ExactInt> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("ragged rows"));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        ExactMatrix {
            rows,
            cols,
            entries,
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn with_labels(mut self, row_labels: Vec<Element>, col_labels: Vec<Element>) -> Self {
        assert_eq!(row_labels.len(), self.rows);
        assert_eq!(col_labels.len(), self.cols);
        self.row_labels = Some(row_labels);
        self.col_labels = Some(col_labels);
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row_labels(&self) -> Option<&[Element]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[Element]> {
        self.col_labels.as_deref()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone());
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Every row's nonzero entries form one contiguous run.
    pub fn rows_have_consecutive_ones(&self) -> bool {
        (0..self.rows).all(|i| {
            let nz: Vec<usize> = (0..self.cols).filter(|&j| !self.get(i, j).is_zero()).collect();
            nz.windows(2).all(|w| w[1] == w[0] + 1)
        })
    }

    pub fn convert<U: ExactInt>(&self) -> Option<ExactMatrix<U>> {
        let entries = self
            .entries
            .iter()
            .map(|x| U::from_bigint(&x.to_bigint()))
            .collect::<Option<Vec<U>>>()?;
        Some(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        })
    }

    pub fn extract(&self, s: &SubmatrixSelector) -> Result<Self> {
        s.validate(self.rows, self.cols)?;
        let mut sub = Self::from_fn(s.rows.len(), s.cols.len(), |i, j| {
            self.get(s.rows[i], s.cols[j]).clone()
        });
        sub.row_labels = self
            .row_labels
            .as_ref()
            .map(|l| s.rows.iter().map(|&i| l[i]).collect());
        sub.col_labels = self
            .col_labels
            .as_ref()
            .map(|l| s.cols.iter().map(|&j| l[j]).collect());
        Ok(sub)
    }

    /// Exact determinant. Tries fraction-free elimination in `T` first and
    /// redoes it over [`BigInt`] if an intermediate overflows.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::input(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut work = self.entries.clone();
        if let Some(d) = bareiss(&mut work, self.rows) {
            return Ok(d.to_bigint());
        }
        let mut work: Vec<BigInt> = self.entries.iter().map(ExactInt::to_bigint).collect();
        Ok(bareiss(&mut work, self.rows).expect("bigint elimination cannot overflow"))
    }

    /// `<rows> <cols>` followed by one line of space-separated entries per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::input("empty matrix dump"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::input("bad matrix header")))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::input("matrix header must be `<rows> <cols>`"));
        };
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines.next().ok_or_else(|| Error::input("missing matrix row"))?;
            let row: Vec<T> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<BigInt>()
                        .ok()
                        .and_then(|b| T::from_bigint(&b))
                        .ok_or_else(|| Error::input(format!("bad matrix entry `{t}`")))
                })
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::input("matrix row has the wrong length"));
            }
            entries.extend(row);
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
            row_labels: None,
            col_labels: None,
        })
    }
}

/// Row and column index sets into a host matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmatrixSelector {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl SubmatrixSelector {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        SubmatrixSelector { rows, cols }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        SubmatrixSelector {
            rows: (0..rows).collect(),
            cols: (0..cols).collect(),
        }
    }

    pub fn from_masks(rows: u64, cols: u64) -> Self {
        SubmatrixSelector {
            rows: bits(rows),
            cols: bits(cols),
        }
    }

    fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        check_index_set(&self.rows, rows, "row")?;
        check_index_set(&self.cols, cols, "column")
    }
}

fn check_index_set(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; bound];
    for &i in idx {
        if i >= bound {
            return Err(Error::input(format!("{what} index {i} out of range 0..{bound}")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::input(format!("{what} index {i} selected twice")));
        }
    }
    Ok(())
}

pub(crate) fn bits(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Fraction-free Gaussian elimination on a row-major `n x n` buffer, which
/// is destroyed. Every intermediate is a minor of the input, and the
/// divisions are exact. `None` signals overflow of `T`.
pub fn bareiss<T: ExactInt>(a: &mut [T], n: usize) -> Option<T> {
    debug_assert_eq!(a.len(), n * n);
    if n == 0 {
        return Some(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let pivot = (k + 1..n).find(|&i| !a[i * n + k].is_zero());
            match pivot {
                Some(i) => {
                    for j in k..n {
                        a.swap(k * n + j, i * n + j);
                    }
                    negate = !negate;
                }
                None => return Some(T::zero()),
            }
        }
        let akk = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let lhs = a[i * n + j].checked_mul(&akk)?;
                let rhs = aik.checked_mul(&a[k * n + j])?;
                a[i * n + j] = lhs.checked_sub(&rhs)?.checked_exact_div(&prev)?;
            }
        }
        prev = akk;
    }
    let det = a[n * n - 1].clone();
    Some(if negate { -det } else { det })
}

/// Vertex-edge incidence matrix `B(G)`.
pub fn incidence_matrix<T: ExactInt>(g: &Graph) -> ExactMatrix<T> {
    let mut b = ExactMatrix::zeros(g.n(), g.m());
    for (j, e) in g.edges().iter().enumerate() {
        b.set(e.u, j, T::one());
        b.set(e.v, j, T::one());
    }
    b.with_labels(
        (0..g.n()).map(Element::Vertex).collect(),
        (0..g.m()).map(Element::Edge).collect(),
    )
}

/// `M(G) = [I B; Bᵀ I]`, the incidence relation on vertices followed by
/// edges in input order.
pub fn constraint_matrix<T: ExactInt>(g: &Graph) -> ExactMatrix<T> {
    let n = g.element_count();
    let mut m = ExactMatrix::identity(n);
    for (j, e) in g.edges().iter().enumerate() {
        let col = g.n() + j;
        for v in [e.u, e.v] {
            m.set(v, col, T::one());
            m.set(col, v, T::one());
        }
    }
    let labels: Vec<Element> = g.elements().collect();
    m.with_labels(labels.clone(), labels)
}

/// `N_k = [1 1ᵀ; 1 I]` of order `1 + k`; its determinant is `1 - k`.
pub fn near_pencil<T: ExactInt>(k: usize) -> Result<ExactMatrix<T>> {
    if k < 1 {
        return Err(Error::input("near-pencil order must be at least 1"));
    }
    Ok(ExactMatrix::from_fn(k + 1, k + 1, |i, j| {
        if i == 0 || j == 0 || i == j {
            T::one()
        } else {
            T::zero()
        }
    }))
}
