//! Exact maximum subdeterminant by a row sweep with state merging.
//!
//! Rows are processed in a fixed order. Columns are ranked by the last
//! processed row that touches them, so at every step the columns split into
//! a *finished* prefix, an *active* window and an untouched suffix. A partial
//! choice (processed rows `P`, finished chosen columns `F`) is summarized by
//! the vector
//!
//! ```text
//! A  ->  det M[P, F ∪ A]        for A ⊆ active, |A| = |P| - |F|
//! ```
//!
//! By generalized Laplace expansion along `P`, every completion of the
//! choice has a determinant that is a fixed linear form in this vector.
//! Choices with proportional vectors therefore only need the one with the
//! largest multiplier, and the number of distinct vectors stays small when
//! the active window is narrow.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_bigint::BigInt;

use crate::scalar::ExactInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SweepOutcome<T> {
    /// Absolute value of the best determinant found.
    pub value: T,
    /// Row and column index masks of the witness.
    pub rows: u64,
    pub cols: u64,
    /// `false` when the threshold stopped the sweep early.
    pub complete: bool,
}

#[derive(Clone, Debug)]
struct Info<T> {
    mult: T,
    rows: u64,
    cols: u64,
}

impl<T: ExactInt> Info<T> {
    fn beats(&self, other: &Info<T>) -> bool {
        self.mult > other.mult
            || (self.mult == other.mult && (self.rows, self.cols) < (other.rows, other.cols))
    }
}

type Vector<T> = Vec<(u64, T)>;

fn merge<T: ExactInt>(states: &mut HashMap<Vector<T>, Info<T>>, vec: Vector<T>, info: Info<T>) {
    match states.entry(vec) {
        Entry::Occupied(mut slot) => {
            if info.beats(slot.get()) {
                slot.insert(info);
            }
        }
        Entry::Vacant(slot) => {
            slot.insert(info);
        }
    }
}

/// Divides out the content and fixes the sign of the leading entry.
/// Returns the content; `vec` must be nonempty with nonzero entries.
fn normalize<T: ExactInt>(vec: &mut [(u64, T)]) -> T {
    let mut g = T::zero();
    for (_, x) in vec.iter() {
        g = g.gcd(x);
    }
    let flip = vec[0].1.is_negative();
    for (_, x) in vec.iter_mut() {
        *x = x.clone() / g.clone();
        if flip {
            *x = -x.clone();
        }
    }
    g
}

pub(crate) struct SweepInput<'a, T> {
    /// Sparse rows: `(column, nonzero entry)`.
    pub rows: &'a [Vec<(usize, T)>],
    pub ncols: usize,
    /// Processing order of the rows, a permutation of `0..rows.len()`.
    pub order: &'a [usize],
    pub forced_rows: u64,
    pub forced_cols: u64,
    /// Stop as soon as some admissible subdeterminant exceeds this.
    pub threshold: Option<&'a BigInt>,
}

/// `None` when an intermediate value overflows `T`.
pub(crate) fn sweep<T: ExactInt>(input: &SweepInput<'_, T>) -> Option<SweepOutcome<T>> {
    let nrows = input.rows.len();
    assert!(nrows <= 64 && input.ncols <= 64);
    let zero_outcome = || {
        Some(SweepOutcome {
            value: T::zero(),
            rows: 0,
            cols: 0,
            complete: true,
        })
    };

    let mut pos = vec![0; nrows];
    for (p, &r) in input.order.iter().enumerate() {
        pos[r] = p;
    }
    let mut first = vec![usize::MAX; input.ncols];
    let mut last = vec![0usize; input.ncols];
    for (r, row) in input.rows.iter().enumerate() {
        for &(c, _) in row {
            first[c] = first[c].min(pos[r]);
            last[c] = last[c].max(pos[r]);
        }
    }
    // A forced zero column makes every admissible determinant vanish.
    if (0..input.ncols).any(|c| first[c] == usize::MAX && input.forced_cols >> c & 1 == 1) {
        return zero_outcome();
    }
    let mut ranked: Vec<usize> = (0..input.ncols).filter(|&c| first[c] != usize::MAX).collect();
    ranked.sort_by_key(|&c| (last[c], c));
    let mut rank = vec![usize::MAX; input.ncols];
    for (b, &c) in ranked.iter().enumerate() {
        rank[c] = b;
    }
    let ranked_rows: Vec<Vec<(u32, T)>> = input
        .rows
        .iter()
        .map(|row| {
            let mut r: Vec<(u32, T)> = row.iter().map(|(c, x)| (rank[*c] as u32, x.clone())).collect();
            r.sort_by_key(|e| e.0);
            r
        })
        .collect();
    let cols_of = |a: u64| -> u64 {
        let mut out = 0u64;
        let mut rest = a;
        while rest != 0 {
            out |= 1u64 << ranked[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    };
    let threshold: Option<T> = match input.threshold {
        Some(t) => T::from_bigint(t),
        None => None,
    };
    let last_forced_row = (0..nrows)
        .filter(|&r| input.forced_rows >> r & 1 == 1)
        .map(|r| pos[r])
        .max();

    let mut states: HashMap<Vector<T>, Info<T>> = HashMap::new();
    states.insert(
        vec![(0, T::one())],
        Info {
            mult: T::one(),
            rows: 0,
            cols: 0,
        },
    );
    let mut cursor = 0; // next ranked column to finish
    for (p, &r) in input.order.iter().enumerate() {
        let forced_row = input.forced_rows >> r & 1 == 1;
        let row = &ranked_rows[r];
        let mut next: HashMap<Vector<T>, Info<T>> = HashMap::with_capacity(states.len() * 2);
        for (vec, info) in states {
            if !row.is_empty() {
                let k = vec[0].0.count_ones();
                let mut acc: HashMap<u64, T> = HashMap::with_capacity(vec.len() * row.len());
                for (a, val) in &vec {
                    for (b, x) in row {
                        let bit = 1u64 << b;
                        if a & bit != 0 {
                            continue;
                        }
                        let mut term = val.checked_mul(x)?;
                        if (k + (a & (bit - 1)).count_ones()) % 2 == 1 {
                            term = -term;
                        }
                        let slot = acc.entry(a | bit).or_insert_with(T::zero);
                        *slot = slot.checked_add(&term)?;
                    }
                }
                let mut grown: Vector<T> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                if !grown.is_empty() {
                    grown.sort_unstable_by_key(|e| e.0);
                    let g = normalize(&mut grown);
                    let grown_info = Info {
                        mult: info.mult.checked_mul(&g)?,
                        rows: info.rows | 1u64 << r,
                        cols: info.cols,
                    };
                    merge(&mut next, grown, grown_info);
                }
            }
            if !forced_row {
                merge(&mut next, vec, info);
            }
        }
        states = next;

        if let Some(t) = &threshold {
            let rows_ok = last_forced_row.is_none_or(|lf| p >= lf);
            if rows_ok {
                for (vec, info) in &states {
                    for (a, val) in vec {
                        let cols = info.cols | cols_of(*a);
                        if input.forced_cols & !cols != 0 {
                            continue;
                        }
                        let v = val.checked_mul(&info.mult)?.abs();
                        if v > *t {
                            return Some(SweepOutcome {
                                value: v,
                                rows: info.rows,
                                cols,
                                complete: false,
                            });
                        }
                    }
                }
            }
        }

        while cursor < ranked.len() && last[ranked[cursor]] == p {
            let c = ranked[cursor];
            let bit = 1u64 << cursor;
            let forced_col = input.forced_cols >> c & 1 == 1;
            let mut next: HashMap<Vector<T>, Info<T>> = HashMap::with_capacity(states.len() * 2);
            for (vec, info) in states {
                let chosen: Vector<T> = vec
                    .iter()
                    .filter(|(a, _)| a & bit != 0)
                    .map(|(a, x)| (a & !bit, x.clone()))
                    .collect();
                if !chosen.is_empty() {
                    let mut chosen = chosen;
                    let g = normalize(&mut chosen);
                    let ci = Info {
                        mult: info.mult.checked_mul(&g)?,
                        rows: info.rows,
                        cols: info.cols | 1u64 << c,
                    };
                    merge(&mut next, chosen, ci);
                }
                if !forced_col {
                    let mut kept: Vector<T> = vec.into_iter().filter(|(a, _)| a & bit == 0).collect();
                    if !kept.is_empty() {
                        let g = normalize(&mut kept);
                        let ki = Info {
                            mult: info.mult.checked_mul(&g)?,
                            rows: info.rows,
                            cols: info.cols,
                        };
                        merge(&mut next, kept, ki);
                    }
                }
            }
            states = next;
            cursor += 1;
        }
        if states.is_empty() {
            return zero_outcome();
        }
    }

    // Every surviving state now holds the vector {∅: 1}.
    let (_, best) = states
        .into_iter()
        .reduce(|a, b| if b.1.beats(&a.1) { b } else { a })?;
    Some(SweepOutcome {
        value: best.mult,
        rows: best.rows,
        cols: best.cols,
        complete: true,
    })
}
