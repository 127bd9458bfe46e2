//! Direct enumeration engines.
//!
//! [`exhaustive`] visits every pair of equal-size row and column subsets and
//! evaluates each determinant on its own; it is the reference the faster
//! engines are checked against. [`principal`] restricts to `M[S, S]`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::matrix::{bareiss, ExactMatrix};
use num_traits::Signed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Best {
    pub value: BigInt,
    pub rows: u64,
    pub cols: u64,
    pub complete: bool,
}

impl Best {
    fn empty() -> Self {
        // the 0x0 minor
        Best {
            value: BigInt::from(1),
            rows: 0,
            cols: 0,
            complete: true,
        }
    }

    fn none() -> Self {
        Best {
            value: BigInt::from(0),
            rows: 0,
            cols: 0,
            complete: true,
        }
    }

    /// Larger value wins; ties go to the smaller `(rows, cols)`.
    fn offer(&mut self, value: BigInt, rows: u64, cols: u64) {
        if value > self.value || (value == self.value && (rows, cols) < (self.rows, self.cols)) {
            self.value = value;
            self.rows = rows;
            self.cols = cols;
        }
    }
}

fn det_of(a: &ExactMatrix<i64>, rows: &[usize], cols: &[usize], buf: &mut Vec<i64>) -> BigInt {
    let k = rows.len();
    buf.clear();
    for &i in rows {
        buf.extend(cols.iter().map(|&j| *a.get(i, j)));
    }
    match bareiss(buf, k) {
        Some(d) => BigInt::from(d.abs()),
        None => {
            let mut big: Vec<BigInt> = Vec::with_capacity(k * k);
            for &i in rows {
                big.extend(cols.iter().map(|&j| BigInt::from(*a.get(i, j))));
            }
            bareiss(&mut big, k).expect("bigint").abs()
        }
    }
}

/// All `k`-subsets of `0..n` as ascending bitmasks (Gosper's hack).
fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let start = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = Some(start);
    std::iter::from_fn(move || {
        let x = cur?;
        if x >= limit && !(k == 0 && n == 0) {
            return None;
        }
        cur = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(x)
    })
}

fn bit_list(mask: u64, out: &mut Vec<usize>) {
    out.clear();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
}

/// Size `k` ascending, row subsets as bitmasks, column subsets nested.
/// No pruning of any kind.
pub(crate) fn exhaustive(
    a: &ExactMatrix<i64>,
    forced_rows: u64,
    forced_cols: u64,
    threshold: Option<&BigInt>,
) -> Best {
    let (nr, nc) = (a.rows(), a.cols());
    let mut best = if forced_rows == 0 && forced_cols == 0 {
        Best::empty()
    } else {
        Best::none()
    };
    let (mut rl, mut cl, mut buf) = (Vec::new(), Vec::new(), Vec::new());
    for k in 1..=nr.min(nc) {
        for rmask in k_subsets(nr, k) {
            if forced_rows & !rmask != 0 {
                continue;
            }
            bit_list(rmask, &mut rl);
            for cmask in k_subsets(nc, k) {
                if forced_cols & !cmask != 0 {
                    continue;
                }
                bit_list(cmask, &mut cl);
                let d = det_of(a, &rl, &cl, &mut buf);
                if let Some(t) = threshold {
                    if d > *t {
                        return Best {
                            value: d,
                            rows: rmask,
                            cols: cmask,
                            complete: false,
                        };
                    }
                }
                best.offer(d, rmask, cmask);
            }
        }
    }
    best
}

/// Maximum over principal minors `M[S, S]` with `forced ⊆ S`.
///
/// A set containing an unforced element whose row and column are zero off
/// the diagonal, with diagonal entry 1, has the same determinant as the set
/// without it, which is smaller as a bitmask; such sets are skipped.
pub(crate) fn principal(a: &ExactMatrix<i64>, forced: u64, threshold: Option<&BigInt>) -> Best {
    let n = a.rows();
    assert!(a.is_square() && n < 63);
    let mut link = vec![0u64; n];
    let mut prunable = 0u64;
    for i in 0..n {
        for j in 0..n {
            if i != j && (*a.get(i, j) != 0 || *a.get(j, i) != 0) {
                link[i] |= 1 << j;
            }
        }
        if *a.get(i, i) == 1 && forced >> i & 1 == 0 {
            prunable |= 1 << i;
        }
    }

    let total = 1u64 << n;
    let chunk = (total / 512).max(1 << 10);
    let chunks = total.div_ceil(chunk);
    let scan = |c: u64| -> Best {
        let mut best = Best::none();
        let (mut idx, mut buf) = (Vec::new(), Vec::new());
        for s in c * chunk..((c + 1) * chunk).min(total) {
            if forced & !s != 0 {
                continue;
            }
            let mut rest = s & prunable;
            let mut skip = false;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                if link[i] & s == 0 {
                    skip = true;
                    break;
                }
                rest &= rest - 1;
            }
            if skip {
                continue;
            }
            bit_list(s, &mut idx);
            let d = det_of(a, &idx, &idx, &mut buf);
            if let Some(t) = threshold {
                if d > *t {
                    return Best {
                        value: d,
                        rows: s,
                        cols: s,
                        complete: false,
                    };
                }
            }
            best.offer(d, s, s);
        }
        best
    };
    let results: Vec<Best> = (0..chunks).into_par_iter().map(scan).collect();
    // An early stop in the lowest chunk that has one keeps results reproducible.
    if let Some(stop) = results.iter().find(|b| !b.complete) {
        return stop.clone();
    }
    results.into_iter().fold(Best::none(), |mut acc, b| {
        acc.offer(b.value, b.rows, b.cols);
        acc
    })
}
