//! Smith normal form over the integers.
//!
//! [`smith_normal_form`] is the dense algorithm returning the unimodular
//! transforms. [`invariant_factors_sparse`] is the elimination used for
//! boundary matrices of exchange-graph 2-complexes, which are large but have
//! a handful of `±1` entries per row; it pivots on units first and only
//! falls back to the dense routine on whatever non-unit core remains.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::matrix::Matrix;
use crate::scalar::IntScalar;

/// `d = u * m * v` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry non-negative and dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: IntScalar> SmithDecomposition<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form<T: IntScalar>(m: &Matrix<T>) -> SmithDecomposition<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pr, pc)) = min_abs_entry(&a, t) else { break };
        a.swap_rows(t, pr);
        u.swap_rows(t, pr);
        a.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].clone() / a[(t, t)].clone();
                a.add_row_multiple(i, t, &-q.clone());
                u.add_row_multiple(i, t, &-q);
                if !a[(i, t)].is_zero() {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].clone() / a[(t, t)].clone();
                a.add_col_multiple(j, t, &-q.clone());
                v.add_col_multiple(j, t, &-q);
                if !a[(t, j)].is_zero() {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and redo
            let pivot = a[(t, t)].clone();
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(a[(i, j)].clone() % pivot.clone()).is_zero()));
            match offending {
                Some(i) => {
                    a.add_row_multiple(t, i, &T::one());
                    u.add_row_multiple(t, i, &T::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d: a, v }
}

fn min_abs_entry<T: IntScalar>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Nonzero invariant factors of a sparse integer matrix given as rows of
/// `(column, value)` pairs. The length of the result is the rank.
pub fn invariant_factors_sparse(rows: &[Vec<(usize, i64)>], ncols: usize) -> Vec<BigInt> {
    let mut mat: Vec<BTreeMap<usize, i64>> = rows
        .iter()
        .map(|r| {
            let mut m = BTreeMap::new();
            for &(c, v) in r {
                assert!(c < ncols, "column {c} out of range");
                *m.entry(c).or_insert(0) += v;
            }
            m.retain(|_, v| *v != 0);
            m
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in mat.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }
    let mut alive: BTreeSet<usize> = (0..mat.len()).filter(|&r| !mat[r].is_empty()).collect();
    let mut factors = Vec::new();

    loop {
        // unit pivot with the smallest fill-in estimate
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &alive {
            let rl = mat[r].len();
            for (&c, &v) in &mat[r] {
                if v.abs() == 1 {
                    let cost = (rl - 1) * (col_rows[c].len() - 1);
                    if best.is_none_or(|(_, _, b)| cost < b) {
                        best = Some((r, c, cost));
                    }
                }
            }
            if best.is_some_and(|(_, _, b)| b == 0) {
                break;
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let pivot_row = std::mem::take(&mut mat[pr]);
        let pv = pivot_row[&pc];
        for &c in pivot_row.keys() {
            col_rows[c].remove(&pr);
        }
        alive.remove(&pr);
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in targets {
            let f = mat[r][&pc] * pv;
            for (&c, &v) in &pivot_row {
                let e = mat[r].entry(c).or_insert(0);
                let was_zero = *e == 0;
                *e = e.checked_sub(f * v).expect("entry overflow in sparse elimination");
                if *e == 0 {
                    mat[r].remove(&c);
                    col_rows[c].remove(&r);
                } else if was_zero {
                    col_rows[c].insert(r);
                }
            }
            debug_assert!(!mat[r].contains_key(&pc));
            if mat[r].is_empty() {
                alive.remove(&r);
            }
        }
        factors.push(BigInt::from(1));
    }

    // non-unit core, if any, goes through the dense algorithm
    let rest: Vec<usize> = alive.iter().copied().collect();
    if !rest.is_empty() {
        let cols: Vec<usize> = {
            let mut s = BTreeSet::new();
            for &r in &rest {
                s.extend(mat[r].keys().copied());
            }
            s.into_iter().collect()
        };
        let index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense = Matrix::<BigInt>::zeros(rest.len(), cols.len());
        for (i, &r) in rest.iter().enumerate() {
            for (&c, &v) in &mat[r] {
                dense[(i, index[&c])] = BigInt::from(v);
            }
        }
        let snf = smith_normal_form(&dense);
        factors.extend(snf.diagonal().into_iter().filter(|x| *x != BigInt::from(0)));
    }
    factors
}
