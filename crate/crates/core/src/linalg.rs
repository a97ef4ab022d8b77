//! Row reduction over a finite field on flat row-major matrices.

use crate::field::{Elem, Field};

/// Brings the `rows x cols` matrix to reduced row echelon form in place and
/// returns the pivot columns. Rows past the rank end up zero.
pub fn rref(f: &Field, m: &mut [Elem], rows: usize, cols: usize) -> Vec<usize> {
    debug_assert_eq!(m.len(), rows * cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(src) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
            continue;
        };
        if src != r {
            for j in 0..cols {
                m.swap(src * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            m[r * cols + j] = f.mul(m[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m[i * cols + c];
            if factor.is_zero() {
                continue;
            }
            let neg = f.neg(factor);
            for j in c..cols {
                let v = m[r * cols + j];
                if !v.is_zero() {
                    m[i * cols + j] = f.mul_add(neg, v, m[i * cols + j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, m: &[Elem], rows: usize, cols: usize) -> usize {
    let mut work = m.to_vec();
    rref(f, &mut work, rows, cols).len()
}

/// Basis of `{x : M x = 0}`, one vector per free column, each with a 1 in its
/// free column.
pub fn null_space(f: &Field, m: &[Elem], rows: usize, cols: usize) -> Vec<Vec<Elem>> {
    let mut work = m.to_vec();
    let pivots = rref(f, &mut work, rows, cols);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Elem::ZERO; cols];
            v[free] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(work[r * cols + free]);
            }
            v
        })
        .collect()
}

/// Determinant of a square matrix by elimination.
pub fn det(f: &Field, m: &[Elem], n: usize) -> Elem {
    let mut a = m.to_vec();
    let mut acc = Elem::ONE;
    for c in 0..n {
        let Some(src) = (c..n).find(|&i| !a[i * n + c].is_zero()) else {
            return Elem::ZERO;
        };
        if src != c {
            for j in 0..n {
                a.swap(src * n + j, c * n + j);
            }
            acc = f.neg(acc);
        }
        let pivot = a[c * n + c];
        acc = f.mul(acc, pivot);
        let inv = f.inv(pivot).expect("pivot is nonzero");
        for i in c + 1..n {
            let factor = f.mul(a[i * n + c], inv);
            if factor.is_zero() {
                continue;
            }
            let neg = f.neg(factor);
            for j in c..n {
                a[i * n + j] = f.mul_add(neg, a[c * n + j], a[i * n + j]);
            }
        }
    }
    acc
}
