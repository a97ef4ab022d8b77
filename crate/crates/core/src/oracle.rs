//! Brute-force reference computations. These deliberately avoid the pruning
//! and linear-algebra shortcuts of the main searches so that the two can be
//! compared.

use crate::field::Elem;
use crate::grassmann::{Grassmannian, Subspace};
use crate::tensor::{AltTensor, Tensor};

/// Largest `k` with an isotropic `k`-subspace, scanning `Gr(k, n)` for
/// `k = n, n-1, ...`; the witness is the first isotropic subspace found.
pub fn alpha_alt_scan(t: &AltTensor) -> (usize, Subspace) {
    let f = t.field();
    for k in (0..=t.n()).rev() {
        if let Some(v) = Grassmannian::new(f, t.n(), k).find(|v| t.is_isotropic(v).expect("same ambient")) {
            return (k, v);
        }
    }
    unreachable!("the zero subspace is always isotropic")
}

/// Every `d`-tuple of planes annihilating `t`, by testing the full product.
pub fn dt_scan(t: &Tensor) -> Vec<Vec<Subspace>> {
    let planes: Vec<Subspace> = Grassmannian::new(t.field(), t.n(), 2).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; t.d()];
    if planes.is_empty() {
        return out;
    }
    loop {
        let tuple: Vec<&Subspace> = idx.iter().map(|&i| &planes[i]).collect();
        if t.restrict_zero(&tuple).expect("same ambient") {
            out.push(tuple.into_iter().cloned().collect());
        }
        let mut j = t.d();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < planes.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// Number of `d`-tuples of vectors of `F_q^n` on which `t` vanishes, by
/// evaluating every tuple.
pub fn zero_count_scan(t: &Tensor) -> u64 {
    let f = t.field();
    let vectors = Subspace::full(t.n()).vectors(f);
    let d = t.d();
    let mut idx = vec![0usize; d];
    let mut count = 0u64;
    loop {
        let args: Vec<&[Elem]> = idx.iter().map(|&i| vectors[i].as_slice()).collect();
        if t.eval(&args).expect("valid arguments").iter().all(|c| c.is_zero()) {
            count += 1;
        }
        let mut j = d;
        loop {
            if j == 0 {
                return count;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < vectors.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}
