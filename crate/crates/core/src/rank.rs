//! Zero-set counts and analytic rank of multilinear maps over `F_q`.
//!
//! For `T: (F_q^N)^d -> F_q^m` the zero set `Z_T` is the set of `d`-tuples on
//! which `T` vanishes and `AR(T) = dN - log_q |Z_T|`. The rank is kept as the
//! exact pair `(dN, |Z_T|)`; `AR <= m` is decided by the integer comparison
//! `|Z_T| >= q^(dN - m)` and the decimal value is for display only.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::grassmann::{check_cap, Subspace};
use crate::linalg;
use crate::oracle;
use crate::tensor::Tensor;

fn check_enumeration(t: &Tensor, cap: u64) -> Result<()> {
    let q = BigUint::from(t.field().order());
    check_cap("zero-set tuples", &q.pow((t.d() * t.n()) as u32), cap)
}

/// `|Z_T|`, summing `q^(N - rank)` over the linear maps left in `slot` after
/// fixing every other argument.
pub fn zero_count_in_slot(t: &Tensor, slot: usize, cap: u64) -> Result<BigUint> {
    if slot >= t.d() {
        return Err(Error::pre(format!("slot {slot} out of range for d = {}", t.d())));
    }
    check_enumeration(t, cap)?;
    let f = t.field();
    let n = t.n();
    let q = f.order() as u64;
    let vectors = Subspace::full(n).vectors(f);
    let outer = t.d() - 1;
    let total = (vectors.len() as u64).pow(outer as u32);
    // kernel sizes q^(n - r) for r = 0..=n
    let sizes: Vec<u64> = (0..=n).map(|r| q.pow((n - r) as u32)).collect();
    let sum: u128 = (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut others: Vec<&[Elem]> = vec![&[]; outer];
            for slot_arg in others.iter_mut().rev() {
                *slot_arg = &vectors[(code % vectors.len() as u64) as usize];
                code /= vectors.len() as u64;
            }
            let mat = t.slot_matrix(slot, &others).expect("valid arguments");
            let r = linalg::rank(f, &mat, t.m(), n);
            sizes[r] as u128
        })
        .sum();
    Ok(BigUint::from(sum))
}

/// `|Z_T|` by the first-slot kernel count.
pub fn zero_count(t: &Tensor, cap: u64) -> Result<BigUint> {
    zero_count_in_slot(t, 0, cap)
}

/// `|Z_T|` by evaluating `T` on every tuple.
pub fn zero_count_raw(t: &Tensor, cap: u64) -> Result<BigUint> {
    check_enumeration(t, cap)?;
    Ok(BigUint::from(oracle::zero_count_scan(t)))
}

/// The trivial partition-rank bound: the `m` coordinate maps.
pub fn partition_rank_bound(t: &Tensor) -> usize {
    t.m()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub q: u32,
    pub zero_count: BigUint,
    /// `d N`, the log of the number of tuples.
    pub dn1: u64,
    pub bound_m: usize,
    pub ar_leq_m: bool,
    pub ar_decimal: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankJson {
    pub zero_count: String,
    pub dn1: u64,
    pub ar_leq_m: bool,
    pub ar_decimal: f64,
    pub bound_m: usize,
    pub q: u32,
    pub ar_expression: String,
}

impl RankReport {
    pub fn to_json(&self) -> RankJson {
        RankJson {
            zero_count: self.zero_count.to_string(),
            dn1: self.dn1,
            ar_leq_m: self.ar_leq_m,
            ar_decimal: self.ar_decimal,
            bound_m: self.bound_m,
            q: self.q,
            ar_expression: format!("{} - log_{}({})", self.dn1, self.q, self.zero_count),
        }
    }

    /// `AR = 0`, i.e. every tuple is a zero.
    pub fn is_zero_rank(&self) -> bool {
        self.zero_count == BigUint::from(self.q).pow(self.dn1 as u32)
    }
}

/// Analytic rank of `t`, failing with an invariant error if `0 <= AR <= m`
/// does not hold.
pub fn analytic_rank(t: &Tensor, cap: u64) -> Result<RankReport> {
    let z = zero_count(t, cap)?;
    let q = t.field().order();
    let dn1 = (t.d() * t.n()) as u64;
    let m = partition_rank_bound(t);
    let qb = BigUint::from(q);
    let all = qb.pow(dn1 as u32);
    if z > all || z.is_zero() {
        return Err(Error::Invariant(format!("zero count {z} outside [1, q^dN]")));
    }
    let floor = if (m as u64) <= dn1 {
        qb.pow((dn1 - m as u64) as u32)
    } else {
        BigUint::zero()
    };
    let ar_leq_m = z >= floor;
    if !ar_leq_m {
        return Err(Error::Invariant(format!(
            "analytic rank exceeds m: |Z| = {z} < q^(dN - m) = {floor}"
        )));
    }
    let log_z = z.to_f64().map(f64::ln).unwrap_or(f64::INFINITY) / (q as f64).ln();
    Ok(RankReport {
        q,
        zero_count: z,
        dn1,
        bound_m: m,
        ar_leq_m,
        ar_decimal: dn1 as f64 - log_z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::grassmann::DEFAULT_CAP;

    fn f(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    fn identity2() -> Tensor {
        let c = [1, 0, 0, 1].iter().map(|&i| Elem::from_index(i)).collect();
        Tensor::new(&f(2), 2, 2, 1, c).unwrap()
    }

    #[test]
    fn small_examples() {
        let z = Tensor::zeros(&f(3), 2, 2, 1).unwrap();
        assert_eq!(zero_count(&z, DEFAULT_CAP).unwrap(), BigUint::from(81u32));
        let r = analytic_rank(&z, DEFAULT_CAP).unwrap();
        assert!(r.is_zero_rank() && r.ar_decimal == 0.0);

        assert_eq!(zero_count(&identity2(), DEFAULT_CAP).unwrap(), BigUint::from(10u32));
        let r = analytic_rank(&identity2(), DEFAULT_CAP).unwrap();
        assert!((r.ar_decimal - (4.0 - 10f64.log2())).abs() < 1e-12);
        assert!(r.ar_leq_m && !r.is_zero_rank());

        let x1y1 = Tensor::new(&f(2), 1, 2, 1, vec![Elem::ONE]).unwrap();
        assert_eq!(zero_count(&x1y1, DEFAULT_CAP).unwrap(), BigUint::from(3u32));
        assert_eq!(partition_rank_bound(&Tensor::zeros(&f(2), 2, 2, 3).unwrap()), 3);
    }

    #[test]
    fn kernel_route_matches_raw_and_other_slots() {
        for (q, n, d, m) in [(2, 2, 2, 2), (3, 2, 3, 1), (2, 3, 3, 2), (4, 2, 2, 1)] {
            for seed in 0..5 {
                let t = Tensor::random(&f(q), n, d, m, seed).unwrap();
                let fast = zero_count(&t, DEFAULT_CAP).unwrap();
                assert_eq!(fast, zero_count_raw(&t, DEFAULT_CAP).unwrap());
                for slot in 1..d {
                    assert_eq!(fast, zero_count_in_slot(&t, slot, DEFAULT_CAP).unwrap());
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let t = Tensor::zeros(&f(3), 3, 3, 1).unwrap();
        assert!(matches!(zero_count(&t, 1000), Err(Error::CapExceeded { .. })));
    }
}
