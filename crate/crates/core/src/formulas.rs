//! Closed forms for the isotropy index of alternating maps over
//! algebraically closed fields and the quantities derived from it.
//!
//! Everything is exact. Comparisons of the form `a >= m * C(s, d)` use
//! checked `u128` arithmetic; when the right side overflows it is certainly
//! larger than any left side that fits, so no big-integer fallback is needed
//! for the comparisons themselves.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::binomial;

/// Which row of a piecewise formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Generic,
    /// The value came from scanning the defining minimization because the
    /// closed form does not apply.
    Definitional,
    Exceptional(Exception),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exception {
    /// `d = 2`.
    Bilinear,
    /// `(d, n) = (3, 7)`.
    ThreeSeven,
    /// `d = n - 2` with `d` even.
    CodimTwoEven,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Generic => f.write_str("generic"),
            Branch::Definitional => f.write_str("definitional"),
            Branch::Exceptional(Exception::Bilinear) => f.write_str("exceptional:d=2"),
            Branch::Exceptional(Exception::ThreeSeven) => f.write_str("exceptional:(3,7)"),
            Branch::Exceptional(Exception::CodimTwoEven) => f.write_str("exceptional:d=n-2-even"),
        }
    }
}

impl Serialize for Branch {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A formula value together with the branch that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub value: BigUint,
    pub branch: Branch,
}

impl Evaluation {
    fn new(value: impl Into<BigUint>, branch: Branch) -> Self {
        Evaluation {
            value: value.into(),
            branch,
        }
    }

    /// The value as `u64`, for callers that know it is small.
    pub fn small(&self) -> u64 {
        self.value.to_u64().expect("value fits in u64")
    }
}

/// `C(n, k)` if it fits in `u128`.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        match acc.checked_mul(n as u128 - i) {
            Some(p) => acc = p / (i + 1),
            None => return binomial(n as usize, k as usize).to_u128(),
        }
    }
    Some(acc)
}

/// `lhs >= m * C(s, d)`, exactly.
fn at_least_m_binom(lhs: u128, m: u64, s: u64, d: u64) -> bool {
    match binomial_u128(s, d).and_then(|c| c.checked_mul(m as u128)) {
        Some(rhs) => lhs >= rhs,
        None => false,
    }
}

/// `s (n - s) >= m C(s, d)`.
fn k0_condition(n: u64, d: u64, m: u64, s: u64) -> bool {
    at_least_m_binom(s as u128 * (n - s) as u128, m, s, d)
}

/// Largest `s` in `[0, n]` with `s (n - s) >= m C(s, d)`, by direct scan.
pub fn k0(n: u64, d: u64, m: u64) -> u64 {
    (0..=n)
        .rev()
        .find(|&s| k0_condition(n, d, m, s))
        .expect("s = 0 always qualifies")
}

fn check_positive(pairs: &[(&str, u64)]) -> Result<()> {
    for (name, v) in pairs {
        if *v == 0 {
            return Err(Error::pre(format!("{name} must be positive")));
        }
    }
    Ok(())
}

fn exception_for_alpha(n: u64, d: u64) -> Option<(Exception, u64)> {
    if d == 2 {
        Some((Exception::Bilinear, n / 2))
    } else if (d, n) == (3, 7) {
        Some((Exception::ThreeSeven, 4))
    } else if n >= 2 && d == n - 2 && d % 2 == 0 {
        Some((Exception::CodimTwoEven, n - 2))
    } else {
        None
    }
}

/// Isotropy index of a generic alternating map `(F^n)^d -> F^m` over an
/// algebraically closed field. The `m = 1` table is only established in
/// characteristic zero, so it requires `char_zero`.
pub fn alpha_alt_closed(n: u64, d: u64, m: u64, char_zero: bool) -> Result<Evaluation> {
    check_positive(&[("n", n), ("d", d), ("m", m)])?;
    if m >= 2 {
        return Ok(Evaluation::new(k0(n, d, m), Branch::Generic));
    }
    if !char_zero {
        return Err(Error::pre(
            "the m = 1 formula is only established in characteristic 0; pass char_zero",
        ));
    }
    Ok(match exception_for_alpha(n, d) {
        Some((e, v)) => Evaluation::new(v, Branch::Exceptional(e)),
        None => Evaluation::new(k0(n, d, 1), Branch::Generic),
    })
}

/// Least `n` such that every alternating map `(F^n)^d -> F^m` has an
/// isotropic `k`-subspace.
///
/// For `m = 1` the displayed formula `ceil(C(k,d)/k) + k` lands on an
/// exceptional row of the `m = 1` table in two families, `(d, k) = (3, 5)`
/// and `k = d + 1` with `d` even, where the index there is one short of `k`.
/// The value is then moved to the least `n` at which the table reaches `k`.
pub fn fp_number(d: u64, m: u64, k: u64, char_zero: bool) -> Result<Evaluation> {
    check_positive(&[("d", d), ("m", m), ("k", k)])?;
    let ceil_term = |mult: u64| -> BigUint {
        let num = binomial(k as usize, d as usize) * mult;
        (num + (k - 1)) / k
    };
    if m >= 2 {
        return Ok(Evaluation::new(ceil_term(m) + k, Branch::Generic));
    }
    if !char_zero {
        return Err(Error::pre(
            "the m = 1 formula is only established in characteristic 0; pass char_zero",
        ));
    }
    if d == 2 {
        return Ok(Evaluation::new(2 * k, Branch::Exceptional(Exception::Bilinear)));
    }
    let mut n = ceil_term(1) + k;
    let mut branch = Branch::Generic;
    if let Some(small) = n.to_u64().filter(|&v| v <= d + 2 || v == 7) {
        let mut n_small = small;
        while let Some((e, v)) = exception_for_alpha(n_small, d) {
            if v >= k {
                break;
            }
            branch = Branch::Exceptional(e);
            n_small += 1;
        }
        n = BigUint::from(n_small);
    }
    Ok(Evaluation::new(n, branch))
}

fn turan_exception(n: u64, d: u64, k: u64) -> Option<Exception> {
    if d == 2 && n / 2 <= k {
        Some(Exception::Bilinear)
    } else if d == 3 && n == 7 && k >= 4 {
        Some(Exception::ThreeSeven)
    } else if n >= 2 && d == n - 2 && n % 2 == 0 && n - 2 <= k {
        Some(Exception::CodimTwoEven)
    } else {
        None
    }
}

/// Least codomain dimension `r` forcing the isotropy index of a generic
/// alternating map `(F^n)^d -> F^r` down to at most `k`.
pub fn turan_number(n: u64, d: u64, k: u64, char_zero: bool) -> Result<Evaluation> {
    check_positive(&[("n", n), ("k", k)])?;
    if d < 2 {
        return Err(Error::pre("d must be at least 2"));
    }
    if let Some(e) = turan_exception(n, d, k) {
        return if char_zero {
            Ok(Evaluation::new(1u32, Branch::Exceptional(e)))
        } else {
            Err(Error::pre("exceptional case requires characteristic 0"))
        };
    }
    let c = binomial((k + 1) as usize, d as usize);
    if c.is_zero() {
        // k + 1 < d: every map vanishes on (d-1)-subspaces, so the index is
        // at least min(d - 1, n) for every r.
        return if k >= n {
            Ok(Evaluation::new(1u32, Branch::Definitional))
        } else {
            Err(Error::pre(format!(
                "no codomain dimension brings the index to {k}: it is at least min(d-1, n) = {}",
                (d - 1).min(n)
            )))
        };
    }
    let num: BigInt = BigInt::from(k + 1) * (BigInt::from(n) - BigInt::from(k) - 1);
    let q = if num.sign() == num_bigint::Sign::Minus {
        BigUint::zero()
    } else {
        num.to_biguint().expect("nonnegative") / c
    };
    Ok(Evaluation::new(q + 1u32, Branch::Generic))
}

/// `max(0, d (n - d)) + 1`.
pub fn gq_number(n: u64, d: u64) -> Result<BigUint> {
    check_positive(&[("n", n), ("d", d)])?;
    let prod = if n > d { BigUint::from(d) * (n - d) } else { BigUint::zero() };
    Ok(prod + 1u32)
}

/// Verdict of the inequality `l (n + l - 2k) >= m C(l, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Equality.
    Holds,
    /// Strict inequality.
    Strict,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictedInequality {
    pub lhs: u128,
    pub rhs: u128,
    pub verdict: Verdict,
    /// Whether the premise `k (n - k) >= m C(k, d)` is strict.
    pub premise_strict: bool,
}

/// Evaluates `l (n + l - 2k)` against `m C(l, d)` under the hypotheses
/// `n + l - 2k >= 0`, `n > k >= l >= d >= 2`, `m >= 2` and
/// `k (n - k) >= m C(k, d)`.
pub fn restricted_inequality(m: u64, n: u64, k: u64, d: u64, l: u64) -> Result<RestrictedInequality> {
    let ok = n + l >= 2 * k && n > k && k >= l && l >= d && d >= 2 && m >= 2;
    if !ok {
        return Err(Error::pre("hypotheses not satisfied"));
    }
    let premise = k as u128 * (n - k) as u128;
    let premise_rhs = binomial_u128(k, d)
        .and_then(|c| c.checked_mul(m as u128))
        .ok_or_else(|| Error::pre("hypotheses not satisfied"))?;
    if premise < premise_rhs {
        return Err(Error::pre("hypotheses not satisfied"));
    }
    let lhs = l as u128 * (n + l - 2 * k) as u128;
    let rhs = binomial_u128(l, d).expect("C(l, d) <= C(k, d)") * m as u128;
    let verdict = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => Verdict::Violated,
        std::cmp::Ordering::Equal => Verdict::Holds,
        std::cmp::Ordering::Greater => Verdict::Strict,
    };
    Ok(RestrictedInequality {
        lhs,
        rhs,
        verdict,
        premise_strict: premise > premise_rhs,
    })
}

/// `d (n - 2) >= m 2^(d-1)`: whether a generic map `(F^n)^d -> F^m` over an
/// algebraically closed field vanishes on some `d`-tuple of planes.
pub fn plane_pair_predicate(n: u64, d: u64, m: u64) -> bool {
    if n < 2 {
        return false;
    }
    let lhs = BigUint::from(d) * (n - 2);
    let rhs = BigUint::from(m) << (d.saturating_sub(1) as usize);
    lhs >= rhs
}

/// Exponent of the box-free lower bound together with its admissibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxExponent {
    /// `d - m / n`.
    pub exponent: BigRational,
    /// `d (n - 1) > (2^d - 1) m`; always true when `m = 0`.
    pub admissible: bool,
}

pub fn box_exponent(n: u64, d: u64, m: u64) -> Result<BoxExponent> {
    check_positive(&[("n", n), ("d", d)])?;
    let exponent = BigRational::from(BigInt::from(d)) - BigRational::new(BigInt::from(m), BigInt::from(n));
    let lhs = BigUint::from(d) * (n - 1);
    let rhs = ((BigUint::from(1u32) << d as usize) - 1u32) * m;
    Ok(BoxExponent {
        exponent,
        admissible: m == 0 || lhs > rhs,
    })
}
