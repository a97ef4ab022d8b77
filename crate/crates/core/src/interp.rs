//! Exact polynomial interpolation over the rationals, used to read off the
//! degree in `q` of point counts sampled at several field orders.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::prime_powers;

/// Coefficients (constant term first) of the unique polynomial of degree
/// `< points.len()` through the given points. Abscissae must be distinct.
pub fn interpolate(points: &[(BigInt, BigInt)]) -> Vec<BigRational> {
    let n = points.len();
    // Newton divided differences.
    let xs: Vec<BigRational> = points.iter().map(|(x, _)| BigRational::from(x.clone())).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| BigRational::from(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let denom = &xs[i] - &xs[i - level];
            assert!(!denom.is_zero(), "interpolation nodes must be distinct");
            dd[i] = (&dd[i] - &dd[i - 1]) / denom;
        }
    }
    // Expand the Newton form from the innermost term outwards.
    let mut poly = vec![BigRational::zero(); n.max(1)];
    for i in (0..n).rev() {
        // poly = poly * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n.max(1)];
        for (j, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j + 1 < next.len() {
                next[j + 1] += c;
            }
            next[j] -= c * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

/// Degree of the interpolating polynomial, `None` for the zero polynomial.
pub fn degree(points: &[(BigInt, BigInt)]) -> Option<usize> {
    interpolate(points).iter().rposition(|c| !c.is_zero())
}

/// Evaluates a rational polynomial at an integer.
pub fn evaluate(poly: &[BigRational], x: &BigInt) -> BigRational {
    let x = BigRational::from(x.clone());
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// The `count` smallest prime powers.
pub fn sample_orders(count: usize) -> Vec<u64> {
    prime_powers().take(count).collect()
}

/// True iff every coefficient is an integer.
pub fn is_integral(poly: &[BigRational]) -> bool {
    poly.iter().all(|c| c.denom().is_one())
}
