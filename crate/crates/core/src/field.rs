//! Exact arithmetic in finite fields `F_{p^e}`.
//!
//! Elements are packed coefficient vectors: the element with coefficients
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` (each `c_i < p`) has index
//! `sum c_i p^i`. Indices are the canonical representatives, so two elements
//! are equal iff their indices are equal, and the enumeration order of a field
//! is increasing index order.
//!
//! Multiplication goes through exponent/logarithm tables built once per field
//! from a primitive element; the tables are a cache over the polynomial
//! arithmetic in [`poly`], which remains the reference route.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted anywhere in the crate.
pub const ORDER_CAP: u64 = 1 << 20;

/// Below this order an addition table is cached.
const ADD_TABLE_MAX: u32 = 256;

/// Serialized description of a field: characteristic, degree and the monic
/// modulus as coefficients from low to high degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

/// A field element, stored as its canonical index.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Element with the given index. The index is not range-checked; use
    /// [`Field::elem`] for untrusted input.
    pub const fn from_index(index: u32) -> Elem {
        Elem(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    spec: FieldSpec,
    q: u32,
    generator: Elem,
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled to skip a reduction in `mul`.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// A finite field. Cheap to clone; immutable and shareable across threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} {:?}", self.0.q, self.0.spec.modulus)
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.spec.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = FieldSpec::deserialize(d)?;
        Field::from_spec(spec).map_err(serde::de::Error::custom)
    }
}

impl Field {
    /// `F_{p^e}` with the lexicographically smallest monic irreducible modulus
    /// (coefficients compared from the constant term upwards).
    pub fn new(p: u32, e: u32) -> Result<Field> {
        check_order(p, e)?;
        let modulus = smallest_irreducible(p, e);
        Field::build(FieldSpec { p, e, modulus })
    }

    /// The field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, e) = prime_power_decomposition(q)
            .ok_or_else(|| Error::pre(format!("{q} is not a prime power")))?;
        Field::new(p as u32, e)
    }

    /// Rebuild a field from a serialized spec, validating the modulus.
    pub fn from_spec(spec: FieldSpec) -> Result<Field> {
        check_order(spec.p, spec.e)?;
        let FieldSpec { p, e, modulus } = &spec;
        if modulus.len() != *e as usize + 1 || modulus[*e as usize] != 1 {
            return Err(Error::pre("modulus must be monic of degree e"));
        }
        if modulus.iter().any(|&c| c >= *p) {
            return Err(Error::pre("modulus coefficients must be reduced mod p"));
        }
        if !poly::is_irreducible(modulus, *p) {
            return Err(Error::pre(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Field::build(spec)
    }

    fn build(spec: FieldSpec) -> Result<Field> {
        let p = spec.p;
        let e = spec.e as usize;
        let q = p.pow(spec.e);
        let mul_slow = |a: u32, b: u32| -> u32 {
            let prod = poly::mul_mod(
                &poly::digits(a, p, e),
                &poly::digits(b, p, e),
                &spec.modulus,
                p,
            );
            poly::undigits(&prod, p)
        };
        let generator = find_generator(q, &mul_slow);
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = mul_slow(cur, generator);
        }
        if cur != 1 {
            return Err(Error::Invariant("generator order mismatch".into()));
        }
        for i in 0..order {
            exp[order + i] = exp[i];
        }
        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = poly::digits(a, p, e)
                    .into_iter()
                    .map(|c| (p - c) % p)
                    .collect();
                poly::undigits(&d, p)
            })
            .collect();
        let add = (q <= ADD_TABLE_MAX).then(|| {
            let mut t = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    t.push(add_digits(a, b, p, e));
                }
            }
            t
        });
        Ok(Field(Arc::new(Inner {
            spec,
            q,
            generator: Elem(generator),
            exp,
            log,
            neg,
            add,
        })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.0.spec.e
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// The primitive element used for the multiplication tables.
    pub fn generator(&self) -> Elem {
        self.0.generator
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Element with the given index, range-checked.
    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.0.q {
            Ok(Elem(index))
        } else {
            Err(Error::pre(format!("element index {index} out of range for F_{}", self.0.q)))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.spec.p as i64) as u32)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        poly::digits(a.0, self.0.spec.p, self.0.spec.e as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        let p = self.0.spec.p;
        if coeffs.len() != self.0.spec.e as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::pre("coefficient vector must have length e with entries below p"));
        }
        Ok(Elem(poly::undigits(coeffs, p)))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.spec.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if inner.spec.e == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= inner.q { s - inner.q } else { s });
        }
        match &inner.add {
            Some(t) => Elem(t[(a.0 * inner.q + b.0) as usize]),
            None => Elem(add_digits(a.0, b.0, inner.spec.p, inner.spec.e as usize)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        let s = inner.log[a.0 as usize] + inner.log[b.0 as usize];
        Elem(inner.exp[s as usize])
    }

    /// `a * b + c`
    #[inline]
    pub fn mul_add(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.add(self.mul(a, b), c)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::pre("inverse of zero"));
        }
        let order = self.0.q - 1;
        let l = self.0.log[a.0 as usize];
        Ok(Elem(self.0.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = (self.0.q - 1) as u128;
        let l = self.0.log[a.0 as usize] as u128;
        Elem(self.0.exp[((l * k as u128) % order) as usize])
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.spec.p as u64)
    }

    /// Dot product of two equal-length vectors.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(Elem::ZERO, |acc, (&x, &y)| self.mul_add(x, y, acc))
    }

    /// Checks every entry is a valid element of this field.
    pub fn check_vector(&self, v: &[Elem]) -> Result<()> {
        match v.iter().find(|x| x.0 >= self.0.q) {
            Some(x) => Err(Error::pre(format!("element {x} does not belong to F_{}", self.0.q))),
            None => Ok(()),
        }
    }

    /// True when `self` has the same characteristic and its degree divides
    /// the degree of `other`.
    pub fn divides_degree_of(&self, other: &Field) -> bool {
        self.characteristic() == other.characteristic() && other.degree() % self.degree() == 0
    }
}

/// Ring embedding `F_{p^e} -> F_{p^{er}}` sending the source generator `x`
/// to the smallest root of the source modulus in the target.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    root: Elem,
    image: Vec<Elem>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        if !source.divides_degree_of(target) {
            return Err(Error::pre(format!(
                "F_{} is not a subfield of F_{}",
                source.order(),
                target.order()
            )));
        }
        let modulus: Vec<Elem> = source
            .spec()
            .modulus
            .iter()
            .map(|&c| target.from_int(c as i64))
            .collect();
        let eval = |x: Elem| {
            modulus
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| target.mul_add(acc, x, c))
        };
        let root = target
            .elements()
            .find(|&x| eval(x).is_zero())
            .ok_or_else(|| Error::Invariant("source modulus has no root in the target".into()))?;
        let image = source
            .elements()
            .map(|a| {
                source
                    .coeffs(a)
                    .iter()
                    .rev()
                    .fold(Elem::ZERO, |acc, &c| {
                        target.mul_add(acc, root, target.from_int(c as i64))
                    })
            })
            .collect();
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            root,
            image,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    /// Image of the source generator `x`.
    pub fn root(&self) -> Elem {
        self.root
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a.0 as usize]
    }

    pub fn apply_all(&self, v: &[Elem]) -> Vec<Elem> {
        v.iter().map(|&a| self.apply(a)).collect()
    }
}

fn check_order(p: u32, e: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::pre(format!("{p} is not prime")));
    }
    if e < 1 {
        return Err(Error::pre("extension degree must be at least 1"));
    }
    match (p as u64).checked_pow(e) {
        Some(q) if q <= ORDER_CAP => Ok(()),
        _ => Err(Error::pre(format!("field order {p}^{e} exceeds the cap {ORDER_CAP}"))),
    }
}

fn add_digits(a: u32, b: u32, p: u32, e: usize) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..e {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = p.pow(e);
    (0..count)
        .map(|t| {
            // `t` read with c_0 as its most significant base-p digit.
            let mut low: Vec<u32> = poly::digits(t, p, e as usize);
            low.reverse();
            low.push(1);
            low
        })
        .find(|f| poly::is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists")
}

fn find_generator(q: u32, mul: &dyn Fn(u32, u32) -> u32) -> u32 {
    let order = (q - 1) as u64;
    let primes = prime_factors(order);
    let pow = |mut b: u32, mut k: u64| {
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            k >>= 1;
        }
        acc
    };
    (1..q)
        .find(|&g| primes.iter().all(|&r| pow(g, order / r) != 1))
        .expect("the multiplicative group of a finite field is cyclic")
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            while n % i == 0 {
                n /= i;
            }
        }
        i += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some((p, e))` when `q = p^e` with `p` prime and `e >= 1`.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Prime powers in increasing order, starting at 2.
pub fn prime_powers() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&q| prime_power_decomposition(q).is_some())
}

/// Dense polynomial arithmetic over `F_p`, coefficients low to high.
pub(crate) mod poly {
    pub fn digits(mut a: u32, p: u32, e: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(e);
        for _ in 0..e {
            out.push(a % p);
            a /= p;
        }
        out
    }

    pub fn undigits(d: &[u32], p: u32) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let (mut b, mut k) = (a as u64, p as u64 - 2);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * b % p as u64;
            }
            b = b * b % p as u64;
            k >>= 1;
        }
        acc as u32
    }

    /// Remainder of `a` modulo `b`; `b` must have a nonzero leading coefficient.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        let p64 = p as u64;
        while r.len() > db {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p64;
            if c != 0 {
                for (i, &bc) in b.iter().enumerate() {
                    let idx = top - db + i;
                    r[idx] = (r[idx] + p64 - c * bc as u64 % p64) % p64;
                }
            }
            r.pop();
        }
        r.into_iter().map(|c| c as u32).collect()
    }

    /// `a * b mod modulus`, result of length `deg(modulus)`.
    pub fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let e = modulus.len() - 1;
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut r = rem(&prod, modulus, p);
        r.resize(e, 0);
        r
    }

    /// Trial division by every monic polynomial of degree at most `deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        if deg == 0 {
            return false;
        }
        for t in 1..=deg / 2 {
            let count = p.pow(t as u32);
            for low in 0..count {
                let mut g = digits(low, p, t);
                g.push(1);
                if rem(f, &g, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul_reference(f: &Field, a: Elem, b: Elem) -> Elem {
        let s = f.spec();
        let prod = poly::mul_mod(&f.coeffs(a), &f.coeffs(b), &s.modulus, s.p);
        f.from_coeffs(&prod).unwrap()
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(Field::new(2, 1).unwrap().spec().modulus, vec![0, 1]);
        assert_eq!(Field::new(2, 2).unwrap().spec().modulus, vec![1, 1, 1]);
        assert_eq!(Field::new(3, 2).unwrap().spec().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn only_quadratic_over_f2_is_x2_x_1() {
        let irreducible: Vec<u32> = (0..4)
            .filter(|&t| {
                let mut f = poly::digits(t, 2, 2);
                f.push(1);
                poly::is_irreducible(&f, 2)
            })
            .collect();
        assert_eq!(irreducible, vec![3]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Field::new(4, 1), Err(Error::Precondition(_))));
        assert!(matches!(Field::new(2, 0), Err(Error::Precondition(_))));
        assert!(matches!(Field::new(2, 21), Err(Error::Precondition(_))));
        assert!(matches!(Field::new(1031, 2), Err(Error::Precondition(_))));
        assert!(Field::new(2, 20).is_ok());
    }

    #[test]
    fn worked_products() {
        let f4 = Field::new(2, 2).unwrap();
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.coeffs(f4.mul(x, x)), vec![1, 1]);
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.inv(Elem::from_index(2)).unwrap(), Elem::from_index(3));
        assert!(f5.inv(Elem::ZERO).is_err());
    }

    #[test]
    fn enumeration() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![Elem::ZERO, Elem::ONE]);
        let f9 = Field::new(3, 2).unwrap();
        let all: Vec<_> = f9.elements().collect();
        assert_eq!(all.len(), 9);
        let prod = all[1..].iter().fold(Elem::ONE, |acc, &a| f9.mul(acc, a));
        assert_eq!(prod, f9.neg(Elem::ONE));
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (2, 4)] {
            let f = Field::new(p, e).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), mul_reference(&f, a, b));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn large_field_tables_agree_with_polynomial_route() {
        let f = Field::new(3, 7).unwrap();
        let mut g = crate::rng::SplitMix64::new(1);
        for _ in 0..500 {
            let (a, b) = (g.elem(&f), g.elem(&f));
            assert_eq!(f.mul(a, b), mul_reference(&f, a, b));
            assert_eq!(f.sub(f.add(a, b), b), a);
        }
    }

    #[test]
    fn frobenius_is_a_ring_map_with_q_fixed_points() {
        let f16 = Field::new(2, 4).unwrap();
        for a in f16.elements() {
            for b in f16.elements() {
                assert_eq!(f16.frobenius(f16.add(a, b)), f16.add(f16.frobenius(a), f16.frobenius(b)));
                assert_eq!(f16.frobenius(f16.mul(a, b)), f16.mul(f16.frobenius(a), f16.frobenius(b)));
            }
        }
        let fixed = f16.elements().filter(|&a| f16.pow(a, 4) == a).count();
        assert_eq!(fixed, 4);
        let f81 = Field::new(3, 4).unwrap();
        assert_eq!(f81.elements().filter(|&a| f81.pow(a, 9) == a).count(), 9);
    }

    #[test]
    fn embeddings_are_injective_ring_maps() {
        for (p, e, r) in [(2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 1, 4), (3, 2, 2), (2, 2, 3)] {
            let src = Field::new(p, e).unwrap();
            let dst = Field::new(p, e * r).unwrap();
            let emb = Embedding::new(&src, &dst).unwrap();
            assert_eq!(emb.apply(Elem::ONE), Elem::ONE);
            let mut seen = std::collections::HashSet::new();
            for a in src.elements() {
                assert!(seen.insert(emb.apply(a)));
                for b in src.elements() {
                    assert_eq!(emb.apply(src.add(a, b)), dst.add(emb.apply(a), emb.apply(b)));
                    assert_eq!(emb.apply(src.mul(a, b)), dst.mul(emb.apply(a), emb.apply(b)));
                }
            }
        }
    }

    #[test]
    fn embedding_lands_in_fixed_field() {
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        let emb = Embedding::new(&f4, &f16).unwrap();
        for a in f4.elements() {
            let b = emb.apply(a);
            assert_eq!(f16.pow(b, 4), b);
        }
        let f2 = Field::new(2, 1).unwrap();
        let e2 = Embedding::new(&f2, &f4).unwrap();
        assert_eq!(e2.apply(Elem::ZERO), Elem::ZERO);
        assert_eq!(e2.apply(Elem::ONE), Elem::ONE);
        assert!(Embedding::new(&f4, &Field::new(2, 3).unwrap()).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let f = Field::new(3, 2).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"p":3,"e":2,"modulus":[1,0,1]}"#);
        let back: Field = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"p":3,"e":2,"modulus":[0,0,1]}"#;
        assert!(serde_json::from_str::<Field>(bad).is_err());
    }

    #[test]
    fn prime_power_helpers() {
        assert_eq!(prime_power_decomposition(9), Some((3, 2)));
        assert_eq!(prime_power_decomposition(12), None);
        let first: Vec<u64> = prime_powers().take(9).collect();
        assert_eq!(first, vec![2, 3, 4, 5, 7, 8, 9, 11, 13]);
    }
}
