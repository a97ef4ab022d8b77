//! Subspaces in reduced row echelon form, enumeration of `Gr(k, F_q^n)`,
//! Gaussian binomials and the intersection strata of pairs of subspaces.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg;

/// Default cap on the number of subspaces (or tuples) an enumeration may visit.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// A `k`-dimensional subspace of `F^n`, stored as its unique RREF basis.
///
/// The derived ordering (pivot columns first, then the basis entries
/// row-major by element index) is exactly the order in which
/// [`Grassmannian`] yields subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    rows: Vec<Elem>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            n,
            k: 0,
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Subspace {
        let mut rows = vec![Elem::ZERO; n * n];
        for i in 0..n {
            rows[i * n + i] = Elem::ONE;
        }
        Subspace {
            n,
            k: n,
            pivots: (0..n).collect(),
            rows,
        }
    }

    /// Span of arbitrary vectors of length `n`.
    pub fn span<'a>(f: &Field, n: usize, vectors: impl IntoIterator<Item = &'a [Elem]>) -> Subspace {
        let mut flat = Vec::new();
        let mut count = 0;
        for v in vectors {
            assert_eq!(v.len(), n, "vector length must equal the ambient dimension");
            flat.extend_from_slice(v);
            count += 1;
        }
        Subspace::from_flat(f, n, flat, count)
    }

    fn from_flat(f: &Field, n: usize, mut flat: Vec<Elem>, count: usize) -> Subspace {
        let pivots = linalg::rref(f, &mut flat, count, n);
        flat.truncate(pivots.len() * n);
        Subspace {
            n,
            k: pivots.len(),
            pivots,
            rows: flat,
        }
    }

    /// Rebuilds a subspace from RREF rows, rejecting anything not in canonical form.
    pub fn from_rref_rows(f: &Field, n: usize, rows: &[Vec<Elem>]) -> Result<Subspace> {
        for r in rows {
            if r.len() != n {
                return Err(Error::pre("row length differs from the ambient dimension"));
            }
            f.check_vector(r)?;
        }
        let s = Subspace::span(f, n, rows.iter().map(Vec::as_slice));
        let given: Vec<Elem> = rows.concat();
        if s.k != rows.len() || s.rows != given {
            return Err(Error::pre("rows are not a reduced row echelon basis"));
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Elem]> {
        self.rows.chunks(self.n.max(1)).take(self.k)
    }

    /// Row-major basis matrix.
    pub fn basis(&self) -> &[Elem] {
        &self.rows
    }

    /// `v` minus its projection along the pivot columns; zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c.is_zero() {
                continue;
            }
            let neg = f.neg(c);
            for (o, &r) in out.iter_mut().zip(self.row(i)) {
                *o = f.mul_add(neg, r, *o);
            }
        }
        out
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        self.reduce(f, v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, f: &Field, other: &Subspace) -> bool {
        other.rows().all(|r| self.contains(f, r))
    }

    /// Span of `self` and `v`.
    pub fn extend(&self, f: &Field, v: &[Elem]) -> Subspace {
        let mut flat = self.rows.clone();
        flat.extend_from_slice(v);
        Subspace::from_flat(f, self.n, flat, self.k + 1)
    }

    /// All `j`-dimensional subspaces of `self`, sorted in enumeration order.
    pub fn subspaces(&self, f: &Field, j: usize) -> Vec<Subspace> {
        if j > self.k {
            return Vec::new();
        }
        let mut out: Vec<Subspace> = Grassmannian::new(f, self.k, j)
            .map(|coords| {
                let mut flat = Vec::with_capacity(j * self.n);
                for c in coords.rows() {
                    let mut v = vec![Elem::ZERO; self.n];
                    for (i, &a) in c.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        for (o, &r) in v.iter_mut().zip(self.row(i)) {
                            *o = f.mul_add(a, r, *o);
                        }
                    }
                    flat.extend(v);
                }
                Subspace::from_flat(f, self.n, flat, j)
            })
            .collect();
        out.sort();
        out
    }

    /// Projective points of the subspace, each a vector whose first nonzero
    /// coordinate is 1.
    pub fn points(&self, f: &Field) -> Vec<Vec<Elem>> {
        self.subspaces(f, 1).into_iter().map(|s| s.rows).collect()
    }

    /// Every vector of the subspace, coordinates in canonical order.
    pub fn vectors(&self, f: &Field) -> Vec<Vec<Elem>> {
        let q = f.order() as u64;
        let total = q.pow(self.k as u32);
        (0..total)
            .map(|mut t| {
                let mut v = vec![Elem::ZERO; self.n];
                for i in (0..self.k).rev() {
                    let a = Elem::from_index((t % q) as u32);
                    t /= q;
                    for (o, &r) in v.iter_mut().zip(self.row(i)) {
                        *o = f.mul_add(a, r, *o);
                    }
                }
                v
            })
            .collect()
    }

    /// Serializable form with rows as element indices.
    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            n: self.n,
            k: self.k,
            rows: self
                .rows()
                .map(|r| r.iter().map(|e| e.index()).collect())
                .collect(),
        }
    }

    pub fn from_json(f: &Field, j: &SubspaceJson) -> Result<Subspace> {
        if j.rows.len() != j.k {
            return Err(Error::pre("row count differs from k"));
        }
        let rows = j
            .rows
            .iter()
            .map(|r| r.iter().map(|&i| f.elem(i)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Subspace::from_rref_rows(f, j.n, &rows)
    }
}

/// Wire format `{"n": int, "k": int, "rows": [[elem-index,...],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<Vec<u32>>,
}

/// `dim U + dim V - dim (U + V)`.
pub fn intersection_dim(f: &Field, u: &Subspace, v: &Subspace) -> Result<usize> {
    if u.n != v.n {
        return Err(Error::pre("subspaces live in different ambient spaces"));
    }
    let mut flat = u.rows.clone();
    flat.extend_from_slice(&v.rows);
    let r = linalg::rank(f, &flat, u.k + v.k, u.n);
    Ok(u.k + v.k - r)
}

/// Deterministic iterator over `Gr(k, F^n)`: pivot sets in lexicographic
/// order, then the free entries row-major as base-`q` digits with the first
/// entry most significant.
pub struct Grassmannian {
    n: usize,
    k: usize,
    q: u32,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    digits: Vec<u32>,
}

impl Grassmannian {
    pub fn new(f: &Field, n: usize, k: usize) -> Grassmannian {
        let pivots = (k <= n).then(|| (0..k).collect::<Vec<_>>());
        let mut g = Grassmannian {
            n,
            k,
            q: f.order(),
            pivots,
            free: Vec::new(),
            digits: Vec::new(),
        };
        g.reset_free();
        g
    }

    fn reset_free(&mut self) {
        self.free.clear();
        if let Some(p) = &self.pivots {
            for (i, &pc) in p.iter().enumerate() {
                for c in pc + 1..self.n {
                    if !p.contains(&c) {
                        self.free.push((i, c));
                    }
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn current(&self) -> Subspace {
        let pivots = self.pivots.clone().expect("iterator not exhausted");
        let mut rows = vec![Elem::ZERO; self.k * self.n];
        for (i, &pc) in pivots.iter().enumerate() {
            rows[i * self.n + pc] = Elem::ONE;
        }
        for (&(i, c), &d) in self.free.iter().zip(&self.digits) {
            rows[i * self.n + c] = Elem::from_index(d);
        }
        Subspace {
            n: self.n,
            k: self.k,
            pivots,
            rows,
        }
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
        self.pivots = self.pivots.take().and_then(|p| next_combination(p, self.n));
        self.reset_free();
    }
}

impl Iterator for Grassmannian {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        self.pivots.as_ref()?;
        let s = self.current();
        self.advance();
        Some(s)
    }
}

/// Next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(mut c: Vec<usize>, n: usize) -> Option<Vec<usize>> {
    let k = c.len();
    let i = (0..k).rev().find(|&i| c[i] < n - k + i)?;
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    Some(c)
}

/// Number of `k`-subspaces of `F_q^n`.
pub fn gauss_binom(n: usize, k: usize, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let qb = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= qb.pow((n - i) as u32) - 1u32;
        den *= qb.pow((k - i) as u32) - 1u32;
    }
    num / den
}

pub(crate) fn check_cap(what: &str, needed: &BigUint, cap: u64) -> Result<()> {
    if needed > &BigUint::from(cap) {
        Err(Error::cap(what, needed, cap))
    } else {
        Ok(())
    }
}

/// The whole Grassmannian as a vector, refusing when it has more than `cap`
/// elements.
pub fn enumerate_grassmannian(f: &Field, n: usize, k: usize, cap: u64) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(Error::pre(format!("k = {k} exceeds n = {n}")));
    }
    check_cap("Grassmannian", &gauss_binom(n, k, f.order() as u64), cap)?;
    Ok(Grassmannian::new(f, n, k).collect())
}

/// Admissible intersection dimensions of two `k`-subspaces of `F^n`.
pub fn sigma_range(n: usize, k: usize) -> RangeInclusive<usize> {
    (2 * k).saturating_sub(n)..=k
}

/// Dimension `2k(n-k+l) - l(n+l)` of the stratum of pairs meeting in dimension `l`.
pub fn sigma_dimension(n: usize, k: usize, l: usize) -> i64 {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    2 * k * (n - k + l) - l * (n + l)
}

/// `|Sigma_l(F_q)|` for every `l` in `0..=k` (zero outside [`sigma_range`]).
///
/// `GL_n(F_q)` acts transitively on `Gr(k)` and preserves intersection
/// dimensions, so the ordered-pair count is `|Gr|` times the stratum profile
/// seen from the first subspace. The enumeration is `O(|Gr|)`.
pub fn sigma_profile(f: &Field, n: usize, k: usize, cap: u64) -> Result<Vec<BigUint>> {
    let all = enumerate_grassmannian(f, n, k, cap)?;
    let anchor = &all[0];
    let counts = all
        .par_iter()
        .fold(
            || vec![0u64; k + 1],
            |mut acc, v| {
                acc[intersection_dim(f, anchor, v).expect("same ambient")] += 1;
                acc
            },
        )
        .reduce(|| vec![0u64; k + 1], add_counts);
    let size = BigUint::from(all.len());
    Ok(counts.into_iter().map(|c| &size * c).collect())
}

/// The same profile by scanning every ordered pair; `cap` bounds `|Gr|^2`.
pub fn sigma_profile_all_pairs(f: &Field, n: usize, k: usize, cap: u64) -> Result<Vec<BigUint>> {
    let size = gauss_binom(n, k, f.order() as u64);
    check_cap("pairs of subspaces", &(&size * &size), cap)?;
    let all: Vec<Subspace> = Grassmannian::new(f, n, k).collect();
    let counts = all
        .par_iter()
        .fold(
            || vec![0u64; k + 1],
            |mut acc, u| {
                for v in &all {
                    acc[intersection_dim(f, u, v).expect("same ambient")] += 1;
                }
                acc
            },
        )
        .reduce(|| vec![0u64; k + 1], add_counts);
    Ok(counts.into_iter().map(BigUint::from).collect())
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// `|Sigma_l(F_q)|`, the number of ordered pairs of `k`-subspaces meeting in
/// dimension exactly `l`.
pub fn sigma_count(f: &Field, n: usize, k: usize, l: usize, cap: u64) -> Result<BigUint> {
    if k > n || !sigma_range(n, k).contains(&l) {
        return Err(Error::pre(format!(
            "l = {l} outside the admissible range {:?} for n = {n}, k = {k}",
            sigma_range(n, k)
        )));
    }
    Ok(sigma_profile(f, n, k, cap)?.swap_remove(l))
}

/// Closed-form dimension of an incidence variety together with the exponent
/// of its projective fibre. A zero fibre exponent means the variety has no
/// points at all and the formula value is not a dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionCheck {
    pub dimension: BigInt,
    pub fiber_exponent: BigInt,
}

impl DimensionCheck {
    pub fn is_empty(&self) -> bool {
        self.fiber_exponent.is_zero()
    }
}

/// Incidence of alternating maps with an isotropic `k`-subspace:
/// `(n-k)k + m C(n,d) - m C(k,d) - 1`.
pub fn dim_check_i1(n: usize, d: usize, m: usize, k: usize) -> DimensionCheck {
    let fiber = BigInt::from(m) * (BigInt::from(binomial(n, d)) - BigInt::from(binomial(k, d)));
    let base = BigInt::from(n as i64 - k as i64) * BigInt::from(k);
    DimensionCheck {
        dimension: base + &fiber - 1,
        fiber_exponent: fiber,
    }
}

/// Incidence of multilinear maps with a `d`-tuple of annihilating planes:
/// `2d(n-2) + m(n^d - 2^d) - 1`.
pub fn dim_check_j1(n: usize, d: usize, m: usize) -> DimensionCheck {
    let fiber = BigInt::from(m) * (BigInt::from(n).pow(d as u32) - BigInt::from(2).pow(d as u32));
    let base = BigInt::from(2 * d) * BigInt::from(n as i64 - 2);
    DimensionCheck {
        dimension: base + &fiber - 1,
        fiber_exponent: fiber,
    }
}

/// Binomial coefficient as an exact big integer.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Checks canonical forms are pairwise distinct; used by tests and self-checks.
pub fn all_distinct(subspaces: &[Subspace]) -> bool {
    let set: HashSet<&Subspace> = subspaces.iter().collect();
    set.len() == subspaces.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gauss_binom(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gauss_binom(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gauss_binom(3, 2, 7), BigUint::from(57u32));
        assert_eq!(gauss_binom(6, 0, 5), BigUint::one());
        assert_eq!(gauss_binom(6, 6, 5), BigUint::one());
    }

    #[test]
    fn enumeration_counts_small() {
        assert_eq!(enumerate_grassmannian(&f(2), 2, 1, DEFAULT_CAP).unwrap().len(), 3);
        assert_eq!(enumerate_grassmannian(&f(3), 4, 0, DEFAULT_CAP).unwrap().len(), 1);
        let g = enumerate_grassmannian(&f(2), 4, 2, DEFAULT_CAP).unwrap();
        assert_eq!(g.len(), 35);
        assert!(all_distinct(&g));
        assert!(g.windows(2).all(|w| w[0] < w[1]), "iteration order must be sorted");
    }

    #[test]
    fn enumeration_cap_and_range_errors() {
        assert!(matches!(
            enumerate_grassmannian(&f(2), 4, 2, 10),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            enumerate_grassmannian(&f(2), 2, 3, DEFAULT_CAP),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn every_enumerated_basis_is_rref() {
        let field = f(4);
        for s in Grassmannian::new(&field, 4, 2) {
            let rows: Vec<Vec<Elem>> = s.rows().map(|r| r.to_vec()).collect();
            assert_eq!(Subspace::from_rref_rows(&field, 4, &rows).unwrap(), s);
        }
    }

    #[test]
    fn intersection_examples() {
        let f3 = f(3);
        let e = |i: usize| {
            let mut v = vec![Elem::ZERO; 3];
            v[i] = Elem::ONE;
            v
        };
        let u = Subspace::span(&f3, 3, [e(0).as_slice(), e(1).as_slice()]);
        let v = Subspace::span(&f3, 3, [e(1).as_slice(), e(2).as_slice()]);
        assert_eq!(intersection_dim(&f3, &u, &v).unwrap(), 1);
        assert_eq!(intersection_dim(&f3, &u, &u).unwrap(), 2);
        let f2 = f(2);
        let a = Subspace::span(&f2, 2, [[Elem::ONE, Elem::ZERO].as_slice()]);
        let b = Subspace::span(&f2, 2, [[Elem::ZERO, Elem::ONE].as_slice()]);
        assert_eq!(intersection_dim(&f2, &a, &b).unwrap(), 0);
        assert!(intersection_dim(&f2, &a, &Subspace::zero(3)).is_err());
    }

    #[test]
    fn sigma_small_values() {
        // Frozen from a set-based brute force over F_2 and F_3.
        let p2 = sigma_profile(&f(2), 4, 2, DEFAULT_CAP).unwrap();
        assert_eq!(p2, vec![560u32, 630, 35].into_iter().map(BigUint::from).collect::<Vec<_>>());
        let p3 = sigma_profile(&f(3), 4, 2, DEFAULT_CAP).unwrap();
        assert_eq!(p3, vec![10530u32, 6240, 130].into_iter().map(BigUint::from).collect::<Vec<_>>());
        assert_eq!(sigma_count(&f(2), 2, 1, 1, DEFAULT_CAP).unwrap(), BigUint::from(3u32));
        assert!(sigma_count(&f(2), 4, 3, 1, DEFAULT_CAP).is_err());
    }

    #[test]
    fn orbit_shortcut_matches_all_pairs() {
        for (q, n, k) in [(2, 3, 1), (2, 4, 2), (3, 4, 2), (2, 5, 2), (4, 3, 2), (2, 5, 3)] {
            let fq = f(q);
            assert_eq!(
                sigma_profile(&fq, n, k, DEFAULT_CAP).unwrap(),
                sigma_profile_all_pairs(&fq, n, k, DEFAULT_CAP).unwrap(),
                "q={q} n={n} k={k}"
            );
        }
    }

    #[test]
    fn subspaces_of_a_subspace() {
        let field = f(3);
        let full = Subspace::full(3);
        assert_eq!(full.subspaces(&field, 2), Grassmannian::new(&field, 3, 2).collect::<Vec<_>>());
        let plane = Grassmannian::new(&field, 3, 2).nth(5).unwrap();
        let lines = plane.subspaces(&field, 1);
        assert_eq!(lines.len(), 4);
        assert!(lines.iter().all(|l| plane.contains_subspace(&field, l)));
        assert_eq!(plane.vectors(&field).len(), 9);
    }

    #[test]
    fn dimension_formulas() {
        assert_eq!(dim_check_i1(4, 2, 1, 2).dimension, BigInt::from(8));
        assert_eq!(dim_check_j1(3, 2, 1).dimension, BigInt::from(8));
        let degenerate = dim_check_i1(4, 2, 1, 4);
        assert_eq!(degenerate.dimension, BigInt::from(-1));
        assert!(degenerate.is_empty());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let field = f(4);
        let s = Grassmannian::new(&field, 4, 2).nth(40).unwrap();
        let j = s.to_json();
        assert_eq!(Subspace::from_json(&field, &j).unwrap(), s);
        let bad = SubspaceJson {
            n: 2,
            k: 1,
            rows: vec![vec![2, 1]],
        };
        assert!(Subspace::from_json(&field, &bad).is_err());
    }
}
