//! Isotropy indices of single tensors, their minima over all alternating
//! tensors of a given shape, and point counts of the incidence sets used in
//! the dimension arguments.
//!
//! The alternating search grows isotropic subspaces one dimension at a time.
//! An isotropic `S` extends by `v` exactly when `T(s_I, v) = 0` for every
//! `(d-1)`-subset `I` of a basis of `S`, so the admissible `v` form a
//! subspace `K_S` and the children of `S` are the projective points of
//! `K_S / S`. Since every isotropic superspace of `S` lies in `K_S`, a branch
//! is abandoned once `dim K_S` drops below the best dimension found.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::grassmann::{check_cap, gauss_binom, Subspace, SubspaceJson};
use crate::linalg;
use crate::rng::SplitMix64;
use crate::tensor::{contract_first, increasing_tuples, AltTensor, Tensor};

/// Default cap on the number of tensors scanned by the field-level minimum.
pub const DEFAULT_TENSOR_CAP: u64 = 1 << 20;

/// Outcome of an isotropy search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyResult {
    pub index: usize,
    /// One subspace for alternating searches, `d` for multilinear ones.
    pub witness: Vec<Subspace>,
    /// False when the search stopped at its cap; `index` is then a lower bound.
    pub exhausted: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsotropyJson {
    pub index: usize,
    pub exhausted: bool,
    pub witness: Vec<SubspaceJson>,
}

impl IsotropyResult {
    pub fn to_json(&self) -> IsotropyJson {
        IsotropyJson {
            index: self.index,
            exhausted: self.exhausted,
            witness: self.witness.iter().map(Subspace::to_json).collect(),
        }
    }
}

/// Common kernel of `v -> T(s_I, v)` over all increasing `(d-1)`-tuples of
/// basis rows of `s`.
fn extension_space(f: &Field, x: &Tensor, s: &Subspace) -> Subspace {
    let n = x.n();
    let m = x.m();
    let tuples = increasing_tuples(s.dim(), x.d() - 1);
    let mut rows = Vec::with_capacity(tuples.len() * m * n);
    for idx in &tuples {
        let args: Vec<&[Elem]> = idx.iter().map(|&i| s.row(i)).collect();
        rows.extend(x.contract_leading_unchecked(&args));
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    let ker = linalg::null_space(f, &rows, rows.len() / n, n);
    Subspace::span(f, n, ker.iter().map(Vec::as_slice))
}

struct AltSearch<'a> {
    f: &'a Field,
    x: Tensor,
    visited: HashSet<Subspace>,
    cap: u64,
    best: Subspace,
    exhausted: bool,
}

impl AltSearch<'_> {
    fn visit(&mut self, s: Subspace) {
        if !self.exhausted || self.visited.contains(&s) {
            return;
        }
        if self.visited.len() as u64 >= self.cap {
            self.exhausted = false;
            return;
        }
        self.visited.insert(s.clone());
        if s.dim() > self.best.dim() || (s.dim() == self.best.dim() && s < self.best) {
            self.best = s.clone();
        }
        let k = extension_space(self.f, &self.x, &s);
        if k.dim() == s.dim() || k.dim() < self.best.dim() {
            return;
        }
        let reduced: Vec<Vec<Elem>> = k
            .rows()
            .map(|r| s.reduce(self.f, r))
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        let complement = Subspace::span(self.f, s.ambient(), reduced.iter().map(Vec::as_slice));
        for p in complement.points(self.f) {
            let child = s.extend(self.f, &p);
            self.visit(child);
        }
    }
}

/// Largest dimension of an isotropic subspace of `t`, by depth-first flag
/// extension visiting at most `cap` subspaces. The witness is the smallest
/// maximal-dimension isotropic subspace in enumeration order.
pub fn alpha_alt(t: &AltTensor, cap: u64) -> IsotropyResult {
    let n = t.n();
    if t.is_zero() {
        return IsotropyResult {
            index: n,
            witness: vec![Subspace::full(n)],
            exhausted: true,
        };
    }
    let mut search = AltSearch {
        f: t.field(),
        x: t.expand(),
        visited: HashSet::new(),
        cap: cap.max(1),
        best: Subspace::zero(n),
        exhausted: true,
    };
    search.visit(Subspace::zero(n));
    IsotropyResult {
        index: search.best.dim(),
        witness: vec![search.best],
        exhausted: search.exhausted,
    }
}

/// Walks every `(d-1)`-tuple of `k`-subspaces in enumeration order and hands
/// the callback the prefix together with the space of vectors `w` such that
/// `T(v_1, ..., v_{d-1}, w) = 0` for all basis vectors `v_j` of the prefix.
/// The callback returns `true` to stop.
fn walk_prefixes(
    t: &Tensor,
    k: usize,
    cap: u64,
    mut visit: impl FnMut(&[Subspace], &Subspace) -> bool,
) -> Result<()> {
    let f = t.field();
    let (n, d, m) = (t.n(), t.d(), t.m());
    if d == 0 {
        return Err(Error::pre("tensor order must be at least 1"));
    }
    if k > n {
        return Err(Error::pre(format!("k = {k} exceeds n = {n}")));
    }
    let gr = gauss_binom(n, k, f.order() as u64);
    check_cap("subspace tuples", &gr.pow((d - 1) as u32), cap)?;
    let planes: Vec<Subspace> = crate::grassmann::Grassmannian::new(f, n, k).collect();

    fn rec(
        f: &Field,
        m: usize,
        n: usize,
        slots_left: usize,
        planes: &[Subspace],
        partials: &[Vec<Elem>],
        prefix: &mut Vec<Subspace>,
        visit: &mut dyn FnMut(&[Subspace], &Subspace) -> bool,
    ) -> bool {
        if slots_left == 0 {
            let rows: Vec<Elem> = partials.iter().flatten().copied().collect();
            let kernel = if rows.is_empty() {
                Subspace::full(n)
            } else {
                let ker = linalg::null_space(f, &rows, rows.len() / n, n);
                Subspace::span(f, n, ker.iter().map(Vec::as_slice))
            };
            return visit(prefix, &kernel);
        }
        for v in planes {
            let next: Vec<Vec<Elem>> = partials
                .iter()
                .flat_map(|p| v.rows().map(move |r| contract_first(f, p, m, n, r)))
                .collect();
            prefix.push(v.clone());
            let stop = rec(f, m, n, slots_left - 1, planes, &next, prefix, visit);
            prefix.pop();
            if stop {
                return true;
            }
        }
        false
    }

    let start = vec![t.coeffs().to_vec()];
    rec(f, m, n, d - 1, &planes, &start, &mut Vec::new(), &mut visit);
    Ok(())
}

/// First `d`-tuple of `k`-subspaces (in enumeration order) on which `t`
/// vanishes, if any. At most `|Gr(k, n)|^(d-1)` prefixes are examined; the
/// last slot is solved by linear algebra.
pub fn alpha_hom(t: &Tensor, k: usize, cap: u64) -> Result<Option<Vec<Subspace>>> {
    let f = t.field().clone();
    let mut found = None;
    walk_prefixes(t, k, cap, |prefix, kernel| {
        if kernel.dim() >= k {
            let last = kernel.subspaces(&f, k).swap_remove(0);
            let mut w = prefix.to_vec();
            w.push(last);
            found = Some(w);
            true
        } else {
            false
        }
    })?;
    Ok(found)
}

/// `alpha(T)`: the largest `k` such that `t` vanishes on some `d`-tuple of
/// `k`-subspaces.
pub fn alpha_hom_index(t: &Tensor, cap: u64) -> Result<IsotropyResult> {
    let n = t.n();
    let mut best = IsotropyResult {
        index: 0,
        witness: vec![Subspace::zero(n); t.d()],
        exhausted: true,
    };
    for k in 1..=n {
        match alpha_hom(t, k, cap) {
            Ok(Some(w)) => {
                best.index = k;
                best.witness = w;
            }
            Ok(None) => break,
            Err(Error::CapExceeded { .. }) => {
                best.exhausted = false;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

/// Outcome of a multilinear search over one extension degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionOutcome {
    pub r: u32,
    pub order: u32,
    pub witness: Option<Vec<Subspace>>,
}

/// Runs [`alpha_hom`] after base change to `F_{q^r}` for each requested `r`.
pub fn alpha_hom_over_extensions(t: &Tensor, k: usize, rs: &[u32], cap: u64) -> Result<Vec<ExtensionOutcome>> {
    let f = t.field();
    rs.iter()
        .map(|&r| {
            let big = Field::new(f.characteristic(), f.degree() * r)?;
            let lifted = t.base_change(&big)?;
            Ok(ExtensionOutcome {
                r,
                order: big.order(),
                witness: alpha_hom(&lifted, k, cap)?,
            })
        })
        .collect()
}

/// `D_T`: every `d`-tuple of planes on which `t` vanishes, sorted.
pub fn enumerate_dt(t: &Tensor, cap: u64) -> Result<Vec<Vec<Subspace>>> {
    let f = t.field().clone();
    let gr = gauss_binom(t.n(), 2, f.order() as u64);
    check_cap("plane tuples", &gr.pow(t.d() as u32), cap)?;
    let mut out = Vec::new();
    walk_prefixes(t, 2, cap, |prefix, kernel| {
        for w in kernel.subspaces(&f, 2) {
            let mut tuple = prefix.to_vec();
            tuple.push(w);
            out.push(tuple);
        }
        false
    })?;
    Ok(out)
}

/// `|D_T|` without materializing the tuples.
pub fn count_dt(t: &Tensor, cap: u64) -> Result<BigUint> {
    let q = t.field().order() as u64;
    let mut total = BigUint::zero();
    walk_prefixes(t, 2, cap, |_, kernel| {
        total += gauss_binom(kernel.dim(), 2, q);
        false
    })?;
    Ok(total)
}

/// How the field-level minimum is searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldMinMode {
    /// Every alternating tensor, refusing if there are more than `cap`.
    Exhaustive { cap: u64 },
    /// `samples` tensors drawn from SplitMix64(`seed`); the result is only an
    /// upper bound on the minimum.
    Sample { samples: u64, seed: u64 },
}

/// Minimum of `alpha_alt` over alternating tensors with coefficients in the
/// base field, each searched over `F_{q^r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMinResult {
    pub value: usize,
    /// True for an exhaustive scan; false means `value` is an upper bound.
    pub exact: bool,
    pub tensors_examined: u64,
    /// First tensor (in scan order) attaining `value`.
    pub witness_tensor: AltTensor,
    pub witness: Subspace,
    /// False if some per-tensor search hit its cap.
    pub searches_complete: bool,
}

pub fn alpha_field_alt(
    field: &Field,
    n: usize,
    d: usize,
    m: usize,
    r: u32,
    mode: FieldMinMode,
    visit_cap: u64,
) -> Result<FieldMinResult> {
    if d == 0 || r == 0 {
        return Err(Error::pre("d and r must be positive"));
    }
    let target = Field::new(field.characteristic(), field.degree() * r)?;
    let lower = (d - 1).min(n);
    let eval = |t: AltTensor| -> Result<(IsotropyResult, AltTensor)> {
        let res = if r == 1 {
            alpha_alt(&t, visit_cap)
        } else {
            alpha_alt(&t.base_change(&target)?, visit_cap)
        };
        Ok((res, t))
    };

    let (tensors, exact): (Vec<AltTensor>, bool) = match mode {
        FieldMinMode::Exhaustive { cap } => {
            let count = AltTensor::count(field, n, d, m).filter(|&c| c <= cap).ok_or_else(|| {
                let len = crate::grassmann::binomial(n, d) * m;
                Error::cap(
                    "alternating tensors",
                    format!("{}^{}", field.order(), len),
                    cap,
                )
            })?;
            let all = (0..count)
                .map(|i| AltTensor::nth(field, n, d, m, i))
                .collect::<Result<Vec<_>>>()?;
            (all, true)
        }
        FieldMinMode::Sample { samples, seed } => {
            let mut rng = SplitMix64::new(seed);
            let all = (0..samples)
                .map(|_| AltTensor::random_from(field, n, d, m, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            (all, false)
        }
    };
    if tensors.is_empty() {
        return Err(Error::pre("at least one sample is required"));
    }

    let results = tensors
        .into_par_iter()
        .map(eval)
        .collect::<Result<Vec<_>>>()?;
    let searches_complete = results.iter().all(|(r, _)| r.exhausted);
    let pos = results
        .iter()
        .enumerate()
        .min_by_key(|(i, (r, _))| (r.index, *i))
        .map(|(i, _)| i)
        .expect("nonempty");
    debug_assert!(results[pos].0.index >= lower || !searches_complete);
    let (res, tensor) = results.into_iter().nth(pos).expect("index in range");
    let tensors_examined = match mode {
        FieldMinMode::Exhaustive { .. } => AltTensor::count(field, n, d, m).unwrap_or(u64::MAX),
        FieldMinMode::Sample { samples, .. } => samples,
    };
    Ok(FieldMinResult {
        value: res.index,
        exact,
        tensors_examined,
        witness_tensor: tensor,
        witness: res.witness.into_iter().next().expect("one witness subspace"),
        searches_complete,
    })
}

/// `(q^e - 1) / (q - 1)`, the number of points of a projective space of
/// dimension `e - 1`.
fn projective_count(q: u64, e: &BigUint) -> BigUint {
    let e = u32::try_from(e).expect("exponent fits in u32");
    (BigUint::from(q).pow(e) - 1u32) / (q - 1)
}

/// `|I_1(F_q)|` by the fibre formula: each `k`-subspace is isotropic for a
/// projective space of alternating tensors of dimension
/// `m (C(n,d) - C(k,d)) - 1`.
pub fn count_i1_points(field: &Field, n: usize, d: usize, m: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::pre(format!("k = {k} exceeds n = {n}")));
    }
    let q = field.order() as u64;
    let fiber = (crate::grassmann::binomial(n, d) - crate::grassmann::binomial(k, d)) * m;
    Ok(gauss_binom(n, k, q) * projective_count(q, &fiber))
}

/// `|J_1(F_q)|` by the fibre formula with exponent `m (n^d - 2^d)`.
pub fn count_j1_points(field: &Field, n: usize, d: usize, m: usize) -> Result<BigUint> {
    if n < 2 {
        return Ok(BigUint::zero());
    }
    let q = field.order() as u64;
    let fiber = (BigUint::from(n).pow(d as u32) - BigUint::from(2u32).pow(d as u32)) * m;
    Ok(gauss_binom(n, 2, q).pow(d as u32) * projective_count(q, &fiber))
}

/// `|I_1(F_q)|` by checking every nonzero alternating tensor against every
/// `k`-subspace. `cap` bounds the number of (tensor, subspace) checks.
pub fn count_i1_points_raw(field: &Field, n: usize, d: usize, m: usize, k: usize, cap: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::pre(format!("k = {k} exceeds n = {n}")));
    }
    let q = field.order() as u64;
    let tensors = AltTensor::count(field, n, d, m)
        .ok_or_else(|| Error::cap("alternating tensors", "overflow", cap))?;
    let planes: Vec<Subspace> = crate::grassmann::Grassmannian::new(field, n, k).collect();
    check_cap(
        "tensor-subspace pairs",
        &(BigUint::from(tensors) * planes.len()),
        cap,
    )?;
    let hits: u64 = (1..tensors)
        .into_par_iter()
        .map(|i| {
            let t = AltTensor::nth(field, n, d, m, i).expect("valid index");
            planes
                .iter()
                .filter(|v| t.is_isotropic(v).expect("same ambient"))
                .count() as u64
        })
        .sum();
    divide_scalars(hits, q)
}

/// `|J_1(F_q)|` by enumerating `D_T` for every nonzero multilinear tensor.
pub fn count_j1_points_raw(field: &Field, n: usize, d: usize, m: usize, cap: u64) -> Result<BigUint> {
    let q = field.order() as u64;
    let len = (n as u32)
        .checked_pow(d as u32)
        .and_then(|x| x.checked_mul(m as u32))
        .ok_or_else(|| Error::pre("tensor too large"))?;
    let tensors = q
        .checked_pow(len)
        .ok_or_else(|| Error::cap("multilinear tensors", format!("{q}^{len}"), cap))?;
    let gr = gauss_binom(n, 2, q).pow(d as u32);
    check_cap("tensor-tuple pairs", &(gr * tensors), cap)?;
    let hits = (1..tensors)
        .into_par_iter()
        .map(|i| {
            let t = Tensor::nth(field, n, d, m, i)?;
            count_dt(&t, u64::MAX)
        })
        .try_reduce(BigUint::zero, |a, b| Ok(a + b))?;
    let q_minus_1 = BigUint::from(q - 1);
    if !(&hits % &q_minus_1).is_zero() {
        return Err(Error::Invariant("incidence count not divisible by q - 1".into()));
    }
    Ok(hits / q_minus_1)
}

fn divide_scalars(hits: u64, q: u64) -> Result<BigUint> {
    if hits % (q - 1) != 0 {
        return Err(Error::Invariant("incidence count not divisible by q - 1".into()));
    }
    Ok(BigUint::from(hits / (q - 1)))
}

/// True iff every listed subspace tuple annihilates `t`; used to re-check
/// witnesses independently of the search that produced them.
pub fn witness_holds(t: &Tensor, witness: &[Subspace]) -> Result<bool> {
    let refs: Vec<&Subspace> = witness.iter().collect();
    t.restrict_zero(&refs)
}

/// Projective point count of `P(F_q^n)`.
pub fn projective_points(q: u64, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    projective_count(q, &BigUint::from(n))
}
