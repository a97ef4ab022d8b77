//! Dense multilinear maps `(F^n)^d -> F^m` and their alternating counterparts.
//!
//! A [`Tensor`] stores `m * n^d` coefficients indexed `(out, i_1, ..., i_d)`
//! row-major. An [`AltTensor`] stores, for every output coordinate, one
//! coefficient per strictly increasing tuple `i_1 < ... < i_d` in
//! lexicographic order; its value on arbitrary arguments is the sum of those
//! coefficients times the corresponding `d x d` minors, so it vanishes on
//! repeated arguments in every characteristic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, Field, FieldSpec};
use crate::grassmann::{next_combination, Subspace};
use crate::linalg;
use crate::rng::SplitMix64;

/// Hard limit on stored coefficients.
const MAX_COEFFS: u64 = 1 << 26;

fn dense_len(n: usize, d: usize, m: usize) -> Result<usize> {
    (n as u64)
        .checked_pow(d as u32)
        .and_then(|x| x.checked_mul(m as u64))
        .filter(|&x| x <= MAX_COEFFS)
        .map(|x| x as usize)
        .ok_or_else(|| Error::pre(format!("m * n^d too large for n={n}, d={d}, m={m}")))
}

/// Strictly increasing `d`-tuples of `0..n` in lexicographic order.
pub fn increasing_tuples(n: usize, d: usize) -> Vec<Vec<usize>> {
    if d > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Some((0..d).collect::<Vec<_>>());
    while let Some(c) = cur {
        out.push(c.clone());
        cur = next_combination(c, n);
    }
    out
}

/// Contracts the first slot of an `(out, i_1, ..., i_r)` array with `v`.
pub(crate) fn contract_first(f: &Field, p: &[Elem], m: usize, n: usize, v: &[Elem]) -> Vec<Elem> {
    let block = p.len() / m;
    let rest = block / n;
    let mut out = vec![Elem::ZERO; m * rest];
    for o in 0..m {
        let src = &p[o * block..(o + 1) * block];
        let dst = &mut out[o * rest..(o + 1) * rest];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, &c) in dst.iter_mut().zip(&src[i * rest..(i + 1) * rest]) {
                if !c.is_zero() {
                    *t = f.mul_add(a, c, *t);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    field: Field,
    n: usize,
    d: usize,
    m: usize,
    coeffs: Vec<Elem>,
}

impl Tensor {
    pub fn new(field: &Field, n: usize, d: usize, m: usize, coeffs: Vec<Elem>) -> Result<Tensor> {
        if coeffs.len() != dense_len(n, d, m)? {
            return Err(Error::pre("coefficient count must be m * n^d"));
        }
        field.check_vector(&coeffs)?;
        Ok(Tensor {
            field: field.clone(),
            n,
            d,
            m,
            coeffs,
        })
    }

    pub fn zeros(field: &Field, n: usize, d: usize, m: usize) -> Result<Tensor> {
        let len = dense_len(n, d, m)?;
        Tensor::new(field, n, d, m, vec![Elem::ZERO; len])
    }

    /// Coefficients drawn independently and uniformly from SplitMix64(`seed`)
    /// in storage order.
    pub fn random(field: &Field, n: usize, d: usize, m: usize, seed: u64) -> Result<Tensor> {
        let mut rng = SplitMix64::new(seed);
        Tensor::random_from(field, n, d, m, &mut rng)
    }

    pub fn random_from(field: &Field, n: usize, d: usize, m: usize, rng: &mut SplitMix64) -> Result<Tensor> {
        let len = dense_len(n, d, m)?;
        let coeffs = (0..len).map(|_| rng.elem(field)).collect();
        Tensor::new(field, n, d, m, coeffs)
    }

    /// The `index`-th tensor when coefficient vectors are listed as base-`q`
    /// numbers, first coefficient most significant.
    pub fn nth(field: &Field, n: usize, d: usize, m: usize, mut index: u64) -> Result<Tensor> {
        let len = dense_len(n, d, m)?;
        let q = field.order() as u64;
        let mut coeffs = vec![Elem::ZERO; len];
        for c in coeffs.iter_mut().rev() {
            *c = Elem::from_index((index % q) as u32);
            index /= q;
        }
        Tensor::new(field, n, d, m, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn get(&self, out: usize, idx: &[usize]) -> Elem {
        let flat = idx.iter().fold(out, |acc, &i| acc * self.n + i);
        self.coeffs[flat]
    }

    fn check_args(&self, args: &[&[Elem]]) -> Result<()> {
        if args.len() > self.d {
            return Err(Error::pre(format!("expected at most {} arguments", self.d)));
        }
        for a in args {
            if a.len() != self.n {
                return Err(Error::pre(format!("argument length {} differs from n = {}", a.len(), self.n)));
            }
            self.field.check_vector(a)?;
        }
        Ok(())
    }

    /// `T(v_1, ..., v_d)`.
    pub fn eval(&self, args: &[&[Elem]]) -> Result<Vec<Elem>> {
        if args.len() != self.d {
            return Err(Error::pre(format!("expected {} arguments, got {}", self.d, args.len())));
        }
        self.contract_leading(args)
    }

    /// Fixes the first `vs.len()` slots; the result is indexed
    /// `(out, i_{j+1}, ..., i_d)` row-major.
    pub fn contract_leading(&self, vs: &[&[Elem]]) -> Result<Vec<Elem>> {
        self.check_args(vs)?;
        Ok(self.contract_leading_unchecked(vs))
    }

    pub(crate) fn contract_leading_unchecked(&self, vs: &[&[Elem]]) -> Vec<Elem> {
        let mut cur: Option<Vec<Elem>> = None;
        for v in vs {
            let src = cur.as_deref().unwrap_or(&self.coeffs);
            cur = Some(contract_first(&self.field, src, self.m, self.n, v));
        }
        cur.unwrap_or_else(|| self.coeffs.clone())
    }

    /// Matrix (`m x n`, row-major) of the linear map left in `slot` after
    /// fixing every other slot; `others` lists the remaining arguments in
    /// slot order.
    pub fn slot_matrix(&self, slot: usize, others: &[&[Elem]]) -> Result<Vec<Elem>> {
        if slot >= self.d || others.len() + 1 != self.d {
            return Err(Error::pre("slot_matrix needs a valid slot and d-1 arguments"));
        }
        self.check_args(others)?;
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.m * self.n];
        let total = self.coeffs.len();
        let mut idx = vec![0usize; self.d + 1];
        for flat in 0..total {
            let c = self.coeffs[flat];
            if !c.is_zero() {
                let mut rest = flat;
                for s in (0..=self.d).rev() {
                    let base = if s == 0 { self.m } else { self.n };
                    idx[s] = rest % base;
                    rest /= base;
                }
                let mut w = c;
                let mut j = 0;
                for s in 0..self.d {
                    if s == slot {
                        continue;
                    }
                    w = f.mul(w, others[j][idx[s + 1]]);
                    j += 1;
                }
                let t = idx[0] * self.n + idx[slot + 1];
                out[t] = f.add(out[t], w);
            }
        }
        Ok(out)
    }

    /// True iff `T` vanishes on `V_1 x ... x V_d`, checked on every tuple of
    /// basis rows.
    pub fn restrict_zero(&self, spaces: &[&Subspace]) -> Result<bool> {
        if spaces.len() != self.d {
            return Err(Error::pre(format!("expected {} subspaces", self.d)));
        }
        if spaces.iter().any(|s| s.ambient() != self.n) {
            return Err(Error::pre("subspace ambient dimension differs from n"));
        }
        let mut partial = vec![self.coeffs.clone()];
        for s in spaces {
            let mut next = Vec::with_capacity(partial.len() * s.dim());
            for p in &partial {
                for r in s.rows() {
                    next.push(contract_first(&self.field, p, self.m, self.n, r));
                }
            }
            partial = next;
            if partial.is_empty() {
                return Ok(true);
            }
        }
        Ok(partial.iter().all(|p| p.iter().all(|c| c.is_zero())))
    }

    /// Coefficients pushed through an embedding into an extension field.
    pub fn base_change(&self, target: &Field) -> Result<Tensor> {
        let emb = Embedding::new(&self.field, target)?;
        Ok(self.base_change_with(&emb))
    }

    pub fn base_change_with(&self, emb: &Embedding) -> Tensor {
        assert_eq!(emb.source(), &self.field, "embedding source must be the tensor's field");
        Tensor {
            field: emb.target().clone(),
            n: self.n,
            d: self.d,
            m: self.m,
            coeffs: emb.apply_all(&self.coeffs),
        }
    }

    pub fn to_file(&self) -> TensorFile {
        TensorFile {
            field: self.field.spec().clone(),
            kind: TensorKind::Hom,
            n: self.n,
            d: self.d,
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c.index()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltTensor {
    field: Field,
    n: usize,
    d: usize,
    m: usize,
    coeffs: Vec<Elem>,
}

impl AltTensor {
    pub fn new(field: &Field, n: usize, d: usize, m: usize, coeffs: Vec<Elem>) -> Result<AltTensor> {
        let len = alt_len(n, d, m)?;
        if coeffs.len() != len {
            return Err(Error::pre("coefficient count must be m * C(n, d)"));
        }
        field.check_vector(&coeffs)?;
        Ok(AltTensor {
            field: field.clone(),
            n,
            d,
            m,
            coeffs,
        })
    }

    pub fn zeros(field: &Field, n: usize, d: usize, m: usize) -> Result<AltTensor> {
        AltTensor::new(field, n, d, m, vec![Elem::ZERO; alt_len(n, d, m)?])
    }

    pub fn random(field: &Field, n: usize, d: usize, m: usize, seed: u64) -> Result<AltTensor> {
        let mut rng = SplitMix64::new(seed);
        AltTensor::random_from(field, n, d, m, &mut rng)
    }

    pub fn random_from(field: &Field, n: usize, d: usize, m: usize, rng: &mut SplitMix64) -> Result<AltTensor> {
        let len = alt_len(n, d, m)?;
        let coeffs = (0..len).map(|_| rng.elem(field)).collect();
        AltTensor::new(field, n, d, m, coeffs)
    }

    /// See [`Tensor::nth`].
    pub fn nth(field: &Field, n: usize, d: usize, m: usize, mut index: u64) -> Result<AltTensor> {
        let len = alt_len(n, d, m)?;
        let q = field.order() as u64;
        let mut coeffs = vec![Elem::ZERO; len];
        for c in coeffs.iter_mut().rev() {
            *c = Elem::from_index((index % q) as u32);
            index /= q;
        }
        AltTensor::new(field, n, d, m, coeffs)
    }

    /// Number of alternating tensors with these parameters, if it fits in `u64`.
    pub fn count(field: &Field, n: usize, d: usize, m: usize) -> Option<u64> {
        let len = alt_len(n, d, m).ok()? as u32;
        (field.order() as u64).checked_pow(len)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `sum_S c[out, S] * det(v_j[s_i])` over increasing tuples `S`.
    pub fn alt_eval(&self, args: &[&[Elem]]) -> Result<Vec<Elem>> {
        if args.len() != self.d {
            return Err(Error::pre(format!("expected {} arguments, got {}", self.d, args.len())));
        }
        for a in args {
            if a.len() != self.n {
                return Err(Error::pre("argument length differs from n"));
            }
            self.field.check_vector(a)?;
        }
        let f = &self.field;
        let tuples = increasing_tuples(self.n, self.d);
        let per_out = tuples.len();
        let mut out = vec![Elem::ZERO; self.m];
        let mut minor = vec![Elem::ZERO; self.d * self.d];
        for (t, tuple) in tuples.iter().enumerate() {
            for (i, &s) in tuple.iter().enumerate() {
                for (j, v) in args.iter().enumerate() {
                    minor[i * self.d + j] = v[s];
                }
            }
            let det = linalg::det(f, &minor, self.d);
            if det.is_zero() {
                continue;
            }
            for (o, acc) in out.iter_mut().enumerate() {
                *acc = f.mul_add(self.coeffs[o * per_out + t], det, *acc);
            }
        }
        Ok(out)
    }

    /// The same map as an element of `Hom^d`.
    pub fn expand(&self) -> Tensor {
        let f = &self.field;
        let nd = self.n.pow(self.d as u32);
        let mut coeffs = vec![Elem::ZERO; self.m * nd];
        let tuples = increasing_tuples(self.n, self.d);
        let per_out = tuples.len();
        for (t, tuple) in tuples.iter().enumerate() {
            for perm in permutations(self.d) {
                let sign_neg = inversions(&perm) % 2 == 1;
                let flat_idx = perm.iter().fold(0, |acc, &p| acc * self.n + tuple[p]);
                for o in 0..self.m {
                    let c = self.coeffs[o * per_out + t];
                    coeffs[o * nd + flat_idx] = if sign_neg { f.neg(c) } else { c };
                }
            }
        }
        Tensor {
            field: f.clone(),
            n: self.n,
            d: self.d,
            m: self.m,
            coeffs,
        }
    }

    /// True iff `T|_V = 0`, checked on increasing tuples of basis rows.
    pub fn is_isotropic(&self, v: &Subspace) -> Result<bool> {
        if v.ambient() != self.n {
            return Err(Error::pre("subspace ambient dimension differs from n"));
        }
        for idx in increasing_tuples(v.dim(), self.d) {
            let args: Vec<&[Elem]> = idx.iter().map(|&i| v.row(i)).collect();
            if self.alt_eval(&args)?.iter().any(|c| !c.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn base_change(&self, target: &Field) -> Result<AltTensor> {
        let emb = Embedding::new(&self.field, target)?;
        Ok(self.base_change_with(&emb))
    }

    pub fn base_change_with(&self, emb: &Embedding) -> AltTensor {
        assert_eq!(emb.source(), &self.field, "embedding source must be the tensor's field");
        AltTensor {
            field: emb.target().clone(),
            n: self.n,
            d: self.d,
            m: self.m,
            coeffs: emb.apply_all(&self.coeffs),
        }
    }

    pub fn to_file(&self) -> TensorFile {
        TensorFile {
            field: self.field.spec().clone(),
            kind: TensorKind::Alt,
            n: self.n,
            d: self.d,
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c.index()).collect(),
        }
    }
}

fn alt_len(n: usize, d: usize, m: usize) -> Result<usize> {
    let c = crate::grassmann::binomial(n, d);
    let len = num_traits::ToPrimitive::to_u64(&(c * m)).filter(|&x| x <= MAX_COEFFS);
    len.map(|x| x as usize)
        .ok_or_else(|| Error::pre(format!("m * C(n,d) too large for n={n}, d={d}, m={m}")))
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorKind {
    Hom,
    Alt,
}

/// Wire format for tensors; coefficients are element indices in the order
/// of the in-memory layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorFile {
    pub field: FieldSpec,
    pub kind: TensorKind,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub coeffs: Vec<u32>,
}

/// Either kind of tensor, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTensor {
    Hom(Tensor),
    Alt(AltTensor),
}

impl AnyTensor {
    pub fn random(field: &Field, n: usize, d: usize, m: usize, kind: TensorKind, seed: u64) -> Result<AnyTensor> {
        Ok(match kind {
            TensorKind::Hom => AnyTensor::Hom(Tensor::random(field, n, d, m, seed)?),
            TensorKind::Alt => AnyTensor::Alt(AltTensor::random(field, n, d, m, seed)?),
        })
    }

    pub fn from_file(file: &TensorFile) -> Result<AnyTensor> {
        let field = Field::from_spec(file.field.clone())?;
        let coeffs = file
            .coeffs
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(match file.kind {
            TensorKind::Hom => AnyTensor::Hom(Tensor::new(&field, file.n, file.d, file.m, coeffs)?),
            TensorKind::Alt => AnyTensor::Alt(AltTensor::new(&field, file.n, file.d, file.m, coeffs)?),
        })
    }

    pub fn to_file(&self) -> TensorFile {
        match self {
            AnyTensor::Hom(t) => t.to_file(),
            AnyTensor::Alt(t) => t.to_file(),
        }
    }

    pub fn field(&self) -> &Field {
        match self {
            AnyTensor::Hom(t) => t.field(),
            AnyTensor::Alt(t) => t.field(),
        }
    }

    pub fn base_change(&self, target: &Field) -> Result<AnyTensor> {
        Ok(match self {
            AnyTensor::Hom(t) => AnyTensor::Hom(t.base_change(target)?),
            AnyTensor::Alt(t) => AnyTensor::Alt(t.base_change(target)?),
        })
    }

    /// The map as an element of `Hom^d`.
    pub fn as_hom(&self) -> Tensor {
        match self {
            AnyTensor::Hom(t) => t.clone(),
            AnyTensor::Alt(t) => t.expand(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; n];
        v[i] = Elem::ONE;
        v
    }

    fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
    }

    fn random_vec(f: &Field, n: usize, g: &mut SplitMix64) -> Vec<Elem> {
        (0..n).map(|_| g.elem(f)).collect()
    }

    #[test]
    fn zero_and_identity_forms() {
        let f2 = Field::new(2, 1).unwrap();
        let z = Tensor::zeros(&f2, 3, 2, 2).unwrap();
        assert_eq!(z.eval(&[&e(3, 0), &e(3, 1)]).unwrap(), vec![Elem::ZERO; 2]);
        let id = Tensor::new(&f2, 2, 2, 1, vec![Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ONE]).unwrap();
        assert_eq!(id.eval(&[&e(2, 0), &e(2, 0)]).unwrap(), vec![Elem::ONE]);
        assert!(id.eval(&[&e(3, 0), &e(2, 0)]).is_err());
    }

    #[test]
    fn eval_is_multilinear() {
        let f = Field::new(5, 1).unwrap();
        let mut g = SplitMix64::new(3);
        let t = Tensor::random(&f, 3, 3, 2, 11).unwrap();
        for _ in 0..50 {
            let (a, b, c, x) = (
                random_vec(&f, 3, &mut g),
                random_vec(&f, 3, &mut g),
                random_vec(&f, 3, &mut g),
                random_vec(&f, 3, &mut g),
            );
            let lam = g.elem(&f);
            for slot in 0..3 {
                let mut args = vec![a.clone(), b.clone(), c.clone()];
                let base = t.eval(&args.iter().map(Vec::as_slice).collect::<Vec<_>>()).unwrap();
                args[slot] = x.clone();
                let other = t.eval(&args.iter().map(Vec::as_slice).collect::<Vec<_>>()).unwrap();
                let orig = [a.clone(), b.clone(), c.clone()][slot].clone();
                args[slot] = add(&f, &orig, &x);
                let sum = t.eval(&args.iter().map(Vec::as_slice).collect::<Vec<_>>()).unwrap();
                assert_eq!(sum, add(&f, &base, &other));
                args[slot] = orig.iter().map(|&v| f.mul(lam, v)).collect();
                let scaled = t.eval(&args.iter().map(Vec::as_slice).collect::<Vec<_>>()).unwrap();
                assert_eq!(scaled, base.iter().map(|&v| f.mul(lam, v)).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn symplectic_sign_swap() {
        let f3 = Field::new(3, 1).unwrap();
        let t = AltTensor::new(&f3, 2, 2, 1, vec![Elem::ONE]).unwrap();
        assert_eq!(t.alt_eval(&[&e(2, 0), &e(2, 1)]).unwrap(), vec![Elem::ONE]);
        assert_eq!(t.alt_eval(&[&e(2, 1), &e(2, 0)]).unwrap(), vec![f3.neg(Elem::ONE)]);
        let x = t.expand();
        assert_eq!(x.coeffs(), &[Elem::ZERO, Elem::ONE, f3.neg(Elem::ONE), Elem::ZERO]);
    }

    #[test]
    fn alternation_exhaustive_over_f2() {
        let f2 = Field::new(2, 1).unwrap();
        for n in 1..=4usize {
            for d in 2..=3usize {
                let t = AltTensor::random(&f2, n, d, 1, (n * 10 + d) as u64).unwrap();
                let total = 1u32 << n;
                for u in 0..total {
                    let uv: Vec<Elem> = (0..n).map(|i| Elem::from_index((u >> i) & 1)).collect();
                    for w in 0..total {
                        let wv: Vec<Elem> = (0..n).map(|i| Elem::from_index((w >> i) & 1)).collect();
                        let mut args = vec![uv.as_slice(); d];
                        if d == 3 {
                            args[2] = wv.as_slice();
                        }
                        assert_eq!(t.alt_eval(&args).unwrap(), vec![Elem::ZERO]);
                    }
                }
            }
        }
    }

    #[test]
    fn permuting_arguments_multiplies_by_sign() {
        let f3 = Field::new(3, 1).unwrap();
        let t = AltTensor::random(&f3, 4, 3, 1, 5).unwrap();
        let mut g = SplitMix64::new(9);
        let args: Vec<Vec<Elem>> = (0..3).map(|_| random_vec(&f3, 4, &mut g)).collect();
        let base = t.alt_eval(&args.iter().map(Vec::as_slice).collect::<Vec<_>>()).unwrap();
        for perm in permutations(3) {
            let permuted: Vec<&[Elem]> = perm.iter().map(|&i| args[i].as_slice()).collect();
            let v = t.alt_eval(&permuted).unwrap();
            let expect = if inversions(&perm) % 2 == 1 {
                base.iter().map(|&x| f3.neg(x)).collect()
            } else {
                base.clone()
            };
            assert_eq!(v, expect);
        }
    }

    #[test]
    fn expand_agrees_with_alt_eval() {
        let f5 = Field::new(5, 1).unwrap();
        let t = AltTensor::random(&f5, 4, 3, 2, 17).unwrap();
        let x = t.expand();
        let mut g = SplitMix64::new(1);
        for _ in 0..100 {
            let args: Vec<Vec<Elem>> = (0..3).map(|_| random_vec(&f5, 4, &mut g)).collect();
            let refs: Vec<&[Elem]> = args.iter().map(Vec::as_slice).collect();
            assert_eq!(x.eval(&refs).unwrap(), t.alt_eval(&refs).unwrap());
        }
        assert!(AltTensor::zeros(&f5, 3, 2, 1).unwrap().expand().is_zero());
    }

    #[test]
    fn restriction_examples() {
        let f2 = Field::new(2, 1).unwrap();
        let id = Tensor::new(&f2, 2, 2, 1, vec![Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ONE]).unwrap();
        let zero = Subspace::zero(2);
        assert!(id.restrict_zero(&[&zero, &zero]).unwrap());
        let line = Subspace::span(&f2, 2, [e(2, 0).as_slice()]);
        assert!(!id.restrict_zero(&[&line, &line]).unwrap());

        let f3 = Field::new(3, 1).unwrap();
        let sym = AltTensor::new(&f3, 2, 2, 1, vec![Elem::ONE]).unwrap().expand();
        let line3 = Subspace::span(&f3, 2, [e(2, 0).as_slice()]);
        assert!(sym.restrict_zero(&[&line3, &line3]).unwrap());
    }

    #[test]
    fn base_change_commutes_with_eval() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let emb = Embedding::new(&f2, &f4).unwrap();
        let t = Tensor::random(&f2, 2, 2, 1, 4).unwrap();
        let big = t.base_change(&f4).unwrap();
        for a in 0..4u32 {
            for b in 0..4u32 {
                let va: Vec<Elem> = (0..2).map(|i| Elem::from_index((a >> i) & 1)).collect();
                let vb: Vec<Elem> = (0..2).map(|i| Elem::from_index((b >> i) & 1)).collect();
                let small = t.eval(&[&va, &vb]).unwrap();
                let lifted = big.eval(&[&emb.apply_all(&va), &emb.apply_all(&vb)]).unwrap();
                assert_eq!(emb.apply_all(&small), lifted);
            }
        }
        assert_eq!(t.base_change(&f2).unwrap(), t);
        assert!(Tensor::zeros(&f2, 2, 2, 1).unwrap().base_change(&f4).unwrap().is_zero());
        assert!(t.base_change(&Field::new(3, 1).unwrap()).is_err());
    }

    #[test]
    fn random_tensors_are_reproducible() {
        let f2 = Field::new(2, 1).unwrap();
        let a = Tensor::random(&f2, 2, 2, 1, 42).unwrap();
        assert_eq!(a, Tensor::random(&f2, 2, 2, 1, 42).unwrap());
        let idx: Vec<u32> = a.coeffs().iter().map(|c| c.index()).collect();
        assert_eq!(idx, vec![1, 1, 0, 0]);
        let b = Tensor::random(&f2, 3, 3, 1, 43).unwrap();
        assert_ne!(Tensor::random(&f2, 3, 3, 1, 42).unwrap(), b);
        assert!(AltTensor::random(&f2, 2, 3, 2, 1).unwrap().coeffs().is_empty());
    }

    #[test]
    fn slot_matrix_matches_eval() {
        let f3 = Field::new(3, 1).unwrap();
        let t = Tensor::random(&f3, 3, 3, 2, 8).unwrap();
        let mut g = SplitMix64::new(2);
        let args: Vec<Vec<Elem>> = (0..3).map(|_| random_vec(&f3, 3, &mut g)).collect();
        let full = t.eval(&[&args[0], &args[1], &args[2]]).unwrap();
        for slot in 0..3 {
            let others: Vec<&[Elem]> = (0..3).filter(|&s| s != slot).map(|s| args[s].as_slice()).collect();
            let mat = t.slot_matrix(slot, &others).unwrap();
            let applied: Vec<Elem> = (0..2).map(|o| f3.dot(&mat[o * 3..o * 3 + 3], &args[slot])).collect();
            assert_eq!(applied, full);
        }
    }

    #[test]
    fn file_round_trip() {
        let f9 = Field::new(3, 2).unwrap();
        let t = AnyTensor::random(&f9, 3, 2, 2, TensorKind::Alt, 5).unwrap();
        let json = serde_json::to_string(&t.to_file()).unwrap();
        let back: TensorFile = serde_json::from_str(&json).unwrap();
        assert_eq!(AnyTensor::from_file(&back).unwrap(), t);
        let mut broken = back.clone();
        broken.coeffs.push(0);
        assert!(AnyTensor::from_file(&broken).is_err());
    }
}
