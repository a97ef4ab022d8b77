//! Box-free hypergraphs from multilinear maps.
//!
//! For `T: (F_q^{n+1})^d -> F_q^m` the `d`-partite hypergraph `G(T)` has one
//! copy of `P^n(F_q)` per part and an edge for every tuple of projective
//! points on which `T` vanishes. Every copy of `K_{2,...,2}` in `G(T)` spans a
//! tuple of planes annihilating `T`, so deleting the edges inside
//! `P(V_1) x ... x P(V_d)` for every tuple in `D_T` leaves a hypergraph with
//! no such copy. A counting argument over all `T` shows some nonzero `T` has
//! `|D_T| <= |Gr(2, n+1)|^d / q^(m 2^d)`; the search below finds one.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::grassmann::{check_cap, gauss_binom, Subspace};
use crate::isotropy::{count_dt, enumerate_dt, projective_points};
use crate::rng::SplitMix64;
use crate::tensor::{contract_first, Tensor};

/// Default number of tensors below which the pigeonhole search may fall back
/// to scanning every tensor.
pub const DEFAULT_EXHAUSTIVE_THRESHOLD: u64 = 1 << 20;

/// A `d`-partite `d`-uniform hypergraph whose vertices are projective points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    d: usize,
    parts: Vec<Vec<Vec<Elem>>>,
    edges: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub d: usize,
    pub parts: Vec<Vec<Vec<u32>>>,
    pub edges: Vec<Vec<usize>>,
}

/// Header of the plain edge-list format, `# d n q m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeListHeader {
    pub d: usize,
    pub n: usize,
    pub q: u64,
    pub m: usize,
}

impl Hypergraph {
    /// Validates vertex references and sorts and deduplicates the edges.
    pub fn new(d: usize, parts: Vec<Vec<Vec<Elem>>>, mut edges: Vec<Vec<usize>>) -> Result<Hypergraph> {
        if parts.len() != d {
            return Err(Error::pre(format!("expected {d} parts, got {}", parts.len())));
        }
        for e in &edges {
            if e.len() != d || e.iter().zip(&parts).any(|(&v, p)| v >= p.len()) {
                return Err(Error::pre(format!("edge {e:?} does not reference valid vertices")));
            }
        }
        edges.sort();
        edges.dedup();
        Ok(Hypergraph { d, parts, edges })
    }

    pub fn d(&self) -> usize {
        self.d
    }
    pub fn parts(&self) -> &[Vec<Vec<Elem>>] {
        &self.parts
    }
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson {
            d: self.d,
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|v| v.iter().map(|e| e.index()).collect()).collect())
                .collect(),
            edges: self.edges.clone(),
        }
    }

    pub fn from_json(f: &Field, j: &HypergraphJson) -> Result<Hypergraph> {
        let parts = j
            .parts
            .iter()
            .map(|p| {
                p.iter()
                    .map(|v| v.iter().map(|&i| f.elem(i)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(j.d, parts, j.edges.clone())
    }

    /// Plain text: the header line then one edge per line.
    pub fn to_edge_list(&self, header: EdgeListHeader) -> String {
        let mut s = format!("# {} {} {} {}\n", header.d, header.n, header.q, header.m);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    /// Parses the plain format; parts are rebuilt as the canonical points of
    /// `P^n(F_q)`.
    pub fn from_edge_list(text: &str) -> Result<(EdgeListHeader, Hypergraph)> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head = lines.next().ok_or_else(|| Error::pre("empty edge list"))?;
        let nums: Vec<u64> = head
            .trim_start_matches('#')
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| Error::pre(format!("bad header token {t:?}"))))
            .collect::<Result<_>>()?;
        if !head.starts_with('#') || nums.len() != 4 {
            return Err(Error::pre("header must be '# d n q m'"));
        }
        let header = EdgeListHeader {
            d: nums[0] as usize,
            n: nums[1] as usize,
            q: nums[2],
            m: nums[3] as usize,
        };
        let f = Field::with_order(header.q)?;
        let points = Subspace::full(header.n + 1).points(&f);
        let edges = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| Error::pre(format!("bad vertex {t:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let h = Hypergraph::new(header.d, vec![points; header.d], edges)?;
        Ok((header, h))
    }
}

/// `G(T)`: parts are the canonical points of `P^{N-1}(F_q)` where `N` is
/// the tensor's ambient dimension, edges the projective zero tuples.
pub fn build_g(t: &Tensor, cap: u64) -> Result<Hypergraph> {
    let f = t.field();
    let (n, d, m) = (t.n(), t.d(), t.m());
    let points = Subspace::full(n).points(f);
    check_cap("vertex tuples", &BigUint::from(points.len()).pow(d as u32), cap)?;

    fn rec(
        f: &Field,
        m: usize,
        n: usize,
        points: &[Vec<Elem>],
        partial: &[Elem],
        slots_left: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots_left == 0 {
            if partial.iter().all(|c| c.is_zero()) {
                out.push(prefix.clone());
            }
            return;
        }
        for (i, p) in points.iter().enumerate() {
            let next = contract_first(f, partial, m, n, p);
            prefix.push(i);
            rec(f, m, n, points, &next, slots_left - 1, prefix, out);
            prefix.pop();
        }
    }

    let mut edges = Vec::new();
    rec(f, m, n, &points, t.coeffs(), d, &mut Vec::new(), &mut edges);
    Hypergraph::new(d, vec![points; d], edges)
}

/// Lower bound on the edge count: `(q^(dN - m) - d q^((d-1)N)) / (q-1)^d`
/// with `N = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBound {
    pub edges: BigUint,
    pub numerator: BigInt,
    pub denominator: BigUint,
    /// Smallest integer at least the bound (may be negative).
    pub bound_ceil: BigInt,
    pub holds: bool,
}

pub fn edge_bound(q: u64, big_n: usize, d: usize, m: usize, edges: usize) -> EdgeBound {
    let qb = BigInt::from(q);
    let dn = d * big_n;
    let first = if m <= dn {
        qb.pow((dn - m) as u32)
    } else {
        BigInt::zero()
    };
    // For m > dN the first term is a fraction below 1 and the bound is
    // negative either way; dropping the fraction keeps the check vacuous.
    let numerator = first - BigInt::from(d) * qb.pow(((d - 1) * big_n) as u32);
    let denominator = BigUint::from(q - 1).pow(d as u32);
    let den_i = BigInt::from(denominator.clone());
    let bound_ceil = -((-&numerator).div_floor(&den_i));
    let edges = BigUint::from(edges);
    let holds = BigInt::from(edges.clone()) * &den_i >= numerator;
    EdgeBound {
        edges,
        numerator,
        denominator,
        bound_ceil,
        holds,
    }
}

/// Edge count of `G(T)` against the lower bound.
pub fn edge_bound_check(t: &Tensor, cap: u64) -> Result<EdgeBound> {
    let g = build_g(t, cap)?;
    Ok(edge_bound(t.field().order() as u64, t.n(), t.d(), t.m(), g.edges().len()))
}

/// `m (2^d - 1) < (n - 1) d`, the range where the pigeonhole tensor is useful.
pub fn admissible(n: usize, d: usize, m: usize) -> bool {
    let lhs = BigUint::from(m) * ((BigUint::from(1u32) << d) - 1u32);
    n >= 1 && lhs < BigUint::from((n - 1) * d)
}

/// `floor(|Gr(2, n+1)|^d / q^(m 2^d))`, the average of `|D_T|` over all `T`.
pub fn dt_bound(q: u64, n: usize, d: usize, m: usize) -> BigUint {
    let num = gauss_binom(n + 1, 2, q).pow(d as u32);
    let den = BigUint::from(q).pow((m << d) as u32);
    num / den
}

/// How the pigeonhole tensor was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// All tensors were small enough to scan, so success is guaranteed.
    Exhaustive,
    /// Only seeded random trials were possible.
    Sampling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FoundBy {
    RandomTrial,
    Scan,
    NotFound,
}

#[derive(Debug, Clone)]
pub struct PigeonholeOutcome {
    /// The first qualifying tensor, or the best sampled one if none qualified.
    pub tensor: Tensor,
    pub dt_size: BigUint,
    pub bound: BigUint,
    pub met_bound: bool,
    pub mode: SearchMode,
    pub found_by: FoundBy,
    /// Random trials drawn before stopping.
    pub trials: u64,
}

/// Searches for a tensor over `field` with ambient dimension `n + 1` and
/// `|D_T|` at most [`dt_bound`]. Seeded random trials come first; if none
/// qualifies and there are at most `threshold` tensors, every nonzero tensor
/// is scanned in index order.
pub fn pigeonhole_search(
    field: &Field,
    n: usize,
    d: usize,
    m: usize,
    seed: u64,
    max_trials: u64,
    threshold: u64,
    cap: u64,
) -> Result<PigeonholeOutcome> {
    if !admissible(n, d, m) {
        return Err(Error::pre(format!(
            "parameters not admissible: need m(2^d - 1) < (n - 1)d, got n={n}, d={d}, m={m}"
        )));
    }
    let q = field.order() as u64;
    let big_n = n + 1;
    let bound = dt_bound(q, n, d, m);
    let total = (big_n as u32)
        .checked_pow(d as u32)
        .and_then(|len| len.checked_mul(m as u32))
        .and_then(|len| q.checked_pow(len))
        .filter(|&c| c <= threshold);
    let mode = if total.is_some() {
        SearchMode::Exhaustive
    } else {
        SearchMode::Sampling
    };

    let mut rng = SplitMix64::new(seed);
    let mut best: Option<(BigUint, Tensor)> = None;
    let mut trials = 0;
    while trials < max_trials {
        trials += 1;
        let t = Tensor::random_from(field, big_n, d, m, &mut rng)?;
        let size = count_dt(&t, cap)?;
        let better = best.as_ref().is_none_or(|(b, _)| &size < b);
        if better {
            best = Some((size, t));
        }
        if best.as_ref().is_some_and(|(b, _)| b <= &bound) {
            let (dt_size, tensor) = best.expect("just set");
            return Ok(PigeonholeOutcome {
                tensor,
                dt_size,
                bound,
                met_bound: true,
                mode,
                found_by: FoundBy::RandomTrial,
                trials,
            });
        }
    }

    if let Some(total) = total {
        let hit = (1..total).into_par_iter().find_map_first(|i| {
            let t = Tensor::nth(field, big_n, d, m, i).ok()?;
            let size = count_dt(&t, cap).ok()?;
            (size <= bound).then_some((size, t))
        });
        let (dt_size, tensor) = hit.ok_or_else(|| {
            Error::Invariant("no tensor meets the averaging bound although one must exist".into())
        })?;
        return Ok(PigeonholeOutcome {
            tensor,
            dt_size,
            bound,
            met_bound: true,
            mode,
            found_by: FoundBy::Scan,
            trials,
        });
    }

    let (dt_size, tensor) = match best {
        Some(b) => b,
        None => {
            let t = Tensor::zeros(field, big_n, d, m)?;
            (count_dt(&t, cap)?, t)
        }
    };
    Ok(PigeonholeOutcome {
        met_bound: dt_size <= bound,
        tensor,
        dt_size,
        bound,
        mode,
        found_by: FoundBy::NotFound,
        trials,
    })
}

/// First `K_{2,...,2}` in deterministic order: a pair of edges `e < f`
/// differing in every slot such that all `2^d` mixed tuples are edges.
pub fn freeness_check(h: &Hypergraph, cap: u64) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let e = h.edges().len();
    check_cap(
        "edge pairs",
        &(BigUint::from(e).pow(2) << h.d()),
        cap,
    )?;
    let set: HashSet<&[usize]> = h.edges().iter().map(Vec::as_slice).collect();
    let first = antipodal_pairs(h, &set).next();
    Ok(first)
}

fn antipodal_pairs<'a>(
    h: &'a Hypergraph,
    set: &'a HashSet<&'a [usize]>,
) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> + 'a {
    let edges = h.edges();
    let d = h.d();
    (0..edges.len()).flat_map(move |i| {
        (i + 1..edges.len()).filter_map(move |j| {
            let (a, b) = (&edges[i], &edges[j]);
            if a.iter().zip(b).any(|(x, y)| x == y) {
                return None;
            }
            let mut mixed = vec![0usize; d];
            for mask in 0..1u32 << d {
                for s in 0..d {
                    mixed[s] = if mask >> s & 1 == 1 { b[s] } else { a[s] };
                }
                if !set.contains(mixed.as_slice()) {
                    return None;
                }
            }
            Some((a.clone(), b.clone()))
        })
    })
}

/// Every distinct `K_{2,...,2}` of `h`, as one sorted vertex pair per part.
pub fn k22_copies(h: &Hypergraph, cap: u64) -> Result<Vec<Vec<[usize; 2]>>> {
    let e = h.edges().len();
    check_cap("edge pairs", &(BigUint::from(e).pow(2) << h.d()), cap)?;
    let set: HashSet<&[usize]> = h.edges().iter().map(Vec::as_slice).collect();
    let copies: BTreeSet<Vec<[usize; 2]>> = antipodal_pairs(h, &set)
        .map(|(a, b)| a.iter().zip(&b).map(|(&x, &y)| [x.min(y), x.max(y)]).collect())
        .collect();
    Ok(copies.into_iter().collect())
}

/// Result of deleting the edges covered by `D_T`.
#[derive(Debug, Clone)]
pub struct Deletion {
    pub pruned: Hypergraph,
    pub deleted: usize,
    /// `(q+1)^d |D_T|`, the number of tuples inside the deleted boxes.
    pub budget: BigUint,
}

/// Removes every edge inside `P(V_1) x ... x P(V_d)` for a tuple in `dt`
/// and verifies the result has no `K_{2,...,2}`; a surviving copy is an
/// invariant violation.
pub fn delete_and_verify(f: &Field, g: &Hypergraph, dt: &[Vec<Subspace>], cap: u64) -> Result<Deletion> {
    let d = g.d();
    let index: Vec<HashMap<&[Elem], usize>> = g
        .parts()
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect())
        .collect();
    let mut doomed: HashSet<Vec<usize>> = HashSet::new();
    for tuple in dt {
        if tuple.len() != d {
            return Err(Error::pre("tuple length differs from d"));
        }
        let pts: Vec<Vec<usize>> = tuple
            .iter()
            .zip(&index)
            .map(|(v, idx)| {
                v.points(f)
                    .iter()
                    .map(|p| idx.get(p.as_slice()).copied().ok_or_else(|| Error::pre("point not a vertex")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut pos = vec![0usize; d];
        'odometer: loop {
            doomed.insert(pos.iter().zip(&pts).map(|(&i, p)| p[i]).collect());
            let mut j = d;
            loop {
                if j == 0 {
                    break 'odometer;
                }
                j -= 1;
                pos[j] += 1;
                if pos[j] < pts[j].len() {
                    break;
                }
                pos[j] = 0;
            }
        }
    }
    let kept: Vec<Vec<usize>> = g.edges().iter().filter(|e| !doomed.contains(*e)).cloned().collect();
    let deleted = g.edges().len() - kept.len();
    let pruned = Hypergraph::new(d, g.parts().to_vec(), kept)?;
    if let Some((a, b)) = freeness_check(&pruned, cap)? {
        return Err(Error::Invariant(format!(
            "K_(2,...,2) survives deletion: edges {a:?} and {b:?}"
        )));
    }
    let budget = BigUint::from(f.order() + 1).pow(d as u32) * dt.len();
    if BigUint::from(deleted) > budget {
        return Err(Error::Invariant("deleted more edges than the boxes contain".into()));
    }
    Ok(Deletion { pruned, deleted, budget })
}

/// Planes spanned by each part of a `K_{2,...,2}` copy.
pub fn copy_spans(f: &Field, g: &Hypergraph, copy: &[[usize; 2]]) -> Vec<Subspace> {
    copy.iter()
        .zip(g.parts())
        .map(|(pair, part)| {
            let n = part[pair[0]].len();
            Subspace::span(f, n, [part[pair[0]].as_slice(), part[pair[1]].as_slice()])
        })
        .collect()
}

/// Exact record of one run of the pipeline. Counters are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoxCertificate {
    pub q: u64,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub seed: u64,
    pub mode: SearchMode,
    pub found_by: FoundBy,
    pub trials: String,
    pub part_size: String,
    pub edge_count_before: String,
    pub edge_count_after: String,
    pub dt_size: String,
    pub deleted_count: String,
    pub deletion_budget: String,
    pub freeness_verified: bool,
    pub edge_bound_lhs: String,
    pub edge_bound_rhs: String,
    pub edge_bound_holds: bool,
    pub dt_bound_lhs: String,
    pub dt_bound_rhs: String,
    pub dt_bound_holds: bool,
    pub k22_copies: String,
    pub k22_spans_in_dt: bool,
}

/// Everything produced by [`run_pipeline`].
#[derive(Debug, Clone)]
pub struct BoxRun {
    pub tensor: Tensor,
    pub graph: Hypergraph,
    pub pruned: Hypergraph,
    pub dt: Vec<Vec<Subspace>>,
    pub certificate: BoxCertificate,
}

/// Parameters of [`run_pipeline`].
#[derive(Debug, Clone, Copy)]
pub struct PipelineConfig {
    pub seed: u64,
    pub max_trials: u64,
    pub threshold: u64,
    pub cap: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 0,
            max_trials: 64,
            threshold: DEFAULT_EXHAUSTIVE_THRESHOLD,
            cap: crate::grassmann::DEFAULT_CAP,
        }
    }
}

/// Finds a pigeonhole tensor and certifies the pruned hypergraph.
pub fn run_pipeline(field: &Field, n: usize, d: usize, m: usize, cfg: PipelineConfig) -> Result<BoxRun> {
    let found = pigeonhole_search(field, n, d, m, cfg.seed, cfg.max_trials, cfg.threshold, cfg.cap)?;
    certify(&found.tensor, cfg, Some(&found))
}

/// Builds, prunes and checks `G(T)` for a given tensor.
pub fn certify(t: &Tensor, cfg: PipelineConfig, search: Option<&PigeonholeOutcome>) -> Result<BoxRun> {
    let f = t.field();
    let q = f.order() as u64;
    let (big_n, d, m) = (t.n(), t.d(), t.m());
    if big_n == 0 {
        return Err(Error::pre("ambient dimension must be at least 1"));
    }
    let n = big_n - 1;
    let g = build_g(t, cfg.cap)?;
    let part_size = projective_points(q, big_n);
    if g.parts().iter().any(|p| BigUint::from(p.len()) != part_size) {
        return Err(Error::Invariant("part size differs from the projective point count".into()));
    }
    let a2 = edge_bound(q, big_n, d, m, g.edges().len());
    if !a2.holds {
        return Err(Error::Invariant(format!(
            "edge count {} below the analytic-rank bound {}",
            a2.edges, a2.bound_ceil
        )));
    }
    let dt = enumerate_dt(t, cfg.cap)?;
    let bound = dt_bound(q, n, d, m);
    let deletion = delete_and_verify(f, &g, &dt, cfg.cap)?;

    let dt_set: HashSet<&Vec<Subspace>> = dt.iter().collect();
    let copies = k22_copies(&g, cfg.cap)?;
    let spans_in_dt = copies.iter().all(|c| dt_set.contains(&copy_spans(f, &g, c)));
    if !spans_in_dt {
        return Err(Error::Invariant("a K_(2,...,2) spans planes outside D_T".into()));
    }

    let certificate = BoxCertificate {
        q,
        n,
        d,
        m,
        seed: cfg.seed,
        mode: search.map_or(SearchMode::Exhaustive, |s| s.mode),
        found_by: search.map_or(FoundBy::NotFound, |s| s.found_by),
        trials: search.map_or(0, |s| s.trials).to_string(),
        part_size: part_size.to_string(),
        edge_count_before: g.edges().len().to_string(),
        edge_count_after: deletion.pruned.edges().len().to_string(),
        dt_size: dt.len().to_string(),
        deleted_count: deletion.deleted.to_string(),
        deletion_budget: deletion.budget.to_string(),
        freeness_verified: true,
        edge_bound_lhs: a2.edges.to_string(),
        edge_bound_rhs: a2.bound_ceil.to_string(),
        edge_bound_holds: a2.holds,
        dt_bound_lhs: dt.len().to_string(),
        dt_bound_rhs: bound.to_string(),
        dt_bound_holds: BigUint::from(dt.len()) <= bound,
        k22_copies: copies.len().to_string(),
        k22_spans_in_dt: spans_in_dt,
    };
    debug_assert_eq!(
        certificate.edge_count_after.parse::<usize>().ok(),
        g.edges().len().checked_sub(deletion.deleted)
    );
    Ok(BoxRun {
        tensor: t.clone(),
        graph: g,
        pruned: deletion.pruned,
        dt,
        certificate,
    })
}

/// `part_size` as a `u64`, for callers that know it is small.
pub fn part_size(q: u64, n: usize) -> Option<u64> {
    projective_points(q, n + 1).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::DEFAULT_CAP;

    fn f(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    fn identity2() -> Tensor {
        let c = [1, 0, 0, 1].iter().map(|&i| Elem::from_index(i)).collect();
        Tensor::new(&f(2), 2, 2, 1, c).unwrap()
    }

    #[test]
    fn graph_examples() {
        let z = Tensor::zeros(&f(2), 2, 2, 1).unwrap();
        let g = build_g(&z, DEFAULT_CAP).unwrap();
        assert_eq!(g.parts()[0].len(), 3);
        assert_eq!(g.edges().len(), 9);
        let g = build_g(&identity2(), DEFAULT_CAP).unwrap();
        assert_eq!(g.edges().len(), 3);
        assert_eq!(part_size(3, 2), Some(13));
    }

    #[test]
    fn bounds() {
        assert_eq!(edge_bound(2, 4, 2, 1, 96).bound_ceil, BigInt::from(96));
        assert!(edge_bound(2, 4, 2, 1, 96).holds);
        assert!(!edge_bound(2, 4, 2, 1, 95).holds);
        let vacuous = edge_bound(2, 2, 2, 3, 0);
        assert!(vacuous.bound_ceil < BigInt::zero() && vacuous.holds);
        assert_eq!(dt_bound(2, 3, 2, 1), BigUint::from(76u32));
        assert!(admissible(3, 2, 1));
        assert!(!admissible(2, 2, 1));
    }

    #[test]
    fn freeness_examples() {
        let pts = Subspace::full(2).points(&f(2));
        let empty = Hypergraph::new(2, vec![pts.clone(); 2], vec![]).unwrap();
        assert_eq!(freeness_check(&empty, DEFAULT_CAP).unwrap(), None);
        let all: Vec<Vec<usize>> = (0..3).flat_map(|a| (0..3).map(move |b| vec![a, b])).collect();
        let complete = Hypergraph::new(2, vec![pts; 2], all).unwrap();
        assert_eq!(
            freeness_check(&complete, DEFAULT_CAP).unwrap(),
            Some((vec![0, 0], vec![1, 1]))
        );
        assert_eq!(k22_copies(&complete, DEFAULT_CAP).unwrap().len(), 9);
    }

    #[test]
    fn zero_tensor_loses_everything() {
        let z = Tensor::zeros(&f(2), 3, 2, 1).unwrap();
        let run = certify(&z, PipelineConfig::default(), None).unwrap();
        assert_eq!(run.certificate.edge_count_after, "0");
        assert_eq!(run.certificate.dt_size, "49");
    }

    #[test]
    fn pipeline_small_instance() {
        let cfg = PipelineConfig { seed: 42, ..PipelineConfig::default() };
        let run = run_pipeline(&f(2), 3, 2, 1, cfg).unwrap();
        let c = &run.certificate;
        assert!(c.freeness_verified && c.edge_bound_holds && c.dt_bound_holds && c.k22_spans_in_dt);
        assert_eq!(c.dt_bound_rhs, "76");
        let again = run_pipeline(&f(2), 3, 2, 1, cfg).unwrap();
        assert_eq!(again.certificate, run.certificate);
        assert!(pigeonhole_search(&f(2), 2, 2, 1, 0, 1, 0, DEFAULT_CAP).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = build_g(&Tensor::random(&f(3), 2, 2, 1, 5).unwrap(), DEFAULT_CAP).unwrap();
        let header = EdgeListHeader { d: 2, n: 1, q: 3, m: 1 };
        let (h, back) = Hypergraph::from_edge_list(&g.to_edge_list(header)).unwrap();
        assert_eq!((h, &back), (header, &g));
        let json = serde_json::to_string(&g.to_json()).unwrap();
        let parsed: HypergraphJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Hypergraph::from_json(&f(3), &parsed).unwrap(), g);
        assert!(Hypergraph::new(2, g.parts().to_vec(), vec![vec![0, 9]]).is_err());
    }
}
