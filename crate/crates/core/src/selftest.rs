//! The acceptance suite as library code, shared by the `selftest`
//! subcommand and the integration tests.
//!
//! Each check returns a deterministic `detail` string; timings are reported
//! separately so that two runs with the same seed can be compared byte for
//! byte once timing fields are removed.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::boxfree::{self, PipelineConfig};
use crate::error::Result;
use crate::field::Field;
use crate::formulas::{self, Verdict};
use crate::grassmann::{self, Grassmannian, DEFAULT_CAP};
use crate::interp;
use crate::isotropy;
use crate::oracle;
use crate::rank;
use crate::rng::SplitMix64;
use crate::tensor::{AltTensor, Tensor};

/// A deliberate corruption used to show the suite catches regressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// `k0` off by one.
    K0,
    /// Wrong constant in the `(3, 7)` row.
    ExceptionalRow,
    /// Gaussian binomial off by one.
    GaussBinom,
    /// Pigeonhole bound halved.
    DtBound,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [Mutation::K0, Mutation::ExceptionalRow, Mutation::GaussBinom, Mutation::DtBound];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::K0 => "k0",
            Mutation::ExceptionalRow => "exceptional-row",
            Mutation::GaussBinom => "gauss-binom",
            Mutation::DtBound => "dt-bound",
        }
    }

    pub fn parse(s: &str) -> Option<Mutation> {
        Mutation::ALL.into_iter().find(|m| m.name() == s)
    }

    /// The criterion this mutation is expected to break.
    pub fn target(self) -> u32 {
        match self {
            Mutation::K0 => 1,
            Mutation::ExceptionalRow => 2,
            Mutation::GaussBinom => 5,
            Mutation::DtBound => 10,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Config {
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl Config {
    fn mutated(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub seed: u64,
    pub mutation: Option<Mutation>,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
    pub total_elapsed_ms: u64,
    pub timestamp: u64,
}

/// Keys dropped before comparing two reports.
pub const TIMING_KEYS: [&str; 3] = ["elapsed_ms", "total_elapsed_ms", "timestamp"];

/// A JSON value with every timing key removed, recursively.
pub fn strip_timing(v: &serde_json::Value) -> serde_json::Value {
    match v {
        serde_json::Value::Object(map) => serde_json::Value::Object(
            map.iter()
                .filter(|(k, _)| !TIMING_KEYS.contains(&k.as_str()))
                .map(|(k, v)| (k.clone(), strip_timing(v)))
                .collect(),
        ),
        serde_json::Value::Array(a) => serde_json::Value::Array(a.iter().map(strip_timing).collect()),
        other => other.clone(),
    }
}

pub const NAMES: [&str; 11] = [
    "k0 agrees with the bilinear closed form",
    "m = 1 exceptional rows",
    "definitional round trips",
    "restricted inequality grid",
    "Grassmannian counts and strata degrees",
    "incidence counts and degrees",
    "isotropy search matches brute force",
    "monotonicity under field extension",
    "analytic rank bounds",
    "box-free pipeline",
    "determinism",
];

type Check = fn(&Config) -> Result<(bool, String)>;

const CHECKS: [Check; 10] = [
    bilinear_closed_form,
    exceptional_rows,
    round_trips,
    restricted_inequality_grid,
    grassmannian_counts,
    incidence_counts,
    isotropy_oracle,
    extension_monotonicity,
    analytic_rank_bounds,
    box_pipeline,
];

/// Criteria whose outcome depends on the seed.
const SEEDED: [u32; 4] = [7, 8, 9, 10];

/// Runs one criterion (1-based). Errors count as failures.
pub fn run_criterion(id: u32, cfg: &Config) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = if id == 11 {
        determinism(cfg)
    } else {
        match CHECKS[(id - 1) as usize](cfg) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        }
    };
    CriterionResult {
        id,
        name: NAMES[(id - 1) as usize],
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

pub fn run_all(cfg: &Config) -> Report {
    let start = Instant::now();
    let criteria: Vec<CriterionResult> = (1..=11).map(|id| run_criterion(id, cfg)).collect();
    Report {
        seed: cfg.seed,
        mutation: cfg.mutation,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
        total_elapsed_ms: start.elapsed().as_millis() as u64,
        timestamp: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    }
}

fn field(q: u64) -> Field {
    Field::with_order(q).expect("prime power")
}

fn bilinear_closed_form(cfg: &Config) -> Result<(bool, String)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for m in 2..=10u64 {
        for n in 2..=200u64 {
            let mut got = formulas::k0(n, 2, m);
            if cfg.mutated(Mutation::K0) {
                got += 1;
            }
            checked += 1;
            if got != (2 * n + m) / (m + 2) {
                bad.push((n, m));
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} pairs, {} mismatches {:?}", bad.len(), bad.first())))
}

fn exceptional_rows(cfg: &Config) -> Result<(bool, String)> {
    let mut three_seven = formulas::alpha_alt_closed(7, 3, 1, true)?.small();
    if cfg.mutated(Mutation::ExceptionalRow) {
        three_seven += 1;
    }
    let six_four = formulas::alpha_alt_closed(6, 4, 1, true)?.small();
    let mut bilinear_bad = Vec::new();
    for n in 2..=20u64 {
        if formulas::alpha_alt_closed(n, 2, 1, true)?.small() != n / 2 {
            bilinear_bad.push(n);
        }
    }
    let ok = three_seven == 4 && six_four == 4 && bilinear_bad.is_empty();
    Ok((
        ok,
        format!("(7,3,1)->{three_seven}, (6,4,1)->{six_four}, d=2 mismatches {bilinear_bad:?}"),
    ))
}

/// Least `r >= 1` with `alpha(n, d, r) <= k`, scanning `r` upwards. Beyond
/// `r = (k+1) n + 1` no new value can appear.
fn turan_by_scan(n: u64, d: u64, k: u64) -> Option<u64> {
    (1..=(k + 1) * n + 1).find(|&r| formulas::alpha_alt_closed(n, d, r, true).map(|e| e.small() <= k).unwrap_or(false))
}

fn alpha_m(n: u64, d: u64, m: u64) -> u64 {
    formulas::alpha_alt_closed(n, d, m, true).expect("valid parameters").small()
}

/// Least `n` with `alpha(n, d, m) >= k`, by doubling then bisection. The
/// index never decreases as `n` grows (restricting to a hyperplane keeps
/// isotropic subspaces isotropic); `fp_by_scan_monotone` checks this on a
/// range.
fn fp_by_scan(d: u64, m: u64, k: u64) -> u64 {
    let mut hi = 1;
    while alpha_m(hi, d, m) < k {
        hi *= 2;
    }
    let mut lo = hi / 2; // alpha(lo) < k, or lo = 0
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if alpha_m(mid, d, m) >= k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn fp_by_scan_monotone(d: u64, m: u64) -> bool {
    (1..200).all(|n| alpha_m(n, d, m) <= alpha_m(n + 1, d, m))
}

fn round_trips(_: &Config) -> Result<(bool, String)> {
    let mut turan_checked = 0;
    let mut turan_bad = Vec::new();
    for n in 1..=30u64 {
        for d in 2..=5u64 {
            for k in 1..=30u64 {
                turan_checked += 1;
                let closed = formulas::turan_number(n, d, k, true).ok().map(|e| e.small());
                if closed != turan_by_scan(n, d, k) {
                    turan_bad.push((n, d, k));
                }
            }
        }
    }
    let mut fp_checked = 0;
    let mut fp_bad = Vec::new();
    let mut monotone = true;
    for d in 1..=5u64 {
        for m in 1..=6u64 {
            monotone &= fp_by_scan_monotone(d, m);
            for k in 1..=30u64 {
                fp_checked += 1;
                let closed = formulas::fp_number(d, m, k, true)?.small();
                if closed != fp_by_scan(d, m, k) {
                    fp_bad.push((d, m, k));
                }
            }
        }
    }
    let gq_bad: Vec<u64> = (2..=100u64)
        .filter(|&n| formulas::gq_number(n, 2).ok() != Some(BigUint::from(2 * n - 3)))
        .collect();
    let ok = turan_bad.is_empty() && fp_bad.is_empty() && gq_bad.is_empty() && monotone;
    Ok((
        ok,
        format!(
            "turan {turan_checked} cases, mismatches {turan_bad:?}; fp {fp_checked} cases, mismatches {fp_bad:?}; \
             index monotone in n: {monotone}; gq mismatches {gq_bad:?}"
        ),
    ))
}

fn restricted_inequality_grid(_: &Config) -> Result<(bool, String)> {
    let (mut total, mut violated, mut equal, mut strict_lost) = (0u64, 0u64, 0u64, 0u64);
    for n in 1..=60u64 {
        for k in 0..n {
            for l in 2..=k {
                if n + l < 2 * k {
                    continue;
                }
                for d in 2..=l {
                    let c = formulas::binomial_u128(k, d).expect("small");
                    let mut m = 2u64;
                    while (k * (n - k)) as u128 >= m as u128 * c {
                        let r = formulas::restricted_inequality(m, n, k, d, l)?;
                        total += 1;
                        match r.verdict {
                            Verdict::Violated => violated += 1,
                            Verdict::Holds => equal += 1,
                            Verdict::Strict => {}
                        }
                        if r.premise_strict && r.verdict != Verdict::Strict {
                            strict_lost += 1;
                        }
                        m += 1;
                    }
                }
            }
        }
    }
    Ok((
        violated == 0 && strict_lost == 0 && total > 0,
        format!("{total} admissible tuples, {violated} violations, {equal} equalities, {strict_lost} strictness failures"),
    ))
}

fn sampled_degree(orders: &[u64], mut value: impl FnMut(u64) -> Result<BigUint>) -> Result<Option<usize>> {
    let pts = orders
        .iter()
        .map(|&q| Ok((BigInt::from(q), BigInt::from(value(q)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(interp::degree(&pts))
}

fn grassmannian_counts(cfg: &Config) -> Result<(bool, String)> {
    let mut count_bad = Vec::new();
    let mut cases = 0;
    for q in [2u64, 3, 4] {
        let f = field(q);
        for n in 0..=5usize {
            for k in 0..=n {
                cases += 1;
                let listed: Vec<_> = Grassmannian::new(&f, n, k).collect();
                let mut expect = grassmann::gauss_binom(n, k, q);
                if cfg.mutated(Mutation::GaussBinom) {
                    expect += 1u32;
                }
                let sorted = listed.windows(2).all(|w| w[0] < w[1]);
                if BigUint::from(listed.len()) != expect || !sorted {
                    count_bad.push((q, n, k));
                }
            }
        }
    }
    // Sigma strata: the profile partitions ordered pairs, and the count is a
    // polynomial in q whose degree is the stratum dimension. Ten sample
    // orders exceed the largest degree (8) by one, so agreement is a real
    // check rather than a tautology.
    let orders = interp::sample_orders(10);
    let mut partition_bad = Vec::new();
    let mut degree_bad = Vec::new();
    let k = 2;
    for n in 2..=4usize {
        let profiles = orders
            .iter()
            .map(|&q| grassmann::sigma_profile(&field(q), n, k, DEFAULT_CAP))
            .collect::<Result<Vec<_>>>()?;
        for (&q, prof) in orders.iter().zip(&profiles) {
            let total: BigUint = prof.iter().sum();
            if total != grassmann::gauss_binom(n, k, q).pow(2) {
                partition_bad.push((n, q));
            }
        }
        for l in grassmann::sigma_range(n, k) {
            let pts: Vec<(BigInt, BigInt)> = orders
                .iter()
                .zip(&profiles)
                .map(|(&q, p)| (BigInt::from(q), BigInt::from(p[l].clone())))
                .collect();
            let deg = interp::degree(&pts).map(|d| d as i64);
            if deg != Some(grassmann::sigma_dimension(n, k, l)) {
                degree_bad.push((n, l, deg));
            }
        }
    }
    let ok = count_bad.is_empty() && partition_bad.is_empty() && degree_bad.is_empty();
    Ok((
        ok,
        format!(
            "{cases} Grassmannians, count mismatches {count_bad:?}; partition failures {partition_bad:?}; \
             degree mismatches {degree_bad:?}"
        ),
    ))
}

fn incidence_counts(_: &Config) -> Result<(bool, String)> {
    let f2 = field(2);
    let mut raw_bad = Vec::new();
    for k in [1usize, 2] {
        let fiber = isotropy::count_i1_points(&f2, 3, 2, 1, k)?;
        let raw = isotropy::count_i1_points_raw(&f2, 3, 2, 1, k, DEFAULT_CAP)?;
        if fiber != raw {
            raw_bad.push(k);
        }
    }
    let j1 = isotropy::count_j1_points(&f2, 3, 2, 1)?;
    let j1_raw = isotropy::count_j1_points_raw(&f2, 3, 2, 1, DEFAULT_CAP)?;

    let (n, d, m, k) = (3, 2, 1, 1);
    let i1_dim = grassmann::dim_check_i1(n, d, m, k).dimension;
    let i1_deg = sampled_degree(&interp::sample_orders(6), |q| isotropy::count_i1_points(&field(q), n, d, m, k))?;
    let j1_dim = grassmann::dim_check_j1(n, d, m).dimension;
    let j1_deg = sampled_degree(&interp::sample_orders(10), |q| isotropy::count_j1_points(&field(q), n, d, m))?;
    let deg_ok = i1_deg.map(BigInt::from) == Some(i1_dim.clone()) && j1_deg.map(BigInt::from) == Some(j1_dim.clone());
    Ok((
        raw_bad.is_empty() && j1 == j1_raw && deg_ok,
        format!(
            "I1 raw mismatches {raw_bad:?}; J1 {j1} vs raw {j1_raw}; I1 degree {i1_deg:?} vs {i1_dim}; \
             J1 degree {j1_deg:?} vs {j1_dim}"
        ),
    ))
}

fn isotropy_oracle(cfg: &Config) -> Result<(bool, String)> {
    let f2 = field(2);
    let mut oracle_bad = Vec::new();
    for i in 0..64 {
        let t = AltTensor::nth(&f2, 4, 2, 1, i)?;
        let dfs = isotropy::alpha_alt(&t, DEFAULT_CAP);
        let (idx, w) = oracle::alpha_alt_scan(&t);
        if !dfs.exhausted || dfs.index != idx || dfs.witness[0] != w {
            oracle_bad.push(i);
        }
    }
    let mut rng = SplitMix64::new(cfg.seed);
    let mut low = Vec::new();
    let mut index_sum = 0usize;
    for _ in 0..500 {
        let q = 2 + rng.below(2);
        let n = 1 + rng.below(5) as usize;
        let d = 1 + rng.below(4) as usize;
        let m = 1 + rng.below(2) as usize;
        let t = AltTensor::random_from(&field(q), n, d, m, &mut rng)?;
        let r = isotropy::alpha_alt(&t, DEFAULT_CAP);
        index_sum += r.index;
        if !r.exhausted || r.index < (d - 1).min(n) || !t.is_isotropic(&r.witness[0])? {
            low.push((q, n, d, m));
        }
    }
    Ok((
        oracle_bad.is_empty() && low.is_empty(),
        format!(
            "64 tensors vs oracle, mismatches {oracle_bad:?}; 500 random, lower-bound failures {low:?}, index sum {index_sum}"
        ),
    ))
}

fn extension_monotonicity(cfg: &Config) -> Result<(bool, String)> {
    let f2 = field(2);
    let f4 = field(4);
    let mut rng = SplitMix64::new(cfg.seed ^ 0x8);
    let mut bad = Vec::new();
    let mut strict = 0;
    for i in 0..100 {
        let n = 1 + rng.below(4) as usize;
        let m = 1 + rng.below(2) as usize;
        let t = AltTensor::random_from(&f2, n, 2, m, &mut rng)?;
        let small = isotropy::alpha_alt(&t, DEFAULT_CAP);
        let big = isotropy::alpha_alt(&t.base_change(&f4)?, DEFAULT_CAP);
        if !(small.exhausted && big.exhausted) || small.index > big.index {
            bad.push(i);
        }
        if small.index < big.index {
            strict += 1;
        }
    }
    Ok((bad.is_empty(), format!("100 tensors, failures {bad:?}, strictly larger over F4: {strict}")))
}

fn analytic_rank_bounds(cfg: &Config) -> Result<(bool, String)> {
    let mut rng = SplitMix64::new(cfg.seed ^ 0x9);
    let mut bad = Vec::new();
    let mut zero_sum = BigUint::default();
    for i in 0..200 {
        let q = 2 + rng.below(2);
        let d = 2 + rng.below(2) as usize;
        let big_n = 1 + rng.below(3) as usize;
        let m = 1 + rng.below(2) as usize;
        let t = Tensor::random_from(&field(q), big_n, d, m, &mut rng)?;
        let z = rank::zero_count(&t, DEFAULT_CAP)?;
        let floor = BigUint::from(q).pow((d * big_n).saturating_sub(m) as u32);
        if z < floor {
            bad.push(i);
        }
        zero_sum += z;
    }
    let zero = rank::analytic_rank(&Tensor::zeros(&field(3), 2, 2, 1)?, DEFAULT_CAP)?;
    let f2 = field(2);
    let mut route_bad = Vec::new();
    for m in 1..=2usize {
        let count = 1u64 << (4 * m);
        for i in 0..count {
            let t = Tensor::nth(&f2, 2, 2, m, i)?;
            if rank::zero_count(&t, DEFAULT_CAP)? != rank::zero_count_raw(&t, DEFAULT_CAP)? {
                route_bad.push((m, i));
            }
        }
    }
    // AR = 0 exactly for the zero tensor, over F_2 with dN <= 4.
    let mut zero_iff_bad = Vec::new();
    for (big_n, d) in [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (3, 1), (4, 1)] {
        let len = (big_n as u32).pow(d as u32);
        for i in 0..1u64 << len {
            let t = Tensor::nth(&f2, big_n, d, 1, i)?;
            let full = rank::zero_count(&t, DEFAULT_CAP)? == BigUint::from(2u32).pow((d * big_n) as u32);
            if full != t.is_zero() {
                zero_iff_bad.push((big_n, d, i));
            }
        }
    }
    let ok = bad.is_empty() && zero.is_zero_rank() && route_bad.is_empty() && zero_iff_bad.is_empty();
    Ok((
        ok,
        format!(
            "200 tensors, bound failures {bad:?}, zero-count sum {zero_sum}; AR(0) = 0: {}; \
             kernel vs raw mismatches {route_bad:?}; AR = 0 iff T = 0 failures {zero_iff_bad:?}",
            zero.is_zero_rank()
        ),
    ))
}

fn box_pipeline(cfg: &Config) -> Result<(bool, String)> {
    let (q, n, d, m) = (2u64, 3usize, 2usize, 1usize);
    let admissible = boxfree::admissible(n, d, m);
    let mut bound = boxfree::dt_bound(q, n, d, m);
    if cfg.mutated(Mutation::DtBound) {
        bound /= 2u32;
    }
    let run = boxfree::run_pipeline(
        &field(q),
        n,
        d,
        m,
        PipelineConfig {
            seed: cfg.seed,
            ..PipelineConfig::default()
        },
    )?;
    let c = &run.certificate;
    let dt: BigUint = c.dt_size.parse().expect("decimal");
    let ok = admissible
        && bound == BigUint::from(76u32)
        && dt <= bound
        && c.edge_bound_rhs == "96"
        && c.edge_bound_holds
        && c.freeness_verified
        && c.k22_spans_in_dt;
    Ok((
        ok,
        format!(
            "admissible {admissible}; bound {bound}; |D_T| {} ({:?}); edges {} >= {}; after deletion {} (deleted {}); \
             K22 copies {} all spanning D_T: {}",
            c.dt_size,
            c.found_by,
            c.edge_count_before,
            c.edge_bound_rhs,
            c.edge_count_after,
            c.deleted_count,
            c.k22_copies,
            c.k22_spans_in_dt
        ),
    ))
}

fn determinism(cfg: &Config) -> (bool, String) {
    let runs: Vec<Vec<(bool, String)>> = (0..2)
        .map(|_| {
            SEEDED
                .iter()
                .map(|&id| {
                    let r = run_criterion(id, cfg);
                    (r.passed, r.detail)
                })
                .collect()
        })
        .collect();
    let same = runs[0] == runs[1];
    (same, format!("criteria {SEEDED:?} rerun with seed {}: identical {same}", cfg.seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_timing_removes_nested_keys() {
        let v = serde_json::json!({"a": 1, "elapsed_ms": 5, "c": [{"timestamp": 1, "b": 2}]});
        assert_eq!(strip_timing(&v), serde_json::json!({"a": 1, "c": [{"b": 2}]}));
    }

    #[test]
    fn mutation_names_round_trip() {
        for m in Mutation::ALL {
            assert_eq!(Mutation::parse(m.name()), Some(m));
        }
        assert_eq!(Mutation::parse("nope"), None);
    }

    #[test]
    fn scans_agree_with_formulas_on_examples() {
        assert_eq!(turan_by_scan(7, 3, 4), Some(1));
        assert_eq!(turan_by_scan(4, 2, 1), Some(5));
        assert_eq!(fp_by_scan(3, 1, 5), 8);
        assert_eq!(fp_by_scan(2, 2, 3), 5);
    }
}
