//! Command-line front end: argument parsing, dispatch and JSON output.
//!
//! Every subcommand writes one JSON document to stdout (or `--out`). Exit
//! codes: 0 success, 1 selftest failure, 2 bad input, 3 cap exceeded,
//! 4 invariant violation.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::boxfree::{self, EdgeListHeader, Hypergraph, HypergraphJson, PipelineConfig};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::formulas::{self, Evaluation};
use crate::grassmann::{self, DEFAULT_CAP};
use crate::isotropy::{self, FieldMinMode, DEFAULT_TENSOR_CAP};
use crate::rank;
use crate::selftest::{self, Mutation};
use crate::tensor::{AnyTensor, Tensor, TensorFile, TensorKind};

#[derive(Parser, Debug)]
#[command(name = "isotropy", version, about = "Exact isotropy computations for multilinear maps over finite fields")]
pub struct Cli {
    /// Worker threads for parallel enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Enumeration cap (subspaces, tuples or pairs visited).
    #[arg(long, global = true, env = "ISOTROPY_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form quantities.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// Isotropy searches and incidence counts.
    #[command(subcommand)]
    Isotropy(IsotropyCmd),
    /// Zero-set counts and analytic rank.
    #[command(subcommand)]
    Rank(RankCmd),
    /// Subspace enumeration and counts.
    #[command(subcommand)]
    Grassmann(GrassmannCmd),
    /// Box-free hypergraph construction and checking.
    #[command(subcommand)]
    Boxfree(BoxfreeCmd),
    /// Tensor files.
    #[command(subcommand)]
    Tensor(TensorCmd),
    /// Runs the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Deliberately corrupt one quantity: k0, exceptional-row, gauss-binom or dt-bound.
        #[arg(long)]
        mutate: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Field order (a prime power).
    #[arg(long, conflicts_with_all = ["p", "e"])]
    q: Option<u64>,
    /// Characteristic.
    #[arg(long, requires = "e")]
    p: Option<u32>,
    /// Extension degree over the prime field.
    #[arg(long, requires = "p")]
    e: Option<u32>,
}

impl FieldArgs {
    fn field(&self) -> Result<Field> {
        match (self.q, self.p, self.e) {
            (Some(q), None, None) => Field::with_order(q),
            (None, Some(p), Some(e)) => Field::new(p, e),
            _ => Err(Error::Precondition("give the field as --q or as --p with --e".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Sweep {
    /// Evaluate for every n from --n up to this value.
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum FormulaCmd {
    /// Largest s with s(n - s) >= m C(s, d).
    K0 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Generic isotropy index of alternating maps.
    AlphaAlt {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        char_zero: bool,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Least n forcing an isotropic k-subspace.
    Fp {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        char_zero: bool,
    },
    /// Least codomain dimension bringing the index down to k.
    Turan {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        char_zero: bool,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Least codomain dimension bringing the index down to d - 1.
    Gq {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Whether a generic map has a tuple of annihilating planes.
    Thm13 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Edge exponent d - m/n of the box-free construction.
    Cpz {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        sweep: Sweep,
    },
}

#[derive(Args, Debug, Clone)]
struct TensorInput {
    /// Tensor file (JSON); `-` reads stdin.
    #[arg(long)]
    tensor: PathBuf,
}

impl TensorInput {
    fn load(&self) -> Result<AnyTensor> {
        let text = if self.tensor == Path::new("-") {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        } else {
            fs::read_to_string(&self.tensor)?
        };
        let file: TensorFile = serde_json::from_str(&text)?;
        AnyTensor::from_file(&file)
    }
}

#[derive(Args, Debug, Clone)]
struct Shape {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand, Debug)]
enum IsotropyCmd {
    /// Isotropy index of an alternating tensor.
    Alt {
        #[command(flatten)]
        input: TensorInput,
        /// Search over the degree-r extension of the tensor's field.
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Tuples of k-subspaces annihilating a multilinear tensor.
    Hom {
        #[command(flatten)]
        input: TensorInput,
        /// Target dimension; without it the largest k is reported.
        #[arg(long)]
        k: Option<usize>,
        /// Extension degrees to search over, e.g. 1,2,3.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        r: Vec<u32>,
    },
    /// Minimum isotropy index over all alternating tensors of a shape.
    FieldMin {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Sample this many random tensors instead of scanning all of them.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of tensors the exhaustive scan accepts.
        #[arg(long, default_value_t = DEFAULT_TENSOR_CAP)]
        tensor_cap: u64,
    },
    /// Points of the alternating incidence set.
    CountI1 {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        k: usize,
        /// Also count by direct enumeration.
        #[arg(long)]
        raw: bool,
    },
    /// Points of the multilinear plane-tuple incidence set.
    CountJ1 {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        raw: bool,
    },
    /// Tuples of planes annihilating a tensor.
    Dt {
        #[command(flatten)]
        input: TensorInput,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Include the tuples, not just their number.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand, Debug)]
enum RankCmd {
    /// Number of zero tuples.
    Zeros {
        #[command(flatten)]
        input: TensorInput,
        /// Evaluate on every tuple instead of counting kernels.
        #[arg(long)]
        raw: bool,
    },
    /// Analytic rank report.
    Ar {
        #[command(flatten)]
        input: TensorInput,
    },
}

#[derive(Subcommand, Debug)]
enum GrassmannCmd {
    /// Every k-subspace in canonical order.
    Enum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// The Gaussian binomial.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Ordered pairs of k-subspaces by intersection dimension.
    Sigma {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Report only this intersection dimension.
        #[arg(long)]
        l: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Json,
    Edges,
}

#[derive(Subcommand, Debug)]
enum BoxfreeCmd {
    /// Finds a pigeonhole tensor and certifies its pruned hypergraph.
    Gen {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        max_trials: u64,
        /// Scan every tensor if there are at most this many.
        #[arg(long, default_value_t = boxfree::DEFAULT_EXHAUSTIVE_THRESHOLD)]
        threshold: u64,
        /// Write the pruned hypergraph here.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        graph_format: GraphFormat,
        /// Write the tensor here.
        #[arg(long)]
        tensor_out: Option<PathBuf>,
    },
    /// Checks a hypergraph file for a complete d-partite box.
    Verify {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum TensorCmd {
    /// A seeded random tensor.
    Random {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = KindArg::Hom)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Validates a tensor file and summarizes it.
    Show {
        #[command(flatten)]
        input: TensorInput,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Hom,
    Alt,
}

/// Integers up to 2^53 as JSON numbers, larger ones as decimal strings.
pub fn json_int(v: &BigUint) -> Value {
    match v.to_u64().filter(|&x| x <= 1 << 53) {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// What a subcommand produced.
enum Output {
    Json(Value),
    Text(String),
    /// JSON output with a nonzero exit code.
    Failed(Value, i32),
}

fn to_value(v: impl Serialize) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

/// Parses `std::env::args`, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    run(cli)
}

pub fn run(cli: Cli) -> i32 {
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("warning: {e}");
    }
    let result = dispatch(&cli).and_then(|out| emit(out, cli.out.as_deref()));
    match result {
        Ok(code) => code,
        Err(e) => {
            let err = json!({"error": e.to_string(), "exit_code": e.exit_code()});
            eprintln!("{err}");
            e.exit_code()
        }
    }
}

fn emit(out: Output, path: Option<&Path>) -> Result<i32> {
    let (text, code) = match out {
        Output::Json(v) => (serde_json::to_string_pretty(&v)? + "\n", 0),
        Output::Failed(v, code) => (serde_json::to_string_pretty(&v)? + "\n", code),
        Output::Text(s) => (s, 0),
    };
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(code)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let cap = cli.cap;
    match &cli.command {
        Command::Formula(f) => formula(f),
        Command::Isotropy(c) => isotropy_cmd(c, cap),
        Command::Rank(c) => rank_cmd(c, cap),
        Command::Grassmann(c) => grassmann_cmd(c, cap),
        Command::Boxfree(c) => boxfree_cmd(c, cap),
        Command::Tensor(c) => tensor_cmd(c),
        Command::Selftest { seed, mutate } => selftest_cmd(*seed, mutate.as_deref()),
    }
}

struct FormulaRow {
    params: Value,
    value: Value,
    branch: String,
}

/// Evaluates a formula at a given `n` (ignored by quantities without one).
type RowFn = Box<dyn Fn(u64) -> Result<FormulaRow>>;

fn evaluation_row(params: Value, e: Evaluation) -> FormulaRow {
    FormulaRow {
        params,
        value: json_int(&e.value),
        branch: e.branch.to_string(),
    }
}

fn formula(cmd: &FormulaCmd) -> Result<Output> {
    let (quantity, n0, sweep, eval): (&str, Option<u64>, Option<&Sweep>, RowFn) =
        match *cmd {
            FormulaCmd::K0 { n, d, m, ref sweep } => (
                "k0",
                Some(n),
                Some(sweep),
                Box::new(move |n| {
                    Ok(FormulaRow {
                        params: json!({"n": n, "d": d, "m": m}),
                        value: json!(formulas::k0(n, d, m)),
                        branch: "generic".into(),
                    })
                }),
            ),
            FormulaCmd::AlphaAlt { n, d, m, char_zero, ref sweep } => (
                "alpha-alt",
                Some(n),
                Some(sweep),
                Box::new(move |n| {
                    let e = formulas::alpha_alt_closed(n, d, m, char_zero)?;
                    Ok(evaluation_row(json!({"n": n, "d": d, "m": m, "char_zero": char_zero}), e))
                }),
            ),
            FormulaCmd::Fp { d, m, k, char_zero } => (
                "fp",
                None,
                None,
                Box::new(move |_| {
                    let e = formulas::fp_number(d, m, k, char_zero)?;
                    Ok(evaluation_row(json!({"d": d, "m": m, "k": k, "char_zero": char_zero}), e))
                }),
            ),
            FormulaCmd::Turan { n, d, k, char_zero, ref sweep } => (
                "turan",
                Some(n),
                Some(sweep),
                Box::new(move |n| {
                    let e = formulas::turan_number(n, d, k, char_zero)?;
                    Ok(evaluation_row(json!({"n": n, "d": d, "k": k, "char_zero": char_zero}), e))
                }),
            ),
            FormulaCmd::Gq { n, d, ref sweep } => (
                "gq",
                Some(n),
                Some(sweep),
                Box::new(move |n| {
                    Ok(FormulaRow {
                        params: json!({"n": n, "d": d}),
                        value: json_int(&formulas::gq_number(n, d)?),
                        branch: "generic".into(),
                    })
                }),
            ),
            FormulaCmd::Thm13 { n, d, m, ref sweep } => (
                "thm13",
                Some(n),
                Some(sweep),
                Box::new(move |n| {
                    Ok(FormulaRow {
                        params: json!({"n": n, "d": d, "m": m}),
                        value: json!(formulas::plane_pair_predicate(n, d, m)),
                        branch: "generic".into(),
                    })
                }),
            ),
            FormulaCmd::Cpz { n, d, m, ref sweep } => (
                "cpz",
                Some(n),
                Some(sweep),
                Box::new(move |n| {
                    let b = formulas::box_exponent(n, d, m)?;
                    Ok(FormulaRow {
                        params: json!({"n": n, "d": d, "m": m, "admissible": b.admissible}),
                        value: json!(b.exponent.to_string()),
                        branch: "generic".into(),
                    })
                }),
            ),
        };
    let record = |row: FormulaRow| json!({"quantity": quantity, "params": row.params, "value": row.value, "branch": row.branch});
    let n_max = sweep.and_then(|s| s.n_max);
    let format = sweep.map_or(Format::Json, |s| s.format);
    match (n0, n_max) {
        (Some(start), Some(end)) => {
            if end < start {
                return Err(Error::Precondition("--n-max must be at least --n".into()));
            }
            let rows = (start..=end).map(&eval).collect::<Result<Vec<_>>>()?;
            match format {
                Format::Json => Ok(Output::Json(Value::Array(rows.into_iter().map(record).collect()))),
                Format::Csv => Ok(Output::Text(formula_csv(quantity, &rows))),
            }
        }
        _ => {
            if matches!(format, Format::Csv) {
                return Err(Error::Precondition("--format csv needs a sweep (--n-max)".into()));
            }
            Ok(Output::Json(record(eval(n0.unwrap_or(0))?)))
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn formula_csv(quantity: &str, rows: &[FormulaRow]) -> String {
    let keys: Vec<String> = rows[0].params.as_object().map(|o| o.keys().cloned().collect()).unwrap_or_default();
    let mut s = format!("quantity,{},value,branch\n", keys.join(","));
    for r in rows {
        let params: Vec<String> = keys.iter().map(|k| scalar(&r.params[k])).collect();
        s += &format!("{quantity},{},{},{}\n", params.join(","), scalar(&r.value), r.branch);
    }
    s
}

fn extension(f: &Field, r: u32) -> Result<Field> {
    if r == 0 {
        return Err(Error::Precondition("r must be positive".into()));
    }
    Field::new(f.characteristic(), f.degree() * r)
}

fn isotropy_cmd(cmd: &IsotropyCmd, cap: u64) -> Result<Output> {
    match cmd {
        IsotropyCmd::Alt { input, r } => {
            let AnyTensor::Alt(t) = input.load()? else {
                return Err(Error::Precondition("isotropy alt needs an alternating tensor".into()));
            };
            let t = if *r == 1 { t } else { t.base_change(&extension(t.field(), *r)?)? };
            Ok(Output::Json(to_value(isotropy::alpha_alt(&t, cap).to_json())?))
        }
        IsotropyCmd::Hom { input, k, r } => {
            let t = input.load()?.as_hom();
            match k {
                None => {
                    if r.as_slice() != [1] {
                        return Err(Error::Precondition("--r needs --k".into()));
                    }
                    Ok(Output::Json(to_value(isotropy::alpha_hom_index(&t, cap)?.to_json())?))
                }
                Some(k) => {
                    let outcomes = isotropy::alpha_hom_over_extensions(&t, *k, r, cap)?;
                    let rows: Vec<Value> = outcomes
                        .iter()
                        .map(|o| {
                            json!({
                                "r": o.r,
                                "q": o.order,
                                "found": o.witness.is_some(),
                                "witness": o.witness.iter().flatten().map(|s| s.to_json()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    Ok(Output::Json(json!({"k": k, "extensions": rows})))
                }
            }
        }
        IsotropyCmd::FieldMin { shape, r, samples, seed, tensor_cap } => {
            let f = shape.field.field()?;
            let mode = match samples {
                Some(s) => FieldMinMode::Sample { samples: *s, seed: *seed },
                None => FieldMinMode::Exhaustive { cap: *tensor_cap },
            };
            let res = isotropy::alpha_field_alt(&f, shape.n, shape.d, shape.m, *r, mode, cap)?;
            Ok(Output::Json(json!({
                "value": res.value,
                "exact": res.exact,
                "kind": if res.exact { "minimum" } else { "upper-bound" },
                "tensors_examined": res.tensors_examined.to_string(),
                "searches_complete": res.searches_complete,
                "witness_tensor": res.witness_tensor.to_file(),
                "witness": res.witness.to_json(),
            })))
        }
        IsotropyCmd::CountI1 { shape, k, raw } => {
            let f = shape.field.field()?;
            let count = isotropy::count_i1_points(&f, shape.n, shape.d, shape.m, *k)?;
            let raw_count = raw
                .then(|| isotropy::count_i1_points_raw(&f, shape.n, shape.d, shape.m, *k, cap))
                .transpose()?;
            let dim = grassmann::dim_check_i1(shape.n, shape.d, shape.m, *k);
            incidence_output(count, raw_count, dim)
        }
        IsotropyCmd::CountJ1 { shape, raw } => {
            let f = shape.field.field()?;
            let count = isotropy::count_j1_points(&f, shape.n, shape.d, shape.m)?;
            let raw_count = raw
                .then(|| isotropy::count_j1_points_raw(&f, shape.n, shape.d, shape.m, cap))
                .transpose()?;
            let dim = grassmann::dim_check_j1(shape.n, shape.d, shape.m);
            incidence_output(count, raw_count, dim)
        }
        IsotropyCmd::Dt { input, r, list } => {
            let t = input.load()?.as_hom();
            let t = if *r == 1 { t } else { t.base_change(&extension(t.field(), *r)?)? };
            let mut v = json!({"q": t.field().order(), "n": t.n(), "d": t.d(), "m": t.m()});
            if *list {
                let tuples = isotropy::enumerate_dt(&t, cap)?;
                v["count"] = json!(tuples.len().to_string());
                v["tuples"] = tuples
                    .iter()
                    .map(|tup| tup.iter().map(|s| s.to_json()).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
                    .into_iter()
                    .map(|w| json!(w))
                    .collect();
            } else {
                v["count"] = json!(isotropy::count_dt(&t, cap)?.to_string());
            }
            Ok(Output::Json(v))
        }
    }
}

fn incidence_output(count: BigUint, raw: Option<BigUint>, dim: grassmann::DimensionCheck) -> Result<Output> {
    if let Some(r) = &raw {
        if *r != count {
            return Err(Error::Invariant(format!("fibre count {count} differs from enumeration {r}")));
        }
    }
    Ok(Output::Json(json!({
        "count": count.to_string(),
        "raw_count": raw.map(|r| r.to_string()),
        "dimension": dim.dimension.to_string(),
        "fiber_exponent": dim.fiber_exponent.to_string(),
    })))
}

fn rank_cmd(cmd: &RankCmd, cap: u64) -> Result<Output> {
    match cmd {
        RankCmd::Zeros { input, raw } => {
            let t = input.load()?.as_hom();
            let z = if *raw { rank::zero_count_raw(&t, cap)? } else { rank::zero_count(&t, cap)? };
            Ok(Output::Json(json!({
                "zero_count": z.to_string(),
                "dn1": t.d() * t.n(),
                "q": t.field().order(),
            })))
        }
        RankCmd::Ar { input } => {
            let t = input.load()?.as_hom();
            Ok(Output::Json(to_value(rank::analytic_rank(&t, cap)?.to_json())?))
        }
    }
}

fn grassmann_cmd(cmd: &GrassmannCmd, cap: u64) -> Result<Output> {
    match cmd {
        GrassmannCmd::Enum { field, n, k } => {
            let f = field.field()?;
            check_k(*n, *k)?;
            let all = grassmann::enumerate_grassmannian(&f, *n, *k, cap)?;
            Ok(Output::Json(json!({
                "q": f.order(),
                "n": n,
                "k": k,
                "count": all.len().to_string(),
                "subspaces": all.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            })))
        }
        GrassmannCmd::Count { field, n, k } => {
            let f = field.field()?;
            check_k(*n, *k)?;
            let value = grassmann::gauss_binom(*n, *k, f.order() as u64);
            Ok(Output::Json(json!({"q": f.order(), "n": n, "k": k, "value": value.to_string()})))
        }
        GrassmannCmd::Sigma { field, n, k, l } => {
            let f = field.field()?;
            check_k(*n, *k)?;
            let range = grassmann::sigma_range(*n, *k);
            let ls: Vec<usize> = match l {
                Some(l) if !range.contains(l) => {
                    return Err(Error::Precondition(format!("l = {l} outside {range:?}")));
                }
                Some(l) => vec![*l],
                None => range.collect(),
            };
            let profile = grassmann::sigma_profile(&f, *n, *k, cap)?;
            let strata: Vec<Value> = ls
                .iter()
                .map(|&l| {
                    json!({
                        "l": l,
                        "count": profile[l].to_string(),
                        "dimension": grassmann::sigma_dimension(*n, *k, l),
                    })
                })
                .collect();
            Ok(Output::Json(json!({"q": f.order(), "n": n, "k": k, "strata": strata})))
        }
    }
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::Precondition(format!("k = {k} exceeds n = {n}")));
    }
    Ok(())
}

fn boxfree_cmd(cmd: &BoxfreeCmd, cap: u64) -> Result<Output> {
    match cmd {
        BoxfreeCmd::Gen { shape, seed, max_trials, threshold, graph, graph_format, tensor_out } => {
            let f = shape.field.field()?;
            let cfg = PipelineConfig {
                seed: *seed,
                max_trials: *max_trials,
                threshold: *threshold,
                cap,
            };
            let run = boxfree::run_pipeline(&f, shape.n, shape.d, shape.m, cfg)?;
            if let Some(path) = graph {
                let text = match graph_format {
                    GraphFormat::Json => serde_json::to_string(&run.pruned.to_json())? + "\n",
                    GraphFormat::Edges => run.pruned.to_edge_list(EdgeListHeader {
                        d: shape.d,
                        n: shape.n,
                        q: f.order() as u64,
                        m: shape.m,
                    }),
                };
                fs::write(path, text)?;
            }
            if let Some(path) = tensor_out {
                fs::write(path, serde_json::to_string(&run.tensor.to_file())? + "\n")?;
            }
            Ok(Output::Json(to_value(&run.certificate)?))
        }
        BoxfreeCmd::Verify { graph } => {
            let text = fs::read_to_string(graph)?;
            let h = parse_graph(&text)?;
            let violation = boxfree::freeness_check(&h, cap)?;
            let v = json!({
                "d": h.d(),
                "edges": h.edges().len().to_string(),
                "free": violation.is_none(),
                "violation": violation.as_ref().map(|(a, b)| json!([a, b])),
            });
            Ok(match violation {
                None => Output::Json(v),
                Some(_) => Output::Failed(v, 4),
            })
        }
    }
}

/// Accepts the JSON hypergraph format or the plain edge list.
fn parse_graph(text: &str) -> Result<Hypergraph> {
    if text.trim_start().starts_with('#') {
        return Ok(Hypergraph::from_edge_list(text)?.1);
    }
    let j: HypergraphJson = serde_json::from_str(text)?;
    // Freeness only depends on the incidence structure, so vertex
    // coordinates are taken as given without a field.
    let parts = j
        .parts
        .iter()
        .map(|p| p.iter().map(|v| v.iter().map(|&i| Elem::from_index(i)).collect()).collect())
        .collect();
    Hypergraph::new(j.d, parts, j.edges)
}

fn tensor_cmd(cmd: &TensorCmd) -> Result<Output> {
    match cmd {
        TensorCmd::Random { shape, kind, seed } => {
            let f = shape.field.field()?;
            let kind = match kind {
                KindArg::Hom => TensorKind::Hom,
                KindArg::Alt => TensorKind::Alt,
            };
            let t = AnyTensor::random(&f, shape.n, shape.d, shape.m, kind, *seed)?;
            Ok(Output::Json(to_value(t.to_file())?))
        }
        TensorCmd::Show { input } => {
            let t = input.load()?;
            let file = t.to_file();
            let hom: Tensor = t.as_hom();
            let support = file.coeffs.iter().filter(|&&c| c != 0).count();
            Ok(Output::Json(json!({
                "q": t.field().order(),
                "kind": file.kind,
                "n": file.n,
                "d": file.d,
                "m": file.m,
                "coefficients": file.coeffs.len(),
                "support": support,
                "is_zero": hom.is_zero(),
                "field": file.field,
            })))
        }
    }
}

fn selftest_cmd(seed: u64, mutate: Option<&str>) -> Result<Output> {
    let mutation = match mutate {
        None => None,
        Some(name) => Some(Mutation::parse(name).ok_or_else(|| {
            Error::Precondition(format!(
                "unknown mutation {name:?}; expected one of {}",
                Mutation::ALL.map(Mutation::name).join(", ")
            ))
        })?),
    };
    let report = selftest::run_all(&selftest::Config { seed, mutation });
    for c in &report.criteria {
        eprintln!(
            "[{}] {:>2} {} ({} ms)",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.elapsed_ms
        );
    }
    let v = to_value(&report)?;
    Ok(if report.passed { Output::Json(v) } else { Output::Failed(v, 1) })
}
