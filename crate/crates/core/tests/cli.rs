//! End-to-end tests of the `isotropy` binary: outputs, exit codes, schema
//! conformance and reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_isotropy"));
    c.env_remove("ISOTROPY_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

/// Runs a command that must succeed and returns its JSON.
fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    json_of(&out)
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn assert_valid(schema: &str, v: &Value) {
    let path = schema_dir().join(format!("{schema}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let schema_json: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema_json).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{schema} rejects output: {msgs:?}\n{v:#}");
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Scratch {
        let dir = std::env::temp_dir().join(format!("isotropy-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn path(&self, file: &str) -> String {
        self.0.join(file).to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn write_tensor(dir: &Scratch, name: &str, args: &[&str]) -> String {
    let mut full = vec!["tensor", "random"];
    full.extend_from_slice(args);
    let v = ok(&full);
    assert_valid("tensor", &v);
    let path = dir.path(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

#[test]
fn formula_examples() {
    let v = ok(&["formula", "gq", "--n", "5", "--d", "2"]);
    assert_eq!(v["value"], 7);
    assert_valid("formula", &v);

    let v = ok(&["formula", "alpha-alt", "--n", "7", "--d", "3", "--m", "1", "--char-zero"]);
    assert_eq!(v["value"], 4);
    assert_eq!(v["branch"], "exceptional:(3,7)");
    assert_valid("formula", &v);

    let v = ok(&["formula", "turan", "--n", "2", "--d", "5", "--k", "2"]);
    assert_eq!(v["branch"], "definitional");

    for args in [
        &["formula", "k0", "--n", "9", "--d", "2", "--m", "3"][..],
        &["formula", "fp", "--d", "3", "--m", "1", "--k", "5", "--char-zero"],
        &["formula", "thm13", "--n", "4", "--d", "2", "--m", "2"],
        &["formula", "cpz", "--n", "3", "--d", "2", "--m", "1"],
    ] {
        assert_valid("formula", &ok(args));
    }
    assert_eq!(ok(&["formula", "fp", "--d", "3", "--m", "1", "--k", "5", "--char-zero"])["value"], 8);
    assert_eq!(ok(&["formula", "thm13", "--n", "4", "--d", "2", "--m", "2"])["value"], true);
    assert_eq!(ok(&["formula", "cpz", "--n", "3", "--d", "2", "--m", "1"])["value"], "5/3");
}

#[test]
fn formula_sweeps() {
    let v = ok(&["formula", "k0", "--n", "2", "--n-max", "20", "--d", "2", "--m", "4"]);
    assert_eq!(v.as_array().unwrap().len(), 19);
    assert_valid("formula", &v);

    let out = run(&["formula", "gq", "--n", "2", "--n-max", "5", "--d", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "quantity,d,n,value,branch\ngq,2,2,1,generic\ngq,2,3,3,generic\ngq,2,4,5,generic\ngq,2,5,7,generic\n");
}

#[test]
fn large_values_are_strings() {
    let v = ok(&["formula", "fp", "--d", "30", "--m", "6", "--k", "80"]);
    assert!(v["value"].is_string(), "{v}");
    assert_valid("formula", &v);
}

#[test]
fn exit_codes() {
    // precondition
    let out = run(&["formula", "alpha-alt", "--n", "7", "--d", "3", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_valid("error", &err);
    assert_eq!(run(&["grassmann", "count", "--q", "6", "--n", "3", "--k", "1"]).status.code(), Some(2));
    // conflicting field flags
    assert_eq!(
        run(&["grassmann", "count", "--q", "2", "--p", "2", "--e", "1", "--n", "3", "--k", "1"]).status.code(),
        Some(2)
    );
    // cap exceeded, through the flag and the environment variable
    assert_eq!(run(&["grassmann", "enum", "--q", "2", "--n", "8", "--k", "4", "--cap", "10"]).status.code(), Some(3));
    let out = bin()
        .args(["grassmann", "enum", "--q", "2", "--n", "8", "--k", "4"])
        .env("ISOTROPY_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_rejects_a_box() {
    let dir = Scratch::new("verify");
    let path = dir.path("box.txt");
    // P^1(F_2) has three points; edges {0,1} x {0,1} form a complete box.
    std::fs::write(&path, "# 2 1 2 1\n0 0\n0 1\n1 0\n1 1\n2 2\n").unwrap();
    let out = run(&["boxfree", "verify", "--graph", &path]);
    assert_eq!(out.status.code(), Some(4));
    let v = json_of(&out);
    assert_valid("box-verify", &v);
    assert_eq!(v["free"], false);
    assert_eq!(v["violation"], serde_json::json!([[0, 0], [1, 1]]));
}

#[test]
fn boxfree_generation_round_trip() {
    let dir = Scratch::new("gen");
    let (cert, graph, edges, tensor) = (dir.path("c.json"), dir.path("g.json"), dir.path("g.txt"), dir.path("t.json"));
    let args = ["boxfree", "gen", "--q", "2", "--n", "3", "--d", "2", "--m", "1", "--seed", "42"];
    let mut full = args.to_vec();
    full.extend(["--out", &cert, "--graph", &graph, "--tensor-out", &tensor]);
    assert!(run(&full).status.success());
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_valid("box-certificate", &c);
    assert_eq!(c["freeness_verified"], true);
    assert_eq!(c["dt_bound_rhs"], "76");
    assert_eq!(c["edge_bound_rhs"], "96");

    let g: Value = serde_json::from_str(&std::fs::read_to_string(&graph).unwrap()).unwrap();
    assert_valid("hypergraph", &g);
    let v = ok(&["boxfree", "verify", "--graph", &graph]);
    assert_valid("box-verify", &v);
    assert_eq!(v["free"], true);

    let mut full = args.to_vec();
    full.extend(["--graph", &edges, "--graph-format", "edges"]);
    assert!(run(&full).status.success());
    assert!(std::fs::read_to_string(&edges).unwrap().starts_with("# 2 3 2 1\n"));
    assert_eq!(ok(&["boxfree", "verify", "--graph", &edges])["free"], true);

    let t: Value = serde_json::from_str(&std::fs::read_to_string(&tensor).unwrap()).unwrap();
    assert_valid("tensor", &t);
    let dt = ok(&["isotropy", "dt", "--tensor", &tensor]);
    assert_eq!(dt["count"], c["dt_size"]);
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let args = ["boxfree", "gen", "--q", "2", "--n", "3", "--d", "2", "--m", "1", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "4"]);
    assert_eq!(run(&threaded).stdout, a.stdout);

    let fm = ["isotropy", "field-min", "--q", "2", "--n", "4", "--d", "2", "--m", "1"];
    let one = run(&fm);
    let mut four = fm.to_vec();
    four.extend(["--threads", "4"]);
    assert_eq!(one.stdout, run(&four).stdout);
}

#[test]
fn isotropy_subcommands() {
    let dir = Scratch::new("isotropy");
    let alt = write_tensor(&dir, "alt.json", &["--q", "3", "--n", "4", "--d", "3", "--m", "1", "--kind", "alt", "--seed", "5"]);
    let hom = write_tensor(&dir, "hom.json", &["--p", "2", "--e", "1", "--n", "3", "--d", "2", "--m", "1", "--seed", "42"]);

    let v = ok(&["isotropy", "alt", "--tensor", &alt]);
    assert_valid("isotropy", &v);
    assert!(v["index"].as_u64().unwrap() >= 2);
    let lifted = ok(&["isotropy", "alt", "--tensor", &alt, "--r", "2"]);
    assert!(lifted["index"].as_u64() >= v["index"].as_u64());
    assert_eq!(run(&["isotropy", "alt", "--tensor", &hom]).status.code(), Some(2));

    let v = ok(&["isotropy", "hom", "--tensor", &hom]);
    assert_valid("isotropy", &v);
    let v = ok(&["isotropy", "hom", "--tensor", &hom, "--k", "2", "--r", "1,2"]);
    assert_valid("isotropy-extensions", &v);
    assert_eq!(v["extensions"].as_array().unwrap().len(), 2);

    let v = ok(&["isotropy", "dt", "--tensor", &hom, "--list"]);
    assert_valid("dt", &v);
    assert_eq!(v["count"], "3");
    assert_eq!(v["tuples"].as_array().unwrap().len(), 3);
    assert_eq!(ok(&["isotropy", "dt", "--tensor", &hom, "--r", "2"])["count"], "5");

    let v = ok(&["isotropy", "field-min", "--q", "2", "--n", "3", "--d", "2", "--m", "1"]);
    assert_valid("field-min", &v);
    assert_eq!(v["value"], 2);
    let v = ok(&["isotropy", "field-min", "--q", "3", "--n", "4", "--d", "2", "--m", "2", "--samples", "20", "--seed", "1"]);
    assert_valid("field-min", &v);
    assert_eq!(v["kind"], "upper-bound");
    assert_eq!(
        run(&["isotropy", "field-min", "--q", "3", "--n", "5", "--d", "2", "--m", "2", "--tensor-cap", "100"]).status.code(),
        Some(3)
    );

    let v = ok(&["isotropy", "count-i1", "--q", "2", "--n", "3", "--d", "2", "--m", "1", "--k", "1", "--raw"]);
    assert_valid("incidence", &v);
    assert_eq!(v["count"], "49");
    assert_eq!(v["raw_count"], "49");
    let v = ok(&["isotropy", "count-j1", "--q", "2", "--n", "3", "--d", "2", "--m", "1"]);
    assert_valid("incidence", &v);
    assert_eq!(v["count"], "1519");
    assert_eq!(v["raw_count"], Value::Null);
}

#[test]
fn rank_and_tensor_subcommands() {
    let dir = Scratch::new("rank");
    let t = write_tensor(&dir, "t.json", &["--q", "2", "--n", "2", "--d", "2", "--m", "1", "--seed", "3"]);
    let fast = ok(&["rank", "zeros", "--tensor", &t]);
    assert_valid("rank-zeros", &fast);
    assert_eq!(fast, ok(&["rank", "zeros", "--tensor", &t, "--raw"]));
    let ar = ok(&["rank", "ar", "--tensor", &t]);
    assert_valid("rank-ar", &ar);
    assert_eq!(ar["zero_count"], fast["zero_count"]);
    assert_eq!(ar["ar_leq_m"], true);

    let show = ok(&["tensor", "show", "--tensor", &t]);
    assert_valid("tensor-show", &show);
    assert_eq!(show["coefficients"], 4);

    // stdin input
    let text = std::fs::read(&t).unwrap();
    let mut child = bin()
        .args(["tensor", "show", "--tensor", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(&text).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json_of(&out), show);

    let bad = dir.path("bad.json");
    std::fs::write(&bad, r#"{"field":{"p":2,"e":1,"modulus":[0,1]},"kind":"hom","n":2,"d":2,"m":1,"coeffs":[0,1,2,0]}"#).unwrap();
    assert_eq!(run(&["tensor", "show", "--tensor", &bad]).status.code(), Some(2));
}

#[test]
fn grassmann_subcommands() {
    let v = ok(&["grassmann", "enum", "--q", "2", "--n", "3", "--k", "2"]);
    assert_valid("grassmann-enum", &v);
    assert_eq!(v["subspaces"].as_array().unwrap().len(), 7);
    let v = ok(&["grassmann", "count", "--p", "3", "--e", "1", "--n", "5", "--k", "2"]);
    assert_valid("grassmann-count", &v);
    assert_eq!(v["value"], "1210");
    let v = ok(&["grassmann", "sigma", "--q", "3", "--n", "4", "--k", "2"]);
    assert_valid("grassmann-sigma", &v);
    let counts: Vec<&str> = v["strata"].as_array().unwrap().iter().map(|s| s["count"].as_str().unwrap()).collect();
    assert_eq!(counts, ["10530", "6240", "130"]);
    let v = ok(&["grassmann", "sigma", "--q", "2", "--n", "4", "--k", "2", "--l", "1"]);
    assert_eq!(v["strata"][0]["count"], "630");
    assert_eq!(run(&["grassmann", "sigma", "--q", "2", "--n", "4", "--k", "3", "--l", "0"]).status.code(), Some(2));
}

#[test]
fn selftest_mutations_fail_their_criterion() {
    for (name, id) in [("k0", 1), ("gauss-binom", 5)] {
        let out = run(&["selftest", "--mutate", name]);
        assert_eq!(out.status.code(), Some(1));
        let v = json_of(&out);
        assert_valid("selftest", &v);
        let failed: Vec<u64> = v["criteria"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["passed"] == false)
            .map(|c| c["id"].as_u64().unwrap())
            .collect();
        assert_eq!(failed, [id], "mutation {name}");
    }
    assert_eq!(run(&["selftest", "--mutate", "nonsense"]).status.code(), Some(2));
}
