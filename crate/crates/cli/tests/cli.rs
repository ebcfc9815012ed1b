use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;

use quadform::constructions::{make_jg_embedding, make_tg, TgParams};
use quadform::glue::PrimEmbedding;
use quadform::{Laurent, Matrix, Ring, StableIso};
use quadform_cli::format::Json;
use quadform_cli::report::Report;
use quadform_cli::suites::{self, Params};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadform"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "markexample"]).0, 0);
    assert_eq!(run(&["verify", "nope"]).0, 2);
    assert_eq!(run(&["tg", "--p", "0"]).0, 3);
    assert_eq!(run(&["enum-prim", "--q", "0"]).0, 3);
    let dir = std::env::temp_dir().join(format!("quadform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let (_, good) = run(&["emit", "jg", "--p", "-1", "--n", "1"]);
    let good_path = dir.join("good.json");
    std::fs::write(&good_path, good).unwrap();
    let args = |a: &std::path::Path, b: &std::path::Path| vec!["compare".to_string(), "bprim".into(), a.display().to_string(), b.display().to_string()];
    let code = |v: Vec<String>| bin().args(v).output().unwrap().status.code().unwrap();
    assert_eq!(code(args(&good_path, &bad)), 4);
    assert_eq!(code(args(&good_path, &good_path)), 0);
}

#[test]
fn compare_family() {
    let dir = std::env::temp_dir().join(format!("quadform-cmp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, n: i64| {
        let path = dir.join(name);
        std::fs::write(&path, make_jg_embedding(&TgParams::new(-1, n).unwrap()).to_json().to_string()).unwrap();
        path.display().to_string()
    };
    let (a, b, c) = (write("a.json", 1), write("b.json", 2), write("c.json", -1));
    let (code, out) = run(&["compare", "bprim", &a, &b]);
    assert_eq!(code, 1);
    assert!(out.contains("\"fail\""));
    assert_eq!(run(&["compare", "bprim", &a, &c]).0, 1);
    assert_eq!(run(&["compare", "bprim", &a, &c, "--group-twist"]).0, 0);
}

#[test]
fn enum_prim_counts() {
    for (q, bf) in [(7, 1), (15, 2), (105, 4)] {
        let r = suites::cmd_enum_prim(q).unwrap();
        let counts = r.results[0].witness.as_ref().unwrap();
        assert_eq!(counts["bF"], Value::from(bf));
        assert_eq!(r.status, quadform_cli::report::Status::Pass);
    }
}

#[test]
fn reports_round_trip_byte_identical() {
    let (_, out) = run(&["verify", "all"]);
    let parsed: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed.to_json_string() + "\n", out);
    let value: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", out);
}

#[test]
fn reports_are_deterministic() {
    let params = Params { seed: 7, ..Params::default() };
    let mut a = suites::run_verify("roundtrip", &params).unwrap();
    let mut b = suites::run_verify("roundtrip", &params).unwrap();
    a.elapsed_ms = 0;
    b.elapsed_ms = 0;
    assert_eq!(a.to_json_string(), b.to_json_string());
    let other = suites::run_verify("roundtrip", &Params { seed: 8, ..Params::default() }).unwrap();
    assert_ne!(a.inputs, other.inputs);
}

#[test]
fn every_check_once() {
    let r = suites::run_verify("all", &Params::default()).unwrap();
    let mut names: Vec<&str> = r.results.iter().map(|c| c.check.as_str()).collect();
    let total = names.len();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), total);
}

#[test]
fn objects_round_trip() {
    let tg = make_tg(&TgParams::new(-2, 3).unwrap()).unwrap();
    let text = tg.to_json().to_string();
    let back = StableIso::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.to_json().to_string(), text);
    let pe = make_jg_embedding(&TgParams::new(-1, 2).unwrap());
    let back = PrimEmbedding::from_json(&pe.to_json()).unwrap();
    assert_eq!(back.to_json(), pe.to_json());
    let compact: Value = serde_json::json!({"rows": 1, "cols": 2, "entries": [[3, "-4"]]});
    assert_eq!(Matrix::from_json(&compact).unwrap(), Matrix::from_ints(&[&[3, -4]]));
}

fn laurent() -> impl Strategy<Value = Laurent> {
    (prop::collection::btree_map(-5i64..5, -1000i64..1000, 0..5), prop::option::of(2i64..30)).prop_map(|(terms, m)| {
        let ring = m.map_or(Ring::integral(), |m| Ring::residue(&m.into()).unwrap());
        Laurent::from_terms(&ring, terms.into_iter().map(|(k, c)| (k, c.into())))
    })
}

proptest! {
    #[test]
    fn laurent_json_round_trip(x in laurent()) {
        let text = x.to_json().to_string();
        let back = Laurent::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_json().to_string(), text);
    }

    #[test]
    fn matrix_json_round_trip(rows in 1usize..4, cols in 1usize..4, seed in prop::collection::vec(-50i64..50, 16)) {
        let m = Matrix::from_fn(rows, cols, &Ring::integral(), |i, j| Laurent::int(seed[i * 4 + j]) + Laurent::mono(seed[(i * 4 + j + 1) % 16], 1));
        prop_assert_eq!(Matrix::from_json(&m.to_json()).unwrap(), m);
    }
}
