use std::process::Command;

use serde_json::{json, Value};

fn quadext(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quadext"))
        .args(args)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let (code, out) = quadext(args);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn invariants_example() {
    let (code, v) = json_of(&["invariants", "--form", "1,-1"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"dim": 2, "disc": "1", "signature": 0, "hasse": {}}));
}

#[test]
fn decompose_fixture_and_rejections() {
    let q = quadext::fixtures::gen_i3_12(0, 10).unwrap();
    let list = serde_json::to_string(&q).unwrap();
    let (code, v) = json_of(&["decompose12", "--form", &list]);
    assert_eq!(code, 0);
    assert!(v["d"].is_string() && v["psi"].as_array().unwrap().len() == 6);
    assert!(v["certificate"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["holds"] == true));

    let (code, v) = json_of(&["decompose12", "--form", "1,1"]);
    assert_eq!((code, v["code"].as_str().unwrap()), (2, "DimensionError"));
    let (code, v) = json_of(&["decompose12", "--form", "1,1,1,1,1,1,1,1,1,1,2,2"]);
    assert_eq!((code, v["code"].as_str().unwrap()), (2, "NotInI3Error"));
    assert_eq!(v["place"], "inf");
}

#[test]
fn output_is_deterministic() {
    let args = ["decompose12", "--form", "1,2,1,2,1,2,1,2,1,2,-1,-2"];
    assert_eq!(quadext(&args), quadext(&args));
    let gen = ["gen-fixtures", "--seed", "9", "--count", "4", "--kind", "mixed"];
    assert_eq!(quadext(&gen), quadext(&gen));
}

#[test]
fn form_from_file() {
    let dir = std::env::temp_dir().join(format!("quadext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.json");
    std::fs::write(&path, r#"["1", "1/4", "-2"]"#).unwrap();
    let (code, v) = json_of(&["witt", "--form", &format!("@{}", path.display())]);
    assert_eq!(code, 0);
    assert_eq!(v["witt_index"], 1);
}

#[test]
fn algebra_commands() {
    let (code, v) = json_of(&["extend", "--d", "-1", "--psi0", "1,1,1,1,1,-1", "--lambda", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["extension"]["lambda"], "-1");
    assert_eq!(v["twist"]["delta_matches_q"], true);
    // 17 = 1 + 16 is a sum of two squares, so (17, -1) splits
    let (code, v) = json_of(&["extend", "--d", "17", "--psi0", "1,1", "--lambda", "-1"]);
    assert_eq!((code, &v["invariants"]["brauer"]["profile"]), (0, &json!({})));
    let (code, v) = json_of(&["extend", "--d", "-1", "--psi0", "1,1,1"]);
    assert_eq!((code, v["code"].as_str().unwrap()), (2, "PreconditionError"));

    let (code, v) = json_of(&["e3", "--d", "-1", "--form", "1,1,1,1,1,-1"]);
    assert_eq!((code, v), (0, json!({"value": 1, "defined_mod_q": false})));

    let (code, v) = json_of(&[
        "verify-crossed",
        "--d",
        "5",
        "--psi0",
        "1,-2",
        "--type",
        "symplectic",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["sym_dim"], 6);
    let (code, v) = json_of(&[
        "verify-crossed",
        "--d",
        "5",
        "--psi0",
        "1,-2,3",
        "--type",
        "symplectic",
    ]);
    assert_eq!((code, v["code"].as_str().unwrap()), (2, "PreconditionError"));
    let (code, _) = json_of(&["verify-crossed", "--d", "5", "--psi0", "1", "--type", "unitary"]);
    assert_eq!(code, 2);
}

#[test]
fn suite_runs_corpora() {
    let dir = std::env::temp_dir().join(format!("quadext-suite-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let corpus = dir.join("mixed.jsonl");
    let c = corpus.to_str().unwrap();
    let (code, v) = json_of(&[
        "gen-fixtures",
        "--seed",
        "3",
        "--count",
        "5",
        "--kind",
        "mixed",
        "--out",
        c,
    ]);
    assert_eq!((code, v["written"].as_u64()), (0, Some(10)));
    let (code, v) = json_of(&["run-suite", "--corpus", c]);
    assert_eq!(code, 0);
    assert_eq!((v["total"].as_u64(), v["failed"].as_u64()), (Some(10), Some(0)));

    // a wrong expectation fails the run
    let text = std::fs::read_to_string(&corpus).unwrap().replacen(
        "\"decomposes\"",
        "{\"rejects\":\"NotInI3Error\"}",
        1,
    );
    std::fs::write(&corpus, text).unwrap();
    let (code, v) = json_of(&["run-suite", "--corpus", c]);
    assert_eq!((code, v["failed"].as_u64()), (1, Some(1)));

    let empty = dir.join("empty.jsonl");
    std::fs::write(&empty, "").unwrap();
    let (code, v) = json_of(&["run-suite", "--corpus", empty.to_str().unwrap()]);
    assert_eq!((code, v["total"].as_u64()), (0, Some(0)));

    let (code, v) = json_of(&["run-suite", "--corpus", dir.join("missing").to_str().unwrap()]);
    assert_eq!((code, v["code"].as_str().unwrap()), (2, "ParseError"));
}
