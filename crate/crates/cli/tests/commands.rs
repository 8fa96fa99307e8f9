use std::process::Command;

use serde_json::Value;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_dendrikit"))
        .args(args)
        .env_remove("DENDRIKIT_MAX_DEGREE")
        .output()
        .unwrap();
    Out {
        code: o.status.code().unwrap(),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    o.stdout
}

#[test]
fn word_commands() {
    assert_eq!(ok(&["pack", "3,5,3,9"]), "1,2,1,3\n");
    assert_eq!(ok(&["pack", "--json", "3,5,3,9"]), "[1,2,1,3]\n");
    assert_eq!(ok(&["detass", "1,2,1"]), "1,3,1\n");
    assert_eq!(ok(&["fiber", "--json", "1,1"]), "[[1,1]]\n");
    assert_eq!(ok(&["fiber", "2,1"]), "2,1\n");
    assert_eq!(ok(&["tree", "1,2,1"]), "((o o) (o o))\n");
    assert_eq!(ok(&["tits", "1,2,1", "1,1,2"]), "1,3,2\n");
    assert_eq!(
        ok(&["sylv-class", "--json", "2,1,1"]),
        "{\"members\":[[1,2,1],[2,1,1]],\"representative\":[1,2,1]}\n"
    );
}

#[test]
fn products() {
    assert_eq!(ok(&["mul", "M[1]", "M[1]"]), "M[1,1] + M[1,2] + M[2,1]\n");
    assert_eq!(ok(&["mul", "--op", "prec", "M[1]", "M[1]"]), "M[2,1]\n");
    assert_eq!(ok(&["mul", "--op", "circ", "M[1]", "M[1]"]), "M[1,1]\n");
    assert_eq!(ok(&["mul", "--op", "succ", "M[1]", "M[1]"]), "M[1,2]\n");
    assert_eq!(
        ok(&["mul", "--json", "--op", "prec", "2*M[1]", "-1/2*M[1]"]),
        "{\"basis\":\"M\",\"terms\":[{\"key\":[2,1],\"coeff\":\"-1\"}]}\n"
    );
    assert_eq!(ok(&["mul", "QM[1]", "QM[1]"]), "QM[2] + 2*QM[1,1]\n");
    assert_eq!(run(&["mul", "--op", "bogus", "M[1]", "M[1]"]).code, 2);
    assert_eq!(run(&["mul", "--op", "prec", "M[]", "M[1]"]).code, 2);
}

#[test]
fn coproduct_and_expand() {
    assert_eq!(
        ok(&["coproduct", "M[2,1,2]"]),
        "M[] ⊗ M[2,1,2] + M[1] ⊗ M[1,1] + M[2,1,2] ⊗ M[]\n"
    );
    let doc: Value = serde_json::from_str(&ok(&["coproduct", "--json", "M[1]"])).unwrap();
    assert_eq!(doc["tensor"], Value::Bool(true));
    assert_eq!(doc["terms"].as_array().unwrap().len(), 2);
    assert_eq!(
        ok(&["expand", "--alphabet", "2", "M[1,1]"]),
        "Word[1,1] + Word[2,2]\n"
    );
    assert_eq!(
        ok(&["expand", "--json", "--alphabet", "2", "M[2,1]"]),
        "{\"basis\":\"Word\",\"alphabet\":2,\"terms\":[{\"key\":[2,1],\"coeff\":\"1\"}]}\n"
    );
}

#[test]
fn hilbert_sequences() {
    assert_eq!(ok(&["hilbert", "T", "--max-degree", "4"]), "[1,3,11,45]\n");
    assert_eq!(
        ok(&["hilbert", "NCQSYM", "--max-degree", "5"]),
        "[1,3,13,75,541]\n"
    );
    assert_eq!(
        ok(&["hilbert", "SYL", "--max-degree", "4"]),
        "[1,3,11,45]\n"
    );
    assert_eq!(
        ok(&["hilbert", "TREES", "--max-degree", "4"]),
        "[1,3,11,45]\n"
    );
    let o = run(&["hilbert", "T", "--max-degree", "40"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("exceeds"), "{}", o.stderr);
}

#[test]
fn environment_bound() {
    let o = Command::new(env!("CARGO_BIN_EXE_dendrikit"))
        .args(["hilbert", "NCQSYM", "--max-degree", "4"])
        .env("DENDRIKIT_MAX_DEGREE", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    let o = run(&["mul", "M[1,3]", "M[1]"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("offset 2"), "{}", o.stderr);
    assert!(o.stderr.contains("not packed"), "{}", o.stderr);
    assert_eq!(run(&["mul", "M[1", "M[1]"]).code, 2);
    assert_eq!(run(&["pack", "1,x"]).code, 2);
    assert_eq!(run(&["detass", "1,3"]).code, 2);
    assert_eq!(run(&["tits", "1,2", "1"]).code, 2);
    assert_eq!(run(&["verify", "nonsense"]).code, 2);
    assert_eq!(run(&["no-such-command"]).code, 2);
}

#[test]
fn verify_reports() {
    let out = ok(&["verify", "dimensions", "--json"]);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["pass"], Value::Bool(true));
    assert_eq!(
        r["results"]["dimensions"],
        serde_json::json!([1, 3, 13, 75, 541, 4683])
    );
    assert!(r.get("elapsed_ms").is_none());
    let timed: Value =
        serde_json::from_str(&ok(&["verify", "dimensions", "--json", "--timing"])).unwrap();
    assert!(timed["elapsed_ms"].is_u64());
    let text = ok(&["verify", "parking", "--max-degree", "4"]);
    assert!(text.starts_with("parking: PASS"), "{text}");
}

#[test]
fn above_default_degree_warns() {
    let o = run(&["verify", "dimensions", "--max-degree", "7"]);
    assert_eq!(o.code, 0);
    assert!(o.stderr.contains("warning"), "{}", o.stderr);
}

#[test]
fn corrupted_axioms_fail() {
    let o = run(&[
        "verify",
        "axioms",
        "--json",
        "--max-degree",
        "3",
        "--limit",
        "2",
        "--corrupt-structure-constants",
    ]);
    assert_eq!(o.code, 1);
    let r: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(r["pass"], Value::Bool(false));
    assert!(r["counterexample_count"].as_u64().unwrap() >= 1);
    assert_eq!(r["counterexamples"].as_array().unwrap().len(), 2);
}

#[test]
fn seed_is_reported_and_changes_samples() {
    let a: Value =
        serde_json::from_str(&ok(&["verify", "axioms", "--json", "--max-degree", "3"])).unwrap();
    assert_eq!(a["parameters"]["seed"], serde_json::json!(20061016));
    let b: Value = serde_json::from_str(&ok(&[
        "verify",
        "axioms",
        "--json",
        "--max-degree",
        "3",
        "--seed",
        "7",
    ]))
    .unwrap();
    assert_eq!(b["parameters"]["seed"], serde_json::json!(7));
    assert_eq!(b["pass"], Value::Bool(true));
}
