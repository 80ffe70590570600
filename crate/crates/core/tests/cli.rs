use std::process::Command;

use pathend::cli::{run, CliError, Verdict};
use serde_json::Value;

fn pathend(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_pathend")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json)
}

fn invoke(args: &str) -> Result<pathend::cli::CommandResult, CliError> {
    run(std::iter::once("pathend").chain(args.split_whitespace()))
}

#[test]
fn count_methods_agree() {
    for n in 1..=9 {
        let mut seen = Vec::new();
        for method in ["enumerate", "dp", "formula"] {
            let r = invoke(&format!("count --class wend --n {n} --method {method}")).unwrap();
            assert_eq!(r.verdict, Verdict::Value);
            seen.push(r.payload["count"].as_str().unwrap().to_string());
        }
        assert!(seen.windows(2).all(|w| w[0] == w[1]), "n={n}: {seen:?}");
    }
    let (code, json) = pathend(&["count", "--class", "wend", "--n", "8", "--method", "enumerate"]);
    assert_eq!(code, 0);
    assert_eq!(json["verdict"], "value");
    assert_eq!(json["payload"]["count"], "11814");
}

#[test]
fn formula_hundred() {
    let (code, json) = pathend(&["formula", "--n", "100"]);
    assert_eq!(code, 0);
    assert_eq!(
        json["payload"]["count"],
        "15116889835751504709361077940682197429012095346416"
    );
    assert_eq!(json["command"], "formula");
    assert!(json["elapsed_ms"].is_u64());
}

#[test]
fn rank_modes() {
    let brute = invoke("rank --class end --n 5 --mode bruteforce").unwrap();
    let formula = invoke("rank --class end --n 5 --mode formula").unwrap();
    assert_eq!(brute.payload["rank"], 3);
    assert_eq!(formula.payload["rank"], 3);
    let cert = invoke("rank --class wend --n 6 --mode certificate").unwrap();
    assert_eq!(cert.verdict, Verdict::Pass);
    let (code, json) = pathend(&[
        "rank",
        "--class",
        "wend",
        "--n",
        "4",
        "--mode",
        "bruteforce",
        "--budget",
        "3",
    ]);
    assert_eq!(code, 3, "{json}");
    assert_eq!(json["error"], "guard");
}

#[test]
fn verify_exits_zero() {
    for n in 2..=7 {
        let (code, json) = pathend(&["verify", "--n", &n.to_string()]);
        assert_eq!(code, 0, "n={n}: {json}");
        assert_eq!(json["verdict"], "pass");
    }
}

#[test]
fn usage_and_guard_codes() {
    assert_eq!(pathend(&["frobnicate"]).0, 2);
    assert_eq!(pathend(&["count", "--class", "wend"]).0, 2);
    assert_eq!(pathend(&["count", "--class", "bogus", "--n", "3"]).0, 2);
    assert_eq!(
        pathend(&["count", "--class", "send", "--n", "4", "--method", "dp"]).0,
        2
    );
    let (code, json) = pathend(&["enumerate", "--class", "wend", "--n", "9", "--cap", "8"]);
    assert_eq!(code, 3);
    assert!(json["reason"].as_str().unwrap().contains("cap"));
    let env = Command::new(env!("CARGO_BIN_EXE_pathend"))
        .args(["enumerate", "--class", "end", "--n", "7"])
        .env("PATHEND_CAP", "6")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    assert_eq!(pathend(&["--help"]).0, 0);
}

#[test]
fn enumerate_writes_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wend4.txt");
    let (code, json) = pathend(&[
        "enumerate",
        "--class",
        "wend",
        "--n",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(json["payload"]["count"], "68");
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 68);
    assert_eq!(lines[0], "1,1,1,1");
    assert!(lines.iter().all(|l| l.parse::<pathend::Transformation>().is_ok()));
}

#[test]
fn closure_and_gens() {
    let r = invoke("closure --family a --n 6 --check-equal end").unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    let r = invoke("closure --family a --n 6 --check-equal wend").unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(r.exit_code(), 1);
    assert!(!r.payload["missing_sample"].as_array().unwrap().is_empty());
    let r = invoke("closure --gen 3,2,1 --gen 1,1,1").unwrap();
    // identity, τ, and the constants 1 and 3
    assert_eq!(r.payload["size"], 4);

    let g = invoke("gens --family b --n 5").unwrap();
    assert_eq!(g.payload["size"], 5);
    assert_eq!(g.payload["members"][0]["label"], "tau");
    assert_eq!(g.payload["members"][0]["element"], "5,4,3,2,1");
}

#[test]
fn regular_and_word() {
    let r = invoke("regular --class end --n 6").unwrap();
    assert_eq!(r.payload["regular"], false);
    let r = invoke("regular --element 1,2,2,3").unwrap();
    assert_eq!(r.payload["regular"], false);
    let r = invoke("regular --element 2,1,2,3").unwrap();
    assert_eq!(r.payload["regular"], true);
    assert!(matches!(invoke("regular"), Err(CliError::Usage(_))));

    let w = invoke("word --family a --n 5 --element 2,3,4,5,4").unwrap();
    assert_eq!(w.verdict, Verdict::Pass);
    let word: Vec<String> = w.payload["word"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().into())
        .collect();
    assert!(!word.is_empty());
    let w = invoke("word --family a --n 4 --element 1,1,2,3").unwrap();
    assert_eq!(w.verdict, Verdict::Fail);
}

#[test]
fn relative_rank_and_threads() {
    let r = invoke("relative-rank --n 5").unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.payload["lower_ok"], true);
    let one = invoke("--threads 1 count --class end --n 10").unwrap();
    let four = invoke("--threads 4 count --class end --n 10").unwrap();
    assert_eq!(one.payload, four.payload);
}
