use std::process::{Command, Output};

fn invopat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invopat"))
        .args(args)
        .env_remove("INVOPAT_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_prints_the_number() {
    let o = invopat(&["--no-timing", "count", "--n", "7", "--patterns", "1234"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "127");
}

#[test]
fn json_output_has_envelope() {
    let o = invopat(&["--format", "json", "count", "--n", "3", "--to", "5", "--patterns", "123"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "count");
    assert_eq!(v["params"]["patterns"], "123");
    let counts: Vec<u64> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [3, 6, 10]);
    assert!(v["version"].is_string());
    assert!(v["elapsed_seconds"].is_number());
}

#[test]
fn no_timing_output_is_deterministic() {
    let args = ["--no-timing", "--format", "json", "classify", "--k", "4", "--n-max", "7"];
    let a = invopat(&args);
    let b = invopat(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("elapsed_seconds").is_none());
}

#[test]
fn job_count_does_not_change_results() {
    let run = |jobs: &str| {
        invopat(&["--no-timing", "--jobs", jobs, "--format", "csv", "table", "--id", "T2", "--n-max", "8"])
    };
    let (one, four) = (run("1"), run("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert!(stdout(&one).starts_with("class,n,count\n"));
}

#[test]
fn table_check_passes() {
    let o = invopat(&["--no-timing", "table", "--id", "T1", "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn verify_reports_records() {
    let o = invopat(&["--no-timing", "--format", "json", "verify", "--check", "slide,top-row", "--max-side", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let results = v["results"].as_array().unwrap();
    assert!(!results.is_empty());
    for r in results {
        assert_eq!(r["pass"], true);
        assert_eq!(r["lhs"], r["rhs"]);
    }
    assert!(results.iter().any(|r| r["check"] == "top-row"));
}

#[test]
fn reduce_worked_example() {
    let o = invopat(&["--no-timing", "reduce", "--perm", "127965384", "--j", "3", "--suffixes", "54"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("shape 4,4,4,3\n"));
}

#[test]
fn rsk_of_a_permutation() {
    let o = invopat(&["--no-timing", "rsk", "--perm", "3142"]);
    assert_eq!(stdout(&o), "P 1,2/3,4\nQ 1,3/2,4\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["count"][..],
        &["count", "--n", "5", "--patterns", "1a"],
        &["--format", "csv", "shapes", "--max-side", "3"],
        &["table", "--id", "T9"],
        &["verify", "--check", "nonsense"],
        &["slide", "--perm", "2143", "--i", "1", "--j", "2"],
    ] {
        let o = invopat(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn cache_file_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.json");
    let cache = cache.to_str().unwrap();
    let args = ["--no-timing", "--cache", cache, "count", "--n", "9", "--patterns", "4321"];
    let first = invopat(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(std::path::Path::new(cache).exists());
    let second = invopat(&args);
    assert_eq!(first.stdout, second.stdout);

    let via_env = Command::new(env!("CARGO_BIN_EXE_invopat"))
        .args(["--no-timing", "count", "--n", "9", "--patterns", "4321"])
        .env("INVOPAT_CACHE", cache)
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, first.stdout);
}
