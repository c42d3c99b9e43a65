use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const K4: &str = "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const C4: &str = "# four-cycle\n1 2\n2 3\n3 4\n4 1\n";

fn graphlet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphlet")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_k4() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    let doc = json(&graphlet(&["count", &k4]));
    assert_eq!(doc["counts"]["X7"], "1");
    assert_eq!(doc["counts"]["X3"], "4");
    assert_eq!(doc["graph"]["m"], 6);
    assert_eq!(doc["config"]["ordering"], "degree");
}

#[test]
fn counts_stable_across_configs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", &(0..40).map(|i| format!("{} {}\n", i, (i * 7 + 3) % 40)).collect::<String>());
    let base = json(&graphlet(&["count", &input]));
    for extra in [
        &["--alpha", "1", "--gpu-pools", "0"][..],
        &["--cpu-workers", "0", "--gpu-pools", "3"],
        &["--ordering", "volume-rev", "--split-threshold", "1"],
        &["--ordering", "rand", "--seed", "9", "--chunk-cpu", "5", "--chunk-gpu", "2"],
    ] {
        let mut args = vec!["count", input.as_str()];
        args.extend_from_slice(extra);
        let doc = json(&graphlet(&args));
        assert_eq!(doc["counts"], base["counts"], "{extra:?}");
        assert_eq!(doc.as_object().unwrap().keys().collect::<Vec<_>>(), base.as_object().unwrap().keys().collect::<Vec<_>>());
    }
}

#[test]
fn micro_table_for_c4() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.txt", C4);
    let micro = dir.path().join("micro.csv");
    let doc = json(&graphlet(&["count", &c4, "--micro", micro.to_str().unwrap()]));
    assert_eq!(doc["micro"].as_array().unwrap().len(), 4);

    let mut rdr = csv::Reader::from_path(&micro).unwrap();
    let headers = rdr.headers().unwrap().clone();
    let x10 = headers.iter().position(|h| h == "x10").unwrap();
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| &r[x10] == "1"));
}

#[test]
fn csv_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    let out = dir.path().join("k4.csv");
    assert!(graphlet(&["count", &k4, "--format", "csv", "--output", out.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("field,value\n"));
    assert!(text.contains("X7,1\n"));
}

#[test]
fn matrix_market_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let mtx = write(
        dir.path(),
        "c4.mtx",
        "%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n4 4 4\n2 1\n3 2\n4 3\n4 1\n",
    );
    let doc = json(&graphlet(&["count", &mtx]));
    assert_eq!(doc["counts"]["X10"], "1");

    let mut child = Command::new(env!("CARGO_BIN_EXE_graphlet"))
        .args(["count", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(K4.as_bytes()).unwrap();
    let doc = json(&child.wait_with_output().unwrap());
    assert_eq!(doc["counts"]["X7"], "1");
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    assert_eq!(graphlet(&["verify", &k4]).status.code(), Some(0));

    let out = graphlet(&["verify", "--random", "15", "0.3", "42", "100"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("100 of 100"));

    let out = graphlet(&["verify", &k4, "--inject-fault", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("X7"));

    let out = graphlet(&["verify", "--generate", "ring:80"]);
    assert_eq!(out.status.code(), Some(2));
    let out = graphlet(&["verify", &k4, "--cap", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    for bad in [
        &["count", k4.as_str(), "--ordering", "sideways"][..],
        &["count", k4.as_str(), "--alpha", "0.9"],
        &["count", k4.as_str(), "--chunk-cpu", "0"],
        &["count", k4.as_str(), "--cpu-workers", "0", "--gpu-pools", "0"],
        &["count", "--generate", "torus:4"],
        &["count"],
        &["verify", "--random", "10", "2.0", "1", "1"],
    ] {
        assert_eq!(graphlet(bad).status.code(), Some(2), "{bad:?}");
    }
    assert_eq!(graphlet(&["count", "/definitely/not/here.txt"]).status.code(), Some(1));
    let broken = write(dir.path(), "broken.txt", "1 2\n3 x\n");
    let out = graphlet(&["count", &broken]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

fn bench_rows(spec: &str) -> Vec<csv::StringRecord> {
    let out = graphlet(&["bench-ordering", "--generate", spec, "--repeats", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(&rdr.headers().unwrap()[9], "max_over_median");
    rdr.records().map(|r| r.unwrap()).collect()
}

#[test]
fn bench_ordering_table() {
    let rows = bench_rows("ba:3000:4:1");
    let keys: Vec<_> = rows.iter().map(|r| r[0].to_string()).collect();
    assert_eq!(keys, ["degree", "volume", "rand", "degree-rev", "volume-rev"]);
    for r in &rows {
        assert!(r[9].parse::<f64>().unwrap() >= 1.0);
    }

    for r in bench_rows("ring:3000") {
        assert!(r[9].parse::<f64>().unwrap() <= 2.0, "{r:?}");
    }
}

#[test]
fn work_report_formats() {
    let out = graphlet(&["work-report", "--generate", "ring:100", "--gpu-pools", "0"]);
    assert!(stdout(&out).contains("max/median 1.000"));
    let doc = json(&graphlet(&["work-report", "--generate", "ba:500:3:2", "--format", "json"]));
    assert!(doc["p99"].as_u64().unwrap() >= doc["median"].as_u64().unwrap());
    assert!(!doc["histogram"].as_array().unwrap().is_empty());
}
