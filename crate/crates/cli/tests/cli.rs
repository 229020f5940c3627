use std::process::{Command, Output};

use serde_json::Value;

fn longrun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_longrun")).args(args).output().expect("binary runs")
}

fn json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is json")
}

fn error_code(output: &Output) -> String {
    let record: Value = serde_json::from_slice(&output.stderr).expect("stderr is an error record");
    record["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn worked_p_value() {
    let out = longrun(&[
        "pvalue",
        "--counts",
        "10,7",
        "--definition",
        "per-letter",
        "--letter",
        "1",
        "--m",
        "0",
        "--q",
        "7",
        "--decimals",
        "3",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["p_decimal"], "0.049");
    assert_eq!(v["p_exact"], "120/2431");
    assert_eq!(v["reject"], true);
}

#[test]
fn moment_table_rows() {
    let out = longrun(&["table", "--counts", "200,300", "--definition", "whole", "--m-max", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    let expected = [
        ("10.997", "126.502", "5.562"),
        ("9.072", "84.309", "2.006"),
        ("8.121", "67.115", "1.165"),
        ("7.494", "56.966", "0.809"),
    ];
    assert_eq!(rows.len(), 4);
    for (row, (mean, second, variance)) in rows.iter().zip(expected) {
        assert_eq!(row["mean"]["decimal"], mean);
        assert_eq!(row["second_moment"]["decimal"], second);
        assert_eq!(row["variance"]["decimal"], variance);
    }
}

#[test]
fn verify_passes() {
    let out = longrun(&["verify", "--max-total", "10", "--max-k", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["identities"].as_array().unwrap().iter().all(|i| i["passed"] == true));
}

#[test]
fn verify_cap_is_reported() {
    let out = longrun(&["verify", "--max-total", "8", "--max-k", "2", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(error_code(&out), "cap_exceeded");
}

#[test]
fn error_codes_are_distinct() {
    let arity = longrun(&["count", "--counts", "4,3", "--stat", "n", "--m", "0", "--q", "2"]);
    let absent = longrun(&["count", "--counts", "4,0", "--stat", "q", "--q", "2"]);
    let letter = longrun(&["pmf", "--counts", "4,3", "--definition", "per-letter", "--letter", "3"]);
    let usage = longrun(&["pmf"]);
    let codes = [&arity, &absent, &letter, &usage].map(error_code);
    assert_eq!(codes, ["invalid_arity", "absent_letter", "letter_out_of_range", "usage"]);
    let statuses = [&arity, &absent, &letter, &usage].map(|o| o.status.code().unwrap());
    assert_eq!(statuses, [3, 4, 7, 2]);
    assert!(arity.stdout.is_empty());
}

#[test]
fn plot_series_sums_to_one() {
    let out = longrun(&["pmf", "--counts", "20,30", "--m", "1", "--format", "plot"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q probability"));
    let mut total = 0.0;
    for (i, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(' ').collect();
        assert_eq!(cols.len(), 2);
        assert_eq!(cols[0].parse::<usize>().unwrap(), i);
        total += cols[1].parse::<f64>().unwrap();
    }
    assert!((total - 1.0).abs() < 1e-4);

    let out = longrun(&["moments", "--counts", "3,3", "--format", "plot"]);
    assert_eq!(error_code(&out), "unsupported_format");
}

#[test]
fn cdf_ends_at_one_in_csv_and_tsv() {
    let csv = longrun(&["cdf", "--counts", "5,4,3", "--m", "2", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("q,probability_exact,probability_decimal"));
    assert!(text.lines().last().unwrap().ends_with(",1/1,1.00000"));
    let tsv = longrun(&["cdf", "--counts", "5,4,3", "--m", "2", "--format", "tsv"]);
    assert_eq!(String::from_utf8(tsv.stdout).unwrap(), text.replace(',', "\t"));
}

#[test]
fn counts_by_statistic() {
    // two letters, one of each: "12" and "21", both with two runs
    let t = json(&longrun(&["count", "--counts", "1,1", "--stat", "t", "--r", "2"]));
    assert_eq!(t["count"], "2");
    let z = json(&longrun(&["count", "--counts", "10,7", "--stat", "z", "--letter", "1", "--q", "7", "--m", "0"]));
    assert_eq!(z["count"], "960");
    assert_eq!(z["total"], "19448");
    let w = json(&longrun(&["count", "--counts", "2,2", "--stat", "w", "--definition", "whole", "--q", "2"]));
    assert_eq!(w["count"], "4");
    let n = json(&longrun(&["count", "--counts", "2,2", "--stat", "n", "--m", "0,0", "--q", "1,2"]));
    // the 1s never touch: 1212, 1221, 2121
    assert_eq!(n["count"], "3");
}

#[test]
fn output_is_deterministic_and_file_matches_stdout() {
    let args = ["pmf", "--counts", "6,5,4", "--definition", "per-letter", "--letter", "2", "--m", "1"];
    let first = longrun(&args).stdout;
    assert_eq!(first, longrun(&args).stdout);
    let path = std::env::temp_dir().join(format!("longrun-{}.json", std::process::id()));
    let mut with_out = args.to_vec();
    let path_str = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &path_str]);
    let out = longrun(&with_out);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), first);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn binomial_rows_override() {
    let run = |rows: &str| {
        Command::new(env!("CARGO_BIN_EXE_longrun"))
            .args(["count", "--counts", "10,7", "--stat", "q", "--q", "3"])
            .env("LONGRUN_BINOMIAL_ROWS", rows)
            .output()
            .unwrap()
    };
    let plain = longrun(&["count", "--counts", "10,7", "--stat", "q", "--q", "3"]);
    assert_eq!(run("100").stdout, plain.stdout);
    assert_eq!(error_code(&run("5")), "invalid_argument");
}
