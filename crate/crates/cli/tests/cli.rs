use std::io::Write;
use std::process::{Command, Output};

use diffseq_core::diophantine::report::{read_json_lines, ReportLine};

fn diffseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffseq"))
        .args(args)
        .env_remove("DIFFSEQ_MAX_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn difftable_cubic_is_byte_exact() {
    let o = diffseq(&[
        "difftable",
        "--poly",
        "x^3",
        "--points",
        "7",
        "--order",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "0 1 8 27 64 125 216\n1 7 19 37 61 91\n6 12 18 24 30\n6 6 6 6\n"
    );
}

#[test]
fn difftable_small_sequences() {
    let o = diffseq(&["difftable", "--seq", "0,1,2,3", "--order", "1"]);
    assert_eq!(stdout(&o), "0 1 2 3\n1 1 1\n");
    let o = diffseq(&["difftable", "--seq", "5", "--order", "0"]);
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn scan_json_round_trips() {
    let o = diffseq(&[
        "branch-scan",
        "--x-prime",
        "1",
        "--power",
        "2",
        "--p-max",
        "25",
        "--format",
        "json-lines",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines = read_json_lines(o.stdout.as_slice()).unwrap();
    assert_eq!(lines.len(), 27);
    let steps: Vec<_> = lines
        .iter()
        .filter_map(|l| match l {
            ReportLine::Step(r) => Some(r),
            _ => None,
        })
        .collect();
    assert_eq!(steps.len(), 26);
    let ints: Vec<u64> = steps.iter().filter(|r| r.is_integer).map(|r| r.p).collect();
    assert_eq!(ints, [0, 3, 20]);
    let ReportLine::Summary(s) = lines.last().unwrap() else {
        panic!("summary must come last");
    };
    assert!(s.passed());
    assert_eq!(s.integer_points, [0, 3, 20]);
    assert_eq!(s.digits, 30);
}

#[test]
fn scan_csv_has_header_and_summary() {
    let o = diffseq(&[
        "branch-scan",
        "--x-prime",
        "2",
        "--power",
        "3",
        "--p-max",
        "4",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "x_prime,n,a,p,zn,is_integer,step_lo,step_hi,above_one,below_bound,increasing,bits"
    );
    assert_eq!(lines.len(), 7);
    assert!(lines[6].starts_with("# summary grade=lemma-confirmed"));
    assert!(lines[1].starts_with("2,3,1,0,8,true,"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "branch-scan",
        "--x-prime",
        "7",
        "--power",
        "4",
        "--coeff-a",
        "2",
        "--p-max",
        "600",
        "--format",
        "csv",
    ];
    let a = diffseq(&args);
    let b = diffseq(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let s1 = diffseq(&[
        "selfcheck",
        "--cases",
        "10",
        "--seed",
        "11",
        "--format",
        "json-lines",
    ]);
    let s2 = diffseq(&[
        "selfcheck",
        "--cases",
        "10",
        "--seed",
        "11",
        "--format",
        "json-lines",
    ]);
    assert_eq!(s1.stdout, s2.stdout);
    assert_eq!(s1.status.code(), Some(0));
}

#[test]
fn invalid_parameters_exit_with_usage_status() {
    for args in [
        &[
            "branch-scan",
            "--x-prime",
            "0",
            "--power",
            "2",
            "--p-max",
            "3",
        ][..],
        &[
            "branch-scan",
            "--x-prime",
            "1",
            "--power",
            "1",
            "--p-max",
            "3",
        ],
        &["min-gap", "--power", "2", "--coeff-a", "0"],
        &["limit", "--alpha", "3/2", "--power", "3"],
        &["fermat-bound", "--power", "2"],
        &["difftable", "--order", "2"],
        &[
            "deriv",
            "--function",
            "sin",
            "--x",
            "0",
            "--step",
            "0",
            "--order",
            "1",
        ],
        &[
            "branch-scan",
            "--x-prime",
            "1",
            "--power",
            "2",
            "--p-max",
            "3",
            "--threads",
            "0",
        ],
        &["no-such-command"],
    ] {
        let o = diffseq(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn undecided_steps_exit_with_failure_status() {
    let o = diffseq(&[
        "branch-scan",
        "--x-prime",
        "50",
        "--power",
        "10",
        "--p-max",
        "0",
        "--precision-bits",
        "8",
        "--max-precision-bits",
        "16",
        "--format",
        "json-lines",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let lines = read_json_lines(o.stdout.as_slice()).unwrap();
    let ReportLine::Summary(s) = lines.last().unwrap() else {
        panic!()
    };
    assert_eq!(s.undecided, [0]);
}

#[test]
fn precision_cap_flag_beats_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_diffseq"));
        cmd.args([
            "branch-scan",
            "--x-prime",
            "50",
            "--power",
            "10",
            "--p-max",
            "0",
            "--precision-bits",
            "8",
        ]);
        cmd.env_remove("DIFFSEQ_MAX_BITS");
        if let Some(e) = env {
            cmd.env("DIFFSEQ_MAX_BITS", e);
        }
        if let Some(f) = flag {
            cmd.args(["--max-precision-bits", f]);
        }
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None, None), Some(0));
    assert_eq!(run(Some("16"), None), Some(1));
    assert_eq!(run(Some("16"), Some("4096")), Some(0));
    assert_eq!(run(Some("4096"), Some("16")), Some(1));
}

fn config(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn run_config_matches_command_line() {
    let f = config(
        "command = \"gap-audit\"\nseed = 3\n\n[params]\nx-prime = 1\npower = 2\np-max = 200\nformat = \"json-lines\"\n",
    );
    let via_config = diffseq(&["run", "--config", f.path().to_str().unwrap()]);
    let direct = diffseq(&[
        "gap-audit",
        "--x-prime",
        "1",
        "--power",
        "2",
        "--p-max",
        "200",
        "--format",
        "json-lines",
    ]);
    assert_eq!(via_config.status.code(), Some(0));
    assert_eq!(via_config.stdout, direct.stdout);
    let v: serde_json::Value = serde_json::from_slice(&via_config.stdout).unwrap();
    assert_eq!(v["integer_points"], serde_json::json!([0, 3, 20, 119]));
}

#[test]
fn run_config_rejects_unknown_keys() {
    let top = config("command = \"min-gap\"\ncolour = \"red\"\n[params]\npower = 2\n");
    let o = diffseq(&["run", "--config", top.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let param = config("command = \"min-gap\"\n[params]\npower = 2\nfrobnicate = 1\n");
    let o = diffseq(&["run", "--config", param.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let nested = config("command = \"run\"\n");
    let o = diffseq(&["run", "--config", nested.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gaps.csv");
    let o = diffseq(&[
        "gap-audit",
        "--x-prime",
        "1",
        "--power",
        "2",
        "--p-max",
        "30",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("x_prime,n,a,p,gap,violation\n1,2,1,0,,false\n1,2,1,3,3,false\n"));
}

#[test]
fn small_commands() {
    let o = diffseq(&[
        "min-gap",
        "--power",
        "2",
        "--coeff-a",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o), "n,a,min_gap\n2,3,1\n");
    let o = diffseq(&["cond-gap", "--power", "3", "--j", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,j,bound\n3,2,2\n");
    let o = diffseq(&["fermat-bound", "--power", "3", "--format", "json-lines"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["y_bound"], 3);
    let o = diffseq(&[
        "identity",
        "--x-prime",
        "4",
        "--power",
        "5",
        "--coeff-a",
        "2",
        "--y",
        "9",
        "--format",
        "json-lines",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["expected"], "360");
    assert_eq!(v["residual"], "0");
    let o = diffseq(&[
        "brute-force",
        "--power",
        "2",
        "--x-prime-max",
        "1",
        "--p-max",
        "30",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o), "x_prime,p,z\n1,0,1\n1,3,5\n1,20,29\n");
    let o = diffseq(&[
        "brute-force",
        "--power",
        "2",
        "--x-prime-max",
        "100000",
        "--p-max",
        "100000",
        "--budget",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn deriv_reports_within_bound() {
    let o = diffseq(&[
        "deriv",
        "--function",
        "exp",
        "--x",
        "0",
        "--x0",
        "0",
        "--step",
        "0.01",
        "--order",
        "2",
        "--m",
        "3",
        "--format",
        "json-lines",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["within_bound"], true);
    assert!((v["estimate"].as_f64().unwrap() - 1.0).abs() < 0.05);
}
