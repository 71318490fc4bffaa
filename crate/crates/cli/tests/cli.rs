use std::process::{Command, Output};

use clap::Parser;
use gpsprimes_cli::args::Cli;
use gpsprimes_cli::{run, CliError};
use proptest::prelude::*;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpsprimes")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_csv_header() {
    let o = bin(&["count", "--alpha", "1", "--beta", "0", "--c", "1.05", "--x", "1e6", "--q", "1", "--a", "0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("x,pi_gps,sigma1,sigma2,main_term,residual,normalized_residual"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[1], "40489");
    // 17 significant digits
    assert_eq!(row[0], "1.0000000000000000e6");
}

#[test]
fn verify_hb_report() {
    let o = bin(&["verify-hb", "--n-max", "10000", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["z"], 18);
    assert!(v["max_abs_error"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["passed"], true);
}

#[test]
fn thresholds_json() {
    let o = bin(&["thresholds", "--E", "0.7039"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["gamma_threshold"].as_f64().unwrap() - 0.9795655).abs() < 5e-6);
    assert_eq!(v["paper_fraction"], "18746/19137");
    assert_eq!(v["admissible_gamma"], "11/12");
    assert_eq!(v["lemma_c_bound"], "38/37");
}

#[test]
fn validation_exits_with_two() {
    for args in [
        vec!["count", "--c", "1.2", "--x", "1e4"],
        vec!["count", "--c", "1.05", "--x", "1e4", "--q", "4", "--a", "2"],
        vec!["count", "--c", "1.05"],
        vec!["thresholds", "--E", "1.5"],
        vec!["carmichael", "--limit", "1e10"],
        vec!["optimize-h", "--growth", "1:1", "--h2", "10"],
        vec!["nonsense"],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "validation");
    }
}

#[test]
fn strict_mode_reports_ambiguity() {
    // 4^(3/2) = 8 lands exactly on an integer
    let args = ["seq", "--c", "1.5", "--from", "1", "--to", "10"];
    let lax = bin(&args);
    assert_eq!(lax.status.code(), Some(0));
    assert!(stdout(&lax).contains("8,,false,true"));
    let strict = bin(&[&args[..], &["--strict"]].concat());
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn output_file_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("count.csv");
    let cache = dir.path().join("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gpsprimes"))
            .args(["count", "--c", "1.05", "--x", "5e4", "--output"])
            .arg(&out)
            .env("GPSPRIMES_CACHE_DIR", &cache)
            .output()
            .unwrap()
    };
    assert_eq!(run().status.code(), Some(0));
    let first = std::fs::read(&out).unwrap();
    assert!(cache.join("sieve-1-50000.bin").exists());
    assert_eq!(run().status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), first);
}

#[test]
fn carmichael_records() {
    let o = bin(&["carmichael", "--limit", "10000"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ns: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, vec![561, 1105, 1729, 2465, 2821, 6601, 8911]);
    assert_eq!(v[0]["factors"], serde_json::json!([3, 11, 17]));
    assert_eq!(v[0]["memberships"], serde_json::json!([true, true, true]));
    assert_eq!(v[0]["ambiguous"], serde_json::json!([]));
}

#[test]
fn smooth_table() {
    let o = bin(&["smooth", "--x", "20", "--y", "4"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap().rsplit(',').next(), Some("7"));
}

fn expect_validation(args: &[String]) -> Result<(), TestCaseError> {
    let full: Vec<&str> = std::iter::once("gpsprimes").chain(args.iter().map(String::as_str)).collect();
    match Cli::try_parse_from(full) {
        Err(_) => Ok(()),
        Ok(cli) => match run(&cli) {
            Err(CliError::Validation(_)) => Ok(()),
            other => Err(TestCaseError::fail(format!("{args:?} gave {other:?}"))),
        },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn out_of_window_count_rejected(c in prop_oneof![0.0f64..=1.0, 1.0909092f64..3.0], alpha in 1.0f64..3.0) {
        let args: Vec<String> = ["count", "--alpha", &alpha.to_string(), "--c", &c.to_string(), "--x", "1e3"].map(String::from).to_vec();
        expect_validation(&args)?;
    }

    #[test]
    fn small_alpha_rejected_in_theorem_mode(alpha in 0.01f64..0.999) {
        let args: Vec<String> = ["count", "--alpha", &alpha.to_string(), "--c", "1.05", "--x", "1e3"].map(String::from).to_vec();
        expect_validation(&args)?;
    }

    #[test]
    fn bad_threshold_inputs_rejected(e in prop_oneof![-5.0f64..=0.0, 1.0001f64..5.0]) {
        let args: Vec<String> = ["thresholds", "--E", &e.to_string()].map(String::from).to_vec();
        expect_validation(&args)?;
    }

    #[test]
    fn non_coprime_class_rejected(q in 2u64..50, k in 1u64..10) {
        let a = (smallest_prime_factor(q) * k) % q;
        let args: Vec<String> = ["count", "--c", "1.05", "--x", "1e3", "--q", &q.to_string(), "--a", &a.to_string()].map(String::from).to_vec();
        expect_validation(&args)?;
    }

    #[test]
    fn carmichael_exponent_outside_window_rejected(b in 0.032f64..0.5, e in 0.1f64..0.99) {
        // the ceiling at gamma = 0.985 is about 0.0315
        let args: Vec<String> = ["thresholds", "--E", &e.to_string(), "--B", &b.to_string(), "--B1", "0.01", "--gamma", "0.985"].map(String::from).to_vec();
        expect_validation(&args)?;
    }
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..=q).find(|d| q % d == 0).unwrap()
}
