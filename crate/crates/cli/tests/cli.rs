use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn swd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swd"))
        .args(args)
        .env_remove("SWD_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn verify_gf7(out_dir: &Path, extra: &[&str]) -> Output {
    let out = out_dir.to_str().unwrap();
    let mut args = vec!["verify", "--n", "2", "--r", "3", "--field", "gf:7", "--out", out];
    args.extend_from_slice(extra);
    swd(&args)
}

#[test]
fn verify_writes_a_passing_report() {
    let tmp = tempfile::tempdir().unwrap();
    let out = verify_gf7(tmp.path(), &["--no-cache"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&read(&tmp.path().join("gf_7_n2_r3_dsw.json"))).unwrap();
    assert_eq!(report["parameters"]["field"], "gf:7");
    assert_eq!(report["duality"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["status"], "pass", "{c}");
    }
    let summary = read(&tmp.path().join("summary.csv"));
    assert!(summary.starts_with("alpha,beta,field,dim_hom_sigma,dim_hom_H,dim_theta_image,surjective\n"), "{summary}");
}

#[test]
fn characteristic_dividing_r_is_infeasible() {
    let tmp = tempfile::tempdir().unwrap();
    let out = swd(&["verify", "--n", "2", "--r", "4", "--field", "gf:2", "--no-cache", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("characteristic 2 divides r = 4"), "{}", stderr(&out));
}

#[test]
fn missing_root_of_unity_suggests_an_extension() {
    let tmp = tempfile::tempdir().unwrap();
    let out = swd(&["verify", "--n", "2", "--r", "5", "--field", "gf:2", "--no-cache", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gf:2^4"), "{}", stderr(&out));
}

#[test]
fn malformed_spec_names_the_grammar() {
    let tmp = tempfile::tempdir().unwrap();
    let out = swd(&["verify", "--r", "3", "--field", "Q(zeta)", "--no-cache", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("`cyclo:R`, `gf:P`, `gf:P^M`"), "{}", stderr(&out));
}

#[test]
fn skip_infeasible_continues() {
    let tmp = tempfile::tempdir().unwrap();
    let out = swd(&[
        "verify", "--n", "2", "--r", "3", "--field", "gf:3,gf:7", "--skip-infeasible", "--checks", "lie", "--no-cache", "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("skipping"));
    assert!(tmp.path().join("gf_7_n2_r3_dsw.json").exists());
    assert!(!tmp.path().join("gf_3_n2_r3_dsw.json").exists());
}

#[test]
fn homdims_prints_the_table() {
    let tmp = tempfile::tempdir().unwrap();
    let out = swd(&["homdims", "--n", "2", "--r", "3", "--fields", "gf:7,cyclo:3", "--no-cache", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.starts_with("alpha,beta,gf:7,cyclo:3,varies\n"), "{table}");
    assert!(table.lines().skip(1).all(|l| l.ends_with(",false")), "{table}");
    assert_eq!(table, read(&tmp.path().join("homdims_n2_r3.csv")));
    assert!(tmp.path().join("homdims_n2_r3.json").exists());
    assert!(tmp.path().join("homdims_n2_r3_cells.csv").exists());
}

#[test]
fn cached_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let cache_arg = cache.to_str().unwrap();
    let fresh = tmp.path().join("fresh");
    let cold = tmp.path().join("cold");
    let warm = tmp.path().join("warm");
    assert_eq!(verify_gf7(&fresh, &["--no-cache"]).status.code(), Some(0));
    assert_eq!(verify_gf7(&cold, &["--cache-dir", cache_arg]).status.code(), Some(0));
    assert!(fs::read_dir(&cache).unwrap().count() > 0);
    assert_eq!(verify_gf7(&warm, &["--cache-dir", cache_arg, "--jobs", "1"]).status.code(), Some(0));
    let name = "gf_7_n2_r3_dsw.json";
    let reference = read(&fresh.join(name));
    assert_eq!(reference, read(&cold.join(name)));
    assert_eq!(reference, read(&warm.join(name)));
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let cache_arg = cache.to_str().unwrap();
    let first = tmp.path().join("first");
    let second = tmp.path().join("second");
    assert_eq!(verify_gf7(&first, &["--cache-dir", cache_arg]).status.code(), Some(0));
    for entry in fs::read_dir(&cache).unwrap() {
        fs::write(entry.unwrap().path(), "{ not json").unwrap();
    }
    let out = verify_gf7(&second, &["--cache-dir", cache_arg]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("corrupt cache entry"), "{}", stderr(&out));
    let name = "gf_7_n2_r3_dsw.json";
    assert_eq!(read(&first.join(name)), read(&second.join(name)));
}

#[test]
fn cache_dir_comes_from_the_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("env-cache");
    let out = Command::new(env!("CARGO_BIN_EXE_swd"))
        .args(["verify", "--n", "2", "--r", "3", "--field", "gf:7", "--out"])
        .arg(tmp.path().join("out"))
        .env("SWD_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(fs::read_dir(&cache).unwrap().count() > 0);
}

#[test]
fn large_r_needs_opt_in() {
    let tmp = tempfile::tempdir().unwrap();
    let out = swd(&["verify", "--n", "2", "--r", "8", "--field", "gf:17", "--no-cache", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--allow-large-r"));
}

#[test]
fn unknown_check_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let out = verify_gf7(tmp.path(), &["--no-cache", "--checks", "lie,bogus"]);
    assert_eq!(out.status.code(), Some(2));
}
