use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_band-kernel"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("band-kernel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json_of(args: &[&str], name: &str) -> Value {
    let path = scratch(name);
    let out = bin().arg("--json").arg(&path).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["null", "--band", "trop", "--sum", "2,2,1"]).status.code(), Some(0));
    assert_eq!(run(&["null", "--band", "nope", "--sum", "1"]).status.code(), Some(2));
    assert_eq!(run(&["morphism", "--name", "sign", "--field", "field:Q-padic:3"]).status.code(), Some(2));
    assert_eq!(run(&["separate", "--points", "1/2,2/3", "--budget", "2"]).status.code(), Some(1));
    assert_eq!(run(&["separate", "--points", "1/2,2/3"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn null_and_neg_answers() {
    let out = run(&["null", "--band", "trop", "--sum", "2,2,1"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("true"));
    let out = run(&["null", "--band", "sign", "--sum", "1,1"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("false"));
    let out = run(&["neg", "--band", "ring:Z/6", "--elem", "2"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains('4'));
}

#[test]
fn spec_json_round_trips() {
    let v = json_of(&["spec", "--band", "f1pm[x,y]"], "spec.json");
    assert_eq!(v["schema"], "band-kernel/1");
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
    let space: band_kernel::spectra::SpecSpace = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&space).unwrap()["points"], v["points"]);
}

#[test]
fn integers_honor_prime_bound() {
    let v = json_of(&["--prime-bound", "3", "spec", "--band", "ring:Z"], "z.json");
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
}

#[test]
fn separation_preset() {
    let v = json_of(&["separate", "--preset", "a1-pm1"], "sep.json");
    assert_eq!(v["embedding"], "(t, t + 1)");
    assert_eq!(v["tier"], 1);
}

#[test]
fn trop_curve_writes_svg() {
    let svg = scratch("line.svg");
    let out = bin()
        .args(["trop-curve", "--field", "field:Q-trivial", "--poly", "x + y + 1", "--svg"])
        .arg(&svg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(svg).unwrap();
    assert!(text.starts_with("<svg") && !text.contains("href"));
}

#[test]
fn config_file_sets_the_seed() {
    let cfg = scratch("run.toml");
    std::fs::write(&cfg, "seed = 42\nmax_len = 4\n").unwrap();
    let v = json_of(&["--config", cfg.to_str().unwrap(), "axioms", "--band", "rtrop", "--samples", "50"], "cfg.json");
    assert_eq!(v["seed"], 42);
    std::fs::write(&cfg, "sed = 1\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "axioms", "--band", "sign"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn same_seed_same_bytes() {
    let args =
        ["--seed", "5", "morphism", "--name", "signed-valuation", "--field", "field:Qt-tadic", "--samples", "80"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c =
        run(&["--seed", "6", "morphism", "--name", "signed-valuation", "--field", "field:Qt-tadic", "--samples", "80"]);
    assert_ne!(a.stdout, c.stdout);
}
