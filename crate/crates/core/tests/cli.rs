//! End-to-end runs of the `growthmeter` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use growthmeter::measurement::{growth_series, BasePolicy};
use growthmeter::report::read_records_csv;
use growthmeter::scenario::{builtin_scenario, BUILTINS};

const SCENARIO: &str = r#"{
  "name": "two-sector",
  "start_year": 2000,
  "economy": {
    "sectors": [
      { "name": "farm", "subsistence": 1.2, "omega": 1.0, "tech": 1.0 },
      { "name": "shop", "lambda": 0.6, "subsistence": 0.0, "omega": 3.0, "tech": 1.0 }
    ],
    "total_labor": 5000
  },
  "schedules": {
    "farm": { "kind": "constant", "rate": 0.04 },
    "shop": { "kind": "ramp_up", "peak": 0.03, "span": 20 }
  },
  "years": 20,
  "policies": ["chained", "fixed:2000", "lagged:5"],
  "outputs": ["records", "growth", "labor_shares"]
}"#;

fn growthmeter(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_growthmeter"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn write_scenario(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("scenario.json");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn list_prints_every_builtin() {
    let tmp = tempfile::tempdir().unwrap();
    let out = growthmeter(&["list"], tmp.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().collect::<Vec<_>>(), BUILTINS);
}

#[test]
fn run_is_byte_identical_across_invocations() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_scenario(tmp.path(), SCENARIO);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let out = growthmeter(&["run", cfg.to_str().unwrap(), "--svg"], dir);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let mut names: Vec<_> = fs::read_dir(&a)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "growth.csv",
            "growth.svg",
            "labor_shares.csv",
            "labor_shares.svg",
            "records.csv"
        ]
    );
    for name in names {
        assert_eq!(
            fs::read(a.join(&name)).unwrap(),
            fs::read(b.join(&name)).unwrap(),
            "{name:?}"
        );
    }
}

#[test]
fn records_round_trip_reproduces_growth() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_scenario(tmp.path(), SCENARIO);
    assert!(growthmeter(&["run", cfg.to_str().unwrap()], tmp.path())
        .status
        .success());

    let (sectors, records) =
        read_records_csv(fs::File::open(tmp.path().join("records.csv")).unwrap()).unwrap();
    assert_eq!(sectors, ["farm", "shop"]);
    assert_eq!(records.len(), 21);

    let mut rdr = csv::Reader::from_path(tmp.path().join("growth.csv")).unwrap();
    let mut checked = 0;
    for row in rdr.records() {
        let row = row.unwrap();
        let year: i32 = row[0].parse().unwrap();
        let policy: BasePolicy = row[1].parse().unwrap();
        let g: f64 = row[2].parse().unwrap();
        let recomputed = growthmeter::measurement::growth_rate(&records, year, policy).unwrap();
        assert!(
            (recomputed - g).abs() <= 1e-12 * (1.0 + g.abs()),
            "{year} {policy}: {g} vs {recomputed}"
        );
        checked += 1;
    }
    // 20 chained + 20 fixed + 16 lagged(5) years.
    assert_eq!(checked, 56);
    assert!(growth_series(&records, BasePolicy::Chained).is_ok());
}

#[test]
fn empty_policy_list_writes_records_only() {
    let tmp = tempfile::tempdir().unwrap();
    let text = SCENARIO.replace(r#"["chained", "fixed:2000", "lagged:5"]"#, "[]");
    let cfg = write_scenario(tmp.path(), &text);
    let out = growthmeter(&["run", cfg.to_str().unwrap()], &tmp.path().join("o"));
    assert!(out.status.success());
    let mut names: Vec<_> = fs::read_dir(tmp.path().join("o"))
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names, ["labor_shares.csv", "records.csv"]);
}

#[test]
fn invalid_config_names_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        (
            SCENARIO.replace(r#""lambda": 0.6"#, r#""lambda": 1.5"#),
            "economy.sectors[1].lambda",
        ),
        (
            SCENARIO.replace(r#""tech": 1.0 }"#, r#""tech": "x" }"#),
            "economy.sectors[0].tech",
        ),
        (SCENARIO.replace("fixed:2000", "fixed:1990"), "policies[1]"),
        (
            SCENARIO.replace("\"years\": 20", "\"years\": 20, \"colour\": 1"),
            "colour",
        ),
    ];
    for (text, field) in cases {
        let cfg = write_scenario(tmp.path(), &text);
        let out = growthmeter(&["run", cfg.to_str().unwrap()], &tmp.path().join("bad"));
        assert!(!out.status.success());
        let stderr = String::from_utf8(out.stderr).unwrap();
        assert!(stderr.contains(field), "expected '{field}' in: {stderr}");
    }
}

#[test]
fn unknown_builtin_fails() {
    let tmp = tempfile::tempdir().unwrap();
    let out = growthmeter(&["builtin", "atlantis"], tmp.path());
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("atlantis"));
}

#[test]
fn policies_flag_overrides_config() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_scenario(tmp.path(), SCENARIO);
    let out = growthmeter(
        &[
            "run",
            cfg.to_str().unwrap(),
            "--policies",
            "fixed:2010,lagged:2",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    let text = fs::read_to_string(tmp.path().join("growth.csv")).unwrap();
    assert!(text.contains(",fixed:2010,") && text.contains(",lagged:2,"));
    assert!(!text.contains(",chained,"));
}

#[test]
fn builtin_exp1_north_reports_mean_growth() {
    let tmp = tempfile::tempdir().unwrap();
    let out = growthmeter(&["builtin", "exp1-north", "--svg"], tmp.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("chained"), "{stdout}");
    let dir = tmp.path().join("exp1-north");
    for f in [
        "records.csv",
        "growth.csv",
        "labor_shares.csv",
        "inflation.csv",
        "growth.svg",
    ] {
        assert!(dir.join(f).exists(), "{f}");
    }
    let (_, records) = read_records_csv(fs::File::open(dir.join("records.csv")).unwrap()).unwrap();
    let gs = growth_series(&records, BasePolicy::Chained).unwrap();
    let mean = growthmeter::measurement::geometric_mean_growth(&gs);
    assert!((mean - 0.030).abs() < 0.002, "{mean}");
}

#[test]
fn builtin_demos_run() {
    let tmp = tempfile::tempdir().unwrap();
    for (name, file) in [
        ("kaldor-demo", "kaldor.csv"),
        ("curl-demo", "curl.csv"),
        ("ppp-demo", "ppp_1949.csv"),
    ] {
        let out = growthmeter(&["builtin", name], tmp.path());
        assert!(
            out.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(tmp.path().join(name).join(file).exists());
    }
}

#[test]
fn builtin_scenarios_round_trip_through_json() {
    for name in &BUILTINS[..5] {
        let cfg = builtin_scenario(name).unwrap();
        let back = growthmeter::scenario::ScenarioConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, back);
    }
}
