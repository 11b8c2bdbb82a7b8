//! End-to-end behaviour of the `quadweb` binary and the search driver.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Duration;

use quadweb::{read_input, run_fiber, run_search_with, SearchConfig, WebInputFile, EXIT_INPUT_ERROR};
use quadweb_core::webquadrics::fixtures::{COLLINEAR_QUADRUPLE_WEB, RANK_FIVE_WEB};
use quadweb_core::webquadrics::FiberType;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn quadweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadweb")).args(args).env_remove("QUADWEB_TIMEOUT").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn enum_contracted_is_byte_identical_across_runs() {
    let a = quadweb(&["enum-contracted"]);
    let b = quadweb(&["enum-contracted"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with('(')).collect();
    assert_eq!(rows.len(), 4, "{text}");
    assert!(rows[3].contains("(2,1,1,1,1,1,1,1,1,1)"));
}

#[test]
fn malformed_inputs_exit_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut asym = RANK_FIVE_WEB;
    asym[1][0][3] += 1;
    let cases = [
        ("asymmetric.json", serde_json::to_string(&WebInputFile::new(&asym)).unwrap()),
        ("truncated.json", "{\"matrices\": [[[1, 2]".to_string()),
        ("unknown_key.json", "{\"matrices\": [], \"colour\": 1}".to_string()),
        ("three_members.json", serde_json::json!({ "matrices": &RANK_FIVE_WEB[..3] }).to_string()),
    ];
    for (name, body) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let out = quadweb(&["analyze", path.to_str().unwrap()]);
        assert_eq!(code(&out), EXIT_INPUT_ERROR, "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
    let missing = quadweb(&["analyze", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(code(&missing), EXIT_INPUT_ERROR);
}

#[test]
fn usage_errors_exit_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    assert_eq!(code(&quadweb(&["search", "--trials", "0", "--out-dir", out_dir])), EXIT_INPUT_ERROR);
    let rank_five = fixture("rank_five_member.json");
    assert_eq!(code(&quadweb(&["analyze", rank_five.to_str().unwrap(), "--prime", "7", "--rational"])), EXIT_INPUT_ERROR);
    assert_eq!(code(&quadweb(&["analyze", rank_five.to_str().unwrap(), "--prime", "seven"])), EXIT_INPUT_ERROR);
    assert_eq!(code(&quadweb(&["--help"])), 0);
}

#[test]
fn collinear_fixture_fails_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert.json");
    let run = quadweb(&["analyze", fixture("collinear_quadruple.json").to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(code(&run), 2, "{}", String::from_utf8_lossy(&run.stderr));
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(cert["verdict"], "fails");
    assert_eq!(cert["assumptions"]["a2"]["status"], "fails");
    assert_eq!(cert["schema_version"], 1);
    assert!(cert["run"]["timestamp_unix"].as_u64().unwrap() > 0);
}

#[test]
fn fiber_subcommand() {
    let path = fixture("rank_five_member.json");
    let p = path.to_str().unwrap();
    let special = quadweb(&["fiber", p, "--y", "1,0,0,0"]);
    assert_eq!(code(&special), 0);
    let line = String::from_utf8(special.stdout).unwrap();
    assert!(line.starts_with("type a (rank Q = 5, rank B = 2)"), "{line}");
    let generic = quadweb(&["fiber", p, "--y", "3,-1,4,1"]);
    assert!(String::from_utf8(generic.stdout).unwrap().starts_with("type d"));
    assert_eq!(code(&quadweb(&["fiber", p, "--y", "0,0,0,0"])), EXIT_INPUT_ERROR);
    assert_eq!(code(&quadweb(&["fiber", p, "--y", "1,2,3"])), EXIT_INPUT_ERROR);

    let input = read_input(&path).unwrap();
    let (_, report) = run_fiber(&input, &[1, 0, 0, 0]).unwrap();
    let report = report.unwrap();
    assert_eq!(report.fiber_type, FiberType::A);
    assert_eq!(report.plane_cubic.unwrap().factor_degrees.iter().sum::<usize>(), 3);
}

#[test]
fn search_keeps_compliant_webs_and_counts_rejections() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SearchConfig {
        trials: 2,
        entry_bound: 4,
        seed: 8,
        jobs: 1,
        out_dir: dir.path().join("found"),
        timeout: Duration::from_secs(600),
    };
    let summary = run_search_with(&cfg, |t| if t == 0 { RANK_FIVE_WEB } else { COLLINEAR_QUADRUPLE_WEB }).unwrap();
    assert_eq!(summary.found, 1);
    assert_eq!(summary.rejections.get("a2"), Some(&1));
    let kept = PathBuf::from(summary.outcomes[0].input_file.as_ref().unwrap());
    let name = kept.file_name().unwrap().to_str().unwrap();
    assert!(name.starts_with("web-") && name.ends_with("-seed8-trial000000.json"), "{name}");
    assert_eq!(read_input(&kept).unwrap().to_web().unwrap(), RANK_FIVE_WEB);
    assert!(kept.with_file_name(name.replace(".json", ".certificate.json")).exists());
    assert!(cfg.out_dir.join("summary.json").exists());

    let zero = SearchConfig { trials: 0, ..cfg.clone() };
    assert!(run_search_with(&zero, |_| RANK_FIVE_WEB).is_err());
    let blocked = SearchConfig { out_dir: kept.clone(), ..cfg };
    assert!(run_search_with(&blocked, |_| RANK_FIVE_WEB).is_err());
}
