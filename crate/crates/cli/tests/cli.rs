use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_auger");

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn auger(args: &[&str], out: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("AUGER_SEED")
        .env_remove("AUGER_TABLE")
        .env_remove("AUGER_SVG")
        .output()
        .expect("binary runs")
}

fn ok(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn err(o: &Output) -> String {
    assert!(!o.status.success());
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn water_workload_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("h2o.json");
    let cfg = cfg.to_str().unwrap();
    ok(&auger(&["scf", "--config", cfg], dir.path()));
    let stdout = ok(&auger(&["workload", "--config", cfg], dir.path()));
    assert!(stdout.contains("N_eval,M = 199 + 3144 = 3343"), "{stdout}");
    assert!(stdout.contains("= 43896"), "{stdout}");
    assert!(stdout.contains("N_eval = 47239"), "{stdout}");
    let w: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("workload.json")).unwrap()).unwrap();
    assert_eq!(w["total"], 47239);
}

#[test]
fn lih_all_writes_xas_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("lih.json");
    let cfg = cfg.to_str().unwrap();
    ok(&auger(&["all", "--config", cfg], dir.path()));
    let sticks = std::fs::read_to_string(dir.path().join("xas_sticks.csv")).unwrap();
    assert!(sticks.lines().count() > 1);
    let svg = std::fs::read_to_string(dir.path().join("xas.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seeds"]["vqe"], 7);
    assert!(manifest["stages"]["xas"]["artifacts"]["xas_sticks.csv"].is_string());

    let again = tempfile::tempdir().unwrap();
    ok(&auger(&["--stage", "all", "--config", cfg], again.path()));
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let name = entry.unwrap().file_name();
        let a = std::fs::read(dir.path().join(&name)).unwrap();
        let b = std::fs::read(again.path().join(&name)).unwrap();
        assert!(a == b, "{name:?} differs between runs");
    }
}

#[test]
fn deleted_downstream_artifact_regenerates_alone() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("lih.json");
    let cfg = cfg.to_str().unwrap();
    ok(&auger(&["all", "--config", cfg], dir.path()));
    let scf_before = std::fs::read(dir.path().join("scf.json")).unwrap();
    let xas_before = std::fs::read(dir.path().join("xas_sticks.csv")).unwrap();
    std::fs::remove_file(dir.path().join("xas_sticks.csv")).unwrap();
    std::fs::remove_file(dir.path().join("scf.json")).unwrap();
    // xas reads the ground and qsceom artifacts, but also the SCF orbitals
    let e = err(&auger(&["xas", "--config", cfg], dir.path()));
    assert!(e.contains("auger scf"), "{e}");
    ok(&auger(&["scf", "--config", cfg], dir.path()));
    assert_eq!(std::fs::read(dir.path().join("scf.json")).unwrap(), scf_before);
    ok(&auger(&["xas", "--config", cfg], dir.path()));
    assert_eq!(std::fs::read(dir.path().join("xas_sticks.csv")).unwrap(), xas_before);
}

#[test]
fn missing_upstream_stage_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("lih.json");
    let cfg = cfg.to_str().unwrap();
    let e = err(&auger(&["ground", "--config", cfg], dir.path()));
    assert!(e.contains("`scf` stage") && e.contains("auger scf --config"), "{e}");
    ok(&auger(&["scf", "--config", cfg], dir.path()));
    let e = err(&auger(&["qsceom", "--config", cfg], dir.path()));
    assert!(e.contains("auger ground"), "{e}");
}

#[test]
fn seed_override_invalidates_upstream_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("lih.json");
    let cfg = cfg.to_str().unwrap();
    ok(&auger(&["scf", "--config", cfg], dir.path()));
    let e = err(&auger(&["ground", "--config", cfg, "--seed", "99"], dir.path()));
    assert!(e.contains("auger scf"), "{e}");
}

#[test]
fn invalid_irrep_is_rejected_before_computing() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(config("lih.json")).unwrap().replacen("\"B1\"", "\"Eg\"", 1);
    let bad = dir.path().join("bad.json");
    // keep relative paths resolvable
    let text = text.replace("../data", config("").join("../data").to_str().unwrap());
    std::fs::write(&bad, text).unwrap();
    let out = dir.path().join("out");
    let e = err(&auger(&["all", "--config", bad.to_str().unwrap()], &out));
    assert!(e.contains("schema") && e.contains("Eg"), "{e}");
    assert!(!out.exists());
}

#[test]
fn wrong_irrep_count_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(config("lih.json")).unwrap().replacen("\"B1\", ", "", 1);
    let text = text.replace("../data", config("").join("../data").to_str().unwrap());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, text).unwrap();
    let e = err(&auger(&["scf", "--config", bad.to_str().unwrap()], &dir.path().join("out")));
    assert!(e.contains("5 irrep labels") && e.contains("6 orbitals"), "{e}");
}

#[test]
fn auger_without_table_section_fails_clearly() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("lih.json");
    let e = err(&auger(&["auger", "--config", cfg.to_str().unwrap()], dir.path()));
    assert!(e.contains("`auger` section"), "{e}");
}

#[test]
fn external_proposer_session_sets_the_ground_state() {
    use std::io::{BufRead, BufReader, Write};
    use std::process::Stdio;

    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(config("lih.json"))
        .unwrap()
        .replace("\"method\": \"vqe\"", "\"method\": \"external-proposer\"")
        .replace("../data", config("").join("../data").to_str().unwrap());
    let cfg = dir.path().join("proposer.json");
    std::fs::write(&cfg, text).unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = dir.path().join("out");
    ok(&auger(&["scf", "--config", cfg], &out));
    let mut child = Command::new(BIN)
        .args(["ground", "--config", cfg, "--listen", "127.0.0.1:0", "--out"])
        .arg(&out)
        .stderr(Stdio::piped())
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    let mut banner = String::new();
    BufReader::new(child.stderr.take().unwrap()).read_line(&mut banner).unwrap();
    let addr = banner.split_whitespace().nth(3).expect("address in banner").to_string();
    let mut stream = std::net::TcpStream::connect(addr).unwrap();
    let mut reader = BufReader::new(stream.try_clone().unwrap());
    let mut ask = |line: &str| {
        writeln!(stream, "{line}").unwrap();
        let mut reply = String::new();
        reader.read_line(&mut reply).unwrap();
        serde_json::from_str::<serde_json::Value>(&reply).unwrap()
    };
    assert_eq!(ask(r#"{"op":"pool_info"}"#)["depth_hint"], 60);
    let e = ask(r#"{"op":"evaluate","sequences":[[3,40,3],[17]]}"#);
    let best = e["energies"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).fold(f64::INFINITY, f64::min);
    assert_eq!(ask(r#"{"op":"shutdown"}"#)["ok"], true);
    assert!(child.wait().unwrap().success());
    let g: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("ground.json")).unwrap()).unwrap();
    assert_eq!(g["method"], "external-proposer");
    assert_eq!(g["energy"].as_f64().unwrap(), best);
    assert!(g["tokens"].as_array().unwrap().len() <= 3);
    assert_eq!(g["evaluations"], 2);
}
