use std::io::Write;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_superspectral"));
    c.env_remove("SUPER_SPECTRAL_SEED");
    c
}

fn stdout(c: &mut Command) -> (bool, String) {
    let out = c.output().expect("binary runs");
    (out.status.success(), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn verify_report_matches_golden_file() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/verify.json");
    let (ok, out) = stdout(bin().args(["verify", "--json", "--no-timing"]));
    assert!(ok);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, &out).unwrap();
    }
    assert_eq!(out, std::fs::read_to_string(&golden).unwrap());
}

#[test]
fn seed_override_changes_report_seed() {
    let (_, out) = stdout(bin().args(["verify", "--json", "--no-timing", "--only", "clifford"]).env("SUPER_SPECTRAL_SEED", "17"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 17);
}

#[test]
fn config_file_is_read() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "ko_dimension = 4\nseed = 3").unwrap();
    let (ok, out) = stdout(bin().arg("--config").arg(f.path()).arg("fluctuate"));
    assert!(ok);
    assert!(out.starts_with("KO-4: obstruction"));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "seed: 3").unwrap();
    let out = bin().arg("--config").arg(bad.path()).arg("fluctuate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fluctuate_ko6_prints_potential() {
    let (ok, out) = stdout(bin().args(["fluctuate", "--ko", "6"]));
    assert!(ok);
    assert!(out.contains("A_0 = (0+1i) a[1] b[1];0 + (0-1i) a[2] b[2];0"));
    let (_, out) = stdout(bin().args(["fluctuate", "--ko", "4", "--json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "obstruction");
}

#[test]
fn action_outputs() {
    for which in ["chiral", "fermionic", "spectral"] {
        let (ok, out) = stdout(bin().args(["action", "--which", which, "--json"]));
        assert!(ok, "{which}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(!v["terms"].as_array().unwrap().is_empty());
    }
    let (_, tex) = stdout(bin().args(["action", "--which", "spectral", "--tex"]));
    assert!(tex.contains("\\mathsf{B}"));
}

#[test]
fn distance_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"n":3,"d":[[[0,0],[0.5,0],[0,0]],[[0.5,0],[0,0],[0,1]],[[0,0],[0,1],[0,0]]]}}"#).unwrap();
    let (ok, out) = stdout(bin().args(["distance", "--json", "--in"]).arg(f.path()));
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let d: Vec<f64> = v["pairs"].as_array().unwrap().iter().map(|p| p["distance"]["finite"].as_f64().unwrap()).collect();
    assert_eq!(d, vec![2.0, 3.0, 1.0]);
}
