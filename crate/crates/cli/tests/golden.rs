//! Golden-file checks for the `generate` subcommand.
//!
//! Run with `GEOVQA_BLESS=1` to (re)create the fixture collections and the
//! expected outputs under `tests/fixtures`.

use std::path::{Path, PathBuf};
use std::process::Command;

use geovqa_core::geom::Rect;
use geovqa_core::ingest::write_collection;
use geovqa_core::synth::{synthetic_city, SynthConfig};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn blessing() -> bool {
    std::env::var_os("GEOVQA_BLESS").is_some()
}

fn ensure_collection(name: &str, cfg: SynthConfig) -> PathBuf {
    let path = fixtures().join(name);
    if blessing() && !path.exists() {
        write_collection(&synthetic_city(&cfg), &path).unwrap();
    }
    assert!(
        path.exists(),
        "missing fixture {}; run with GEOVQA_BLESS=1",
        path.display()
    );
    path
}

pub fn lr_collection() -> PathBuf {
    ensure_collection(
        "city_lr.geojson",
        SynthConfig::new(Rect::new(0.0, 0.0, 7680.0, 5120.0), 900, 21, 40.0),
    )
}

pub fn hr_collection() -> PathBuf {
    ensure_collection(
        "city_hr.geojson",
        SynthConfig::new(Rect::new(0.0, 0.0, 153.6, 153.6), 400, 22, 4.0),
    )
}

fn generate(geo: &Path, profile: &str, out: &Path) {
    let status = Command::new(env!("CARGO_BIN_EXE_geovqa"))
        .arg("generate")
        .arg("--geo")
        .arg(geo)
        .arg("--profile")
        .arg(fixtures().join(profile))
        .arg("--out")
        .arg(out)
        .status()
        .unwrap();
    assert!(status.success());
}

fn check_golden(geo: PathBuf, profile: &str, golden: &str) {
    let dir = tempfile::tempdir().unwrap();
    generate(&geo, profile, dir.path());
    let golden = fixtures().join(golden);
    for name in ["triplets.jsonl", "manifest.json", "report.json"] {
        let produced = std::fs::read(dir.path().join(name)).unwrap();
        let expected_path = golden.join(name);
        if blessing() {
            std::fs::create_dir_all(&golden).unwrap();
            std::fs::write(&expected_path, &produced).unwrap();
            continue;
        }
        let expected = std::fs::read(&expected_path)
            .unwrap_or_else(|_| panic!("missing {}; run with GEOVQA_BLESS=1", expected_path.display()));
        assert!(produced == expected, "{name} differs from {}", expected_path.display());
    }
}

#[test]
fn low_resolution_golden() {
    check_golden(lr_collection(), "lr.toml", "golden_lr");
}

#[test]
fn high_resolution_golden() {
    check_golden(hr_collection(), "hr.toml", "golden_hr");
}
