use mcwave_bench::output::sha256_hex;
use std::fs;
use std::path::Path;
use std::process::Command;

fn mcwave() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mcwave"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn negative_trials_exit_with_validation_status() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "bad.toml", "kind = \"ber\"\nseed = 1\ntrials = -3\n");
    let out = mcwave().arg("run").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trials"));
}

#[test]
fn unknown_keys_are_hard_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "typo.toml", "kind = \"ber\"\nseed = 1\ntrials = 3\ntrails = 4\n");
    let out = mcwave().arg("validate").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trails"));
}

#[test]
fn otsm_with_odd_slots_names_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "otsm.toml",
        "kind = \"ber\"\nseed = 1\ntrials = 3\n[waveforms]\nschemes = [\"otsm\"]\nn_2d = 12\n",
    );
    let out = mcwave().arg("validate").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("waveforms.n_2d"));
}

#[test]
fn runtime_failures_use_status_three() {
    let tmp = tempfile::tempdir().unwrap();
    // A prefix shorter than the EVA delay spread is only detected while simulating.
    let cfg = write(
        tmp.path(),
        "short_cp.toml",
        "kind = \"ber\"\nseed = 1\ntrials = 2\n[waveforms]\nschemes = [\"ofdm\"]\nm = 64\ndelta_f_hz = 48000.0\nprefix_len = 1\n[channel]\npreset = \"eva\"\n",
    );
    let out = mcwave().arg("run").arg(&cfg).arg("--out").arg(tmp.path().join("o")).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn presets_listing_mentions_anchors() {
    let out = mcwave().arg("presets").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in mcwave_bench::presets::PRESETS.iter().map(|p| p.name) {
        assert!(text.contains(name));
    }
    assert!(text.contains("fig21-sweep") && text.contains("M = 128") && text.contains("QPSK"));
    assert!(text.contains("24 GHz") && text.contains("3.072 MHz") && text.contains("540 km/h"));
}

#[test]
fn every_preset_validates_from_the_command_line() {
    for p in mcwave_bench::presets::PRESETS {
        let out = mcwave().args(["validate", "--preset", p.name]).output().unwrap();
        assert!(out.status.success(), "{}: {}", p.name, String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn fig17_desk_writes_one_csv_per_scheme_and_a_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let out = mcwave()
        .args(["run", "--preset", "fig17-desk", "--trials", "2"])
        .env("MCWAVE_OUT_DIR", tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let dir = tmp.path().join("fig17-desk");
    for s in ["scm", "ofdm", "ocdm", "afdm", "mc-otfs", "otsm"] {
        let name = format!("ber_{s}.csv");
        let body = fs::read_to_string(dir.join(&name)).unwrap_or_else(|_| panic!("missing {name}"));
        assert!(body.starts_with("snr_db,bit_errors,bits,ber\n"));
        assert_eq!(body.lines().count(), 10);
    }
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    for (name, hash) in manifest["outputs"].as_object().unwrap() {
        assert_eq!(hash.as_str().unwrap(), sha256_hex(&fs::read(dir.join(name)).unwrap()));
    }
    let digests = manifest["derived"]["stream_digests"].as_object().unwrap();
    let first = digests.values().next().unwrap();
    assert!(digests.values().all(|d| d == first));
    assert_eq!(manifest["derived"]["sample_rate_1d_hz"].as_f64(), Some(3.072e6));
}

#[test]
fn tab8_unit_has_one_row_per_scheme_and_six_metrics() {
    let tmp = tempfile::tempdir().unwrap();
    let out = mcwave()
        .args(["run", "--preset", "tab8-unit", "--out"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = fs::read_to_string(tmp.path().join("af_metrics.csv")).unwrap();
    let mut lines = body.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    for col in ["delta_tau_3db", "delta_nu_3db", "pslr_tau_db", "islr_tau_db", "pslr_nu_db", "islr_nu_db"] {
        assert!(header.contains(&col));
    }
    let schemes: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(schemes, ["SCM", "OFDM", "OCDM", "MC-OTFS", "AFDM"]);
}

#[test]
fn config_files_round_trip_through_the_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let out = mcwave()
        .args(["run", "--preset", "overhead", "--out"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("manifest.json")).unwrap()).unwrap();
    let snapshot = write(tmp.path(), "again.toml", manifest["config_toml"].as_str().unwrap());
    let out2 = mcwave().arg("run").arg(&snapshot).arg("--out").arg(tmp.path().join("b")).output().unwrap();
    assert!(out2.status.success());
    for name in ["overhead.csv", "pilot_overhead.csv"] {
        assert_eq!(
            fs::read(tmp.path().join(name)).unwrap(),
            fs::read(tmp.path().join("b").join(name)).unwrap()
        );
    }
    let pilots = fs::read_to_string(tmp.path().join("pilot_overhead.csv")).unwrap();
    assert!(pilots.contains("AFDM,8,4,0,1024,161,"));
    assert!(pilots.contains("OTFS,8,4,0,1024,289,"));
}
