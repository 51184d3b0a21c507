use cusp_bidisk::hardy::OperatorMatrix;
use std::path::Path;
use std::process::{Command, Output};

const SMALL: &str = "\
# reduced counts
k_sample_count = 10000
calibration_count = 20000
sample_count = 10000
trial_count = 50
covering_ns = 10,100
codim_ns = 10,100,1000
";

fn bin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cusp-bidisk"))
        .args(args)
        .current_dir(dir)
        .env_remove("CUSP_BIDISK_OUT_DIR")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn small_config(dir: &Path) -> String {
    let p = dir.join("small.cfg");
    std::fs::write(&p, SMALL).unwrap();
    p.to_str().unwrap().to_string()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|t| t.parse().unwrap_or(f64::NAN)).collect())
        .collect()
}

#[test]
fn map_eval_known_points() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let o = bin(dir.path(), &["--config", &cfg, "map-eval", "--point", "1+0i", "--point", "-1+0i", "--out", "o"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("o/map_eval.csv")).unwrap();
    assert!(text.starts_with("# config_hash="));
    let r = rows(&text);
    assert_eq!((r[0][4], r[0][5]), (1.0, 0.0));
    assert!(r[1][4].abs() < 1e-15 && r[1][5].abs() < 1e-15);
}

#[test]
fn map_eval_extended_precision_agrees() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("pts.txt"), "# points\n0.3-0.2i\n0.999,0.001 0.5i\n").unwrap();
    let a = bin(dir.path(), &["--symbol", "diagonal", "map-eval", "--input", "pts.txt", "--out", "a"]);
    std::fs::write(dir.path().join("ext.cfg"), "precision = extended\nsymbol = diagonal\n").unwrap();
    let b = bin(dir.path(), &["--config", "ext.cfg", "map-eval", "--input", "pts.txt", "--out", "b"]);
    assert_eq!((code(&a), code(&b)), (0, 0));
    let ra = rows(&std::fs::read_to_string(dir.path().join("a/map_eval.csv")).unwrap());
    let rb = rows(&std::fs::read_to_string(dir.path().join("b/map_eval.csv")).unwrap());
    for (x, y) in ra.iter().flatten().zip(rb.iter().flatten()) {
        assert!((x - y).abs() < 1e-13);
    }
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(dir.path(), &["map-eval", "--point", "abc", "--out", "o"]);
    assert_eq!(code(&o), 2);
    std::fs::write(dir.path().join("bad.txt"), "0.1\n\n0.2+zz\n").unwrap();
    let o = bin(dir.path(), &["map-eval", "--input", "bad.txt", "--out", "o"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    std::fs::write(dir.path().join("bad.cfg"), "degree = 8\ncolour = blue\n").unwrap();
    let o = bin(dir.path(), &["--config", "bad.cfg", "matrix"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&bin(dir.path(), &["--symbol", "scaled:2", "matrix"])), 2);
    assert_eq!(code(&bin(dir.path(), &["--degree", "8", "--quad", "16", "matrix"])), 2);
    assert_eq!(code(&bin(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&bin(dir.path(), &["--help"])), 0);
}

#[test]
fn verify_zero_samples_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("z.cfg"), "sample_count = 0\n").unwrap();
    assert_eq!(code(&bin(dir.path(), &["--config", "z.cfg", "verify"])), 2);
}

#[test]
fn verify_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let a = bin(dir.path(), &["--config", &cfg, "--seed", "42", "verify", "--out", "a"]);
    let b = bin(dir.path(), &["--config", &cfg, "--seed", "42", "verify", "--out", "b"]);
    assert_eq!((code(&a), code(&b)), (0, 0), "{}", String::from_utf8_lossy(&a.stdout));
    let ja = std::fs::read(dir.path().join("a/verify.json")).unwrap();
    let jb = std::fs::read(dir.path().join("b/verify.json")).unwrap();
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["pass"], true);
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn calibrate_then_reuse_params() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let o = bin(dir.path(), &["--config", &cfg, "calibrate", "--out", "o"]);
    assert_eq!(code(&o), 0);
    let pf: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/params.json")).unwrap()).unwrap();
    let c = pf["params"]["c"].as_f64().unwrap();
    assert!(c > 0.0 && c < 0.01);
    let reuse = dir.path().join("reuse.cfg");
    std::fs::write(&reuse, format!("{SMALL}params_file = o/params.json\nmatrix_csv = true\n")).unwrap();
    let o = bin(dir.path(), &["--config", reuse.to_str().unwrap(), "--degree", "4", "--quad", "64", "matrix", "--out", "m"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (h, m) = OperatorMatrix::read_binary(dir.path().join("m/matrix.cbom")).unwrap();
    assert_eq!((h.max_degree, h.dim, m.nrows()), (4, 25, 25));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("m/matrix.json")).unwrap()).unwrap();
    assert_eq!(summary["config_hash"].as_str().unwrap(), h.config_hash);
    assert!(std::fs::read_to_string(dir.path().join("m/matrix.csv")).unwrap().contains("# config_hash="));
}

#[test]
fn calibration_failure_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.cfg"), "c = 0.9\nk_hat = 2.36\ncalibration_count = 1000\n").unwrap();
    let o = bin(dir.path(), &["--config", "c.cfg", "calibrate", "--out", "o"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn spectrum_scaled_symbol_and_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(dir.path(), &["--symbol", "scaled:0.5", "--degree", "12", "--quad", "256", "spectrum", "--out", "s"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("s/spectrum.json")).unwrap()).unwrap();
    let tau = v["main"]["tau"].as_f64().unwrap();
    assert!(tau > 0.0);
    assert!(v["beta2_plus"].as_f64().unwrap() < 1.0);
    let o = bin(dir.path(), &["--symbol", "scaled:1", "--degree", "4", "--quad", "64", "spectrum", "--out", "t"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("usable"));
    assert!(dir.path().join("t/spectrum.json").exists());
}

#[test]
fn out_dir_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_cusp-bidisk"));
        c.args(args).current_dir(dir.path()).env_remove("CUSP_BIDISK_OUT_DIR");
        if let Some(e) = env {
            c.env("CUSP_BIDISK_OUT_DIR", e);
        }
        code(&c.output().unwrap())
    };
    std::fs::write(dir.path().join("o.cfg"), "out_dir = from_file\n").unwrap();
    assert_eq!(run(None, &["--config", "o.cfg", "map-eval", "--point", "0"]), 0);
    assert!(dir.path().join("from_file/map_eval.csv").exists());
    assert_eq!(run(Some("from_env"), &["--config", "o.cfg", "map-eval", "--point", "0"]), 0);
    assert!(dir.path().join("from_env/map_eval.csv").exists());
    assert_eq!(run(Some("from_env"), &["--config", "o.cfg", "map-eval", "--point", "0", "--out", "from_flag"]), 0);
    assert!(dir.path().join("from_flag/map_eval.csv").exists());
}

#[test]
fn report_aggregates_previous_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    assert_eq!(code(&bin(dir.path(), &["--config", &cfg, "calibrate", "--out", "r"])), 0);
    let o = bin(dir.path(), &["--config", &cfg, "--degree", "8", "--quad", "256", "report", "--out", "r"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r/report.json")).unwrap()).unwrap();
    assert!(v["previous"]["params.json"].is_object());
    assert!(v["i0_regression"]["slope"].as_f64().unwrap() < 0.0);
    assert_eq!(v["windows"].as_array().unwrap().len(), 36);
}
