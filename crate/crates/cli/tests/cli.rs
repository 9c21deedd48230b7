use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use spincnn::{glyph, Pattern, TemplateSet};
use tempfile::TempDir;

fn spincnn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spincnn"))
        .args(args)
        .env_remove("SPINCNN_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Work(TempDir);

impl Work {
    fn new() -> Self {
        Work(tempfile::tempdir().unwrap())
    }
    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
    fn arg(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }
    fn write_pattern(&self, name: &str, p: &Pattern) -> String {
        std::fs::write(self.path(name), p.to_text()).unwrap();
        self.arg(name)
    }
}

fn read_pattern(path: &Path) -> Pattern {
    Pattern::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn clean_glyph_is_a_fixed_point() {
    let w = Work::new();
    let zero = glyph("0").unwrap();
    let input = w.write_pattern("zero.pat", &zero);
    let o = spincnn(&["simulate", "--pattern", &input, "--expected", &input, "--out", &w.arg("run")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(read_pattern(&w.path("run/final.pat")), zero);
    let manifest = std::fs::read_to_string(w.path("run/manifest.txt")).unwrap();
    assert!(manifest.contains("converged: true"));
    assert!(manifest.contains("flipped_pixels: 0"));
    for line in manifest.lines().filter(|l| l.starts_with("  ")) {
        assert!(Path::new(line.trim()).exists(), "{line}");
    }
}

#[test]
fn noisy_glyph_is_filtered() {
    let w = Work::new();
    let clean = glyph("0").unwrap();
    let noisy = clean.with_noise(0.1, 4000).unwrap();
    let input = w.write_pattern("noisy.pat", &noisy);
    let o = spincnn(&["simulate", "--pattern", &input, "--seed", "2", "--out", &w.arg("run")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(read_pattern(&w.path("run/final.pat")), clean);

    let csv = std::fs::read_to_string(w.path("run/trajectory.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("time_ns,cell_row,cell_col,mz"));
    assert_eq!(lines.next(), Some("0.0000,0,0,-0.999848"));
    assert_eq!((csv.lines().count() - 1) % 600, 0);
    let frame = std::fs::read_to_string(w.path("run/frames/frame_0000.pgm")).unwrap();
    assert!(frame.starts_with("P2\n20 30\n255\n"));
}

#[test]
fn assoc_requires_templates() {
    let w = Work::new();
    let o = spincnn(&["simulate", "--app", "assoc", "--out", &w.arg("run")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--templates"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&spincnn(&["simulate"])), 1);
    assert_eq!(code(&spincnn(&["simulate", "--app", "edge", "--out", "x"])), 1);
    assert_eq!(code(&spincnn(&["train", "--out", "t.txt"])), 1);
    assert_eq!(code(&spincnn(&["--help"])), 0);
}

#[test]
fn missing_files_name_the_path() {
    let w = Work::new();
    let o = spincnn(&["simulate", "--pattern", "/nonexistent/p.pat", "--out", &w.arg("run")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("/nonexistent/p.pat"));
}

#[test]
fn config_errors_name_the_key() {
    let w = Work::new();
    std::fs::write(w.path("bad.ini"), "[magnet]\nspin = 3\n").unwrap();
    let o = spincnn(&["oracle", "transmission", "--config", &w.arg("bad.ini")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("spin"), "{}", stderr(&o));
}

#[test]
fn config_from_environment() {
    let w = Work::new();
    std::fs::write(w.path("cfg.ini"), "[channel]\nlength = 200e-9\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_spincnn"))
        .args(["oracle", "transmission"])
        .env("SPINCNN_CONFIG", w.path("cfg.ini"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let exact = 1.0 / (200.0f64 / 420.0).cosh();
    assert!(String::from_utf8_lossy(&o.stdout).contains(&format!("analytic {exact:.6}")));
}

#[test]
fn shape_mismatch_is_an_error() {
    let w = Work::new();
    let small = w.write_pattern("small.pat", &Pattern::filled(4, 4, -1).unwrap());
    let o = spincnn(&["train", "--pairs", &format!("{small}:{}", w.write_pattern("big.pat", &glyph("2").unwrap())), "--out", &w.arg("t.txt")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("shape"), "{}", stderr(&o));
}

#[test]
fn identity_pair_trains_representable_templates() {
    let w = Work::new();
    let p = w.write_pattern("one.pat", &glyph("1").unwrap());
    let o = spincnn(&["train", "--pairs", &format!("{p}:{p}"), "--out", &w.arg("t.txt")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let set = TemplateSet::parse(&std::fs::read_to_string(w.path("t.txt")).unwrap()).unwrap();
    assert!(set.is_quantized());
    for t in set.templates() {
        let center = t.a[1][1].abs();
        assert!(t.weights().all(|x| x.abs() <= center), "{t:?}");
    }
    assert!(w.path("t.txt.manifest").exists());
}

#[test]
fn trained_templates_recall_the_target() {
    let w = Work::new();
    let names: Vec<String> = ["1", "2", "3", "4"].iter().map(|g| w.write_pattern(&format!("{g}.pat"), &glyph(g).unwrap())).collect();
    let pairs = format!("{}:{},{}:{}", names[0], names[1], names[2], names[3]);
    let o = spincnn(&["train", "--pairs", &pairs, "--out", &w.arg("t.txt")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = spincnn(&["simulate", "--app", "assoc", "--templates", &w.arg("t.txt"), "--seed", "4", "--out", &w.arg("run")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(read_pattern(&w.path("run/final.pat")), glyph("2").unwrap());
}

#[test]
fn sweep_row_count_and_outputs() {
    let w = Work::new();
    let o = spincnn(&["sweep", "--voltages", "0.04,0.1,0.3", "--sizes", "2", "--seeds", "1", "--out", &w.arg("sw")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = std::fs::read_to_string(w.path("sw/sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert_eq!(csv.lines().next().unwrap(), spincnn::analysis::SWEEP_CSV_HEADER);
    let report = std::fs::read_to_string(w.path("sw/report.txt")).unwrap();
    assert!(report.contains("\n[result]\n"));
    assert!(report.contains("energy_ratio: "));
    assert!(w.path("sw/cmos.csv").exists());
}

#[test]
fn pareto_areas_increase_with_size() {
    let w = Work::new();
    let o = spincnn(&["sweep", "--voltages", "0.04,0.1,0.3", "--sizes", "1,2,4", "--seeds", "1", "--jobs", "2", "--out", &w.arg("sw")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = std::fs::read_to_string(w.path("sw/pareto.csv")).unwrap();
    let areas: Vec<f64> = csv.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(areas.len(), 3);
    assert!(areas.windows(2).all(|a| a[1] > a[0]), "{areas:?}");
}

#[test]
fn sweep_rejects_short_voltage_list() {
    let w = Work::new();
    let o = spincnn(&["sweep", "--voltages", "0.1,0.2", "--out", &w.arg("sw")]);
    assert_eq!(code(&o), 1);
}

#[test]
fn oracles_agree() {
    let w = Work::new();
    let o = spincnn(&["oracle", "transmission", "--profile", &w.arg("profile.csv")]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("analytic 0.972310"));
    let profile = std::fs::read_to_string(w.path("profile.csv")).unwrap();
    assert_eq!(profile.lines().count(), 1025);

    assert_eq!(code(&spincnn(&["oracle", "critical-current"])), 0);

    let o = spincnn(&["oracle", "read-curve"]);
    assert_eq!(code(&o), 0);
    let csv = String::from_utf8_lossy(&o.stdout).into_owned();
    assert_eq!(csv.lines().next(), Some("mz,v_out_1.9nm,v_out_2.0nm,v_out_2.1nm"));
    for col in 1..=3 {
        let v: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(col).unwrap().parse().unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0]));
    }

    let o = spincnn(&["oracle", "switch-stats", "--seeds", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 5);
}

#[test]
fn glyph_export() {
    let o = spincnn(&["glyph", "three"]);
    assert_eq!(code(&o), 0);
    assert_eq!(Pattern::parse(&String::from_utf8_lossy(&o.stdout)).unwrap(), glyph("3").unwrap());
    assert_eq!(code(&spincnn(&["glyph", "seven"])), 1);
}
