use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pcnn::imgio::{read_pgm, write_pgm};
use pcnn::GrayImage;

fn pcnn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcnn")).args(args).output().unwrap()
}

fn with_io(args: &[&str], input: &Path, out: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    pcnn(&all)
}

fn save(dir: &Path, name: &str, img: &GrayImage) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, write_pgm(img)).unwrap();
    p
}

fn disc() -> GrayImage {
    GrayImage::from_fn(24, 20, |i, j| if (i as f64 - 9.0).hypot(j as f64 - 12.0) < 6.0 { 0.8 } else { 0.2 }).unwrap()
}

#[test]
fn run_writes_one_frame_per_iteration() {
    let tmp = tempfile::tempdir().unwrap();
    let input = save(tmp.path(), "in.pgm", &disc());
    let out = tmp.path().join("out");
    let o = with_io(&["run", "--iters", "30", "--variant", "simplified"], &input, &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let frames = fs::read_dir(&out).unwrap().filter(|e| e.as_ref().unwrap().file_name().to_str().unwrap().starts_with("frame_")).count();
    assert_eq!(frames, 30);
    let sig = fs::read_to_string(out.join("signature.csv")).unwrap();
    assert_eq!(sig.lines().count(), 31);
    assert!(sig.starts_with("iteration,fired_count\n1,480\n"));
    let cfg = fs::read_to_string(out.join("config.txt")).unwrap();
    assert!(cfg.contains("variant=simplified\n") && cfg.contains("iters=30\n"));
    assert!(!cfg.contains(out.to_str().unwrap()));
}

#[test]
fn segment_two_level_reports_zero_error() {
    let tmp = tempfile::tempdir().unwrap();
    let input = save(tmp.path(), "in.pgm", &disc());
    let out = tmp.path().join("seg");
    let o = pcnn(&[
        "segment",
        "--input",
        input.to_str().unwrap(),
        "--truth",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    let first = stdout.lines().next().unwrap();
    assert!(first.starts_with("iteration=") && first.contains(" cross_entropy="), "{first}");
    assert!(stdout.contains("misclassification=0 "), "{stdout}");
    let mask = read_pgm(&fs::read(out.join("mask.pgm")).unwrap()).unwrap();
    assert_eq!(mask.shape(), (24, 20));
    assert!(fs::read_to_string(out.join("curve.csv")).unwrap().starts_with("iteration,cross_entropy\n"));
}

#[test]
fn edges_of_uniform_image_are_empty() {
    let tmp = tempfile::tempdir().unwrap();
    let input = save(tmp.path(), "in.pgm", &GrayImage::uniform(10, 8, 0.5).unwrap());
    let out = tmp.path().join("edges");
    assert!(with_io(&["edges", "--iters", "60"], &input, &out).status.success());
    let bytes = fs::read(out.join("edges.pgm")).unwrap();
    assert!(bytes[bytes.len() - 80..].iter().all(|&b| b == 0));
}

#[test]
fn denoise_and_signature_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let input = save(tmp.path(), "in.pgm", &disc());
    let out = tmp.path().join("dn");
    let o = with_io(&["denoise", "--iters", "100"], &input, &out);
    assert!(o.status.success());
    assert!(fs::read_to_string(out.join("config.txt")).unwrap().contains("tau=2\n"));
    assert!(out.join("denoised.pgm").exists() && out.join("candidates.pgm").exists());
    let out = tmp.path().join("sig");
    assert!(with_io(&["signature", "--iters", "12", "--variant", "sf-fed"], &input, &out).status.success());
    assert_eq!(fs::read_to_string(out.join("signature.csv")).unwrap().lines().count(), 13);
}

#[test]
fn sweep_writes_sorted_rows_and_subdirectories() {
    let tmp = tempfile::tempdir().unwrap();
    let input = save(tmp.path(), "in.pgm", &disc());
    let out = tmp.path().join("sweep");
    let o = with_io(&["sweep", "--param", "beta", "--from", "0", "--to", "1", "--steps", "5", "--iters", "20"], &input, &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let dirs = fs::read_dir(&out).unwrap().filter(|e| e.as_ref().unwrap().path().is_dir()).count();
    assert_eq!(dirs, 5);
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let values: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(values, [0.0, 0.25, 0.5, 0.75, 1.0]);
    assert!(fs::read_to_string(out.join("003_beta/config.txt")).unwrap().contains("beta=0.5\n"));
}

#[test]
fn flag_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let input = save(tmp.path(), "in.pgm", &disc());
    let o = with_io(&["run", "--variant", "bogus"], &input, &tmp.path().join("a"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    let sweep = |from: &str, to: &str, steps: &str, name: &str| {
        with_io(&["sweep", "--param", "alpha_e", "--from", from, "--to", to, "--steps", steps], &input, &tmp.path().join(name))
            .status
            .code()
    };
    assert_eq!(sweep("0.5", "0.1", "4", "b"), Some(2));
    assert_eq!(sweep("0.1", "0.5", "1", "c"), Some(2));
    assert_eq!(with_io(&["run", "--beta", "-1"], &input, &tmp.path().join("d")).status.code(), Some(2));
    assert_eq!(with_io(&["run", "--preset", "nope"], &input, &tmp.path().join("e")).status.code(), Some(2));
}

#[test]
fn parse_and_io_errors_exit_3() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.pgm");
    fs::write(&bad, b"P5 4 4 255\n\x00\x01").unwrap();
    let o = with_io(&["run"], &bad, &tmp.path().join("a"));
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected 16"));
    assert_eq!(with_io(&["run"], &tmp.path().join("missing.pgm"), &tmp.path().join("b")).status.code(), Some(3));

    let input = save(tmp.path(), "in.pgm", &disc());
    let busy = tmp.path().join("busy");
    fs::create_dir(&busy).unwrap();
    fs::write(busy.join("keep.txt"), "x").unwrap();
    assert_eq!(with_io(&["edges"], &input, &busy).status.code(), Some(3));
}

#[test]
fn overflow_exits_4() {
    let tmp = tempfile::tempdir().unwrap();
    let input = save(tmp.path(), "in.pgm", &disc());
    let o = with_io(&["run", "--vf", "1e308", "--iters", "5"], &input, &tmp.path().join("a"));
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn help_documents_defaults() {
    for sub in ["run", "segment", "edges", "denoise", "signature", "sweep", "presets"] {
        let o = pcnn(&[sub, "--help"]);
        assert!(o.status.success());
        let text = String::from_utf8(o.stdout).unwrap();
        for needle in ["epsilon = 0.001", "tau", "C = 10", "natural log"] {
            assert!(text.contains(needle), "{sub} --help lacks {needle}");
        }
    }
    let denoise = String::from_utf8(pcnn(&["denoise", "--help"]).stdout).unwrap();
    assert!(denoise.contains("[default: 2]"));
}

#[test]
fn presets_listing() {
    let o = pcnn(&["presets"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.matches("\n[").count() + usize::from(text.starts_with('[')), 9);
    let one = String::from_utf8(pcnn(&["presets", "--name", "spcnn-intensity"]).stdout).unwrap();
    assert!(one.contains("beta = 2..0.1") && one.contains("beta=1.05"));
}
