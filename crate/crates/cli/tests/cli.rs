use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use duskify::samples::{bar_chart, line_chart, CATEGORY10};
use duskify::{PixelImage, Rgb8};
use serde_json::Value;
use tempfile::TempDir;

fn duskify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_duskify"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn write_png(path: &Path, img: &PixelImage) {
    image::save_buffer(path, &img.to_rgb_bytes(), img.width() as u32, img.height() as u32, image::ColorType::Rgb8)
        .unwrap();
}

fn read_rgb(path: &Path) -> PixelImage {
    let img = image::open(path).unwrap().to_rgb8();
    PixelImage::from_rgb_bytes(img.width() as usize, img.height() as usize, img.as_raw()).unwrap()
}

fn three_bars(dir: &TempDir) -> PathBuf {
    let path = dir.path().join("bars.png");
    write_png(&path, &bar_chart(120, 90, &CATEGORY10[..3], 4));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn transform_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let input = three_bars(&dir);
    let original = std::fs::read(&input).unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("dark{run}.png"));
        let report = dir.path().join(format!("report{run}.json"));
        let o = duskify(&["transform", "--input", s(&input), "--output", s(&out), "--report", s(&report), "--iterations", "2000"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push((std::fs::read(out).unwrap(), std::fs::read(report).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(std::fs::read(&input).unwrap(), original);

    let report: Value = serde_json::from_slice(&outputs[0].1).unwrap();
    for key in ["version", "options", "k", "palette", "adjacency", "energy", "metrics"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["energy"]["trace"].as_array().unwrap().len(), 2);
}

#[test]
fn transform_writes_preview_and_dark_background() {
    let dir = TempDir::new().unwrap();
    let input = three_bars(&dir);
    let out = dir.path().join("dark.png");
    let preview = dir.path().join("preview.png");
    let o = duskify(&[
        "transform", "--input", s(&input), "--output", s(&out), "--preview", s(&preview),
        "--dark-bg", "#121212", "--iterations", "500", "--mode", "residual",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let dark = read_rgb(&out);
    assert_eq!(dark.get(0, 0), Rgb8::new(0x12, 0x12, 0x12));
    assert_eq!(read_rgb(&preview).width(), 120 * 2 + 2);
}

#[test]
fn progress_logs_to_stderr() {
    let dir = TempDir::new().unwrap();
    let input = three_bars(&dir);
    let out = dir.path().join("dark.png");
    let o = duskify(&["transform", "--input", s(&input), "--output", s(&out), "--iterations", "3000", "--progress"]);
    assert!(o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(err.matches("iteration").count(), 3, "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn invalid_hex_is_a_usage_error_naming_the_flag() {
    let dir = TempDir::new().unwrap();
    let input = three_bars(&dir);
    let out = dir.path().join("dark.png");
    let o = duskify(&["transform", "--input", s(&input), "--output", s(&out), "--dark-bg", "#GGGGGG"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--dark-bg"));
    assert!(!out.exists());
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let input = three_bars(&dir);
    let out = dir.path().join("dark.png");
    for extra in [["--alpha", "1.5"], ["-k", "0"], ["--w-cc", "-1"]] {
        let mut args = vec!["transform", "--input", s(&input), "--output", s(&out)];
        args.extend(extra);
        assert_eq!(duskify(&args).status.code(), Some(1), "{extra:?}");
    }
}

#[test]
fn help_and_version_succeed() {
    assert!(duskify(&["--help"]).status.success());
    assert!(duskify(&["--version"]).status.success());
    assert_eq!(duskify(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn unreadable_input_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.png");
    let out = dir.path().join("out.png");
    assert_eq!(duskify(&["invert", "--input", s(&missing), "--output", s(&out)]).status.code(), Some(2));
    let junk = dir.path().join("junk.png");
    std::fs::write(&junk, b"not an image").unwrap();
    assert_eq!(duskify(&["transform", "--input", s(&junk), "--output", s(&out)]).status.code(), Some(2));
}

#[test]
fn all_background_is_a_processing_error() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("blank.png");
    write_png(&input, &PixelImage::filled(20, 20, Rgb8::WHITE));
    let out = dir.path().join("out.png");
    assert_eq!(duskify(&["transform", "--input", s(&input), "--output", s(&out)]).status.code(), Some(3));
}

#[test]
fn double_inversion_is_identity() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("lines.png");
    write_png(&input, &line_chart(80, 60, &CATEGORY10[..3], 2));
    let once = dir.path().join("once.png");
    let twice = dir.path().join("twice.png");
    assert!(duskify(&["invert", "--input", s(&input), "--output", s(&once)]).status.success());
    assert!(duskify(&["invert", "--input", s(&once), "--output", s(&twice)]).status.success());
    assert_eq!(read_rgb(&twice), read_rgb(&input));
    assert_ne!(read_rgb(&once), read_rgb(&input));
}

#[test]
fn transparent_pixels_composite_over_light_background() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("alpha.png");
    let mut rgba = vec![0u8; 10 * 10 * 4];
    for px in rgba.chunks_mut(4).take(50) {
        px.copy_from_slice(&[200, 40, 40, 255]);
    }
    image::save_buffer(&input, &rgba, 10, 10, image::ColorType::Rgba8).unwrap();
    let o = duskify(&["extract", "--input", s(&input), "-k", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["foreground_pixels"], 50);
}

#[test]
fn extract_lists_palette_and_warns_on_clamp() {
    let dir = TempDir::new().unwrap();
    let input = three_bars(&dir);
    let o = duskify(&["extract", "--input", s(&input), "-k", "8"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("clamped"));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let colors = v["colors"].as_array().unwrap();
    assert_eq!(v["k"], 4);
    assert_eq!(v["requested_k"], 8);
    let mut hexes: Vec<&str> = colors.iter().map(|c| c["hex"].as_str().unwrap()).collect();
    hexes.sort();
    assert_eq!(hexes, ["#1F77B4", "#2CA02C", "#333333", "#FF7F0E"]);
    let total: u64 = colors.iter().map(|c| c["count"].as_u64().unwrap()).sum();
    assert_eq!(v["foreground_pixels"].as_u64().unwrap(), total);
    assert!(v["adjacency"].is_array());
}

#[test]
fn evaluate_single_image_and_directory() {
    let dir = TempDir::new().unwrap();
    three_bars(&dir);
    write_png(&dir.path().join("lines.png"), &line_chart(80, 60, &CATEGORY10[..2], 5));
    std::fs::write(dir.path().join("broken.png"), b"garbage").unwrap();
    std::fs::write(dir.path().join("notes.txt"), b"ignored").unwrap();

    let report = dir.path().join("eval.json");
    let o = duskify(&["evaluate", "--input", s(dir.path()), "--report", s(&report), "--iterations", "1000"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    let names: Vec<&str> = v["per_image"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["bars.png", "lines.png"]);
    assert_eq!(v["skipped"][0]["name"], "broken.png");
    assert_eq!(v["summary"]["images"], 2);
    for cond in ["light", "inverse", "dark"] {
        assert!(v["summary"]["pass_rate_by_condition"][cond].is_number());
        assert_eq!(v["summary"]["histogram"][cond].as_array().unwrap().len(), 13);
    }

    let single = duskify(&["evaluate", "--input", s(&dir.path().join("bars.png")), "--iterations", "200"]);
    assert!(single.status.success());
    let v: Value = serde_json::from_slice(&single.stdout).unwrap();
    assert_eq!(v["summary"]["images"], 1);
}

#[test]
fn evaluate_empty_directory_fails() {
    let dir = TempDir::new().unwrap();
    let o = duskify(&["evaluate", "--input", s(dir.path())]);
    assert_eq!(o.status.code(), Some(3));
}
