use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mosaic-enhance"))
}

fn fixture(dir: &Path, w: u32, h: u32) -> std::path::PathBuf {
    let path = dir.join("in.png");
    let bytes: Vec<u8> = (0..w * h * 3).map(|i| (100 + (i * 7919 % 57)) as u8).collect();
    image::RgbImage::from_raw(w, h, bytes).unwrap().save(&path).unwrap();
    path
}

#[test]
fn sweep_with_report_and_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture(dir.path(), 24, 16);
    let out = dir.path().join("out.png");
    let report = dir.path().join("report.json");
    let status = bin()
        .args([
            "enhance",
            input.to_str().unwrap(),
            "--model",
            "2x2",
            "--method",
            "alpha",
        ])
        .args(["--sweep", "0.9:1.0:0.05", "--block", "4x4"])
        .arg("--dump-mosaic")
        .arg(dir.path().join("mosaic.png"))
        .arg("--dump-spectrum")
        .arg(dir.path().join("spec.png"))
        .arg("--dump-spectrum-centered")
        .arg(dir.path().join("spec_c.png"))
        .arg("-o")
        .arg(&out)
        .arg("--report")
        .arg(&report)
        .status()
        .unwrap();
    assert!(status.success());

    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["mosaic_model"], "2x2");
    assert_eq!(v["method"], "alpha_rooting");
    assert_eq!(v["block"], serde_json::json!([4, 4]));
    assert_eq!(v["alpha_mode"], "dcnorm");
    let alpha = v["alpha"].as_f64().unwrap();
    assert!(alpha == 0.9 || alpha == 0.95 || alpha == 1.0);
    assert!(v["elapsed_ms"].as_f64().unwrap() >= 0.0);

    let mosaic = image::open(dir.path().join("mosaic.png")).unwrap();
    assert_eq!((mosaic.width(), mosaic.height()), (48, 32));
    assert!(dir.path().join("spec.png").exists() && dir.path().join("spec_c.png").exists());
    let enhanced = image::open(&out).unwrap();
    assert_eq!((enhanced.width(), enhanced.height()), (24, 16));
}

#[test]
fn histeq_prints_json_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture(dir.path(), 16, 16);
    let output = bin()
        .args([
            "enhance",
            input.to_str().unwrap(),
            "--model",
            "row",
            "--no-luminance",
            "--method",
            "histeq",
        ])
        .args(["--colorspace", "cmy", "-o"])
        .arg(dir.path().join("o.bmp"))
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let v: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(v["mosaic_model"], "row");
    assert_eq!(v["include_luminance"], false);
    assert_eq!(v["color_model"], "cmy");
    assert!(v["alpha"].is_null());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let odd = fixture(dir.path(), 15, 8);
    let o = dir.path().join("o.png");
    let code = |args: &[&str]| bin().args(args).arg("-o").arg(&o).status().unwrap().code();

    assert_eq!(
        code(&["enhance", odd.to_str().unwrap(), "--model", "2x3", "--method", "histeq"]),
        Some(3)
    );
    assert_eq!(code(&["enhance", "/no/such/file.png"]), Some(2));
    assert_eq!(
        code(&["enhance", odd.to_str().unwrap(), "--sweep", "0.9:0.8:0.01"]),
        Some(1)
    );
    assert_eq!(code(&["enhance", odd.to_str().unwrap(), "--block", "8by8"]), Some(1));
    assert_eq!(code(&["enhance", odd.to_str().unwrap(), "--model", "3x3"]), Some(1));
    assert_eq!(code(&["enhance", odd.to_str().unwrap(), "--alpha", "0"]), Some(1));
}
