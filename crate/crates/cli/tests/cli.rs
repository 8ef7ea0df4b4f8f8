use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ballspec")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn spectrum_single_mode() {
    let out = run(&["spectrum", "--gamma", "2", "--n-max", "1"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let eigs = doc["eigenvalues"].as_array().unwrap();
    assert_eq!(eigs.len(), 1);
    assert!((eigs[0]["re"].as_f64().unwrap() + 0.6180340).abs() < 1e-7);
    assert_eq!(eigs[0]["multiplicity"], 3);
    assert_eq!(eigs[0]["family"], "alpha");
    assert_eq!(doc["precision_bits"], 256);
}

#[test]
fn spectrum_gamma_one_is_empty() {
    let out = run(&["spectrum", "--gamma", "1", "--n-max", "40"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["eigenvalues"].as_array().unwrap().len(), 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["spectrum", "--gamma", "2", "--n-max", "0"][..],
        &["spectrum", "--gamma", "0"],
        &["spectrum", "--gamma", "-1"],
        &["spectrum", "--n-max", "3"],
        &["spectrum", "--gamma", "2", "--format", "xml"],
        &["verify", "--gamma", "0", "--suite", "appendix"],
        &["verify", "--gamma", "2", "--eps", "0.7"],
        &["scan-symbols", "--gamma", "0.5", "--contour", "z9"],
        &["scan-symbols", "--gamma", "0.5", "--contour", "z1", "--grid", "1"],
        &["scan-symbols", "--gamma", "0.5", "--contour", "z1", "--h", "1.5"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn csv_format() {
    let out = run(&["spectrum", "--gamma", "3", "--n-max", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "re,im,n,family,multiplicity,w0_re,w0_im,residual_poly,residual_hankel");
    assert_eq!(lines.len(), 4);
    let res: Vec<f64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(res.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn out_file_written_without_leftovers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let out = run(&["spectrum", "--gamma", "0.5", "--n-max", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names, vec![std::ffi::OsString::from("spec.json")]);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(doc["eigenvalues"].as_array().unwrap().iter().all(|e| e["family"] == "beta"));
}

#[test]
fn verify_appendix_suites() {
    let out = run(&["verify", "--gamma", "1", "--suite", "appendix", "--n-max", "10"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1, "{text}");
    assert!(lines[0].starts_with("PASS gamma_one_empty_spectrum "));

    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let out = run(&["verify", "--gamma", "2", "--n-max", "10", "--json", json.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for line in String::from_utf8(out.stdout).unwrap().lines() {
        let parts: Vec<&str> = line.split(' ').collect();
        assert_eq!(parts.len(), 3, "{line}");
        assert_eq!(parts[0], "PASS");
    }
    let report: Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    let suites: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["suite"].as_str().unwrap()).collect();
    for s in ["appendix", "regions", "symbols"] {
        assert!(suites.contains(&s));
    }
}

#[test]
fn verify_symbols_for_small_gamma() {
    let out = run(&["verify", "--gamma", "0.5", "--suite", "symbols"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS glancing_point "));
    assert!(text.contains("PASS c_elliptic_z2 "));
}

#[test]
fn scan_symbols_layout() {
    let out = run(&["scan-symbols", "--gamma", "2", "--contour", "z3", "--grid", "50"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r0,z_re,z_im,abs_c,abs_d,im_rho"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 2500);
    // z outer, r0 inner
    assert_eq!((rows[0][0], rows[0][1]), (0.0, -1.0));
    assert_eq!((rows[1][1], rows[49][0]), (-1.0, 25.0));
    assert!(rows[50][1] > -1.0);
    let min_d = rows.iter().map(|r| r[4]).fold(f64::INFINITY, f64::min);
    assert!(min_d > 0.1, "{min_d}");
    assert!(String::from_utf8(out.stderr).unwrap().contains("min |d|"));
}

#[test]
fn scan_finds_glancing_row() {
    let out = run(&["scan-symbols", "--gamma", "0.5", "--contour", "z2", "--grid", "100", "--r0-max", "5"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let best = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .min_by(|a, b| a[4].total_cmp(&b[4]))
        .unwrap();
    assert!((best[0] - 3.0).abs() <= 5.0 / 99.0);
    assert_eq!((best[1], best[2]), (-1.0, 0.0));
}

fn markers(svg: &str) -> Vec<(f64, f64)> {
    let group = svg.split("<g id=\"eigenvalues\"").nth(1).unwrap().split("</g>").next().unwrap();
    group
        .lines()
        .filter(|l| l.starts_with("<circle"))
        .map(|l| {
            let attr = |name: &str| -> f64 {
                let key = format!("{name}=\"");
                let s = &l[l.find(&key).unwrap() + key.len()..];
                s[..s.find('"').unwrap()].parse().unwrap()
            };
            (attr("cx"), attr("cy"))
        })
        .collect()
}

#[test]
fn plot_spectra() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    assert_eq!(code(&run(&["spectrum", "--gamma", "2", "--n-max", "12", "--out", &p("s.json")])), 0);
    assert_eq!(code(&run(&["plot", "--input", &p("s.json"), "--out", &p("a.svg")])), 0);
    assert_eq!(code(&run(&["plot", "--input", &p("s.json"), "--out", &p("b.svg")])), 0);
    let a = fs::read_to_string(p("a.svg")).unwrap();
    assert_eq!(a, fs::read_to_string(p("b.svg")).unwrap());
    assert!(a.starts_with("<?xml") && a.contains("version=\"1.1\""));
    let m = markers(&a);
    assert_eq!(m.len(), 12);
    // real spectrum: every marker on the real axis, which is the whole R_N region when C_N = 0
    let axis = a.split("<line id=\"r-n\"").nth(1).unwrap();
    let y1: f64 = axis.split("y1=\"").nth(1).unwrap().split('"').next().unwrap().parse().unwrap();
    assert!(m.iter().all(|&(_, cy)| cy == y1));

    assert_eq!(code(&run(&["spectrum", "--gamma", "1", "--n-max", "5", "--out", &p("e.json")])), 0);
    assert_eq!(code(&run(&["plot", "--input", &p("e.json"), "--out", &p("e.svg")])), 0);
    let e = fs::read_to_string(p("e.svg")).unwrap();
    assert!(markers(&e).is_empty());
    assert!(e.contains("id=\"lambda-eps\"") && e.contains("id=\"r-n\""));

    assert_eq!(code(&run(&["plot", "--input", &p("s.json"), "--out", &p("c.svg"), "--c-n", "0.5"])), 0);
    assert!(fs::read_to_string(p("c.svg")).unwrap().contains("<polygon id=\"r-n\""));
}

#[test]
fn plot_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let out_svg = dir.path().join("x.svg");
    fs::write(&bad, "{\"schema_version\": \"something-else\"}").unwrap();
    assert_eq!(code(&run(&["plot", "--input", bad.to_str().unwrap(), "--out", out_svg.to_str().unwrap()])), 2);
    fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&run(&["plot", "--input", bad.to_str().unwrap(), "--out", out_svg.to_str().unwrap()])), 2);
    let good = run(&["spectrum", "--gamma", "2", "--n-max", "1"]);
    let text = String::from_utf8(good.stdout).unwrap().replace("ballspec.spectrum/1", "ballspec.spectrum/0");
    fs::write(&bad, text).unwrap();
    assert_eq!(code(&run(&["plot", "--input", bad.to_str().unwrap(), "--out", out_svg.to_str().unwrap()])), 2);
    assert!(!out_svg.exists());
}

#[test]
fn json_round_trips_byte_for_byte() {
    let out = run(&["spectrum", "--gamma", "1.5", "--n-max", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    for e in v["eigenvalues"].as_array().unwrap() {
        let re = e["re"].as_f64().unwrap();
        assert!(text.contains(&format!("{re:.16e}")));
    }
}
