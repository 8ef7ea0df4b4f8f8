//! SVG picture of a spectrum over the fitted regions `Lambda_eps` and `R_N`.

use std::fmt::Write as _;
use std::path::PathBuf;

use ballspec::regions::fit_constants;
use ballspec::Complex64;
use clap::Args;

use crate::document::SpectrumDocument;
use crate::{read_input, usage, write_atomic, CliResult};

#[derive(Args, Debug)]
pub struct PlotArgs {
    /// Spectrum JSON written by `ballspec spectrum`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long = "N", default_value_t = 4)]
    pub n_region: u32,
    #[arg(long)]
    pub out: PathBuf,
    /// Override the fitted C_eps (1 when the spectrum is empty).
    #[arg(long)]
    pub c_eps: Option<f64>,
    /// Override the fitted C_N (1 when the spectrum is empty).
    #[arg(long)]
    pub c_n: Option<f64>,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 64.0;
const SAMPLES: usize = 240;

struct Frame {
    xmin: f64,
    xmax: f64,
    ymax: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.xmin) / (self.xmax - self.xmin) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        MARGIN + (self.ymax - y) / (2.0 * self.ymax) * (HEIGHT - 2.0 * MARGIN)
    }

    fn point(&self, x: f64, y: f64) -> String {
        format!("{:.2},{:.2}", self.px(x), self.py(y))
    }
}

pub struct PlotSpec<'a> {
    pub doc: &'a SpectrumDocument,
    pub eps: f64,
    pub n_region: u32,
    pub c_eps: f64,
    pub c_n: f64,
}

fn frame_for(lambdas: &[Complex64]) -> Frame {
    let min_re = lambdas.iter().map(|l| l.re).fold(0.0, f64::min);
    let max_im = lambdas.iter().map(|l| l.im.abs()).fold(0.0, f64::max);
    let xmin = (1.1 * min_re).min(-1.0);
    let ymax = (1.1 * max_im).max(0.35 * xmin.abs()).max(1.0);
    Frame { xmin, xmax: 0.08 * xmin.abs(), ymax }
}

/// Renders the SVG text; identical inputs give identical bytes.
pub fn render(spec: &PlotSpec) -> String {
    let lambdas: Vec<Complex64> = spec.doc.eigenvalues.iter().map(|e| Complex64::new(e.re, e.im)).collect();
    let f = frame_for(&lambdas);
    let p = 0.5 + spec.eps;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<clipPath id="plot-area"><rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}"/></clipPath>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(s, r#"<g clip-path="url(#plot-area)">"#);

    if spec.c_eps > 0.0 {
        let mut pts = vec![f.point(0.0, -f.ymax)];
        for k in 0..=SAMPLES {
            let y = -f.ymax + 2.0 * f.ymax * k as f64 / SAMPLES as f64;
            let x = (-spec.c_eps * (y.abs().powf(p) + 1.0)).max(f.xmin);
            pts.push(f.point(x, y));
        }
        pts.push(f.point(0.0, f.ymax));
        let _ = writeln!(
            s,
            r##"<polygon id="lambda-eps" points="{}" fill="#4e79a7" fill-opacity="0.25" stroke="#4e79a7"/>"##,
            pts.join(" ")
        );
    }
    if spec.c_n > 0.0 {
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for k in 0..=SAMPLES {
            let x = f.xmin * k as f64 / SAMPLES as f64;
            let y = (spec.c_n / (x.abs() + 1.0).powi(spec.n_region as i32)).min(f.ymax);
            top.push(f.point(x, y));
            bottom.push(f.point(x, -y));
        }
        bottom.reverse();
        top.extend(bottom);
        let _ = writeln!(
            s,
            r##"<polygon id="r-n" points="{}" fill="#f28e2b" fill-opacity="0.35" stroke="#f28e2b"/>"##,
            top.join(" ")
        );
    } else {
        // C_N = 0: the region is the negative real axis itself
        let _ = writeln!(
            s,
            r##"<line id="r-n" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#f28e2b" stroke-width="4" stroke-opacity="0.6"/>"##,
            f.px(f.xmin),
            f.py(0.0),
            f.px(0.0),
            f.py(0.0)
        );
    }

    let _ = writeln!(s, r##"<g id="axes" stroke="#333333" stroke-width="1">"##);
    let _ = writeln!(
        s,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
        f.px(f.xmin),
        f.py(0.0),
        f.px(f.xmax),
        f.py(0.0)
    );
    let _ = writeln!(
        s,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
        f.px(0.0),
        f.py(-f.ymax),
        f.px(0.0),
        f.py(f.ymax)
    );
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g id="eigenvalues" fill="#e15759" stroke="#7a1f1f" stroke-width="0.5">"##);
    for l in &lambdas {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, f.px(l.re), f.py(l.im));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</g>");

    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#333333"/>"##,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(s, r#"<g id="ticks" text-anchor="middle">"#);
    for k in 0..=4 {
        let x = f.xmin + (0.0 - f.xmin) * k as f64 / 4.0;
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{:.3}</text>"#, f.px(x), HEIGHT - MARGIN + 16.0, x);
        let y = -f.ymax + 2.0 * f.ymax * k as f64 / 4.0;
        let _ =
            writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{:.3}</text>"#, MARGIN - 6.0, f.py(y) + 4.0, y);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Re λ</text>"#, WIDTH / 2.0, HEIGHT - 20.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">Im λ</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="28" text-anchor="middle">γ = {}, n ≤ {}, {} eigenvalues; ε = {}, N = {}, C_ε = {:.4e}, C_N = {:.4e}</text>"#,
        WIDTH / 2.0,
        spec.doc.gamma,
        spec.doc.n_max,
        lambdas.len(),
        spec.eps,
        spec.n_region,
        spec.c_eps,
        spec.c_n
    );
    let _ = writeln!(s, r##"<g id="legend" font-size="11">"##);
    let lx = MARGIN + 10.0;
    let ly = MARGIN + 16.0;
    let _ = writeln!(
        s,
        r##"<rect x="{lx}" y="{}" width="12" height="10" fill="#4e79a7" fill-opacity="0.25" stroke="#4e79a7"/>"##,
        ly - 9.0
    );
    let _ = writeln!(s, r#"<text x="{}" y="{ly}">Λ_ε</text>"#, lx + 18.0);
    let _ = writeln!(
        s,
        r##"<rect x="{lx}" y="{}" width="12" height="10" fill="#f28e2b" fill-opacity="0.35" stroke="#f28e2b"/>"##,
        ly + 7.0
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}">R_N</text>"#, lx + 18.0, ly + 16.0);
    let _ = writeln!(s, r##"<circle cx="{}" cy="{}" r="3" fill="#e15759"/>"##, lx + 6.0, ly + 28.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}">eigenvalue</text>"#, lx + 18.0, ly + 32.0);
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

pub fn run(args: &PlotArgs) -> CliResult<()> {
    if !(args.eps > 0.0 && args.eps < 0.5) {
        return Err(usage(format!("--eps must lie in (0, 1/2), got {}", args.eps)));
    }
    if args.n_region == 0 {
        return Err(usage("--N must be at least 1"));
    }
    for (flag, v) in [("--c-eps", args.c_eps), ("--c-n", args.c_n)] {
        if let Some(v) = v {
            if !v.is_finite() || v < 0.0 {
                return Err(usage(format!("{flag} must be finite and non-negative, got {v}")));
            }
        }
    }
    let doc = SpectrumDocument::from_json(&read_input(&args.input)?).map_err(usage)?;
    let lambdas: Vec<Complex64> = doc.eigenvalues.iter().map(|e| Complex64::new(e.re, e.im)).collect();
    let (fit_eps, fit_n) = if lambdas.is_empty() {
        (1.0, 1.0)
    } else {
        let fc = fit_constants(&lambdas, args.eps, args.n_region)?;
        (fc.c_eps, fc.c_n)
    };
    let spec = PlotSpec {
        doc: &doc,
        eps: args.eps,
        n_region: args.n_region,
        c_eps: args.c_eps.unwrap_or(fit_eps),
        c_n: args.c_n.unwrap_or(fit_n),
    };
    write_atomic(&args.out, render(&spec).as_bytes())
}
