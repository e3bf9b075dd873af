//! Deterministic output emitters: SVG scenes, CSV rows and JSON documents.
//! All floating-point values are written with 12 significant digits so that
//! identical inputs produce byte-identical files.

use crate::geom::{Point, Polygon, Tolerance};

/// Formats with 12 significant digits; output is stable across runs.
pub fn fmt_sig(x: f64) -> String {
    format_sig(x, 12)
}

pub fn format_sig(x: f64, sig: u32) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let shift = sig as i32 - 1 - mag;
    let scale = 10f64.powi(shift);
    let rounded = (x * scale).round() / scale;
    if !rounded.is_finite() {
        return format!("{x:e}");
    }
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded}")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// An SVG document with the cloud points and the hull drawn as a closed
/// polygon. The view box is the hull bounding box plus a 5% margin; point
/// radius is 0.15% and the hull stroke 0.4% of the larger view-box side.
/// The vertical axis is flipped so the plane reads the usual way.
pub fn svg_scene(cloud: &[Point], hull: &Polygon, tol: &Tolerance, title: &str) -> String {
    let hv = hull.extremal_points(tol);
    let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
    let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in &hv {
        x0 = x0.min(v.re);
        x1 = x1.max(v.re);
        y0 = y0.min(-v.im);
        y1 = y1.max(-v.im);
    }
    let w = (x1 - x0).max(1e-9);
    let h = (y1 - y0).max(1e-9);
    let margin = 0.05 * w.max(h);
    let (vx, vy) = (x0 - margin, y0 - margin);
    let (vw, vh) = (w + 2.0 * margin, h + 2.0 * margin);
    let unit = vw.max(vh);
    let r = 0.0015 * unit;
    let stroke = 0.004 * unit;

    let mut out = String::with_capacity(64 * cloud.len() + 1024);
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        fmt_sig(vx),
        fmt_sig(vy),
        fmt_sig(vw),
        fmt_sig(vh)
    ));
    out.push_str(&format!("<title>{}</title>\n", xml_escape(title)));
    out.push_str("<g fill=\"#1f5fa8\" stroke=\"none\">\n");
    for p in cloud {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
            fmt_sig(p.re),
            fmt_sig(-p.im),
            fmt_sig(r)
        ));
    }
    out.push_str("</g>\n");
    let pts: Vec<String> = hv
        .iter()
        .map(|v| format!("{},{}", fmt_sig(v.re), fmt_sig(-v.im)))
        .collect();
    out.push_str(&format!(
        "<polygon points=\"{}\" fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"{}\"/>\n",
        pts.join(" "),
        fmt_sig(stroke)
    ));
    out.push_str("</svg>\n");
    out
}

/// One CSV row per point: `re,im,word,kind` with a header line.
pub fn csv_table(rows: &[(Point, String, &str)]) -> String {
    let mut out = String::from("re,im,word,kind\n");
    for (p, word, kind) in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_sig(p.re),
            fmt_sig(p.im),
            word,
            kind
        ));
    }
    out
}

/// Minimal JSON writer; enough for the fixed shapes this crate emits, with
/// full control over float formatting.
#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(&'static str, Json)>),
}

impl Json {
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write(&mut s);
        s
    }

    fn write(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::Num(x) => out.push_str(&fmt_sig(*x)),
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Arr(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            Json::Obj(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('"');
                    out.push_str(k);
                    out.push_str("\":");
                    v.write(out);
                }
                out.push('}');
            }
        }
    }
}
