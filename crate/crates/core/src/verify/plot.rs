//! CSV and SVG renderings of a step function.

use std::fmt::Write as _;
use std::io::Write;

use crate::circle::CirclePoint;
use crate::error::Result;
use crate::signature::{PointValue, StepFunction};

/// Exact cosine: a rational, or `x/2` for the isolated root `x`.
pub fn cos_form(p: &CirclePoint) -> String {
    match p {
        CirclePoint::AlgebraicCos(a) => {
            let (lo, hi) = a.interval();
            format!("x/2, x root of {} in ({lo},{hi})", a.poly())
        }
        other => other.exact_cos().expect("rational point").to_string(),
    }
}

/// Two CSV sections: arcs (`arc_start_cos, arc_end_cos, value`), then points
/// (`point, cos_form, value_or_unresolved, ju_minus, ju_plus`).
pub fn write_csv<W: Write>(sf: &StepFunction, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    w.write_record(["arc_start_cos", "arc_end_cos", "value"])?;
    for arc in &sf.arcs {
        w.write_record([cos_form(&arc.start), cos_form(&arc.end), arc.value.to_string()])?;
    }
    w.write_record(["point", "cos_form", "value_or_unresolved", "ju_minus", "ju_plus"])?;
    for sp in &sf.points {
        let value = match &sp.value {
            PointValue::Exact(v) => v.signature.to_string(),
            PointValue::Unresolved { nullity, jump_bound, .. } => {
                format!("unresolved (nullity {nullity}, |ju±| <= {jump_bound})")
            }
        };
        let (minus, plus) = sp
            .jumps
            .map_or((String::new(), String::new()), |j| (j.minus.to_string(), j.plus.to_string()));
        w.write_record([sp.point.to_string(), cos_form(&sp.point), value, minus, plus])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(sf: &StepFunction) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(sf, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

/// Plot with `θ/π` on the x-axis: a segment per arc, filled dots at exact
/// point values, open dots at unresolved points.
pub fn svg(sf: &StepFunction, title: &str) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 48.0;
    let mut values: Vec<i64> = sf.arcs.iter().map(|a| a.value).collect();
    values.extend(sf.points.iter().filter_map(|p| p.value.exact()).map(|v| v.signature));
    let lo = values.iter().copied().min().unwrap_or(0).min(-1);
    let hi = values.iter().copied().max().unwrap_or(0).max(1);
    let x = |t: f64| PAD + t * (W - 2.0 * PAD);
    let y = |v: f64| H - PAD - (v - lo as f64) / (hi - lo) as f64 * (H - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" font-size="14" text-anchor="middle">{}</text>"#, W / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        x(0.0),
        H - PAD,
        x(1.0),
        H - PAD
    );
    let _ = writeln!(s, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>"#, x(0.0), PAD, H - PAD);
    for v in lo..=hi {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{v}</text>"#,
            x(0.0) - 6.0,
            y(v as f64) + 4.0
        );
    }
    for (t, label) in [(0.0, "0"), (0.5, "1/2"), (1.0, "1")] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">{label}</text>"#,
            x(t),
            H - PAD + 16.0
        );
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">θ/π</text>"#, W / 2.0, H - 8.0);
    for arc in &sf.arcs {
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="steelblue" stroke-width="3"/>"#,
            x(arc.start.approx_theta_over_pi()),
            y(arc.value as f64),
            x(arc.end.approx_theta_over_pi()),
            y(arc.value as f64)
        );
    }
    for (i, sp) in sf.points.iter().enumerate() {
        let cx = x(sp.point.approx_theta_over_pi());
        match &sp.value {
            PointValue::Exact(v) => {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{cx:.2}" cy="{:.2}" r="4" fill="black"/>"#,
                    y(v.signature as f64)
                );
            }
            PointValue::Unresolved { .. } => {
                let (before, after) = sf.one_sided(i);
                let _ = writeln!(
                    s,
                    r#"<circle cx="{cx:.2}" cy="{:.2}" r="4" fill="white" stroke="black"/>"#,
                    y((before + after) as f64 / 2.0)
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
