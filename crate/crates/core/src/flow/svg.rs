use std::fmt::Write;

use super::critical::CriticalPointNum;
use super::unit;

const SIZE: f64 = 600.0;

fn px(z: [f64; 2]) -> (f64, f64) {
    (20.0 + SIZE * z[0], 20.0 + SIZE * (1.0 - z[1]))
}

/// Polylines reduced mod `Z²`, broken where they wrap.
fn polyline(out: &mut String, path: &[[f64; 2]], color: &str) {
    let mut run: Vec<(f64, f64)> = Vec::new();
    let mut prev: Option<[f64; 2]> = None;
    let flush = |out: &mut String, run: &mut Vec<(f64, f64)>| {
        if run.len() >= 2 {
            let pts: Vec<String> = run.iter().map(|(a, b)| format!("{a:.2},{b:.2}")).collect();
            let _ = writeln!(out, r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#, pts.join(" "));
        }
        run.clear();
    };
    for z in path {
        let u = [unit(z[0]), unit(z[1])];
        if let Some(p) = prev {
            if (u[0] - p[0]).abs() > 0.5 || (u[1] - p[1]).abs() > 0.5 {
                flush(out, &mut run);
            }
        }
        run.push(px(u));
        prev = Some(u);
    }
    flush(out, &mut run);
}

/// Unit-square picture: fiber, trajectories, critical points by index.
pub fn render_svg(title: &str, critical: &[CriticalPointNum], fiber: &[[f64; 2]], paths: &[(Vec<[f64; 2]>, String)]) -> String {
    let mut out = String::new();
    let side = SIZE + 40.0;
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#);
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(out, r##"<rect x="20" y="20" width="{SIZE}" height="{SIZE}" fill="#fcfcfc" stroke="#444"/>"##);
    polyline(&mut out, fiber, "#999999");
    for (p, color) in paths {
        polyline(&mut out, p, color);
    }
    for c in critical {
        let (x, y) = px(c.position);
        let color = ["#1f77b4", "#2ca02c", "#d62728"][c.index.min(2)];
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="{color}"/>"#);
    }
    out.push_str("</svg>\n");
    out
}
