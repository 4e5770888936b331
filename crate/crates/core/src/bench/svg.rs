use std::fmt::Write as _;
use std::io::Write;

use super::ProfileCurve;
use crate::error::Result;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Static step plot of the profiles, `alpha` on a log2 axis.
pub fn write_profiles_svg<W: Write>(curves: &[ProfileCurve], title: &str, mut out: W) -> Result<()> {
    let a_max = curves
        .iter()
        .flat_map(|c| c.alpha.iter().copied())
        .fold(1.0f64, f64::max)
        .max(2.0);
    let lx_max = a_max.log2();
    let px = |a: f64| MARGIN + (a.max(1.0).log2() / lx_max) * (WIDTH - 2.0 * MARGIN);
    let py = |r: f64| HEIGHT - MARGIN - r * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    // axes
    let _ = writeln!(
        s,
        r#"<path d="M{x0},{y0} H{x1} M{x0},{y0} V{y1}" stroke="black" fill="none"/>"#,
        x0 = MARGIN,
        y0 = py(0.0),
        x1 = WIDTH - MARGIN,
        y1 = py(1.0)
    );
    let mut tick = 1.0;
    while tick <= a_max * (1.0 + 1e-12) {
        let x = px(tick);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{x:.2}" y2="{y2:.2}" stroke="black"/><text x="{x:.2}" y="{yt:.2}" text-anchor="middle">{tick}</text>"#,
            y = py(0.0),
            y2 = py(0.0) + 5.0,
            yt = py(0.0) + 18.0
        );
        tick *= 2.0;
    }
    for i in 0..=4 {
        let r = i as f64 / 4.0;
        let y = py(r);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{x2:.2}" y2="{y:.2}" stroke="black"/><text x="{xt:.2}" y="{yt:.2}" text-anchor="end">{r}</text>"#,
            x = MARGIN - 5.0,
            x2 = MARGIN,
            xt = MARGIN - 8.0,
            yt = y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">alpha</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    for (i, c) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut d = String::new();
        let mut prev: Option<f64> = None;
        for (&a, &r) in c.alpha.iter().zip(&c.rho) {
            match prev {
                None => {
                    let _ = write!(d, "M{:.2},{:.2}", px(a), py(r));
                }
                Some(_) => {
                    let _ = write!(d, " H{:.2} V{:.2}", px(a), py(r));
                }
            }
            prev = Some(r);
        }
        let _ = writeln!(s, r#"<path d="{d}" stroke="{color}" stroke-width="2" fill="none"/>"#);
        let ly = MARGIN + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{x1}" y1="{ly}" x2="{x2}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{xt}" y="{yt}">{}</text>"#,
            escape(&c.solver),
            x1 = WIDTH - MARGIN - 120.0,
            x2 = WIDTH - MARGIN - 100.0,
            xt = WIDTH - MARGIN - 95.0,
            yt = ly + 4.0
        );
    }
    s.push_str("</svg>\n");
    out.write_all(s.as_bytes())?;
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
