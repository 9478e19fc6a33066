//! SVG figures of line configurations in an affine chart.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use pg0_core::burniat::{campedelli_bridge, BurniatConfig};
use pg0_core::plane_geom::arrangement_singular_points;
use pg0_core::{ProjLine, ProjPoint, Rat};

use crate::config::ConfigDocument;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ChartChoice {
    Xy,
    Xz,
    Yz,
    #[default]
    Auto,
}

impl FromStr for ChartChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "xy" => Ok(ChartChoice::Xy),
            "xz" => Ok(ChartChoice::Xz),
            "yz" => Ok(ChartChoice::Yz),
            "auto" => Ok(ChartChoice::Auto),
            _ => Err(format!("unknown chart {s:?}; expected xy, xz, yz or auto")),
        }
    }
}

/// Affine chart `p ↦ (f(p)/h(p), g(p)/h(p))` with `h = 0` the line at
/// infinity.
#[derive(Clone, Debug)]
struct Chart {
    name: &'static str,
    f: [i64; 3],
    g: [i64; 3],
    h: [i64; 3],
}

const COORDINATE_CHARTS: [Chart; 3] = [
    Chart { name: "xy", f: [1, 0, 0], g: [0, 1, 0], h: [0, 0, 1] },
    Chart { name: "xz", f: [1, 0, 0], g: [0, 0, 1], h: [0, 1, 0] },
    Chart { name: "yz", f: [0, 1, 0], g: [0, 0, 1], h: [1, 0, 0] },
];

// The coordinate triangle puts two vertices at infinity in every coordinate
// chart, so auto mode falls back on these.
const GENERIC_CHARTS: [Chart; 4] = [
    Chart { name: "x+y+z", f: [1, 0, 0], g: [0, 1, 0], h: [1, 1, 1] },
    Chart { name: "x+2y+3z", f: [1, 0, 0], g: [0, 1, 0], h: [1, 2, 3] },
    Chart { name: "3x+5y+7z", f: [1, 0, 0], g: [0, 1, 0], h: [3, 5, 7] },
    Chart { name: "2x-y+11z", f: [1, 0, 0], g: [0, 1, 0], h: [2, -1, 11] },
];

fn dot(a: &[i64; 3], p: &[Rat; 3]) -> Rat {
    (0..3).map(|i| Rat::from_integer(a[i].into()) * &p[i]).sum()
}

impl Chart {
    fn affine(&self, p: &ProjPoint) -> Option<(Rat, Rat)> {
        let c = p.rat_coords();
        let h = dot(&self.h, &c);
        if h.is_zero() {
            return None;
        }
        Some((dot(&self.f, &c) / &h, dot(&self.g, &c) / &h))
    }

    /// `(α, β, γ)` with the line given by `αX + βY + γ = 0` in the chart.
    fn affine_line(&self, l: &ProjLine) -> Option<[Rat; 3]> {
        let m = [self.f, self.g, self.h].map(|r| r.map(|x| Rat::from_integer(x.into())));
        // adjugate of M, proportional to its inverse
        let cof = |i: usize, j: usize| {
            let (r0, r1, c0, c1) = ((i + 1) % 3, (i + 2) % 3, (j + 1) % 3, (j + 2) % 3);
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        let adj: [[Rat; 3]; 3] = std::array::from_fn(|k| std::array::from_fn(|j| cof(j, k)));
        let lc = l.rat_coords();
        let coeffs: [Rat; 3] = std::array::from_fn(|j| (0..3).map(|k| &lc[k] * &adj[k][j]).sum());
        (!(coeffs[0].is_zero() && coeffs[1].is_zero())).then_some(coeffs)
    }
}

#[derive(Clone, Debug)]
pub struct Figure {
    pub title: String,
    /// Line and its CSS class.
    pub lines: Vec<(ProjLine, String)>,
    pub points: Vec<(ProjPoint, String)>,
    pub highlights: Vec<ProjPoint>,
}

fn triple_points(lines: &[ProjLine], skip: &[ProjPoint]) -> Vec<ProjPoint> {
    arrangement_singular_points(lines)
        .map(|pts| {
            pts.into_iter()
                .filter(|s| s.multiplicity >= 3 && !skip.contains(&s.point))
                .map(|s| s.point)
                .collect()
        })
        .unwrap_or_default()
}

pub fn burniat_figure(title: &str, cfg: &BurniatConfig) -> Figure {
    let lines: Vec<(ProjLine, String)> = cfg
        .pencils
        .iter()
        .enumerate()
        .flat_map(|(i, pen)| pen.iter().map(move |l| (l.clone(), format!("pencil-{}", i + 1))))
        .collect();
    let mut points: Vec<(ProjPoint, String)> =
        cfg.vertices.iter().enumerate().map(|(i, p)| (p.clone(), format!("P{}", i + 1))).collect();
    for (k, p) in cfg.extra_points.iter().enumerate() {
        let label = if cfg.m() == 3 { format!("P'{}", 3 - k) } else { format!("P{}", k + 4) };
        points.push((p.clone(), label));
    }
    let plain: Vec<ProjLine> = lines.iter().map(|(l, _)| l.clone()).collect();
    Figure { title: title.into(), highlights: triple_points(&plain, &cfg.vertices), lines, points }
}

pub fn line_figure(title: &str, lines: &[ProjLine]) -> Figure {
    Figure {
        title: title.into(),
        lines: lines.iter().map(|l| (l.clone(), "campedelli".to_string())).collect(),
        points: vec![],
        highlights: triple_points(lines, &[]),
    }
}

/// Figure for a document: the Burniat configuration, or with `bridge` its
/// seven-line Campedelli configuration, or the standalone seven lines.
pub fn document_figure(doc: &ConfigDocument, bridge: bool) -> Result<Figure, String> {
    let title = doc.name.clone().unwrap_or_else(|| "configuration".into());
    match (doc.burniat(), doc.campedelli_lines()) {
        (Some(cfg), _) if bridge => {
            let b = campedelli_bridge(&cfg).map_err(|e| e.to_string())?;
            Ok(line_figure(&format!("{title} (Campedelli lines)"), b.lines()))
        }
        (Some(cfg), _) => Ok(burniat_figure(&title, &cfg)),
        (None, Some(lines)) => Ok(line_figure(&title, &lines)),
        (None, None) => Err("document has no lines to draw".into()),
    }
}

fn chart_fits(chart: &Chart, fig: &Figure) -> bool {
    fig.points.iter().map(|(p, _)| p).chain(&fig.highlights).all(|p| chart.affine(p).is_some())
        && fig.lines.iter().all(|(l, _)| chart.affine_line(l).is_some())
}

fn pick_chart(fig: &Figure, choice: ChartChoice) -> Result<Chart, String> {
    let candidates: Vec<&Chart> = match choice {
        ChartChoice::Xy => vec![&COORDINATE_CHARTS[0]],
        ChartChoice::Xz => vec![&COORDINATE_CHARTS[1]],
        ChartChoice::Yz => vec![&COORDINATE_CHARTS[2]],
        ChartChoice::Auto => COORDINATE_CHARTS.iter().chain(&GENERIC_CHARTS).collect(),
    };
    candidates
        .into_iter()
        .find(|c| chart_fits(c, fig))
        .cloned()
        .ok_or_else(|| format!("no {choice:?} chart shows every point and line of the figure"))
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" { "0.000".into() } else { s }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const SIZE: f64 = 600.0;
const PAD: f64 = 40.0;
const COLORS: [(&str, &str); 4] =
    [("pencil-1", "#1f77b4"), ("pencil-2", "#2ca02c"), ("pencil-3", "#9467bd"), ("campedelli", "#444444")];

pub fn render_svg(fig: &Figure, choice: ChartChoice) -> Result<String, String> {
    let chart = pick_chart(fig, choice)?;
    let to_f = |(x, y): (Rat, Rat)| (x.to_f64().unwrap_or(0.0), y.to_f64().unwrap_or(0.0));

    let plain: Vec<ProjLine> = fig.lines.iter().map(|(l, _)| l.clone()).collect();
    let mut frame: Vec<(f64, f64)> = fig
        .points
        .iter()
        .map(|(p, _)| p)
        .chain(&fig.highlights)
        .filter_map(|p| chart.affine(p).map(to_f))
        .collect();
    if let Ok(pts) = arrangement_singular_points(&plain) {
        frame.extend(pts.iter().filter_map(|s| chart.affine(&s.point).map(to_f)));
    }
    if frame.is_empty() {
        frame.push((0.0, 0.0));
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &frame {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.15 * span;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let half = span / 2.0 + margin;
    let (bx0, bx1, by0, by1) = (cx - half, cx + half, cy - half, cy + half);
    let scale = (SIZE - 2.0 * PAD) / (2.0 * half);
    let sx = |x: f64| PAD + (x - bx0) * scale;
    let sy = |y: f64| SIZE - PAD - (y - by0) * scale;

    let mut svg = String::new();
    let w = &mut svg;
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    )
    .unwrap();
    writeln!(w, "<title>{}</title>", esc(&fig.title)).unwrap();
    writeln!(w, "<desc>affine chart {} (line at infinity {}:{}:{})</desc>", chart.name, chart.h[0], chart.h[1], chart.h[2]).unwrap();
    writeln!(w, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();

    writeln!(w, r#"<g id="lines" stroke-width="1.5">"#).unwrap();
    for (l, class) in &fig.lines {
        let [a, b, c] = chart.affine_line(l).expect("chart checked").map(|r| r.to_f64().unwrap_or(0.0));
        // crossings with the four sides of the box
        let mut hits: Vec<(f64, f64)> = Vec::new();
        if b.abs() > 1e-12 {
            for x in [bx0, bx1] {
                let y = -(a * x + c) / b;
                if (by0 - 1e-9..=by1 + 1e-9).contains(&y) {
                    hits.push((x, y));
                }
            }
        }
        if a.abs() > 1e-12 {
            for y in [by0, by1] {
                let x = -(b * y + c) / a;
                if (bx0 - 1e-9..=bx1 + 1e-9).contains(&x) {
                    hits.push((x, y));
                }
            }
        }
        let along = |(x, y): &(f64, f64)| -b * x + a * y;
        hits.sort_by(|p, q| along(p).total_cmp(&along(q)));
        let (Some(p), Some(q)) = (hits.first(), hits.last()) else { continue };
        let color = COLORS.iter().find(|(k, _)| k == class).map_or("#000000", |(_, c)| c);
        writeln!(
            w,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}"/>"#,
            num(sx(p.0)),
            num(sy(p.1)),
            num(sx(q.0)),
            num(sy(q.1))
        )
        .unwrap();
    }
    writeln!(w, "</g>").unwrap();

    writeln!(w, r#"<g id="triple-points">"#).unwrap();
    for p in &fig.highlights {
        let (x, y) = to_f(chart.affine(p).expect("chart checked"));
        writeln!(
            w,
            r##"<circle class="triple-point" cx="{}" cy="{}" r="8" fill="none" stroke="#d62728" stroke-width="2"/>"##,
            num(sx(x)),
            num(sy(y))
        )
        .unwrap();
    }
    writeln!(w, "</g>").unwrap();

    writeln!(w, r#"<g id="points" font-family="serif" font-size="16">"#).unwrap();
    for (p, label) in &fig.points {
        let (x, y) = to_f(chart.affine(p).expect("chart checked"));
        let (px, py) = (sx(x), sy(y));
        writeln!(w, r#"<circle class="point" cx="{}" cy="{}" r="4" fill="black"/>"#, num(px), num(py)).unwrap();
        writeln!(w, r#"<text x="{}" y="{}">{}</text>"#, num(px + 7.0), num(py - 7.0), esc(label)).unwrap();
    }
    writeln!(w, "</g>").unwrap();
    writeln!(w, "</svg>").unwrap();
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pg0_core::burniat::examples;

    fn count(s: &str, pat: &str) -> usize {
        s.matches(pat).count()
    }

    #[test]
    fn primary_figure() {
        let svg = render_svg(&burniat_figure("primary", &examples::primary()), ChartChoice::Auto).unwrap();
        assert_eq!(count(&svg, "<line "), 9);
        assert_eq!(count(&svg, "<text "), 3);
        assert_eq!(count(&svg, r#"class="triple-point""#), 0);
        assert!(svg.contains("x+y+z"));
    }

    #[test]
    fn tertiary_figure() {
        let svg = render_svg(&burniat_figure("tertiary", &examples::tertiary()), ChartChoice::Auto).unwrap();
        assert_eq!(count(&svg, "<line "), 9);
        assert_eq!(count(&svg, "<text "), 6);
        assert_eq!(count(&svg, r#"class="triple-point""#), 3);
    }

    #[test]
    fn coordinate_chart_refused() {
        let fig = burniat_figure("primary", &examples::primary());
        assert!(render_svg(&fig, ChartChoice::Xy).is_err());
    }

    #[test]
    fn bridge_lines() {
        let cfg = examples::quaternary();
        let b = campedelli_bridge(&cfg).unwrap();
        let svg = render_svg(&line_figure("bridge", b.lines()), ChartChoice::Auto).unwrap();
        assert_eq!(count(&svg, "<line "), 7);
        assert_eq!(count(&svg, r#"class="triple-point""#), 6);
    }

    #[test]
    fn deterministic() {
        let fig = burniat_figure("nodal", &examples::secondary_nodal());
        assert_eq!(render_svg(&fig, ChartChoice::Auto), render_svg(&fig, ChartChoice::Auto));
    }
}
