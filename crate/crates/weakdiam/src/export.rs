//! Static exports of a colored graph: DOT text, SVG drawings of 2-D
//! instances, and a JSON adjacency dump.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};
use weakdiam_core::graph::{Coloring, Graph};
use weakdiam_core::metric::MetricKind;

use crate::instance::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Svg,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "dot" => Ok(Format::Dot),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (dot|svg|json)")),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct JsonExport {
    pub adjacency: Vec<Vec<usize>>,
    pub colors: Vec<u32>,
}

pub fn export(
    g: &Graph,
    coloring: &Coloring,
    format: Format,
    instance: &Instance,
    path: &Path,
) -> Result<()> {
    let text = match format {
        Format::Dot => render_dot(g, coloring),
        Format::Svg => render_svg(g, coloring, instance)?,
        Format::Json => {
            let adjacency = (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect();
            serde_json::to_string_pretty(&JsonExport {
                adjacency,
                colors: coloring.colors().to_vec(),
            })
            .expect("serializable")
        }
    };
    std::fs::write(path, text)?;
    Ok(())
}

pub fn render_dot(g: &Graph, coloring: &Coloring) -> String {
    let mut out = String::from("graph coloring {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  v{v} [color={}];", coloring.color(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  v{u} -- v{v};");
    }
    out.push_str("}\n");
    out
}

const PALETTE: &[&str] = &[
    "#4878d0", "#ee854a", "#6acc64", "#d65f5f", "#956cb4", "#8c613c", "#dc7ec0",
    "#797979", "#d5bb67", "#82c6e2",
];

fn fill(color: u32) -> &'static str {
    PALETTE[(color as usize - 1) % PALETTE.len()]
}

/// Draws each object as the convex hull of its sampled points, filled by
/// color class.  Only 2-D coordinate instances can be drawn.
pub fn render_svg(g: &Graph, coloring: &Coloring, instance: &Instance) -> Result<String> {
    let space = &instance.space;
    if space.kind() == MetricKind::Matrix || space.dimension() != 2 {
        bail!("svg export requires a 2-dimensional coordinate instance");
    }
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in 0..space.len() {
        let c = space.coords(p);
        min_x = min_x.min(c[0]);
        max_x = max_x.max(c[0]);
        min_y = min_y.min(c[1]);
        max_y = max_y.max(c[1]);
    }
    if space.len() == 0 {
        min_x = 0.0;
        min_y = 0.0;
        max_x = 1.0;
        max_y = 1.0;
    }
    let pad = 0.05 * (max_x - min_x).max(max_y - min_y).max(1.0);
    let scale = 640.0 / (max_x - min_x + 2.0 * pad).max(1e-9);
    let tx = |x: f64| (x - min_x + pad) * scale;
    let ty = |y: f64| (max_y - y + pad) * scale;
    let width = (max_x - min_x + 2.0 * pad) * scale;
    let height = (max_y - min_y + 2.0 * pad) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">"
    );
    for v in 0..g.vertex_count() {
        let pts: Vec<(f64, f64)> = instance
            .system
            .object(v)
            .iter()
            .map(|p| {
                let c = space.coords(p);
                (c[0], c[1])
            })
            .collect();
        let hull = convex_hull(&pts);
        let color = fill(coloring.color(v));
        if hull.len() == 1 {
            let _ = writeln!(
                out,
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>",
                tx(hull[0].0),
                ty(hull[0].1)
            );
        } else {
            let path: Vec<String> = hull
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", tx(x), ty(y)))
                .collect();
            let _ = writeln!(
                out,
                "  <polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.45\" stroke=\"{color}\"/>",
                path.join(" ")
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Monotone-chain convex hull; degenerate inputs (collinear, single
/// point) come back as-is reduced to their extreme points.
fn convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
