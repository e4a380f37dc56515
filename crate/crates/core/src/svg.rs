//! SVG export of 2D embedded G-maps: faces as filled polygons, edges as
//! segments, vertices as dots.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gmap::{link, orbit_partition, GMap, OrbitType};
use crate::graph::ArcLabel;
use crate::value::{Sort, Value};

const SCALE: f64 = 100.0;
const MARGIN: f64 = 20.0;

fn orbit_type(labels: &[u8]) -> OrbitType {
    OrbitType::new(labels.iter().copied()).expect("static orbit type")
}

/// Name of the embedding with the given sort on the given domain.
fn find_embedding(g: &GMap, sort: Sort, domain: &OrbitType) -> Option<String> {
    g.spec
        .embeddings()
        .find(|op| op.sort == sort && &op.domain == domain)
        .map(|op| op.name.clone())
}

/// Points met by walking `a0` then `a1` from `seed` until the walk closes
/// or leaves the map.
fn face_polygon(g: &GMap, point: &str, seed: &str, size: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut cur = seed.to_string();
    for _ in 0..size {
        let Some(p) = g.graph.label(&cur, point).and_then(Value::to_f64_pair) else { break };
        out.push(p);
        let next = link(&g.graph, &cur, ArcLabel(0)).and_then(|n| link(&g.graph, &n, ArcLabel(1)));
        match next {
            Ok(n) if n != seed => cur = n,
            _ => break,
        }
    }
    out
}

fn css_color(v: Option<&Value>) -> String {
    match v.and_then(Value::to_rgb8) {
        Some([r, g, b]) => format!("#{r:02X}{g:02X}{b:02X}"),
        None => "none".to_string(),
    }
}

/// Renders a 2-G-map whose vertices carry a point embedding.
pub fn render(g: &GMap) -> Result<String> {
    if g.dimension() != 2 {
        return Err(Error::Unsupported(format!("cannot render a {}-G-map", g.dimension())));
    }
    let vertex = orbit_type(&[1, 2]);
    let point = find_embedding(g, Sort::Point, &vertex)
        .ok_or_else(|| Error::Unsupported("no point embedding on <a1 a2>".into()))?;
    let color = find_embedding(g, Sort::Color, &orbit_type(&[0, 1]));

    let coords: Vec<(f64, f64)> = g
        .graph
        .nodes()
        .filter_map(|n| g.graph.label(n, &point).and_then(Value::to_f64_pair))
        .collect();
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(&(x, y)) = coords.first() {
        (x0, y0, x1, y1) = (x, y, x, y);
    }
    for &(x, y) in &coords {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let width = (x1 - x0) * SCALE + 2.0 * MARGIN;
    let height = (y1 - y0) * SCALE + 2.0 * MARGIN;
    let tx = |x: f64| (x - x0) * SCALE + MARGIN;
    let ty = |y: f64| (y1 - y) * SCALE + MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );

    for face in orbit_partition(&g.graph, &orbit_type(&[0, 1])) {
        let poly = face_polygon(g, &point, &face.seed, face.nodes.len());
        if poly.len() < 3 {
            continue;
        }
        let fill = css_color(color.as_ref().and_then(|c| g.graph.label(&face.seed, c)));
        let pts: Vec<String> = poly.iter().map(|&(x, y)| format!("{:.2},{:.2}", tx(x), ty(y))).collect();
        let _ = writeln!(out, r#"  <polygon class="face" points="{}" fill="{fill}"/>"#, pts.join(" "));
    }

    for edge in orbit_partition(&g.graph, &orbit_type(&[0, 2])) {
        let a = g.graph.label(&edge.seed, &point).and_then(Value::to_f64_pair);
        let b = link(&g.graph, &edge.seed, ArcLabel(0))
            .ok()
            .and_then(|n| g.graph.label(&n, &point).and_then(Value::to_f64_pair));
        if let (Some((ax, ay)), Some((bx, by))) = (a, b) {
            let _ = writeln!(
                out,
                r#"  <line class="edge" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
                tx(ax),
                ty(ay),
                tx(bx),
                ty(by)
            );
        }
    }

    for v in orbit_partition(&g.graph, &vertex) {
        if let Some((x, y)) = g.graph.label(&v.seed, &point).and_then(Value::to_f64_pair) {
            let _ = writeln!(out, r#"  <circle class="vertex" cx="{:.2}" cy="{:.2}" r="4"/>"#, tx(x), ty(y));
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
