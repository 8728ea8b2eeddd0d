//! Pictures of a region of the Farey tessellation around the base triangle.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::bounds::triangle_labels;
use crate::error::Result;
use crate::farey::FareyTriangle;
use crate::manifold::ManifoldData;
use crate::oracle::Ball;
use crate::slope::Slope;

pub const RENDER_DEPTH_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedTriangle {
    pub triangle: FareyTriangle,
    pub label: Slope,
    pub depth: usize,
    /// Index of the parent in [`RenderSpec::triangles`].
    pub parent: Option<usize>,
    /// `(a, b)`: norm of the even label and size of the layered
    /// triangulation.
    pub labels: (u64, u64),
    /// The triangle of its even label's fan nearest to the base.
    pub canonical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub name: String,
    pub depth: usize,
    pub triangles: Vec<AnnotatedTriangle>,
    /// Surface slopes.
    pub highlight: BTreeSet<Slope>,
}

impl RenderSpec {
    pub fn new(m: &ManifoldData, depth: usize) -> Result<RenderSpec> {
        let base = m.base_triangle()?;
        let ball = Ball::with_cap(&base, depth, RENDER_DEPTH_CAP)?;
        let mut triangles = Vec::with_capacity(ball.len());
        for id in 0..ball.len() {
            let triangle = ball.triangle(id).clone();
            let label = triangle.even_label(m.even_class).clone();
            let canonical = base.project_to_fan(&label) == triangle;
            triangles.push(AnnotatedTriangle {
                labels: triangle_labels(m, &triangle)?,
                parent: ball.parent(id),
                depth: ball.depth(id),
                canonical,
                label,
                triangle,
            });
        }
        Ok(RenderSpec {
            name: m.name.clone(),
            depth,
            triangles,
            highlight: m.surfaces.iter().filter_map(|r| r.slope.clone()).collect(),
        })
    }

    /// The `(a, b)` annotation of the canonical triangle of `slope`, if it
    /// is in the picture.
    pub fn labels_of(&self, slope: &Slope) -> Option<(u64, u64)> {
        self.triangles
            .iter()
            .find(|t| t.canonical && &t.label == slope)
            .map(|t| t.labels)
    }
}

fn to_f64(slope: &Slope) -> (f64, f64) {
    let parse = |s: String| s.parse::<f64>().expect("decimal integer");
    (parse(slope.p().to_string()), parse(slope.q().to_string()))
}

const SIZE: f64 = 1000.0;
const CENTER: f64 = 500.0;
const RADIUS: f64 = 420.0;

/// Position on the boundary circle: `p/q` sits at angle `2 atan2(p, q)`.
fn point(slope: &Slope, radius: f64) -> (f64, f64) {
    let (p, q) = to_f64(slope);
    let theta = 2.0 * p.atan2(q);
    (CENTER + radius * theta.cos(), CENTER - radius * theta.sin())
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render_svg(spec: &RenderSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif">"#
    );
    let _ = writeln!(
        out,
        "<title>{} (depth {})</title>",
        escape(&spec.name),
        spec.depth
    );
    let _ = writeln!(
        out,
        r#"<circle cx="{CENTER:.3}" cy="{CENTER:.3}" r="{RADIUS:.3}" fill="none" stroke="black"/>"#
    );
    for (i, t) in spec.triangles.iter().enumerate() {
        let fill = if i == 0 {
            "#8fd18f"
        } else if t.canonical {
            "#f5e17a"
        } else {
            "#ffffff"
        };
        let pts: Vec<(f64, f64)> = t
            .triangle
            .vertices()
            .iter()
            .map(|v| point(v, RADIUS))
            .collect();
        let list = pts
            .iter()
            .map(|(x, y)| format!("{x:.3},{y:.3}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            r#"<polygon points="{list}" fill="{fill}" stroke="black" stroke-width="0.5"/>"#
        );
        let cx = pts.iter().map(|p| p.0).sum::<f64>() / 3.0;
        let cy = pts.iter().map(|p| p.1).sum::<f64>() / 3.0;
        let font = (14.0 - t.depth as f64).max(4.0);
        let _ = writeln!(
            out,
            r#"<text x="{cx:.3}" y="{cy:.3}" font-size="{font:.1}" text-anchor="middle">({},{})</text>"#,
            t.labels.0, t.labels.1
        );
    }
    let slopes: BTreeSet<&Slope> = spec
        .triangles
        .iter()
        .flat_map(|t| t.triangle.vertices().iter())
        .collect();
    for slope in slopes {
        let (x, y) = point(slope, RADIUS + 18.0);
        let (color, weight) = if spec.highlight.contains(slope) {
            ("#1a8a1a", "bold")
        } else {
            ("black", "normal")
        };
        let _ = writeln!(
            out,
            r#"<text x="{x:.3}" y="{y:.3}" font-size="10.0" text-anchor="middle" fill="{color}" font-weight="{weight}">{}</text>"#,
            escape(&slope.to_string())
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_dot(spec: &RenderSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph farey {{");
    let _ = writeln!(
        out,
        "  label=\"{} (depth {})\";",
        spec.name.replace('"', "'"),
        spec.depth
    );
    let _ = writeln!(out, "  node [shape=box, style=filled, fillcolor=white];");
    for (i, t) in spec.triangles.iter().enumerate() {
        let color = if i == 0 {
            "palegreen"
        } else if t.canonical {
            "khaki1"
        } else {
            "white"
        };
        let mut vertices = Vec::new();
        for v in t.triangle.vertices() {
            if spec.highlight.contains(v) {
                vertices.push(format!("[{v}]"));
            } else {
                vertices.push(v.to_string());
            }
        }
        let _ = writeln!(
            out,
            "  n{i} [label=\"{}\\n({},{})\", fillcolor={color}];",
            vertices.join(" "),
            t.labels.0,
            t.labels.1
        );
    }
    for (i, t) in spec.triangles.iter().enumerate() {
        let Some(parent) = t.parent else { continue };
        let parent_triangle = &spec.triangles[parent].triangle;
        let layered = parent_triangle
            .vertices()
            .iter()
            .find(|v| !t.triangle.contains(v))
            .expect("adjacent triangles differ in one vertex");
        let _ = writeln!(out, "  n{parent} -- n{i} [label=\"{layered}\"];");
    }
    out.push_str("}\n");
    out
}
