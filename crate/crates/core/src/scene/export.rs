use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Scene;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Svg,
    Obj,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            "obj" => Ok(Format::Obj),
            _ => Err(Error::InvalidParameter(format!("unknown format {s:?}"))),
        }
    }
}

/// Orthographic view used to draw 3D scenes in SVG.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Camera {
    /// Rotation about the z-axis, radians.
    pub azimuth: f64,
    /// Tilt towards the viewer, radians.
    pub elevation: f64,
}

impl Default for Camera {
    fn default() -> Self {
        Camera { azimuth: 0.5, elevation: 0.4 }
    }
}

impl Camera {
    fn project(&self, p: &[f64]) -> [f64; 2] {
        let (sa, ca) = self.azimuth.sin_cos();
        let (se, ce) = self.elevation.sin_cos();
        let x = ca * p[0] - sa * p[1];
        let y = sa * p[0] + ca * p[1];
        [x, ce * p[2] + se * y]
    }
}

/// Width and height of the SVG canvas.
pub const SVG_SIZE: f64 = 800.0;
pub const SVG_MARGIN: f64 = 40.0;

pub fn export(scene: &Scene, format: Format, camera: Option<Camera>) -> Result<Vec<u8>> {
    scene.validate()?;
    Ok(match format {
        Format::Json => scene.to_json().into_bytes(),
        Format::Svg => svg(scene, camera)?.into_bytes(),
        Format::Obj => obj(scene).into_bytes(),
    })
}

fn svg(scene: &Scene, camera: Option<Camera>) -> Result<String> {
    let pts: Vec<[f64; 2]> = match (scene.dim(), camera) {
        (Some(3), Some(c)) => scene.nodes.iter().map(|n| c.project(&n.position)).collect(),
        (Some(3), None) => return Err(Error::DimensionMismatch { expected: 2, found: 3 }),
        _ => scene.nodes.iter().map(|n| [n.position[0], n.position[1]]).collect(),
    };
    let lo = [0, 1].map(|k| pts.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min));
    let hi = [0, 1].map(|k| pts.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max));
    let extent = if pts.is_empty() { 0.0 } else { (hi[0] - lo[0]).max(hi[1] - lo[1]) };
    let scale = if extent > 0.0 { (SVG_SIZE - 2.0 * SVG_MARGIN) / extent } else { 1.0 };
    let map = |p: &[f64; 2]| [SVG_MARGIN + (p[0] - lo[0]) * scale, SVG_SIZE - SVG_MARGIN - (p[1] - lo[1]) * scale];
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}" data-scale="{scale}">"#
    )
    .unwrap();
    for e in &scene.edges {
        let (a, b) = (map(&pts[e.source]), map(&pts[e.target]));
        let color = e.color.as_deref().unwrap_or("#333333");
        let dash = if e.kind == super::EdgeKind::Artificial { r#" stroke-dasharray="4 3""# } else { "" };
        writeln!(
            out,
            r#"  <line x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="{color}" stroke-width="1.5"{dash}/>"#,
            a[0], a[1], b[0], b[1]
        )
        .unwrap();
    }
    for (n, p) in scene.nodes.iter().zip(&pts) {
        let q = map(p);
        let color = n.color.as_deref().unwrap_or("#000000");
        writeln!(out, r#"  <circle cx="{:.4}" cy="{:.4}" r="3" fill="{color}"/>"#, q[0], q[1]).unwrap();
        if !n.label.is_empty() {
            writeln!(out, r#"  <text x="{:.4}" y="{:.4}" font-size="11">{}</text>"#, q[0] + 4.0, q[1] - 4.0, escape(&n.label))
                .unwrap();
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn obj(scene: &Scene) -> String {
    let mut out = format!("# {}\n", scene.metadata.operation);
    for n in &scene.nodes {
        let z = n.position.get(2).copied().unwrap_or(0.0);
        writeln!(out, "v {:?} {:?} {:?}", n.position[0], n.position[1], z).unwrap();
    }
    let mut on_face = std::collections::BTreeSet::new();
    for f in &scene.faces {
        let idx: Vec<String> = f.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(out, "f {}", idx.join(" ")).unwrap();
        for i in 0..f.len() {
            let (a, b) = (f[i], f[(i + 1) % f.len()]);
            on_face.insert((a.min(b), a.max(b)));
        }
    }
    for e in &scene.edges {
        if !on_face.contains(&(e.source.min(e.target), e.source.max(e.target))) {
            writeln!(out, "l {} {}", e.source + 1, e.target + 1).unwrap();
        }
    }
    out
}
