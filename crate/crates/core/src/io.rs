// SPDX-License-Identifier: Apache-2.0

//! Curve and quadrilateral specs, result files, trace CSV and SVG overlays.
//!
//! Specs are JSON. A spec argument may also name a preset directly:
//!
//! | curve presets | quadrilateral presets |
//! |---|---|
//! | `circle:R`, `ellipse:A,B`, `unit-square`, `figure1-triangle` | `square`, `rectangle:ASPECT`, `kite-figure1` |

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::approx::{polygon_residual, smooth_polygon};
use crate::curve::{ConvexCurve, ConvexPolygon};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::quad::{CyclicQuad, Drawing, Vertex};
use crate::solver::{drawing_residual, InscriptionResult, LocusTrace, Perturbation, Status};

/// Curve description as stored in JSON, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CurveSpec {
    Circle {
        radius: f64,
        #[serde(default)]
        center: Point,
    },
    Ellipse {
        a: f64,
        b: f64,
        #[serde(default)]
        center: Point,
        #[serde(default)]
        rotation: f64,
    },
    /// Convex polygon, counterclockwise.
    Polygon { vertices: Vec<Point> },
    /// Convex polygon smoothed at a fixed radius.
    SmoothedPolygon { vertices: Vec<Point>, radius: f64 },
    /// Uniform samples of the support function about `center`.
    SupportSamples {
        #[serde(alias = "h")]
        samples: Vec<f64>,
        #[serde(default)]
        center: Point,
    },
}

/// What an inscription is sought in.
#[derive(Clone, Debug)]
pub enum Target {
    Curve(ConvexCurve),
    Polygon(ConvexPolygon),
}

impl Target {
    pub fn diameter(&self) -> f64 {
        match self {
            Target::Curve(c) => c.diameter(),
            Target::Polygon(p) => p.diameter(),
        }
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        match self {
            Target::Curve(c) => c.signed_distance(p),
            Target::Polygon(poly) => poly.signed_distance(p),
        }
    }

    /// Largest `|signed distance|` over the vertices of `quad` under `d`.
    pub fn residual(&self, quad: &CyclicQuad, d: &Drawing) -> f64 {
        match self {
            Target::Curve(c) => drawing_residual(c, quad, d),
            Target::Polygon(p) => polygon_residual(p, quad, d),
        }
    }

    /// Closed outline for plotting.
    pub fn outline(&self) -> Vec<Point> {
        match self {
            Target::Curve(c) => c.sample_by_normal(720),
            Target::Polygon(p) => p.vertices().to_vec(),
        }
    }
}

impl CurveSpec {
    pub fn build(&self) -> Result<Target> {
        let field = |e: Error, name: &str| match e {
            Error::Spec { .. } => e,
            other => Error::spec(name, other.to_string()),
        };
        match self {
            CurveSpec::Circle { radius, center } => {
                ConvexCurve::circle(*radius, *center).map(Target::Curve).map_err(|e| field(e, "radius"))
            }
            CurveSpec::Ellipse { a, b, center, rotation } => ConvexCurve::ellipse_with(*a, *b, *center, *rotation)
                .map(Target::Curve)
                .map_err(|e| field(e, "a/b")),
            CurveSpec::Polygon { vertices } => {
                ConvexPolygon::new(vertices.clone()).map(Target::Polygon).map_err(|e| field(e, "vertices"))
            }
            CurveSpec::SmoothedPolygon { vertices, radius } => {
                let poly = ConvexPolygon::new(vertices.clone()).map_err(|e| field(e, "vertices"))?;
                smooth_polygon(&poly, *radius).map(Target::Curve).map_err(|e| field(e, "radius"))
            }
            CurveSpec::SupportSamples { samples, center } => ConvexCurve::from_support_samples(samples.clone(), *center)
                .map(Target::Curve)
                .map_err(|e| field(e, "samples")),
        }
    }

    pub fn preset(name: &str) -> Result<CurveSpec> {
        let (head, args) = split_preset(name);
        let nums = parse_args("curve", args)?;
        let spec = match (head, nums.as_slice()) {
            ("circle", [r]) => CurveSpec::Circle { radius: *r, center: Point::ORIGIN },
            ("circle", []) => CurveSpec::Circle { radius: 1.0, center: Point::ORIGIN },
            ("ellipse", [a, b]) => CurveSpec::Ellipse { a: *a, b: *b, center: Point::ORIGIN, rotation: 0.0 },
            ("unit-square", []) => CurveSpec::Polygon { vertices: ConvexPolygon::unit_square().vertices().to_vec() },
            ("figure1-triangle", []) => {
                CurveSpec::Polygon { vertices: ConvexPolygon::thin_triangle().vertices().to_vec() }
            }
            _ => return Err(Error::spec("curve", format!("unknown curve preset {name:?}"))),
        };
        Ok(spec)
    }
}

/// Quadrilateral description: `{"phis": [...]}`, `{"preset": "rectangle", "aspect": 2}`
/// or a preset name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuadSpec {
    Angles {
        phis: [f64; 4],
    },
    Named {
        preset: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        aspect: Option<f64>,
    },
    Preset(String),
}

impl QuadSpec {
    pub fn build(&self) -> Result<CyclicQuad> {
        match self {
            QuadSpec::Angles { phis } => CyclicQuad::new(*phis).map_err(|e| Error::spec("phis", e.to_string())),
            QuadSpec::Named { preset, aspect: Some(aspect) } if preset == "rectangle" => {
                CyclicQuad::rectangle(*aspect).map_err(|e| Error::spec("aspect", e.to_string()))
            }
            QuadSpec::Named { preset, aspect: None } | QuadSpec::Preset(preset) => quad_preset(preset),
            QuadSpec::Named { preset, .. } => Err(Error::spec("aspect", format!("preset {preset:?} takes no aspect"))),
        }
    }
}

pub fn quad_preset(name: &str) -> Result<CyclicQuad> {
    let (head, args) = split_preset(name);
    let nums = parse_args("quad", args)?;
    match (head, nums.as_slice()) {
        ("square", []) => Ok(CyclicQuad::square()),
        ("kite-figure1", []) => Ok(CyclicQuad::kite()),
        ("rectangle", [aspect]) => CyclicQuad::rectangle(*aspect).map_err(|e| Error::spec("quad", e.to_string())),
        _ => Err(Error::spec("quad", format!("unknown quadrilateral preset {name:?}"))),
    }
}

fn split_preset(name: &str) -> (&str, &str) {
    name.split_once(':').unwrap_or((name, ""))
}

fn parse_args(field: &str, args: &str) -> Result<Vec<f64>> {
    if args.is_empty() {
        return Ok(Vec::new());
    }
    args.split(',')
        .map(|a| a.trim().parse::<f64>().map_err(|_| Error::spec(field, format!("preset argument {a:?} is not a number"))))
        .collect()
}

fn read_spec<T: for<'de> Deserialize<'de>>(arg: &str, field: &str, preset: impl Fn(&str) -> Result<T>) -> Result<T> {
    let path = Path::new(arg);
    if !path.exists() {
        return preset(arg);
    }
    let text = std::fs::read_to_string(path)?;
    if let Ok(name) = serde_json::from_str::<String>(&text) {
        return preset(&name);
    }
    serde_json::from_str(&text).map_err(|e| Error::spec(field, format!("{}: {e}", path.display())))
}

/// Load a curve from a JSON file path or a preset name.
pub fn load_curve(arg: &str) -> Result<Target> {
    read_spec(arg, "curve", CurveSpec::preset)?.build()
}

/// Load a quadrilateral from a JSON file path or a preset name.
pub fn load_quad(arg: &str) -> Result<CyclicQuad> {
    read_spec(arg, "quad", |name| Ok(QuadSpec::Preset(name.to_string())))?.build()
}

/// Serialized outcome of an inscription.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub status: Status,
    pub drawing: Option<Drawing>,
    pub residual: Option<f64>,
    pub vertices: Option<[Point; 4]>,
    pub free_vertex: Option<Vertex>,
    pub alpha_bracket: Option<(f64, f64)>,
    /// The quadrilateral the drawing applies to.
    pub quad: CyclicQuad,
    pub perturbation: Option<Perturbation>,
    pub candidates: usize,
}

impl From<&InscriptionResult> for ResultFile {
    fn from(r: &InscriptionResult) -> Self {
        ResultFile {
            status: r.status,
            drawing: r.drawing,
            residual: r.residual.is_finite().then_some(r.residual),
            vertices: r.vertices,
            free_vertex: r.free_vertex,
            alpha_bracket: r.alpha_bracket,
            quad: r.quad,
            perturbation: r.perturbation,
            candidates: r.candidates.len(),
        }
    }
}

impl ResultFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Residual of the stored drawing recomputed against `target`.
    pub fn recompute_residual(&self, target: &Target) -> Option<f64> {
        self.drawing.map(|d| target.residual(&self.quad, &d))
    }
}

/// Seventeen significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Trace rows `alpha,x,y,scale` with a header line.
pub fn trace_csv(trace: &LocusTrace) -> String {
    let mut out = String::from("alpha,x,y,scale\n");
    for s in &trace.samples {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(s.alpha),
            fmt_f64(s.free_point.x),
            fmt_f64(s.free_point.y),
            fmt_f64(s.drawing.scale)
        );
    }
    out
}

/// Parse rows written by [`trace_csv`] into `(alpha, point, scale)`.
pub fn parse_trace_csv(text: &str) -> Result<Vec<(f64, Point, f64)>> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate().skip(1) {
        let cols: Vec<f64> = line
            .split(',')
            .map(|c| c.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::spec("csv", format!("line {}: {e}", k + 1)))?;
        if cols.len() != 4 {
            return Err(Error::spec("csv", format!("line {}: expected 4 columns", k + 1)));
        }
        rows.push((cols[0], Point::new(cols[1], cols[2]), cols[3]));
    }
    Ok(rows)
}

/// A closed or open polyline with a stroke color.
pub struct Layer<'a> {
    pub points: &'a [Point],
    pub closed: bool,
    pub color: &'a str,
}

/// SVG drawing of the layers, y axis pointing up.
pub fn svg_overlay(layers: &[Layer<'_>]) -> String {
    let all = layers.iter().flat_map(|l| l.points.iter());
    let (mut lo, mut hi) = (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in all {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let pad = 0.05 * (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let stroke = 0.004 * w.max(h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        fmt_f64(lo.x - pad),
        fmt_f64(-hi.y - pad),
        fmt_f64(w),
        fmt_f64(h),
        (800.0 * h / w).round()
    );
    for layer in layers {
        let tag = if layer.closed { "polygon" } else { "polyline" };
        let pts: Vec<String> = layer.points.iter().map(|p| format!("{},{}", fmt_f64(p.x), fmt_f64(-p.y))).collect();
        let _ = writeln!(
            out,
            r#"<{tag} points="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
            pts.join(" "),
            layer.color,
            fmt_f64(stroke)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        assert!(matches!(load_curve("ellipse:2,1").unwrap(), Target::Curve(_)));
        assert!(matches!(load_curve("figure1-triangle").unwrap(), Target::Polygon(_)));
        assert_eq!(load_quad("kite-figure1").unwrap(), CyclicQuad::kite());
        assert!(load_quad("rectangle:2").is_ok());
        assert!(matches!(load_quad("hexagon"), Err(Error::Spec { .. })));
        assert!(matches!(load_curve("ellipse:2,x"), Err(Error::Spec { .. })));
    }

    #[test]
    fn curve_spec_json() {
        let s: CurveSpec = serde_json::from_str(r#"{"kind":"ellipse","a":2,"b":1}"#).unwrap();
        assert!(s.build().is_ok());
        let err = serde_json::from_str::<CurveSpec>(r#"{"kind":"ellipse","a":2}"#).unwrap_err();
        assert!(err.to_string().contains("`b`"));
        let bad = CurveSpec::Circle { radius: -1.0, center: Point::ORIGIN };
        match bad.build() {
            Err(Error::Spec { field, .. }) => assert_eq!(field, "radius"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quad_spec_json() {
        let parse = |t: &str| serde_json::from_str::<QuadSpec>(t).unwrap().build();
        assert_eq!(parse(r#"{"preset":"rectangle","aspect":2}"#).unwrap(), CyclicQuad::rectangle(2.0).unwrap());
        assert_eq!(parse(r#"{"preset":"square"}"#).unwrap(), CyclicQuad::square());
        assert_eq!(parse(r#""kite-figure1""#).unwrap(), CyclicQuad::kite());
        assert!(parse(r#"{"phis":[0,1,2,3]}"#).is_ok());
        assert!(matches!(parse(r#"{"preset":"square","aspect":2}"#), Err(Error::Spec { .. })));
        let h: Vec<f64> = (0..64).map(|_| 1.0).collect();
        let s = serde_json::json!({"kind": "support-samples", "h": h});
        assert!(serde_json::from_value::<CurveSpec>(s).unwrap().build().is_ok());
    }

    #[test]
    fn seventeen_digits() {
        let x = 0.1 + 0.2;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }
}
