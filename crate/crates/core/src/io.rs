//! Documents exchanged by the command line tool, plus DOT and SVG export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::ColorAssignment;
use crate::complex::{Cell, CellComplex, CellId, ComplexError, Rank};
use crate::lattice::Lattice2D;
use crate::search::Target;
use crate::tiling::{Chirality, Frame, Generated, TilingSpec, TorusComplex};
use crate::verify::VerificationReport;

pub const DOCUMENT_VERSION: u32 = 1;

/// Color names by color number, then their SVG values.
pub const PALETTE: [(&str, &str); 7] = [
    ("black", "#000000"),
    ("red", "#d62728"),
    ("blue", "#1f4fd6"),
    ("green", "#2ca02c"),
    ("hazel", "#8e7618"),
    ("violet", "#8f00ff"),
    ("rose", "#ff007f"),
];

const FALLBACK: &str = "#999999";

pub fn color_value(c: u8) -> &'static str {
    PALETTE.get(c as usize).map_or(FALLBACK, |p| p.1)
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document cells do not form a complex: {0}")]
    Complex(#[from] ComplexError),
    #[error("unsupported document version {0}")]
    Version(u32),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// Record of the last search run on a document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub level: Target,
    pub mode: String,
    /// `solution`, `unsat`, `exists`, `not_exists` or `count`.
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<TilingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<Lattice2D>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u8>,
    pub cells: Vec<Cell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<BTreeMap<CellId, u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchRecord>,
}

fn sorted_cells(x: &CellComplex) -> Vec<Cell> {
    let mut cells = x.to_cells();
    cells.sort_by_key(|c| (c.rank, c.id));
    cells
}

impl ComplexDocument {
    pub fn from_complex(x: &CellComplex) -> ComplexDocument {
        ComplexDocument {
            version: DOCUMENT_VERSION,
            spec: None,
            torus: None,
            k: None,
            cells: sorted_cells(x),
            colors: None,
            report: None,
            search: None,
        }
    }

    pub fn from_generated(spec: &TilingSpec, g: &Generated) -> ComplexDocument {
        ComplexDocument {
            spec: Some(*spec),
            torus: Some(g.torus.lattice),
            k: Some(g.torus.frame.k()),
            ..ComplexDocument::from_complex(g.complex())
        }
    }

    pub fn complex(&self) -> Result<CellComplex, IoError> {
        Ok(CellComplex::build(self.cells.clone())?)
    }

    pub fn assignment(&self) -> Option<ColorAssignment> {
        Some(ColorAssignment { k: self.k?, colors: self.colors.clone()? })
    }

    /// Replaces the colors; any attached report or search record is dropped.
    pub fn set_assignment(&mut self, c: &ColorAssignment) {
        self.k = Some(c.k);
        self.colors = Some(c.colors.clone());
        self.report = None;
        self.search = None;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<ComplexDocument, IoError> {
        let doc: ComplexDocument = serde_json::from_str(s)?;
        if doc.version != DOCUMENT_VERSION {
            return Err(IoError::Version(doc.version));
        }
        Ok(doc)
    }
}

/// The 1-skeleton as an undirected DOT graph; colors become node and edge
/// colors when given.
pub fn to_dot(x: &CellComplex, c: Option<&ColorAssignment>) -> String {
    let attr = |id: CellId| match c.and_then(|c| c.get(id)) {
        Some(col) => format!(" [label=\"{}\", color=\"{}\"]", col, color_value(col)),
        None => String::new(),
    };
    let mut s = String::from("graph skeleton {\n");
    for &v in x.vertices() {
        let _ = writeln!(s, "  v{}{};", v.0, attr(v));
    }
    for &e in x.edges() {
        let (a, b) = x.edge_ends(e);
        let _ = writeln!(s, "  v{} -- v{}{};", a.0, b.0, attr(e));
    }
    s.push_str("}\n");
    s
}

const SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;

/// Plane layout: lattice coordinates, sheared by 60 degrees for triangular
/// frames so that triangles come out equilateral.
fn layout(frame: Frame, p: [f64; 2]) -> [f64; 2] {
    let h = 3f64.sqrt() / 2.0;
    match frame {
        Frame::Square => p,
        Frame::Triangular(Chirality::Anti) => [p[0] + p[1] / 2.0, p[1] * h],
        Frame::Triangular(Chirality::Main) => [p[0] - p[1] / 2.0, p[1] * h],
    }
}

struct Canvas {
    frame: Frame,
    /// Bounding box of the laid-out fundamental domain.
    min: [f64; 2],
    max: [f64; 2],
}

impl Canvas {
    fn px(&self, p: [f64; 2]) -> String {
        let q = layout(self.frame, p);
        let x = (q[0] - self.min[0]) * SCALE + MARGIN;
        let y = (self.max[1] - q[1]) * SCALE + MARGIN;
        format!("{x:.3},{y:.3}")
    }

    fn hits(&self, pts: &[[f64; 2]]) -> bool {
        let q: Vec<[f64; 2]> = pts.iter().map(|&p| layout(self.frame, p)).collect();
        let lo = [q.iter().map(|p| p[0]).fold(f64::MAX, f64::min), q.iter().map(|p| p[1]).fold(f64::MAX, f64::min)];
        let hi = [q.iter().map(|p| p[0]).fold(f64::MIN, f64::max), q.iter().map(|p| p[1]).fold(f64::MIN, f64::max)];
        let eps = 1e-9;
        lo[0] < self.max[0] - eps && hi[0] > self.min[0] + eps && lo[1] < self.max[1] - eps && hi[1] > self.min[1] + eps
            || pts.len() == 1 && self.inside(pts[0])
    }

    fn inside(&self, p: [f64; 2]) -> bool {
        let q = layout(self.frame, p);
        (self.min[0] - 1e-9..=self.max[0] + 1e-9).contains(&q[0]) && (self.min[1] - 1e-9..=self.max[1] + 1e-9).contains(&q[1])
    }
}

/// Renders one fundamental domain of the torus: faces as fills, edges as
/// strokes, vertices as disks, colored with [`PALETTE`]. Cells crossing the
/// identification boundary are repeated as translucent ghost copies and
/// everything is clipped to the domain.
pub fn to_svg(t: &TorusComplex, c: Option<&ColorAssignment>) -> String {
    let x = &t.complex;
    let (n1, m, n2) = (t.lattice.u().0 as f64, t.lattice.v().0 as f64, t.lattice.v().1 as f64);
    let corners = [[0.0, 0.0], [n1, 0.0], [n1 + m, n2], [m, n2]];
    let laid: Vec<[f64; 2]> = corners.iter().map(|&p| layout(t.frame, p)).collect();
    let min = [laid.iter().map(|p| p[0]).fold(f64::MAX, f64::min), laid.iter().map(|p| p[1]).fold(f64::MAX, f64::min)];
    let max = [laid.iter().map(|p| p[0]).fold(f64::MIN, f64::max), laid.iter().map(|p| p[1]).fold(f64::MIN, f64::max)];
    let canvas = Canvas { frame: t.frame, min, max };
    let width = (max[0] - min[0]) * SCALE + 2.0 * MARGIN;
    let height = (max[1] - min[1]) * SCALE + 2.0 * MARGIN;

    let fill = |id: CellId| c.and_then(|c| c.get(id)).map_or("none", color_value);
    let stroke = |id: CellId| c.and_then(|c| c.get(id)).map_or("#444444", color_value);
    let mut shifts = vec![[0.0, 0.0]];
    for b in -1..=1 {
        for a in -2..=2 {
            if (a, b) != (0, 0) {
                shifts.push([a as f64 * n1 + b as f64 * m, b as f64 * n2]);
            }
        }
    }
    // the primary copy is the one whose centroid lies in the half-open domain
    let primary = |q: &[[f64; 2]]| {
        let n = q.len() as f64;
        let cx = q.iter().map(|p| p[0]).sum::<f64>() / n;
        let cy = q.iter().map(|p| p[1]).sum::<f64>() / n;
        let eps = 1e-9;
        let sx = cx - cy / n2 * m;
        (-eps..n2 - eps).contains(&cy) && (-eps..n1 - eps).contains(&sx)
    };
    let translates = |pts: &[[f64; 2]]| -> Vec<(bool, Vec<[f64; 2]>)> {
        shifts
            .iter()
            .map(|s| pts.iter().map(|p| [p[0] + s[0], p[1] + s[1]]).collect::<Vec<_>>())
            .filter_map(|q| {
                if primary(&q) {
                    Some((false, q))
                } else if canvas.hits(&q) {
                    Some((true, q))
                } else {
                    None
                }
            })
            .collect()
    };
    let class = |ghost: bool| if ghost { " class=\"ghost\" opacity=\"0.4\"" } else { "" };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.3}\" height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\">"
    );
    let domain: Vec<String> = corners.iter().map(|&p| canvas.px(p)).collect();
    let _ = writeln!(s, "<defs><clipPath id=\"domain\"><polygon points=\"{}\"/></clipPath></defs>", domain.join(" "));
    let _ = writeln!(s, "<g clip-path=\"url(#domain)\">");
    for &f in x.faces() {
        for (ghost, pts) in translates(&t.geometry.lifted_border(x, f)) {
            let pts: Vec<String> = pts.iter().map(|&p| canvas.px(p)).collect();
            let _ = writeln!(
                s,
                "<polygon data-cell=\"{}\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.35\" stroke=\"none\"{}/>",
                f.0,
                pts.join(" "),
                fill(f),
                class(ghost)
            );
        }
    }
    for &e in x.edges() {
        let (a, _) = x.edge_ends(e);
        let p = t.geometry.positions[&a];
        let st = t.geometry.steps[&e];
        for (ghost, pts) in translates(&[p, [p[0] + st[0], p[1] + st[1]]]) {
            let _ = writeln!(
                s,
                "<polyline data-cell=\"{}\" points=\"{} {}\" stroke=\"{}\" stroke-width=\"3\"{}/>",
                e.0,
                canvas.px(pts[0]),
                canvas.px(pts[1]),
                stroke(e),
                class(ghost)
            );
        }
    }
    for &v in x.vertices() {
        for (ghost, pts) in translates(&[t.geometry.positions[&v]]) {
            let (cx, cy) = canvas.px(pts[0]).split_once(',').map(|(a, b)| (a.to_string(), b.to_string())).unwrap();
            let _ = writeln!(
                s,
                "<circle data-cell=\"{}\" cx=\"{cx}\" cy=\"{cy}\" r=\"6\" fill=\"{}\" stroke=\"#444444\"{}/>",
                v.0,
                fill(v),
                class(ghost)
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "<polygon points=\"{}\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>", domain.join(" "));
    s.push_str("</svg>\n");
    s
}

/// Number of cells of each rank listed in a document.
pub fn rank_counts(doc: &ComplexDocument) -> [usize; 3] {
    let mut out = [0; 3];
    for c in &doc.cells {
        out[match c.rank {
            Rank::Vertex => 0,
            Rank::Edge => 1,
            Rank::Face => 2,
        }] += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::color_closed_form;
    use crate::tiling::gen_family;
    use crate::verify::verify;

    fn doc(spec: &str) -> (ComplexDocument, Generated) {
        let spec: TilingSpec = spec.parse().unwrap();
        let g = gen_family(&spec).unwrap();
        (ComplexDocument::from_generated(&spec, &g), g)
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let (mut d, g) = doc("triangular");
        let c = color_closed_form(&g.torus).unwrap();
        d.set_assignment(&c);
        d.report = Some(verify(g.complex(), &c));
        let s = d.to_json();
        let back = ComplexDocument::from_json(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), s);
        assert_eq!(back.assignment().unwrap(), c);
    }

    #[test]
    fn cells_are_sorted_by_rank_then_id() {
        let (d, _) = doc("hexagonal");
        let keys: Vec<_> = d.cells.iter().map(|c| (c.rank, c.id)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(rank_counts(&d), [14, 21, 7]);
    }

    #[test]
    fn version_is_checked() {
        let (mut d, _) = doc("square");
        d.version = 9;
        assert!(matches!(ComplexDocument::from_json(&d.to_json()), Err(IoError::Version(9))));
        assert!(matches!(ComplexDocument::from_json("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn dot_of_the_square_quotient() {
        let (_, g) = doc("square");
        let s = to_dot(g.complex(), None);
        assert_eq!(s.lines().filter(|l| l.contains("--")).count(), 10);
        assert_eq!(s.lines().filter(|l| l.trim_start().starts_with('v') && !l.contains("--")).count(), 5);
    }

    #[test]
    fn svg_is_deterministic_and_uses_the_palette() {
        let (_, g) = doc("triangular");
        let c = color_closed_form(&g.torus).unwrap();
        let a = to_svg(&g.torus, Some(&c));
        assert_eq!(a, to_svg(&g.torus, Some(&c)));
        for (_, hex) in PALETTE {
            assert!(a.contains(hex), "{hex}");
        }
        // every cell has exactly one copy that is not a ghost
        for cell in g.complex().cells() {
            let tag = format!("data-cell=\"{}\"", cell.id.0);
            let n = a.lines().filter(|l| l.contains(&tag) && !l.contains("ghost")).count();
            assert_eq!(n, 1, "{}", cell.id);
        }
    }

    #[test]
    fn svg_for_derived_complexes() {
        for spec in ["hexagonal", "trihexagonal", "cr4_8_8", "rhombille"] {
            let (_, g) = doc(spec);
            let s = to_svg(&g.torus, None);
            assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        }
    }
}
