//! Pajek `.net` files.
//!
//! ```text
//! *Vertices 2
//! 1 "A" 0.000000 0.500000 0.5
//! 2 "B" 1.000000 0.500000 0.5
//! *Edges
//! 1 2 7
//! ```

use super::{fmt6, fmt_weight, quoted};
use crate::error::{Error, Result};
use crate::layout::{Layout, LayoutGraph};
use crate::network::Subnetwork;

#[derive(Debug, Clone, PartialEq)]
pub struct NetVertex {
    pub label: String,
    pub coordinates: Option<(f64, f64, f64)>,
}

/// Vertices carry dense 1-based ids by position; edges are `(a, b, weight)`
/// with `a < b`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NetFileModel {
    pub vertices: Vec<NetVertex>,
    pub edges: Vec<(usize, usize, f64)>,
}

/// Maps coordinates into the unit box with one common scale, centred.
fn unit_box(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    if points.is_empty() {
        return Vec::new();
    }
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in points {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let span = (max_x - min_x).max(max_y - min_y);
    if span <= 0.0 {
        return vec![(0.5, 0.5); points.len()];
    }
    let off_x = (span - (max_x - min_x)) / 2.0;
    let off_y = (span - (max_y - min_y)) / 2.0;
    points
        .iter()
        .map(|&(x, y)| ((x - min_x + off_x) / span, (y - min_y + off_y) / span))
        .collect()
}

impl NetFileModel {
    fn with_layout(labels: Vec<String>, edges: Vec<(usize, usize, f64)>, layout: Option<&Layout>) -> Result<Self> {
        let coords = match layout {
            Some(layout) => {
                let raw = labels
                    .iter()
                    .map(|l| layout.coordinate(l).ok_or_else(|| Error::MissingCoordinate(l.clone())))
                    .collect::<Result<Vec<_>>>()?;
                Some(unit_box(&raw))
            }
            None => None,
        };
        let vertices = labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| NetVertex {
                label,
                coordinates: coords.as_ref().map(|c| (c[i].0, c[i].1, 0.5)),
            })
            .collect();
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(a, b, w)| (a.min(b) + 1, a.max(b) + 1, w))
            .collect();
        edges.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        Ok(NetFileModel { vertices, edges })
    }

    pub fn from_subnetwork(sub: &Subnetwork<'_>, layout: Option<&Layout>) -> Result<Self> {
        let g = LayoutGraph::from_subnetwork(sub);
        Self::from_layout_graph(&g, layout)
    }

    pub fn from_layout_graph(g: &LayoutGraph, layout: Option<&Layout>) -> Result<Self> {
        Self::with_layout(g.labels().to_vec(), g.edges().to_vec(), layout)
    }
}

pub fn write_pajek(model: &NetFileModel) -> String {
    let mut out = format!("*Vertices {}\n", model.vertices.len());
    for (i, v) in model.vertices.iter().enumerate() {
        out.push_str(&format!("{} {}", i + 1, quoted(&v.label)));
        if let Some((x, y, z)) = v.coordinates {
            out.push_str(&format!(" {} {} {}", fmt6(x), fmt6(y), fmt_z(z)));
        }
        out.push('\n');
    }
    out.push_str("*Edges\n");
    for &(a, b, w) in &model.edges {
        out.push_str(&format!("{a} {b} {}\n", fmt_weight(w)));
    }
    out
}

fn fmt_z(z: f64) -> String {
    if z == 0.5 {
        "0.5".to_string()
    } else {
        fmt6(z)
    }
}

pub fn export_pajek(sub: &Subnetwork<'_>, layout: Option<&Layout>) -> Result<String> {
    Ok(write_pajek(&NetFileModel::from_subnetwork(sub, layout)?))
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Reads a quoted (`"a ""b"""`) or bare label; returns it with the rest of the line.
fn split_label(s: &str) -> Option<(String, &str)> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix('"') {
        let mut label = String::new();
        let mut chars = rest.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            if c == '"' {
                if matches!(chars.peek(), Some((_, '"'))) {
                    chars.next();
                    label.push('"');
                } else {
                    return Some((label, &rest[i + 1..]));
                }
            } else {
                label.push(c);
            }
        }
        None
    } else {
        let end = s.find(char::is_whitespace).unwrap_or(s.len());
        Some((s[..end].to_string(), &s[end..]))
    }
}

pub fn read_pajek(text: &str) -> Result<NetFileModel> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Vertices,
        Edges,
    }
    let mut section = Section::None;
    let mut expected = 0usize;
    let mut model = NetFileModel::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if line.starts_with('*') {
            let lower = line.to_ascii_lowercase();
            if let Some(n) = lower.strip_prefix("*vertices") {
                expected = n
                    .split_whitespace()
                    .next()
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| parse_error(line_no, "missing vertex count"))?;
                section = Section::Vertices;
            } else if lower.starts_with("*edges") || lower.starts_with("*arcs") {
                section = Section::Edges;
            } else {
                return Err(parse_error(line_no, format!("unsupported section `{line}`")));
            }
            continue;
        }
        match section {
            Section::None => return Err(parse_error(line_no, "data before *Vertices")),
            Section::Vertices => {
                let (id, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
                let id: usize = id.parse().map_err(|_| parse_error(line_no, "bad vertex id"))?;
                if id != model.vertices.len() + 1 {
                    return Err(parse_error(line_no, format!("vertex id {id} out of sequence")));
                }
                let (label, rest) =
                    split_label(rest).ok_or_else(|| parse_error(line_no, "unterminated label"))?;
                let nums: Vec<f64> = rest
                    .split_whitespace()
                    .map(|t| t.parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| parse_error(line_no, "bad coordinate"))?;
                let coordinates = match nums.as_slice() {
                    [] => None,
                    [x, y] => Some((*x, *y, 0.5)),
                    [x, y, z] => Some((*x, *y, *z)),
                    _ => return Err(parse_error(line_no, "expected x y [z]")),
                };
                model.vertices.push(NetVertex { label, coordinates });
            }
            Section::Edges => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                let get = |i: usize| -> Result<usize> {
                    fields
                        .get(i)
                        .and_then(|t| t.parse().ok())
                        .filter(|&v: &usize| v >= 1 && v <= expected)
                        .ok_or_else(|| parse_error(line_no, "bad edge endpoint"))
                };
                let (a, b) = (get(0)?, get(1)?);
                let w = match fields.get(2) {
                    Some(t) => t.parse().map_err(|_| parse_error(line_no, "bad edge weight"))?,
                    None => 1.0,
                };
                model.edges.push((a.min(b), a.max(b), w));
            }
        }
    }
    if model.vertices.len() != expected {
        return Err(parse_error(
            text.lines().count(),
            format!("expected {expected} vertices, found {}", model.vertices.len()),
        ));
    }
    Ok(model)
}
