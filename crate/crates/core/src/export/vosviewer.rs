use serde::{Deserialize, Serialize};

use super::{fmt6, fmt_weight};
use crate::error::{Error, Result};
use crate::layout::{Layout, LayoutGraph};
use crate::network::Subnetwork;
use crate::numeric::format_decimal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeAttr {
    IntegerPapers,
    FractionalPapers,
    #[default]
    Degree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VosViewerFiles {
    pub map: String,
    pub network: String,
}

fn clean_label(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

fn assemble(
    labels: &[String],
    weights: &[String],
    edges: &[(usize, usize, f64)],
    layout: &Layout,
) -> Result<VosViewerFiles> {
    let mut map = String::from("id\tlabel\tx\ty\tweight\n");
    for (i, label) in labels.iter().enumerate() {
        let (x, y) = layout
            .coordinate(label)
            .ok_or_else(|| Error::MissingCoordinate(label.clone()))?;
        map.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            i + 1,
            clean_label(label),
            fmt6(x),
            fmt6(y),
            weights[i]
        ));
    }
    let mut sorted: Vec<_> = edges.iter().map(|&(a, b, w)| (a.min(b), a.max(b), w)).collect();
    sorted.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    let mut network = String::new();
    for (a, b, w) in sorted {
        network.push_str(&format!("{}\t{}\t{}\n", a + 1, b + 1, fmt_weight(w)));
    }
    Ok(VosViewerFiles { map, network })
}

pub fn export_vosviewer(sub: &Subnetwork<'_>, layout: &Layout, size_attr: SizeAttr) -> Result<VosViewerFiles> {
    let g = LayoutGraph::from_subnetwork(sub);
    let parent = sub.parent();
    let degrees = sub.degrees();
    let weights: Vec<String> = sub
        .nodes()
        .iter()
        .map(|&i| {
            let node = parent.node(i);
            match size_attr {
                SizeAttr::IntegerPapers => node.integer_papers.to_string(),
                SizeAttr::FractionalPapers if node.fractional_papers.is_integer() => {
                    node.fractional_papers.to_integer().to_string()
                }
                SizeAttr::FractionalPapers => format_decimal(&node.fractional_papers, 6),
                SizeAttr::Degree => degrees.get(&i).copied().unwrap_or(0).to_string(),
            }
        })
        .collect();
    assemble(g.labels(), &weights, g.edges(), layout)
}

/// Map and network files for a graph without paper counts; each node's weight
/// is its degree.
pub fn vosviewer_from_graph(g: &LayoutGraph, layout: &Layout) -> Result<VosViewerFiles> {
    let mut degree = vec![0usize; g.n()];
    for &(a, b, _) in g.edges() {
        degree[a] += 1;
        degree[b] += 1;
    }
    let weights: Vec<String> = degree.iter().map(|d| d.to_string()).collect();
    assemble(g.labels(), &weights, g.edges(), layout)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(labels: &[&str], coords: &[(f64, f64)]) -> Layout {
        Layout {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            coordinates: coords.to_vec(),
            final_stress: 0.0,
            iterations_used: 0,
        }
    }

    #[test]
    fn single_node_at_origin() {
        let g = LayoutGraph::new(vec!["A".into()], vec![]).unwrap();
        let files = vosviewer_from_graph(&g, &layout(&["A"], &[(0.0, 0.0)])).unwrap();
        assert_eq!(files.map, "id\tlabel\tx\ty\tweight\n1\tA\t0.000000\t0.000000\t0\n");
        assert_eq!(files.network, "");
    }

    #[test]
    fn missing_coordinate_is_named() {
        let g = LayoutGraph::new(vec!["A".into(), "B".into()], vec![(0, 1, 0.5)]).unwrap();
        let err = vosviewer_from_graph(&g, &layout(&["A"], &[(0.0, 0.0)])).unwrap_err();
        assert!(matches!(err, Error::MissingCoordinate(ref c) if c == "B"));
    }

    #[test]
    fn graph_weights_are_degrees() {
        let g = LayoutGraph::new(vec!["A".into(), "B".into(), "C".into()], vec![(1, 0, 0.5), (1, 2, 1.0)]).unwrap();
        let files = vosviewer_from_graph(&g, &layout(&["A", "B", "C"], &[(0.0, 0.0), (1.0, 0.0), (2.0, -0.5)])).unwrap();
        assert_eq!(
            files.map,
            "id\tlabel\tx\ty\tweight\n1\tA\t0.000000\t0.000000\t1\n2\tB\t1.000000\t0.000000\t2\n3\tC\t2.000000\t-0.500000\t1\n"
        );
        assert_eq!(files.network, "1\t2\t0.500000\n2\t3\t1\n");
    }
}
