//! Serialization of counts, matrices, networks and layouts. All text output is
//! UTF-8 with LF line endings; reals use six decimals with a `.` separator.

mod geo;
mod pajek;
mod report;
mod tables;
mod vosviewer;

pub use geo::{display_size, export_geo, geo_map_spec, GeoExport, GeoLink, GeoMapSpec, GeoNode, SizeRule};
pub use pajek::{export_pajek, read_pajek, write_pajek, NetFileModel, NetVertex};
pub use report::{export_report, report_value};
pub use tables::{
    counts_csv, cooccurrence_square_csv, cooccurrence_triples_csv, incidence_triples_csv,
    similarity_square_csv, similarity_triples_csv,
};
pub use vosviewer::{export_vosviewer, vosviewer_from_graph, SizeAttr, VosViewerFiles};

/// Six-decimal rendering without a negative zero.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Whole numbers print without decimals, anything else with six.
pub fn fmt_weight(w: f64) -> String {
    if w.fract() == 0.0 && w.abs() < 1e15 {
        format!("{}", w as i64)
    } else {
        fmt6(w)
    }
}

pub(crate) fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// CSV field quoting per RFC 4180, only when needed.
pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        quoted(s)
    } else {
        s.to_string()
    }
}

pub(crate) fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt6(-0.0000001), "0.000000");
        assert_eq!(fmt6(1.5), "1.500000");
        assert_eq!(fmt_weight(7.0), "7");
        assert_eq!(fmt_weight(0.25), "0.250000");
        assert_eq!(round6(-1e-9), 0.0);
        assert_eq!(csv_field("A, B"), "\"A, B\"");
        assert_eq!(csv_field("A & B"), "A & B");
    }
}
