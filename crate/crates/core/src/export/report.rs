use serde_json::{json, Map, Value};

use crate::counting::{CorpusSummary, Share};
use crate::network::NetworkStats;
use crate::numeric::format_percent;

fn pct(share: &Share) -> Value {
    format_percent(share.numerator, share.denominator, 1)
        .and_then(|s| s.parse::<f64>().ok())
        .map_or(Value::Null, Value::from)
}

fn network_value(stats: &NetworkStats) -> Value {
    let histogram: Map<String, Value> = stats
        .degree_histogram
        .iter()
        .map(|(d, n)| (d.to_string(), Value::from(*n)))
        .collect();
    json!({
        "n_nodes": stats.n_nodes,
        "n_edges": stats.n_edges,
        "possible_links": stats.possible_links,
        "parent_nodes": stats.parent_nodes,
        "parent_nonzero_links": stats.parent_nonzero_links,
        "parent_possible_links": stats.parent_possible_links,
        "nodes_touched": stats.nodes_touched,
        "n_isolated": stats.n_isolated,
        "degree_histogram": histogram,
    })
}

/// Summary keys in declaration order, each share followed by its rounded
/// percentage, then the network block when present.
pub fn report_value(summary: &CorpusSummary, stats: Option<&NetworkStats>) -> Value {
    let per_type: Map<String, Value> = summary
        .per_type
        .iter()
        .map(|(t, n)| (t.as_str().to_string(), Value::from(*n)))
        .collect();
    let mut obj = json!({
        "n_records": summary.n_records,
        "n_documents": summary.n_documents,
        "per_type": per_type,
        "n_international_docs": summary.n_international_docs,
        "share_international_docs": summary.share_international_docs.to_string(),
        "share_international_docs_pct": pct(&summary.share_international_docs),
        "n_addresses_total": summary.n_addresses_total,
        "n_addresses_international": summary.n_addresses_international,
        "share_addresses_international": summary.share_addresses_international.to_string(),
        "share_addresses_international_pct": pct(&summary.share_addresses_international),
        "n_countries": summary.n_countries,
    });
    if let Some(stats) = stats {
        obj["network"] = network_value(stats);
    }
    obj
}

pub fn export_report(summary: &CorpusSummary, stats: Option<&NetworkStats>) -> String {
    let mut s = serde_json::to_string_pretty(&report_value(summary, stats)).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::DocType;

    fn injected() -> CorpusSummary {
        let per_type = DocType::ALL.iter().map(|&t| (t, 0)).collect();
        CorpusSummary::from_totals(778_988, 778_988, per_type, 193_216, 2_101_384, 825_664, 201).unwrap()
    }

    #[test]
    fn shares_render_as_fraction_and_percent() {
        let text = export_report(&injected(), None);
        assert!(text.contains("\"share_international_docs\": \"193216/778988\""));
        assert!(text.contains("\"share_international_docs_pct\": 24.8,"));
        assert!(text.contains("\"share_addresses_international_pct\": 39.3,"));
        assert!(text.ends_with("}\n"));
        let pos = |k: &str| text.find(k).unwrap();
        assert!(pos("\"n_records\"") < pos("\"per_type\""));
        assert!(pos("\"per_type\"") < pos("\"n_countries\""));
    }

    #[test]
    fn empty_network_stats_are_zero() {
        let v = report_value(&injected(), Some(&NetworkStats::default()));
        let net = &v["network"];
        for key in ["n_nodes", "n_edges", "possible_links", "nodes_touched", "n_isolated"] {
            assert_eq!(net[key], 0, "{key}");
        }
        assert_eq!(net["degree_histogram"], json!({}));
    }
}
