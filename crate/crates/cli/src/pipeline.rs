//! The pipeline stages. Each stage turns loaded data into named artifacts;
//! `run` chains all of them, the subcommands run one at a time against the
//! intermediate files of earlier stages.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use intcollab_core::corpus::{filter_documents, parse_records, CountryRegistry, Document, FilterReport, ParseIssue};
use intcollab_core::counting::{
    binary_counts, build_incidence, fractional_counts, integer_counts, summarize, CorpusSummary, CountVector,
    IncidenceMatrix,
};
use intcollab_core::export::{
    cooccurrence_square_csv, cooccurrence_triples_csv, counts_csv, export_geo, export_pajek, export_report,
    export_vosviewer, incidence_triples_csv, similarity_square_csv, similarity_triples_csv, vosviewer_from_graph,
    write_pajek, NetFileModel,
};
use intcollab_core::layout::{layout_graph, LayoutGraph};
use intcollab_core::network::{
    build_coauth_network, cooccurrence, cosine_similarity, ego_network, extract_core, network_stats,
    subnetwork_by_list, threshold_network, CoauthNetwork, Subnetwork,
};

use crate::artifacts::Artifacts;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::manifest::{digest_file, InputDigest};

pub const DOCUMENTS: &str = "documents.jsonl";
pub const FILTER_REPORT: &str = "filter_report.json";

pub fn load_registry(cfg: &RunConfig) -> Result<CountryRegistry, CliError> {
    match &cfg.registry {
        None => Ok(CountryRegistry::bundled()),
        Some(paths) => {
            for p in [&paths.countries, &paths.aliases] {
                if !p.is_file() {
                    return Err(CliError::Config(format!("registry file {} not found", p.display())));
                }
            }
            Ok(CountryRegistry::from_paths(&paths.countries, &paths.aliases)?)
        }
    }
}

pub struct Ingested {
    pub documents: Vec<Document>,
    pub report: FilterReport,
    pub issues: Vec<ParseIssue>,
}

pub fn ingest(cfg: &RunConfig, registry: &CountryRegistry) -> Result<(Ingested, Vec<InputDigest>), CliError> {
    if cfg.input.is_empty() {
        return Err(CliError::Config("no input files given".into()));
    }
    let mut records = Vec::new();
    let mut issues = Vec::new();
    let mut digests = Vec::new();
    for path in &cfg.input {
        if !path.is_file() {
            return Err(CliError::Config(format!("input {} not found", path.display())));
        }
        digests.push(digest_file(path)?);
        let file = File::open(path).map_err(|e| CliError::io(path, e))?;
        let source = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let out = parse_records(BufReader::new(file), cfg.format, &source, cfg.parse_mode)?;
        records.extend(out.records);
        issues.extend(out.issues);
    }
    let (documents, report) = filter_documents(&records, registry, &cfg.synonyms());
    Ok((
        Ingested {
            documents,
            report,
            issues,
        },
        digests,
    ))
}

pub fn ingest_artifacts(ing: &Ingested, arts: &mut Artifacts) {
    let mut jsonl = String::new();
    for d in &ing.documents {
        jsonl.push_str(&serde_json::to_string(d).expect("document serializes"));
        jsonl.push('\n');
    }
    arts.add(DOCUMENTS, jsonl);
    arts.add_json(FILTER_REPORT, &ing.report);
    arts.add_json("parse_issues.json", &ing.issues);
}

/// Reads the documents and filter report an `ingest` stage left in `dir`.
pub fn load_ingested(dir: &Path) -> Result<(Vec<Document>, FilterReport, Vec<InputDigest>), CliError> {
    let docs_path = dir.join(DOCUMENTS);
    let report_path = dir.join(FILTER_REPORT);
    for p in [&docs_path, &report_path] {
        if !p.is_file() {
            return Err(CliError::Config(format!(
                "{} not found; run `ingest` into {} first",
                p.display(),
                dir.display()
            )));
        }
    }
    let text = std::fs::read_to_string(&docs_path).map_err(|e| CliError::io(&docs_path, e))?;
    let mut documents = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let doc: Document = serde_json::from_str(line).map_err(|e| {
            CliError::Core(intcollab_core::Error::Parse {
                line: i + 1,
                message: format!("{}: {e}", docs_path.display()),
            })
        })?;
        documents.push(doc);
    }
    let report_text = std::fs::read_to_string(&report_path).map_err(|e| CliError::io(&report_path, e))?;
    let report: FilterReport = serde_json::from_str(&report_text).map_err(|e| {
        CliError::Core(intcollab_core::Error::Parse {
            line: e.line(),
            message: format!("{}: {e}", report_path.display()),
        })
    })?;
    let digests = vec![digest_file(&docs_path)?, digest_file(&report_path)?];
    Ok((documents, report, digests))
}

/// Everything downstream stages derive from the retained documents.
pub struct Analysis {
    pub matrix: IncidenceMatrix,
    pub integer: CountVector,
    pub binary: CountVector,
    pub fractional: CountVector,
    pub summary: CorpusSummary,
    pub network: CoauthNetwork,
}

pub fn analyze(documents: &[Document], report: &FilterReport) -> Result<Analysis, CliError> {
    let matrix = build_incidence(documents)?;
    let integer = integer_counts(&matrix);
    let binary = binary_counts(&matrix);
    let fractional = fractional_counts(&matrix);
    let summary = summarize(documents, report)?;
    let network = build_coauth_network(&matrix, &integer, &fractional)?;
    Ok(Analysis {
        matrix,
        integer,
        binary,
        fractional,
        summary,
        network,
    })
}

fn thresholded<'a>(a: &'a Analysis, cfg: &RunConfig) -> Subnetwork<'a> {
    threshold_network(
        &a.network,
        &cfg.threshold.min_node_fractional.value(),
        cfg.threshold.min_edge_weight,
        cfg.threshold.comparator,
    )
}

/// Pajek file, VOSviewer pair and statistics for one count subnetwork.
fn network_files(prefix: &str, sub: &Subnetwork<'_>, cfg: &RunConfig, arts: &mut Artifacts) -> Result<(), CliError> {
    let layout = layout_graph(&LayoutGraph::from_subnetwork(sub), &cfg.layout)?;
    arts.add(&format!("{prefix}.net"), export_pajek(sub, Some(&layout))?);
    let vos = export_vosviewer(sub, &layout, cfg.export.size_attr)?;
    arts.add(&format!("{prefix}_map.txt"), vos.map);
    arts.add(&format!("{prefix}_network.txt"), vos.network);
    arts.add_json(&format!("{prefix}_stats.json"), &network_stats(sub));
    Ok(())
}

pub fn summary_artifacts(a: &Analysis, registry: &CountryRegistry, arts: &mut Artifacts) {
    arts.add_json("summary.json", &a.summary);
    arts.add("counts.csv", counts_csv(&[&a.integer, &a.binary, &a.fractional], registry));
    arts.add("incidence.csv", incidence_triples_csv(&a.matrix));
}

pub fn net_artifacts(a: &Analysis, cfg: &RunConfig, arts: &mut Artifacts) -> Result<(), CliError> {
    let c = cooccurrence(&a.matrix, cfg.cosine.cell_mode);
    arts.add("cooccurrence.csv", cooccurrence_triples_csv(&c));
    arts.add("cooccurrence_matrix.csv", cooccurrence_square_csv(&c));
    let s = cosine_similarity(&a.matrix, cfg.cosine.cell_mode);
    arts.add("cosine.csv", similarity_triples_csv(&s));
    arts.add("cosine_matrix.csv", similarity_square_csv(&s));
    let sub = thresholded(a, cfg);
    network_files("network", &sub, cfg, arts)?;
    arts.add("report.json", export_report(&a.summary, Some(&network_stats(&sub))));
    Ok(())
}

pub fn geo_artifacts(
    a: &Analysis,
    cfg: &RunConfig,
    registry: &CountryRegistry,
    arts: &mut Artifacts,
) -> Result<(), CliError> {
    let sub = thresholded(a, cfg);
    let geo = export_geo(&sub, &a.fractional, registry, cfg.export.size_rule, cfg.export.great_circle)?;
    arts.add("geo.geojson", geo.geojson);
    arts.add("geo_nodes.csv", geo.nodes_csv);
    arts.add("geo_links.csv", geo.links_csv);
    Ok(())
}

pub fn core_artifacts(a: &Analysis, cfg: &RunConfig, arts: &mut Artifacts) -> Result<(), CliError> {
    let sub = extract_core(&a.network, cfg.core.min_edge_weight, cfg.core.k);
    network_files("core", &sub, cfg, arts)
}

pub fn ego_artifacts(a: &Analysis, cfg: &RunConfig, focus: &str, arts: &mut Artifacts) -> Result<(), CliError> {
    let sub = ego_network(&a.network, focus, cfg.ego.min_edge_weight, cfg.ego.include_alter_ties)
        .map_err(|e| CliError::Config(e.to_string()))?;
    network_files("ego", &sub, cfg, arts)
}

/// Cosine map over the configured country list. Returns list warnings.
pub fn export_artifacts(a: &Analysis, cfg: &RunConfig, arts: &mut Artifacts) -> Result<Vec<String>, CliError> {
    let (nodes, warnings) = if cfg.list.countries.is_empty() {
        ((0..a.network.n_nodes()).collect::<Vec<_>>(), Vec::new())
    } else {
        let (sub, warnings) = subnetwork_by_list(&a.network, &cfg.list.countries, cfg.list.mode)?;
        (sub.nodes().to_vec(), warnings)
    };
    let sim = cosine_similarity(&a.matrix, cfg.cosine.cell_mode);
    let graph = LayoutGraph::from_similarity(&sim, &nodes, cfg.cosine.min_similarity);
    let layout = layout_graph(&graph, &cfg.cosine_layout())?;
    arts.add("cosine.net", write_pajek(&NetFileModel::from_layout_graph(&graph, Some(&layout))?));
    let vos = vosviewer_from_graph(&graph, &layout)?;
    arts.add("cosine_map.txt", vos.map);
    arts.add("cosine_network.txt", vos.network);
    Ok(warnings)
}
