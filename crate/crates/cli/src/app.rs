use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use intcollab_core::corpus::{write_delimited, write_tagged, CountryRegistry, InputFormat, ParseMode};
use intcollab_core::export::SizeAttr;
use intcollab_core::network::{Comparator, ListMode};
use intcollab_core::synth::{generate, SynthConfig};

use crate::artifacts::{Artifacts, MANIFEST};
use crate::config::{Decimal, RegistryPaths, RunConfig};
use crate::error::CliError;
use crate::manifest::{InputDigest, RunManifest};
use crate::pipeline::{
    analyze, core_artifacts, ego_artifacts, export_artifacts, geo_artifacts, ingest, ingest_artifacts,
    load_ingested, load_registry, net_artifacts, summary_artifacts, Analysis,
};

#[derive(Debug, Parser)]
#[command(name = "intcollab", version, about = "Country co-authorship networks from citation-index exports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse input files and keep citable documents with country addresses.
    Ingest {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Corpus summary, per-country counts and the incidence triples.
    Summary {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        from: FromArgs,
    },
    /// Co-occurrence and cosine matrices, thresholded network and report.
    Net {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        from: FromArgs,
        #[command(flatten)]
        threshold: ThresholdArgs,
        #[command(flatten)]
        layout: LayoutArgs,
    },
    /// Map layers (GeoJSON and GPS Visualizer CSV) of the thresholded network.
    Geo {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        from: FromArgs,
        #[command(flatten)]
        threshold: ThresholdArgs,
        #[command(flatten)]
        geo: GeoArgs,
    },
    /// Largest connected k-core after an edge-weight cut.
    Core {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        from: FromArgs,
        #[command(flatten)]
        core: CoreArgs,
        #[command(flatten)]
        layout: LayoutArgs,
    },
    /// Co-authorship neighbourhood of one country.
    Ego {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        from: FromArgs,
        #[command(flatten)]
        ego: EgoArgs,
        #[command(flatten)]
        layout: LayoutArgs,
    },
    /// Cosine map over an included or excluded country list.
    Export {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        from: FromArgs,
        #[command(flatten)]
        list: ListArgs,
        #[command(flatten)]
        layout: LayoutArgs,
    },
    /// Every stage in sequence.
    Run {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        threshold: ThresholdArgs,
        #[command(flatten)]
        core: CoreArgs,
        #[command(flatten)]
        ego: EgoArgs,
        #[command(flatten)]
        list: ListArgs,
        #[command(flatten)]
        layout: LayoutArgs,
        #[command(flatten)]
        geo: GeoArgs,
    },
    /// Write a seeded synthetic corpus.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML file with run settings; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FromArgs {
    /// Directory holding `documents.jsonl` and `filter_report.json`
    /// (defaults to the output directory).
    #[arg(long)]
    pub from: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Tagged,
    Delimited,
}

impl From<FormatArg> for InputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Tagged => InputFormat::TaggedField,
            FormatArg::Delimited => InputFormat::Delimited,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input files.
    #[arg(long = "input", num_args = 1..)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Abort on the first malformed record.
    #[arg(long)]
    pub strict: bool,
    /// Country table replacing the bundled one (needs --aliases too).
    #[arg(long, requires = "aliases")]
    pub countries: Option<PathBuf>,
    #[arg(long, requires = "countries")]
    pub aliases: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ComparatorArg {
    Ge,
    Gt,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub min_node_fractional: Option<Decimal>,
    #[arg(long)]
    pub min_link_weight: Option<u64>,
    #[arg(long, value_enum)]
    pub comparator: Option<ComparatorArg>,
}

#[derive(Debug, Args)]
pub struct CoreArgs {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub core_min_link_weight: Option<u64>,
}

#[derive(Debug, Args)]
pub struct EgoArgs {
    #[arg(long)]
    pub focus: Option<String>,
    #[arg(long)]
    pub ego_min_link_weight: Option<u64>,
    /// Leave out ties among the focus country's neighbours.
    #[arg(long)]
    pub no_alter_ties: bool,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    /// Comma-separated countries to keep.
    #[arg(long, value_delimiter = ',', conflicts_with = "exclude")]
    pub include: Vec<String>,
    /// Comma-separated countries to drop.
    #[arg(long, value_delimiter = ',')]
    pub exclude: Vec<String>,
    #[arg(long)]
    pub min_similarity: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SizeAttrArg {
    IntegerPapers,
    FractionalPapers,
    Degree,
}

#[derive(Debug, Args)]
pub struct LayoutArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    /// Node weight written to VOSviewer map files.
    #[arg(long, value_enum)]
    pub size_attr: Option<SizeAttrArg>,
}

#[derive(Debug, Args)]
pub struct GeoArgs {
    /// Draw links as 32-point great-circle arcs.
    #[arg(long)]
    pub great_circle: bool,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Corpus file to write.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "tagged")]
    pub format: FormatArg,
    #[arg(long)]
    pub n_docs: Option<usize>,
    #[arg(long)]
    pub n_countries: Option<usize>,
    #[arg(long)]
    pub international_prob: Option<f64>,
    #[arg(long)]
    pub zipf_exponent: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl Common {
    fn load(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_toml_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(out) = &self.out {
            cfg.output_dir = out.clone();
        }
        Ok(cfg)
    }
}

impl InputArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if !self.inputs.is_empty() {
            cfg.input = self.inputs.clone();
        }
        if let Some(f) = self.format {
            cfg.format = f.into();
        }
        if self.strict {
            cfg.parse_mode = ParseMode::Strict;
        }
        if let (Some(countries), Some(aliases)) = (&self.countries, &self.aliases) {
            cfg.registry = Some(RegistryPaths {
                countries: countries.clone(),
                aliases: aliases.clone(),
            });
        }
    }
}

impl ThresholdArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = &self.min_node_fractional {
            cfg.threshold.min_node_fractional = v.clone();
        }
        if let Some(v) = self.min_link_weight {
            cfg.threshold.min_edge_weight = v;
        }
        if let Some(c) = self.comparator {
            cfg.threshold.comparator = match c {
                ComparatorArg::Ge => Comparator::Ge,
                ComparatorArg::Gt => Comparator::Gt,
            };
        }
    }
}

impl CoreArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(k) = self.k {
            cfg.core.k = k;
        }
        if let Some(w) = self.core_min_link_weight {
            cfg.core.min_edge_weight = w;
        }
    }
}

impl EgoArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(f) = &self.focus {
            cfg.ego.focus = Some(f.trim().to_uppercase());
        }
        if let Some(w) = self.ego_min_link_weight {
            cfg.ego.min_edge_weight = w;
        }
        if self.no_alter_ties {
            cfg.ego.include_alter_ties = false;
        }
    }
}

impl ListArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if !self.include.is_empty() {
            cfg.list.mode = ListMode::Include;
            cfg.list.countries = self.include.iter().map(|c| c.trim().to_uppercase()).collect();
        } else if !self.exclude.is_empty() {
            cfg.list.mode = ListMode::Exclude;
            cfg.list.countries = self.exclude.iter().map(|c| c.trim().to_uppercase()).collect();
        }
        if let Some(s) = self.min_similarity {
            cfg.cosine.min_similarity = s;
        }
    }
}

impl LayoutArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(seed) = self.seed {
            cfg.layout.seed = seed;
        }
        if let Some(a) = self.size_attr {
            cfg.export.size_attr = match a {
                SizeAttrArg::IntegerPapers => SizeAttr::IntegerPapers,
                SizeAttrArg::FractionalPapers => SizeAttr::FractionalPapers,
                SizeAttrArg::Degree => SizeAttr::Degree,
            };
        }
    }
}

impl GeoArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if self.great_circle {
            cfg.export.great_circle = true;
        }
    }
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn finish(command: &str, cfg: &RunConfig, inputs: Vec<InputDigest>, mut arts: Artifacts) -> Result<(), CliError> {
    let manifest = RunManifest::new(command, cfg, inputs, &arts);
    arts.add_json(MANIFEST, &manifest);
    arts.commit(&cfg.output_dir)
}

fn from_dir(cfg: &RunConfig, from: &FromArgs) -> PathBuf {
    from.from.clone().unwrap_or_else(|| cfg.output_dir.clone())
}

fn load_analysis(dir: &Path) -> Result<(Analysis, Vec<InputDigest>), CliError> {
    let (documents, report, digests) = load_ingested(dir)?;
    Ok((analyze(&documents, &report)?, digests))
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

pub fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Ingest { common, input } => {
            let mut cfg = common.load()?;
            input.apply(&mut cfg);
            cfg.validate()?;
            let registry = load_registry(&cfg)?;
            let (ing, digests) = ingest(&cfg, &registry)?;
            let mut arts = Artifacts::default();
            ingest_artifacts(&ing, &mut arts);
            finish("ingest", &cfg, digests, arts)
        }
        Command::Summary { common, from } => {
            let cfg = common.load()?;
            cfg.validate()?;
            let registry = load_registry(&cfg)?;
            let (a, digests) = load_analysis(&from_dir(&cfg, &from))?;
            let mut arts = Artifacts::default();
            summary_artifacts(&a, &registry, &mut arts);
            finish("summary", &cfg, digests, arts)
        }
        Command::Net {
            common,
            from,
            threshold,
            layout,
        } => {
            let mut cfg = common.load()?;
            threshold.apply(&mut cfg);
            layout.apply(&mut cfg);
            cfg.validate()?;
            let (a, digests) = load_analysis(&from_dir(&cfg, &from))?;
            let mut arts = Artifacts::default();
            net_artifacts(&a, &cfg, &mut arts)?;
            finish("net", &cfg, digests, arts)
        }
        Command::Geo {
            common,
            from,
            threshold,
            geo,
        } => {
            let mut cfg = common.load()?;
            threshold.apply(&mut cfg);
            geo.apply(&mut cfg);
            cfg.validate()?;
            let registry = load_registry(&cfg)?;
            let (a, digests) = load_analysis(&from_dir(&cfg, &from))?;
            let mut arts = Artifacts::default();
            geo_artifacts(&a, &cfg, &registry, &mut arts)?;
            finish("geo", &cfg, digests, arts)
        }
        Command::Core {
            common,
            from,
            core,
            layout,
        } => {
            let mut cfg = common.load()?;
            core.apply(&mut cfg);
            layout.apply(&mut cfg);
            cfg.validate()?;
            let (a, digests) = load_analysis(&from_dir(&cfg, &from))?;
            let mut arts = Artifacts::default();
            core_artifacts(&a, &cfg, &mut arts)?;
            finish("core", &cfg, digests, arts)
        }
        Command::Ego {
            common,
            from,
            ego,
            layout,
        } => {
            let mut cfg = common.load()?;
            ego.apply(&mut cfg);
            layout.apply(&mut cfg);
            cfg.validate()?;
            let focus = cfg
                .ego
                .focus
                .clone()
                .ok_or_else(|| CliError::Config("ego needs --focus (or ego.focus in the config)".into()))?;
            let (a, digests) = load_analysis(&from_dir(&cfg, &from))?;
            let mut arts = Artifacts::default();
            ego_artifacts(&a, &cfg, &focus, &mut arts)?;
            finish("ego", &cfg, digests, arts)
        }
        Command::Export {
            common,
            from,
            list,
            layout,
        } => {
            let mut cfg = common.load()?;
            list.apply(&mut cfg);
            layout.apply(&mut cfg);
            cfg.validate()?;
            let (a, digests) = load_analysis(&from_dir(&cfg, &from))?;
            let mut arts = Artifacts::default();
            warn_all(&export_artifacts(&a, &cfg, &mut arts)?);
            finish("export", &cfg, digests, arts)
        }
        Command::Run {
            common,
            input,
            threshold,
            core,
            ego,
            list,
            layout,
            geo,
        } => {
            let mut cfg = common.load()?;
            input.apply(&mut cfg);
            threshold.apply(&mut cfg);
            core.apply(&mut cfg);
            ego.apply(&mut cfg);
            list.apply(&mut cfg);
            layout.apply(&mut cfg);
            geo.apply(&mut cfg);
            cfg.validate()?;
            let registry = load_registry(&cfg)?;
            let (ing, digests) = ingest(&cfg, &registry)?;
            let mut arts = Artifacts::default();
            ingest_artifacts(&ing, &mut arts);
            let a = analyze(&ing.documents, &ing.report)?;
            summary_artifacts(&a, &registry, &mut arts);
            net_artifacts(&a, &cfg, &mut arts)?;
            geo_artifacts(&a, &cfg, &registry, &mut arts)?;
            core_artifacts(&a, &cfg, &mut arts)?;
            if let Some(focus) = cfg.ego.focus.clone() {
                ego_artifacts(&a, &cfg, &focus, &mut arts)?;
            }
            warn_all(&export_artifacts(&a, &cfg, &mut arts)?);
            finish("run", &cfg, digests, arts)
        }
        Command::Synth(args) => synth(&args),
    }
}

fn synth(args: &SynthArgs) -> Result<(), CliError> {
    let mut cfg = SynthConfig::default();
    if let Some(n) = args.n_docs {
        cfg.n_docs = n;
    }
    if let Some(n) = args.n_countries {
        cfg.n_countries = n;
    }
    if let Some(p) = args.international_prob {
        cfg.international_prob = p;
    }
    if let Some(s) = args.zipf_exponent {
        cfg.zipf_exponent = s;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let registry = CountryRegistry::bundled();
    let records = generate(&cfg, &registry).map_err(|e| CliError::Config(e.to_string()))?;
    let mut buf = Vec::new();
    match args.format {
        FormatArg::Tagged => write_tagged(&records, &mut buf).map_err(|e| CliError::io(&args.out, e))?,
        FormatArg::Delimited => write_delimited(&records, &mut buf)?,
    }
    let dir = match args.out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| CliError::io(&dir, e))?;
    std::io::Write::write_all(&mut tmp, &buf).map_err(|e| CliError::io(&args.out, e))?;
    tmp.persist(&args.out).map_err(|e| CliError::io(&args.out, e.error))?;
    Ok(())
}
