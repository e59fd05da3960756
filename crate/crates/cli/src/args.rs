use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use teamform_core::{Algorithm, TieBreak};

#[derive(Debug, Parser)]
#[command(name = "teamform", version, about = "Team formation on weighted collaboration graphs")]
pub struct Cli {
    /// TOML file with default values for the shared flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Raise log verbosity; repeat for more detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an expert graph and venue communities from a DBLP-style XML file.
    Ingest(IngestArgs),
    /// Degree, component and k-hop skill coverage tables for a graph or community.
    Analyze(AnalyzeArgs),
    /// Form one team for a task.
    Team(TeamArgs),
    /// Run a seeded multi-trial experiment over several graphs.
    Bench(BenchArgs),
    /// Form teams for several tasks across every desirable community.
    CaseStudy(CaseStudyArgs),
    /// Generate a synthetic power-law collaboration network.
    Synth(SynthArgs),
}

/// Flags that map one-to-one onto the algorithm configuration.
#[derive(Debug, Clone, Default, Args)]
pub struct AlgoFlags {
    /// Seed for the random fallback step.
    #[arg(long = "seed", value_name = "N")]
    pub rng_seed: Option<u64>,

    /// Hop radius of the leader neighbourhood.
    #[arg(long = "hop-limit", alias = "hops", value_name = "N")]
    pub hop_limit: Option<u32>,

    /// Candidate leaders need a degree above this multiple of the average.
    #[arg(long, value_name = "X")]
    pub hd_degree_factor: Option<f64>,

    /// Tie rule for the nearest-holder fallback.
    #[arg(long, value_enum)]
    pub tie_break: Option<TieArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieArg {
    AscendingId,
    MoreSkillsThenId,
}

impl From<TieArg> for TieBreak {
    fn from(t: TieArg) -> Self {
        match t {
            TieArg::AscendingId => TieBreak::AscendingId,
            TieArg::MoreSkillsThenId => TieBreak::MoreSkillsThenId,
        }
    }
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long, value_name = "FILE")]
    pub xml: PathBuf,

    /// Area to venue mapping; the bundled table when omitted.
    #[arg(long, value_name = "FILE")]
    pub venues: Option<PathBuf>,

    /// Prefix of the written graph, community and statistics files.
    #[arg(long, value_name = "PREFIX")]
    pub out: PathBuf,

    /// Extra stopword list, one word per line, replacing the built-in one.
    #[arg(long, value_name = "FILE")]
    pub stopwords: Option<PathBuf>,

    #[arg(long, value_name = "N")]
    pub min_pubs: Option<usize>,

    #[arg(long, value_name = "N")]
    pub min_joint: Option<usize>,

    #[arg(long, value_name = "N")]
    pub min_skill_count: Option<u32>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_name = "PREFIX")]
    pub graph: PathBuf,

    #[arg(long, value_name = "FILE")]
    pub communities: Option<PathBuf>,

    /// Restrict the tables to this community; the whole graph otherwise.
    #[arg(long, value_name = "NAME", requires = "communities")]
    pub community: Option<String>,

    /// Largest hop count of the coverage tables.
    #[arg(long, default_value_t = 3, value_name = "N")]
    pub hops_max: u32,

    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TeamArgs {
    #[arg(long, value_parser = parse_algorithm)]
    pub algo: Algorithm,

    /// Comma-separated skill tokens.
    #[arg(long, value_name = "LIST")]
    pub task: String,

    #[arg(long, value_name = "PREFIX")]
    pub graph: PathBuf,

    #[command(flatten)]
    pub algo_flags: AlgoFlags,

    /// Run inside communities from this file instead of the whole graph.
    #[arg(long, value_name = "FILE")]
    pub communities: Option<PathBuf>,

    /// Only this community; every desirable one when omitted.
    #[arg(long, value_name = "NAME", requires = "communities")]
    pub community: Option<String>,

    /// Share of task skills a community must hold to be desirable.
    #[arg(long, value_name = "X")]
    pub threshold: Option<f64>,

    /// Exit with status 2 when some task skill stays uncovered.
    #[arg(long)]
    pub strict: bool,

    /// Print only the machine-readable line.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_name = "FILE")]
    pub plan: PathBuf,

    /// Comma-separated `name:prefix` or `name:prefix#community` entries.
    #[arg(long, value_name = "LIST")]
    pub graphs: String,

    /// Community file used by `#community` entries.
    #[arg(long, value_name = "FILE")]
    pub communities: Option<PathBuf>,

    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CaseStudyArgs {
    #[arg(long, value_name = "PREFIX")]
    pub graph: PathBuf,

    #[arg(long, value_name = "FILE")]
    pub communities: PathBuf,

    /// Task list; the bundled three tasks when omitted.
    #[arg(long, value_name = "FILE")]
    pub tasks: Option<PathBuf>,

    /// `tfc-r` or `tfc-n`.
    #[arg(long, default_value = "tfc-r", value_parser = parse_algorithm)]
    pub algo: Algorithm,

    #[command(flatten)]
    pub algo_flags: AlgoFlags,

    #[arg(long, value_name = "X")]
    pub threshold: Option<f64>,

    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Generator parameters in TOML; built-in defaults otherwise.
    #[arg(long, value_name = "FILE")]
    pub params: Option<PathBuf>,

    #[arg(long, value_name = "N")]
    pub nodes: Option<usize>,

    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,

    /// Prefix of the written graph and community files.
    #[arg(long, value_name = "PREFIX")]
    pub out: PathBuf,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: teamform_core::Error| e.to_string())
}
