use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use log::{info, warn};
use serde_json::json;
use teamform_core::algorithms::{dc, FallbackRule};
use teamform_core::analysis::write_reports;
use teamform_core::graph::io::{read_communities, read_graph, write_communities, write_graph};
use teamform_core::harness::{
    bundled_case_tasks, generate, load_case_tasks, run_benchmark, run_case_study, ExperimentPlan, NamedGraph,
    SynthConfig,
};
use teamform_core::ingest::{build_graph, network_stats, parse_corpus_file, write_stats_csv, TextPipeline, VenueConfig};
use teamform_core::metrics::evaluate;
use teamform_core::{Algorithm, Community, ExpertGraph, Task, Team};

use crate::args::{AnalyzeArgs, BenchArgs, CaseStudyArgs, IngestArgs, SynthArgs, TeamArgs};
use crate::config::RunConfig;

/// A malformed invocation that clap itself cannot detect.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

fn load_graph(prefix: &Path) -> anyhow::Result<ExpertGraph> {
    let g = read_graph(prefix).with_context(|| format!("loading graph {}", prefix.display()))?;
    info!("loaded {}: {} experts, {} edges", prefix.display(), g.len(), g.edge_count());
    Ok(g)
}

fn load_communities(path: &Path, g: &ExpertGraph) -> anyhow::Result<Vec<Community>> {
    let cs = read_communities(path).with_context(|| format!("loading communities {}", path.display()))?;
    Community::validate_all(&cs, g).with_context(|| format!("checking communities {}", path.display()))?;
    Ok(cs)
}

fn find_community<'a>(cs: &'a [Community], name: &str) -> anyhow::Result<&'a Community> {
    cs.iter()
        .find(|c| c.name == name)
        .ok_or_else(|| anyhow!("no community named {name:?}"))
}

fn sibling(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn print_written(files: &[PathBuf]) {
    for f in files {
        println!("{}", f.display());
    }
}

pub fn ingest(args: &IngestArgs, cfg: &RunConfig) -> anyhow::Result<()> {
    let venues = match &args.venues {
        Some(p) => VenueConfig::load(p)?,
        None => VenueConfig::default(),
    };
    let pipeline = match &args.stopwords {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            TextPipeline::with_stopwords(text.lines())
        }
        None => TextPipeline::default(),
    };
    let mut icfg = cfg.ingest;
    icfg.min_pubs = args.min_pubs.unwrap_or(icfg.min_pubs);
    icfg.min_joint = args.min_joint.unwrap_or(icfg.min_joint);
    icfg.min_skill_count = args.min_skill_count.unwrap_or(icfg.min_skill_count);

    let records = parse_corpus_file(&args.xml, &venues).with_context(|| format!("parsing {}", args.xml.display()))?;
    info!("{} publications at configured venues", records.len());
    let out = build_graph(&records, &venues, &pipeline, &icfg)?;
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let paths = write_graph(&out.graph, &args.out)?;
    let communities = sibling(&args.out, ".communities.tsv");
    write_communities(&out.communities, &communities)?;
    let stats = sibling(&args.out, ".stats.csv");
    write_stats_csv(&network_stats(&out.graph, "all", &out.communities), &stats)?;
    print_written(&[paths.nodes, paths.edges, paths.skills, communities, stats]);
    Ok(())
}

pub fn analyze(args: &AnalyzeArgs, cfg: &RunConfig) -> anyhow::Result<()> {
    let g = load_graph(&args.graph)?;
    let community = match (&args.communities, &args.community) {
        (Some(file), Some(name)) => find_community(&load_communities(file, &g)?, name)?.clone(),
        _ => Community::whole("all", &g),
    };
    let files = write_reports(&g, &community, args.hops_max, cfg.out_dir(args.out.as_deref()))?;
    print_written(&files);
    Ok(())
}

/// Team members ordered by id, as names.
fn names(g: &ExpertGraph, team: &Team) -> Vec<String> {
    team.members().iter().map(|&v| g.name(v).to_owned()).collect()
}

fn team_json(g: &ExpertGraph, algo: Algorithm, community: Option<&str>, task: &Task, team: &Team) -> anyhow::Result<serde_json::Value> {
    let report = evaluate(g, team, task)?;
    let assignment: BTreeMap<&str, &str> = team
        .assignment()
        .iter()
        .map(|(s, &v)| (s.as_str(), g.name(v)))
        .collect();
    let fallback: Vec<&str> = team.fallback().iter().map(|&v| g.name(v)).collect();
    Ok(json!({
        "algorithm": algo.name(),
        "community": community,
        "task": task.skills(),
        "leader": team.leader().map(|v| g.name(v)),
        "members": names(g, team),
        "assignment": assignment,
        "fallback": fallback,
        "unsupported": task.unsupported(g),
        "cardinality": report.cardinality,
        "diameter": report.diameter,
        "sum_distance": report.sum_distance,
        "leader_distance": report.leader_distance,
        "covered": report.covered,
    }))
}

fn team_table(g: &ExpertGraph, task: &Task, team: &Team) -> anyhow::Result<String> {
    let r = evaluate(g, team, task)?;
    let mut out = String::new();
    let leader = team.leader().map_or("-", |v| g.name(v));
    let _ = writeln!(out, "  leader   {leader}");
    let _ = writeln!(out, "  members  {}", names(g, team).join(", "));
    let width = task.skills().iter().map(String::len).max().unwrap_or(5).max(5);
    let _ = writeln!(out, "  {:<width$}  expert", "skill");
    for s in task.skills() {
        let who = match team.expert_for(s) {
            Some(v) if team.fallback().contains(&v) => format!("{} (fallback)", g.name(v)),
            Some(v) => g.name(v).to_owned(),
            None => "-".to_owned(),
        };
        let _ = writeln!(out, "  {s:<width$}  {who}");
    }
    let _ = writeln!(
        out,
        "  cardinality {}  diameter {}  sum distance {}  leader distance {}  covered {:.3}",
        r.cardinality, r.diameter, r.sum_distance, r.leader_distance, r.covered
    );
    Ok(out)
}

pub fn team(args: &TeamArgs, cfg: &RunConfig) -> anyhow::Result<()> {
    let task = Task::parse(&args.task).map_err(|e| usage(e.to_string()))?;
    let acfg = cfg.algorithm(&args.algo_flags).map_err(|e| usage(e.to_string()))?;
    let g = load_graph(&args.graph)?;

    let teams: Vec<(Option<String>, Team)> = match (&args.communities, &args.community) {
        (None, _) => vec![(None, args.algo.run(&g, &task, &acfg)?)],
        (Some(file), Some(name)) => {
            let cs = load_communities(file, &g)?;
            let c = find_community(&cs, name)?;
            let sub = c.subgraph(&g)?;
            let local = args.algo.run(sub.graph(), &task, &acfg)?;
            vec![(Some(c.name.clone()), sub.lift_team(&local))]
        }
        (Some(file), None) => {
            let rule = match args.algo {
                Algorithm::TfcR => FallbackRule::Random,
                Algorithm::TfcN => FallbackRule::Nearest,
                other => return Err(usage(format!("{other} cannot run across communities; pass --community or use tfc-r/tfc-n"))),
            };
            let cs = load_communities(file, &g)?;
            let threshold = cfg.threshold(args.threshold);
            let found = dc(&g, &cs, &task, threshold, &acfg, rule)?;
            if found.is_empty() {
                warn!("no community covers {:.0}% of the task", threshold * 100.0);
            }
            found.into_iter().map(|ct| (Some(ct.community.name), ct.team)).collect()
        }
    };

    let mut incomplete = Vec::new();
    for (community, team) in &teams {
        println!("{}", team_json(&g, args.algo, community.as_deref(), &task, team)?);
        if !team.is_complete(&task) {
            incomplete.push((community.clone(), team.coverage(&task)));
        }
    }
    if !args.json {
        for (community, team) in &teams {
            match community {
                Some(c) => println!("\n{} team in {c}", args.algo),
                None => println!("\n{} team", args.algo),
            }
            print!("{}", team_table(&g, &task, team)?);
        }
    }
    if args.strict {
        let unsupported = task.unsupported(&g);
        if teams.is_empty() {
            bail!("strict: no team was formed");
        }
        if let Some((community, coverage)) = incomplete.first() {
            let place = community.as_deref().map(|c| format!(" in {c}")).unwrap_or_default();
            bail!(
                "strict: the team{place} covers {:.1}% of the task; unsupported skills: {}",
                coverage * 100.0,
                if unsupported.is_empty() { "none".to_owned() } else { unsupported.join(", ") }
            );
        }
    }
    Ok(())
}

#[derive(Debug)]
struct GraphSpec {
    name: String,
    prefix: PathBuf,
    community: Option<String>,
}

fn parse_graph_specs(list: &str) -> anyhow::Result<Vec<GraphSpec>> {
    let mut specs = Vec::new();
    for entry in list.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (name, rest) = entry
            .split_once(':')
            .ok_or_else(|| usage(format!("graph entry {entry:?} must look like name:prefix")))?;
        let (prefix, community) = match rest.split_once('#') {
            Some((p, c)) => (p, Some(c.to_owned())),
            None => (rest, None),
        };
        if name.is_empty() || prefix.is_empty() {
            return Err(usage(format!("graph entry {entry:?} must look like name:prefix")));
        }
        specs.push(GraphSpec {
            name: name.to_owned(),
            prefix: PathBuf::from(prefix),
            community,
        });
    }
    if specs.is_empty() {
        return Err(usage("--graphs needs at least one entry"));
    }
    Ok(specs)
}

pub fn bench(args: &BenchArgs, cfg: &RunConfig) -> anyhow::Result<()> {
    let specs = parse_graph_specs(&args.graphs)?;
    if specs.iter().any(|s| s.community.is_some()) && args.communities.is_none() {
        return Err(usage("`#community` graph entries need --communities"));
    }
    let plan = ExperimentPlan::load(&args.plan)?;
    let mut loaded: BTreeMap<PathBuf, ExpertGraph> = BTreeMap::new();
    for s in &specs {
        if !loaded.contains_key(&s.prefix) {
            loaded.insert(s.prefix.clone(), load_graph(&s.prefix)?);
        }
    }
    let mut graphs = Vec::with_capacity(specs.len());
    for s in &specs {
        let g = &loaded[&s.prefix];
        let graph = match (&s.community, &args.communities) {
            (Some(name), Some(file)) => find_community(&load_communities(file, g)?, name)?.subgraph(g)?.into_graph(),
            _ => g.clone(),
        };
        graphs.push((s.name.as_str(), graph));
    }
    let named: Vec<NamedGraph<'_>> = graphs.iter().map(|(n, g)| NamedGraph::new(n, g)).collect();
    info!("running {} trials per task size on {} graphs", plan.trials, named.len());
    let report = run_benchmark(&plan, &named)?;
    let files = report.write(cfg.out_dir(args.out.as_deref()))?;
    print_written(&files);
    Ok(())
}

pub fn case_study(args: &CaseStudyArgs, cfg: &RunConfig) -> anyhow::Result<()> {
    let rule = match args.algo {
        Algorithm::TfcR => FallbackRule::Random,
        Algorithm::TfcN => FallbackRule::Nearest,
        other => return Err(usage(format!("the case study runs tfc-r or tfc-n, not {other}"))),
    };
    let acfg = cfg.algorithm(&args.algo_flags).map_err(|e| usage(e.to_string()))?;
    let g = load_graph(&args.graph)?;
    let communities = load_communities(&args.communities, &g)?;
    let pipeline = TextPipeline::default();
    let tasks = match &args.tasks {
        Some(p) => load_case_tasks(p, &pipeline).with_context(|| format!("loading {}", p.display()))?,
        None => bundled_case_tasks(&pipeline),
    };
    let study = run_case_study(&g, &communities, &tasks, cfg.threshold(args.threshold), &acfg, rule)?;
    let dir = cfg.out_dir(args.out.as_deref());
    std::fs::create_dir_all(&dir)?;
    let csv = dir.join("case_study.csv");
    let md = dir.join("case_study.md");
    std::fs::write(&csv, study.to_csv(&g))?;
    std::fs::write(&md, study.to_markdown(&g))?;
    print_written(&[csv, md]);
    Ok(())
}

pub fn synth(args: &SynthArgs) -> anyhow::Result<()> {
    let mut params = match &args.params {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str::<SynthConfig>(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => SynthConfig::default(),
    };
    if let Some(n) = args.nodes {
        params.nodes = n;
        params.communities.retain(|(_, size)| *size < n);
    }
    if let Some(s) = args.seed {
        params.seed = s;
    }
    params.validate().map_err(|e| usage(e.to_string()))?;
    let net = generate(&params)?;
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let paths = write_graph(&net.graph, &args.out)?;
    let communities = sibling(&args.out, ".communities.tsv");
    write_communities(&net.communities, &communities)?;
    print_written(&[paths.nodes, paths.edges, paths.skills, communities]);
    Ok(())
}
