use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::text::{skills_from_counts, TextPipeline};
use super::{PublicationRecord, VenueConfig};
use crate::error::{Error, Result};
use crate::graph::{Community, ExpertGraph, ExpertId, GraphBuilder};

/// Thresholds for turning authors into experts and co-authorship into edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct IngestConfig {
    pub min_pubs: usize,
    pub min_joint: usize,
    pub min_skill_count: u32,
}

impl Default for IngestConfig {
    fn default() -> Self {
        IngestConfig {
            min_pubs: 3,
            min_joint: 3,
            min_skill_count: 2,
        }
    }
}

impl IngestConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_pubs == 0 || self.min_joint == 0 || self.min_skill_count == 0 {
            return Err(Error::InvalidArgument(
                "ingest thresholds must all be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Publications and title-stem counts of one author.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuthorStats {
    pub name: String,
    /// Indices into the record list.
    pub publications: BTreeSet<usize>,
    pub title_word_counts: BTreeMap<String, u32>,
}

pub fn author_stats(records: &[PublicationRecord], pipeline: &TextPipeline) -> BTreeMap<String, AuthorStats> {
    let mut out: BTreeMap<String, AuthorStats> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        let mut stems = BTreeMap::new();
        pipeline.count_into(&r.title, &mut stems);
        let distinct: BTreeSet<&str> = r.authors.iter().map(String::as_str).collect();
        for author in distinct {
            let entry = out.entry(author.to_owned()).or_insert_with(|| AuthorStats {
                name: author.to_owned(),
                ..AuthorStats::default()
            });
            entry.publications.insert(i);
            for (s, c) in &stems {
                *entry.title_word_counts.entry(s.clone()).or_default() += c;
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct IngestOutput {
    pub graph: ExpertGraph,
    /// Areas first, then conferences, both in configuration order.
    pub communities: Vec<Community>,
}

/// Builds the expert graph and its area and conference communities.
///
/// Experts are numbered in ascending name order. Edge weights are the
/// Jaccard distance between the two experts' sets of retained publications.
pub fn build_graph(
    records: &[PublicationRecord],
    venues: &VenueConfig,
    pipeline: &TextPipeline,
    cfg: &IngestConfig,
) -> Result<IngestOutput> {
    cfg.validate()?;
    let stats = author_stats(records, pipeline);
    let mut b = GraphBuilder::new();
    let mut ids: HashMap<&str, ExpertId> = HashMap::new();
    let mut pubs: Vec<&BTreeSet<usize>> = Vec::new();
    for a in stats.values().filter(|a| a.publications.len() >= cfg.min_pubs) {
        let skills: Vec<String> = skills_from_counts(&a.title_word_counts, cfg.min_skill_count)
            .into_iter()
            .filter(|s| !s.chars().any(char::is_uppercase))
            .collect();
        let id = b.add_expert(a.name.clone(), &skills)?;
        ids.insert(a.name.as_str(), id);
        pubs.push(&a.publications);
    }

    let mut joint: BTreeMap<(ExpertId, ExpertId), usize> = BTreeMap::new();
    for r in records {
        let mut members: Vec<ExpertId> = r.authors.iter().filter_map(|a| ids.get(a.as_str()).copied()).collect();
        members.sort_unstable();
        members.dedup();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                *joint.entry((u, v)).or_default() += 1;
            }
        }
    }
    for (&(u, v), &shared) in &joint {
        if shared < cfg.min_joint {
            continue;
        }
        let union = pubs[u.index()].len() + pubs[v.index()].len() - shared;
        b.add_edge(u, v, 1.0 - shared as f64 / union as f64)?;
    }
    let graph = b.build()?;

    let mut by_venue: BTreeMap<&str, BTreeSet<ExpertId>> = BTreeMap::new();
    for r in records {
        let set = by_venue.entry(r.venue.as_str()).or_default();
        set.extend(r.authors.iter().filter_map(|a| ids.get(a.as_str()).copied()));
    }
    let mut communities = Vec::new();
    let mut conferences = Vec::new();
    for (area, keys) in &venues.areas {
        let mut members = BTreeSet::new();
        for k in keys {
            let k = k.to_ascii_lowercase();
            let m = by_venue.get(k.as_str()).cloned().unwrap_or_default();
            members.extend(m.iter().copied());
            conferences.push(Community::new(VenueConfig::community_name(&k), m).with_parent(area.clone()));
        }
        communities.push(Community::new(area.clone(), members));
    }
    communities.extend(conferences);
    Community::validate_all(&communities, &graph)?;
    Ok(IngestOutput { graph, communities })
}

/// One row of the network statistics table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkStats {
    pub network: String,
    pub nodes: usize,
    pub edges: usize,
    pub skills: usize,
    pub avg_degree: f64,
    pub skills_per_edge: f64,
}

impl NetworkStats {
    fn new(network: &str, nodes: usize, edges: usize, skills: usize) -> Self {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        NetworkStats {
            network: network.to_owned(),
            nodes,
            edges,
            skills,
            avg_degree: 2.0 * ratio(edges, nodes),
            skills_per_edge: ratio(skills, edges),
        }
    }
}

/// Statistics for the whole graph (named `whole`) followed by each community.
pub fn network_stats(g: &ExpertGraph, whole: &str, communities: &[Community]) -> Vec<NetworkStats> {
    let mut rows = vec![NetworkStats::new(whole, g.len(), g.edge_count(), g.skill_universe_len())];
    for c in communities {
        let edges = c
            .members
            .iter()
            .map(|&u| g.neighbors(u).filter(|&(v, _)| u < v && c.members.contains(&v)).count())
            .sum();
        rows.push(NetworkStats::new(&c.name, c.len(), edges, c.skill_union(g).len()));
    }
    rows
}

pub const STATS_CSV_HEADER: &str = "network,nodes,edges,skills,avg_degree,skills_per_edge";

pub fn stats_csv(rows: &[NetworkStats]) -> String {
    let mut out = String::from(STATS_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.2},{:.2}",
            r.network, r.nodes, r.edges, r.skills, r.avg_degree, r.skills_per_edge
        );
    }
    out
}

pub fn write_stats_csv(rows: &[NetworkStats], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, stats_csv(rows))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(key: &str, venue: &str, title: &str, authors: &[&str]) -> PublicationRecord {
        PublicationRecord {
            key: key.into(),
            venue: venue.into(),
            year: Some(2020),
            title: title.into(),
            authors: authors.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// u and v have 5 papers each, 3 of them joint; w has 2 papers with u.
    fn corpus() -> Vec<PublicationRecord> {
        vec![
            rec("conf/icde/1", "icde", "Ranking Probabilistic Databases", &["u", "v", "w"]),
            rec("conf/icde/2", "icde", "Probabilistic Query Ranking", &["u", "v", "w"]),
            rec("conf/vldb/3", "vldb", "Graph Mining", &["u", "v"]),
            rec("conf/kdd/4", "kdd", "Graph Streams", &["u"]),
            rec("conf/kdd/5", "kdd", "Stream Joins", &["u"]),
            rec("conf/kdd/6", "kdd", "Join Processing", &["v"]),
            rec("conf/kdd/7", "kdd", "Mining Processing", &["v"]),
        ]
    }

    #[test]
    fn thresholds_and_weights() {
        let out = build_graph(&corpus(), &VenueConfig::default(), &TextPipeline::default(), &IngestConfig::default())
            .unwrap();
        let g = &out.graph;
        assert_eq!(g.len(), 2, "w has two papers and is not an expert");
        let u = g.find_by_name("u").unwrap();
        let v = g.find_by_name("v").unwrap();
        assert!(u < v);
        let w = g.edge_weight(u, v).unwrap();
        assert!((w - (1.0 - 3.0 / 7.0)).abs() < 1e-12);
        let us: Vec<_> = g.skill_names_of(u).collect();
        assert_eq!(us, vec!["graph", "probabilist", "rank", "stream"]);
        let vs: BTreeSet<_> = g.skill_names_of(v).collect();
        assert_eq!(vs, BTreeSet::from(["mine", "probabilist", "process", "rank"]));
    }

    #[test]
    fn two_joint_papers_give_no_edge() {
        let mut c = corpus();
        c.push(rec("conf/kdd/8", "kdd", "x", &["w"]));
        let out = build_graph(&c, &VenueConfig::default(), &TextPipeline::default(), &IngestConfig::default()).unwrap();
        let g = &out.graph;
        assert_eq!(g.len(), 3);
        let w = g.find_by_name("w").unwrap();
        assert_eq!(g.degree(w), 0);
    }

    #[test]
    fn communities_nest() {
        let out = build_graph(&corpus(), &VenueConfig::default(), &TextPipeline::default(), &IngestConfig::default())
            .unwrap();
        let names: Vec<_> = out.communities.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(&names[..4], &["AI", "DB", "DM", "TH"]);
        assert_eq!(names.len(), 4 + 23);
        let db = out.communities.iter().find(|c| c.name == "DB").unwrap();
        assert_eq!(db.len(), 2);
        let icde = out.communities.iter().find(|c| c.name == "ICDE").unwrap();
        assert_eq!(icde.parent.as_deref(), Some("DB"));
        assert!(icde.members.is_subset(&db.members));

        let rows = network_stats(&out.graph, "ALL", &out.communities);
        assert_eq!(rows[0].nodes, 2);
        assert_eq!(rows[0].edges, 1);
        assert!((rows[0].avg_degree - 1.0).abs() < 1e-12);
        let csv = stats_csv(&rows[..1]);
        assert!(csv.starts_with(STATS_CSV_HEADER));
        assert!(csv.contains("\nALL,2,1,"));
    }

    #[test]
    fn stricter_thresholds_never_add() {
        let c = corpus();
        let loose = IngestConfig { min_pubs: 2, min_joint: 2, min_skill_count: 1 };
        let a = build_graph(&c, &VenueConfig::default(), &TextPipeline::default(), &loose).unwrap();
        let b = build_graph(&c, &VenueConfig::default(), &TextPipeline::default(), &IngestConfig::default()).unwrap();
        assert!(a.graph.len() >= b.graph.len());
        assert!(a.graph.edge_count() >= b.graph.edge_count());
        assert_eq!(a.graph.len(), 3);
        assert_eq!(a.graph.edge_count(), 3);
    }
}
