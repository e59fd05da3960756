//! Network diagnostics: degree and component-size distributions, the share
//! of high-degree collaborators, and cumulative hop-wise skill coverage.
//!
//! Every table can be written as CSV; each file starts with a `#` comment
//! line describing its columns.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    connected_components, degree_stats, Community, ExpertGraph, ExpertId, PathFinder,
};

/// Frequency table with distinct, ascending `x`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DistributionSeries {
    pub rows: Vec<(usize, usize)>,
}

impl DistributionSeries {
    fn from_values(values: impl IntoIterator<Item = usize>) -> Self {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for v in values {
            *counts.entry(v).or_default() += 1;
        }
        DistributionSeries {
            rows: counts.into_iter().collect(),
        }
    }

    pub fn total(&self) -> usize {
        self.rows.iter().map(|&(_, c)| c).sum()
    }

    pub fn to_csv(&self, comment: &str, x: &str) -> String {
        let mut out = format!("# {comment}\n{x},count\n");
        for (v, c) in &self.rows {
            let _ = writeln!(out, "{v},{c}");
        }
        out
    }
}

pub fn degree_distribution(g: &ExpertGraph) -> DistributionSeries {
    DistributionSeries::from_values(g.experts().map(|v| g.degree(v)))
}

pub fn component_size_distribution(g: &ExpertGraph) -> DistributionSeries {
    DistributionSeries::from_values(connected_components(g).iter().map(Vec::len))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CollaboratorRatio {
    /// Experts with degree above twice the average.
    pub high: usize,
    pub low: usize,
}

pub fn collaborator_ratio(g: &ExpertGraph) -> CollaboratorRatio {
    let stats = degree_stats(g);
    let high = stats
        .degrees
        .iter()
        .filter(|&&d| d as f64 > 2.0 * stats.average)
        .count();
    CollaboratorRatio {
        high,
        low: g.len() - high,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeCoverage {
    /// Id in the parent graph.
    pub expert: ExpertId,
    pub degree: usize,
    /// Fraction of the community's skills held within `h` hops, for `h = 0..=hops_max`.
    pub coverage: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeCoverage {
    pub degree: usize,
    pub nodes: usize,
    pub mean: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkillCoverage {
    pub community: String,
    pub hops_max: u32,
    pub skills: usize,
    pub nodes: Vec<NodeCoverage>,
    pub by_degree: Vec<DegreeCoverage>,
}

/// Hop-wise cumulative skill coverage inside `community`.
///
/// Neighbourhoods and degrees are taken in the subgraph the community
/// induces, and the denominator is the community's own skill union.
pub fn cumulative_skill_coverage(
    g: &ExpertGraph,
    community: &Community,
    hops_max: u32,
) -> Result<SkillCoverage> {
    let sub = community.subgraph(g)?;
    let h = sub.graph();
    let universe = h.skill_universe_len();
    if universe == 0 {
        return Err(Error::InvalidArgument(format!(
            "community {} has no skills",
            community.name
        )));
    }
    let mut stamp = vec![u32::MAX; g.skill_universe().map(|s| s.index() + 1).max().unwrap_or(0)];
    let mut pf = PathFinder::new(h);
    let mut nodes = Vec::with_capacity(h.len());
    for v in h.experts() {
        let tag = v.0;
        let mut held = 0usize;
        let mut add = |u: ExpertId, held: &mut usize| {
            for s in h.skills_of(u) {
                if stamp[s.index()] != tag {
                    stamp[s.index()] = tag;
                    *held += 1;
                }
            }
        };
        add(v, &mut held);
        let mut coverage = vec![held as f64 / universe as f64];
        let ball = pf.hops_within(v, hops_max);
        let mut i = 0;
        for hop in 1..=hops_max {
            while i < ball.len() && ball[i].1 == hop {
                add(ball[i].0, &mut held);
                i += 1;
            }
            coverage.push(held as f64 / universe as f64);
        }
        nodes.push(NodeCoverage {
            expert: sub.to_parent(v),
            degree: h.degree(v),
            coverage,
        });
    }

    let mut groups: BTreeMap<usize, (usize, Vec<f64>)> = BTreeMap::new();
    for n in &nodes {
        let (count, sums) = groups
            .entry(n.degree)
            .or_insert_with(|| (0, vec![0.0; n.coverage.len()]));
        *count += 1;
        for (s, c) in sums.iter_mut().zip(&n.coverage) {
            *s += c;
        }
    }
    let by_degree = groups
        .into_iter()
        .map(|(degree, (count, sums))| DegreeCoverage {
            degree,
            nodes: count,
            mean: sums.into_iter().map(|s| s / count as f64).collect(),
        })
        .collect();
    Ok(SkillCoverage {
        community: community.name.clone(),
        hops_max,
        skills: universe,
        nodes,
        by_degree,
    })
}

impl SkillCoverage {
    fn hop_columns(&self) -> String {
        (0..=self.hops_max).map(|h| format!(",hop{h}")).collect()
    }

    pub fn nodes_csv(&self) -> String {
        let mut out = format!(
            "# per-expert share of the {} skills of community {} held within h hops\nexpert,degree{}\n",
            self.skills,
            self.community,
            self.hop_columns()
        );
        for n in &self.nodes {
            let _ = write!(out, "{},{}", n.expert, n.degree);
            for c in &n.coverage {
                let _ = write!(out, ",{c:.6}");
            }
            out.push('\n');
        }
        out
    }

    pub fn degree_csv(&self) -> String {
        let mut out = format!(
            "# mean share of the {} skills of community {} held within h hops, grouped by degree\ndegree,nodes{}\n",
            self.skills,
            self.community,
            self.hop_columns()
        );
        for d in &self.by_degree {
            let _ = write!(out, "{},{}", d.degree, d.nodes);
            for c in &d.mean {
                let _ = write!(out, ",{c:.6}");
            }
            out.push('\n');
        }
        out
    }
}

/// Writes all diagnostics for `community` into `dir` and returns the paths.
pub fn write_reports(
    g: &ExpertGraph,
    community: &Community,
    hops_max: u32,
    dir: impl AsRef<Path>,
) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let sub = community.subgraph(g)?;
    let h = sub.graph();
    let ratio = collaborator_ratio(h);
    let coverage = cumulative_skill_coverage(g, community, hops_max)?;
    let files = [
        (
            "degree_distribution.csv",
            degree_distribution(h).to_csv("number of experts per degree", "degree"),
        ),
        (
            "component_sizes.csv",
            component_size_distribution(h)
                .to_csv("number of connected components per size", "size"),
        ),
        (
            "collaborators.csv",
            format!(
                "# experts above and at or below twice the average degree\nhigh,low\n{},{}\n",
                ratio.high, ratio.low
            ),
        ),
        ("skill_coverage_nodes.csv", coverage.nodes_csv()),
        ("skill_coverage_degree.csv", coverage.degree_csv()),
    ];
    let mut written = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{toy, toy_id};
    use crate::graph::GraphBuilder;

    #[test]
    fn toy_degree_table() {
        let g = toy();
        let d = degree_distribution(&g);
        assert_eq!(d.rows.first(), Some(&(1, 11)));
        assert_eq!(d.rows.last(), Some(&(5, 3)));
        assert_eq!(d.total(), 20);
        assert_eq!(component_size_distribution(&g).rows, vec![(20, 1)]);
        assert_eq!(collaborator_ratio(&g), CollaboratorRatio { high: 3, low: 17 });
    }

    #[test]
    fn star_and_empty() {
        let mut b = GraphBuilder::new();
        let hub = b.add_expert("hub", ["x"]).unwrap();
        for i in 0..4 {
            let leaf = b.add_expert(format!("l{i}"), ["y"]).unwrap();
            b.add_edge(hub, leaf, 1.0).unwrap();
        }
        let g = b.build().unwrap();
        assert_eq!(degree_distribution(&g).rows, vec![(1, 4), (4, 1)]);
        let empty = GraphBuilder::new().build().unwrap();
        assert!(degree_distribution(&empty).rows.is_empty());
        assert!(component_size_distribution(&empty).rows.is_empty());
    }

    #[test]
    fn coverage_is_cumulative() {
        let g = toy();
        let cov = cumulative_skill_coverage(&g, &Community::whole("all", &g), 3).unwrap();
        assert_eq!(cov.skills, 5);
        for n in &cov.nodes {
            assert_eq!(n.coverage.len(), 4);
            assert!(n.coverage.windows(2).all(|w| w[0] <= w[1]));
            assert!(n.coverage.iter().all(|&c| (0.0..=1.0).contains(&c)));
        }
        let c = &cov.nodes[toy_id('C').index()];
        assert_eq!(c.coverage[0], 0.4);
        assert_eq!(c.coverage[1], 1.0);
        let groups: usize = cov.by_degree.iter().map(|d| d.nodes).sum();
        assert_eq!(groups, 20);
    }

    #[test]
    fn coverage_inside_a_community() {
        let g = toy();
        let c = Community::new("pair", [toy_id('K'), toy_id('J')]);
        let cov = cumulative_skill_coverage(&g, &c, 2).unwrap();
        assert_eq!(cov.skills, 2);
        assert_eq!(cov.nodes[0].expert, toy_id('J'));
        assert_eq!(cov.nodes[1].coverage, vec![0.5, 1.0, 1.0]);
        let empty = Community::new("none", []);
        assert!(cumulative_skill_coverage(&g, &empty, 2).is_err());
    }

    #[test]
    fn reports_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let g = toy();
        let files = write_reports(&g, &Community::whole("all", &g), 2, dir.path()).unwrap();
        assert_eq!(files.len(), 5);
        let deg = std::fs::read_to_string(dir.path().join("degree_distribution.csv")).unwrap();
        assert!(deg.starts_with("# "));
        assert!(deg.contains("\ndegree,count\n1,11\n"));
        let by_degree = std::fs::read_to_string(dir.path().join("skill_coverage_degree.csv")).unwrap();
        assert!(by_degree.lines().nth(1).unwrap() == "degree,nodes,hop0,hop1,hop2");
    }
}
