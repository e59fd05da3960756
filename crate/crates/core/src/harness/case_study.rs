use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algorithms::{dc, AlgorithmConfig, FallbackRule};
use crate::error::{Error, Result};
use crate::graph::{Community, ExpertGraph};
use crate::ingest::TextPipeline;
use crate::metrics::{Task, Team};

const BUNDLED_TASKS: &str = include_str!("../../data/case_tasks.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseTaskSpec {
    pub name: String,
    /// Raw words, filtered and stemmed by the text pipeline.
    #[serde(default)]
    pub words: Vec<String>,
    /// Skill tokens used as given.
    #[serde(default)]
    pub skills: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskFile {
    task: Vec<CaseTaskSpec>,
}

/// A named task of the case study.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseTask {
    pub name: String,
    pub task: Task,
}

impl CaseTaskSpec {
    pub fn resolve(&self, pipeline: &TextPipeline) -> Result<CaseTask> {
        let mut skills: Vec<String> = self.skills.clone();
        for w in &self.words {
            skills.extend(pipeline.stems(w));
        }
        let mut seen = std::collections::HashSet::new();
        skills.retain(|s| seen.insert(s.clone()));
        if skills.is_empty() {
            return Err(Error::Config(format!("task {} has no skills", self.name)));
        }
        Ok(CaseTask {
            name: self.name.clone(),
            task: Task::new(skills)?,
        })
    }
}

pub fn parse_case_tasks(text: &str, pipeline: &TextPipeline) -> Result<Vec<CaseTask>> {
    let file: TaskFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    file.task.iter().map(|t| t.resolve(pipeline)).collect()
}

pub fn load_case_tasks(path: impl AsRef<Path>, pipeline: &TextPipeline) -> Result<Vec<CaseTask>> {
    parse_case_tasks(&std::fs::read_to_string(path)?, pipeline)
}

/// The three bundled case-study tasks.
pub fn bundled_case_tasks(pipeline: &TextPipeline) -> Vec<CaseTask> {
    parse_case_tasks(BUNDLED_TASKS, pipeline).expect("bundled tasks are valid")
}

/// Task-by-community grid of teams; `None` marks an undesirable community.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseStudy {
    pub tasks: Vec<String>,
    pub communities: Vec<String>,
    /// `cells[community][task]`.
    pub cells: Vec<Vec<Option<Team>>>,
}

/// Runs the desirable-community driver once per task.
pub fn run_case_study(
    g: &ExpertGraph,
    communities: &[Community],
    tasks: &[CaseTask],
    threshold: f64,
    cfg: &AlgorithmConfig,
    rule: FallbackRule,
) -> Result<CaseStudy> {
    let mut cells = vec![vec![None; tasks.len()]; communities.len()];
    for (j, t) in tasks.iter().enumerate() {
        for ct in dc(g, communities, &t.task, threshold, cfg, rule)? {
            let i = communities
                .iter()
                .position(|c| c.name == ct.community.name)
                .expect("dc returns input communities");
            cells[i][j] = Some(ct.team);
        }
    }
    Ok(CaseStudy {
        tasks: tasks.iter().map(|t| t.name.clone()).collect(),
        communities: communities.iter().map(|c| c.name.clone()).collect(),
        cells,
    })
}

/// Leader first, then the other members by id; fallback experts get a `*`.
pub fn team_cell(g: &ExpertGraph, team: &Team) -> String {
    let leader = team.leader();
    let ordered = leader
        .into_iter()
        .chain(team.members().iter().copied().filter(|&v| Some(v) != leader));
    ordered
        .map(|v| {
            let mark = if team.fallback().contains(&v) { "*" } else { "" };
            format!("{}{mark}", g.name(v))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

impl CaseStudy {
    pub fn to_csv(&self, g: &ExpertGraph) -> String {
        let mut out = String::from("community");
        for t in &self.tasks {
            let _ = write!(out, ",{}", csv_field(t));
        }
        out.push('\n');
        for (name, row) in self.communities.iter().zip(&self.cells) {
            out.push_str(&csv_field(name));
            for cell in row {
                out.push(',');
                if let Some(team) = cell {
                    out.push_str(&csv_field(&team_cell(g, team)));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self, g: &ExpertGraph) -> String {
        let mut out = String::from("| community |");
        for t in &self.tasks {
            let _ = write!(out, " {t} |");
        }
        out.push_str("\n|---|");
        out.push_str(&"---|".repeat(self.tasks.len()));
        out.push('\n');
        for (name, row) in self.communities.iter().zip(&self.cells) {
            let _ = write!(out, "| {name} |");
            for cell in row {
                match cell {
                    Some(team) => {
                        let _ = write!(out, " {} |", team_cell(g, team).replace('|', "\\|"));
                    }
                    None => out.push_str("  |"),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{toy, toy_id};

    #[test]
    fn bundled_tasks_have_expected_sizes() {
        let tasks = bundled_case_tasks(&TextPipeline::default());
        let sizes: Vec<_> = tasks.iter().map(|t| (t.name.as_str(), t.task.len())).collect();
        assert_eq!(sizes, vec![("T1", 5), ("T2", 8), ("T3", 10)]);
        assert_eq!(
            tasks[0].task.skills(),
            &["approach", "databas", "probabilist", "rank", "unifi"]
        );
    }

    #[test]
    fn task_file_errors() {
        let p = TextPipeline::default();
        assert!(parse_case_tasks("[[task]]\nname = \"x\"\n", &p).is_err());
        assert!(parse_case_tasks("[[task]]\nname = \"x\"\nwords = [\"the\"]\n", &p).is_err());
        assert!(parse_case_tasks("[[task]]\nname = \"x\"\nfoo = 1\n", &p).is_err());
        let t = parse_case_tasks("[[task]]\nname = \"x\"\nskills = [\"a\", \"b\", \"a\"]\n", &p).unwrap();
        assert_eq!(t[0].task.skills(), &["a", "b"]);
    }

    #[test]
    fn grid_with_blank_cells() {
        let g = toy();
        let communities = vec![
            Community::new("C1", "ABCDPQRST".chars().map(toy_id)),
            Community::new("ACJ", "ACJ".chars().map(toy_id)),
        ];
        let tasks = vec![CaseTask {
            name: "T".into(),
            task: Task::new(["a", "b", "c", "d", "e"]).unwrap(),
        }];
        let study = run_case_study(&g, &communities, &tasks, 0.9, &AlgorithmConfig::default(), FallbackRule::Random)
            .unwrap();
        assert!(study.cells[0][0].is_some());
        assert!(study.cells[1][0].is_none());
        let csv = study.to_csv(&g);
        assert_eq!(csv.lines().next(), Some("community,T"));
        assert_eq!(csv.lines().nth(2), Some("ACJ,"));
        let md = study.to_markdown(&g);
        assert!(md.contains("| ACJ |  |"));
    }

    #[test]
    fn fallback_marker() {
        let g = toy();
        let mut team = Team::with_leader(toy_id('C'));
        team.assign("a", toy_id('A'));
        team.assign("d", toy_id('T'));
        team.mark_fallback(toy_id('T'));
        assert_eq!(team_cell(&g, &team), "C; A; T*");
        assert_eq!(csv_field("Li, Jian"), "\"Li, Jian\"");
    }
}
