use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::plan::ExperimentPlan;
use super::tasks::draw_task;
use crate::algorithms::{mix_seed, Algorithm};
use crate::error::{Error, Result};
use crate::graph::ExpertGraph;
use crate::metrics::{evaluate, CostReport, Task};

/// A graph taking part in a benchmark, under the name used in reports.
#[derive(Debug, Clone, Copy)]
pub struct NamedGraph<'g> {
    pub name: &'g str,
    pub graph: &'g ExpertGraph,
}

impl<'g> NamedGraph<'g> {
    pub fn new(name: &'g str, graph: &'g ExpertGraph) -> Self {
        NamedGraph { name, graph }
    }
}

/// Outcome of one algorithm call.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub graph: String,
    pub algorithm: Algorithm,
    pub k: usize,
    pub trial: usize,
    pub report: CostReport,
    pub wall_ms: f64,
    /// Experts added by the fallback step.
    pub fallback_experts: usize,
}

impl RunRecord {
    /// Full coverage and every cost finite.
    pub fn is_full(&self) -> bool {
        self.report.covered >= 1.0
            && self.report.diameter.is_finite()
            && self.report.sum_distance.is_finite()
            && self.report.leader_distance.is_finite()
    }

    pub fn is_partial(&self) -> bool {
        self.report.covered < 1.0
    }
}

/// Aggregates for one (graph, algorithm, k).
///
/// Cost means use only full runs; partial runs (coverage below one) and
/// runs with an unreachable member are counted apart. Wall time and the
/// fallback fraction use every run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkRow {
    pub graph: String,
    pub algorithm: Algorithm,
    pub k: usize,
    pub runs: usize,
    pub full_runs: usize,
    pub partial_runs: usize,
    pub unreachable_runs: usize,
    pub mean_partial_coverage: Option<f64>,
    pub mean_cardinality: Option<f64>,
    pub mean_diameter: Option<f64>,
    pub mean_sum_distance: Option<f64>,
    pub mean_leader_distance: Option<f64>,
    pub mean_wall_ms: f64,
    pub median_wall_ms: f64,
    pub fallback_fraction: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    pub skills: usize,
    pub k_cap: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkReport {
    pub plan: ExperimentPlan,
    pub task_source: String,
    pub graphs: Vec<GraphSummary>,
    /// Tasks per k, indexed by trial.
    pub tasks: BTreeMap<usize, Vec<Task>>,
    /// Redrawn tasks per k.
    pub redraws: BTreeMap<usize, usize>,
    pub rows: Vec<BenchmarkRow>,
    pub runs: Vec<RunRecord>,
}

impl BenchmarkReport {
    pub fn row(&self, graph: &str, algorithm: Algorithm, k: usize) -> Option<&BenchmarkRow> {
        self.rows
            .iter()
            .find(|r| r.graph == graph && r.algorithm == algorithm && r.k == k)
    }

    pub fn runs_of<'a>(&'a self, graph: &'a str, algorithm: Algorithm, k: usize) -> impl Iterator<Item = &'a RunRecord> + 'a {
        self.runs
            .iter()
            .filter(move |r| r.graph == graph && r.algorithm == algorithm && r.k == k)
    }
}

fn mean(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.into_iter().fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

pub fn aggregate(graph: &str, algorithm: Algorithm, k: usize, runs: &[&RunRecord]) -> BenchmarkRow {
    let full: Vec<&RunRecord> = runs.iter().copied().filter(|r| r.is_full()).collect();
    let partial: Vec<&RunRecord> = runs.iter().copied().filter(|r| r.is_partial()).collect();
    let cost = |f: fn(&CostReport) -> f64| mean(full.iter().map(|r| f(&r.report)));
    let mut walls: Vec<f64> = runs.iter().map(|r| r.wall_ms).collect();
    BenchmarkRow {
        graph: graph.to_owned(),
        algorithm,
        k,
        runs: runs.len(),
        full_runs: full.len(),
        partial_runs: partial.len(),
        unreachable_runs: runs.len() - full.len() - partial.len(),
        mean_partial_coverage: mean(partial.iter().map(|r| r.report.covered)),
        mean_cardinality: cost(|c| c.cardinality as f64),
        mean_diameter: cost(|c| c.diameter.as_f64()),
        mean_sum_distance: cost(|c| c.sum_distance.as_f64()),
        mean_leader_distance: cost(|c| c.leader_distance.as_f64()),
        mean_wall_ms: mean(walls.iter().copied()).unwrap_or(0.0),
        median_wall_ms: median(&mut walls),
        fallback_fraction: if runs.is_empty() {
            0.0
        } else {
            runs.iter().filter(|r| r.fallback_experts > 0).count() as f64 / runs.len() as f64
        },
    }
}

fn coverable(g: &ExpertGraph, task: &Task) -> bool {
    task.unsupported(g).is_empty()
}

/// Runs every algorithm of `plan` on every graph for every task size.
///
/// Tasks come from the skill universe of the `task_source` graph (the
/// smallest graph if unset). A task some participating graph cannot cover
/// is redrawn, and the redraws are counted in the report.
pub fn run_benchmark(plan: &ExperimentPlan, graphs: &[NamedGraph<'_>]) -> Result<BenchmarkReport> {
    plan.validate()?;
    if graphs.is_empty() {
        return Err(Error::InvalidArgument("no graphs to run on".into()));
    }
    let source = match &plan.task_source {
        Some(name) => graphs
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::InvalidArgument(format!("task source {name} is not among the graphs")))?,
        None => graphs
            .iter()
            .min_by_key(|g| g.graph.len())
            .expect("graphs is non-empty"),
    };
    let universe: Vec<String> = source
        .graph
        .skill_universe_names()
        .into_iter()
        .map(str::to_owned)
        .collect();
    if plan.k_range[1] > universe.len() {
        return Err(Error::InvalidArgument(format!(
            "k up to {} exceeds the {} skills of {}",
            plan.k_range[1],
            universe.len(),
            source.name
        )));
    }

    let mut report = BenchmarkReport {
        plan: plan.clone(),
        task_source: source.name.to_owned(),
        graphs: graphs
            .iter()
            .map(|g| GraphSummary {
                name: g.name.to_owned(),
                nodes: g.graph.len(),
                edges: g.graph.edge_count(),
                skills: g.graph.skill_universe_len(),
                k_cap: plan.k_caps.get(g.name).copied(),
            })
            .collect(),
        tasks: BTreeMap::new(),
        redraws: BTreeMap::new(),
        rows: Vec::new(),
        runs: Vec::new(),
    };

    for k in plan.ks() {
        let active: Vec<&NamedGraph<'_>> = graphs.iter().filter(|g| k <= plan.k_cap(g.name)).collect();
        let mut tasks = Vec::with_capacity(plan.trials);
        let mut redraws = 0;
        for trial in 0..plan.trials {
            let mut attempt = 0;
            let task = loop {
                let task = draw_task(&universe, k, plan.seed, trial, attempt)?;
                if active.iter().all(|g| coverable(g.graph, &task)) {
                    break task;
                }
                attempt += 1;
                if attempt > plan.max_redraws {
                    return Err(Error::InvalidArgument(format!(
                        "no coverable task of size {k} after {} redraws",
                        plan.max_redraws
                    )));
                }
            };
            redraws += attempt;
            tasks.push(task);
        }

        for g in &active {
            for &algorithm in &plan.algorithms {
                let first = report.runs.len();
                for (trial, task) in tasks.iter().enumerate() {
                    let cfg = plan.algorithm_config(mix_seed(plan.seed, &[k as u64, trial as u64]));
                    let start = Instant::now();
                    let team = algorithm.run(g.graph, task, &cfg)?;
                    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    report.runs.push(RunRecord {
                        graph: g.name.to_owned(),
                        algorithm,
                        k,
                        trial,
                        report: evaluate(g.graph, &team, task)?,
                        wall_ms,
                        fallback_experts: team.fallback().len(),
                    });
                }
                let runs: Vec<&RunRecord> = report.runs[first..].iter().collect();
                let row = aggregate(g.name, algorithm, k, &runs);
                report.rows.push(row);
            }
        }
        report.tasks.insert(k, tasks);
        report.redraws.insert(k, redraws);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::AlgorithmConfig;
    use crate::graph::fixtures::toy;
    use crate::metrics::Cost;

    fn record(ld: f64, covered: f64, wall: f64) -> RunRecord {
        RunRecord {
            graph: "g".into(),
            algorithm: Algorithm::TfcR,
            k: 3,
            trial: 0,
            report: CostReport {
                cardinality: 3,
                diameter: Cost::Finite(1.0),
                sum_distance: Cost::Finite(2.0),
                leader_distance: Cost::Finite(ld),
                covered,
            },
            wall_ms: wall,
            fallback_experts: 0,
        }
    }

    #[test]
    fn means_use_full_runs_only() {
        let runs = [record(5.0, 1.0, 1.0), record(7.0, 1.0, 4.0), record(9.0, 1.0, 2.0), record(100.0, 0.5, 3.0)];
        let refs: Vec<&RunRecord> = runs.iter().collect();
        let row = aggregate("g", Algorithm::TfcR, 3, &refs);
        assert_eq!(row.mean_leader_distance, Some(7.0));
        assert_eq!(row.full_runs, 3);
        assert_eq!(row.partial_runs, 1);
        assert_eq!(row.mean_partial_coverage, Some(0.5));
        assert_eq!(row.mean_wall_ms, 2.5);
        assert_eq!(row.median_wall_ms, 2.5);
        assert_eq!(row.fallback_fraction, 0.0);
    }

    #[test]
    fn single_trial_matches_the_run() {
        let g = toy();
        let plan = ExperimentPlan {
            k_range: [5, 5],
            trials: 1,
            algorithms: vec![Algorithm::TfcN, Algorithm::MinLd],
            ..ExperimentPlan::default()
        };
        let report = run_benchmark(&plan, &[NamedGraph::new("toy", &g)]).unwrap();
        assert_eq!(report.redraws[&5], 0);
        let task = &report.tasks[&5][0];
        assert_eq!(task.len(), 5);
        for alg in [Algorithm::TfcN, Algorithm::MinLd] {
            let row = report.row("toy", alg, 5).unwrap();
            let cfg = AlgorithmConfig {
                rng_seed: mix_seed(plan.seed, &[5, 0]),
                ..AlgorithmConfig::default()
            };
            let team = alg.run(&g, task, &cfg).unwrap();
            let r = evaluate(&g, &team, task).unwrap();
            assert_eq!(row.runs, 1);
            assert_eq!(row.mean_leader_distance, Some(r.leader_distance.as_f64()));
            assert_eq!(row.mean_sum_distance, Some(r.sum_distance.as_f64()));
            assert_eq!(row.mean_cardinality, Some(r.cardinality as f64));
        }
    }

    #[test]
    fn source_and_caps() {
        let g = toy();
        let plan = ExperimentPlan {
            k_range: [2, 6],
            trials: 2,
            algorithms: vec![Algorithm::RarestFirst],
            ..ExperimentPlan::default()
        };
        assert!(run_benchmark(&plan, &[NamedGraph::new("toy", &g)]).is_err(), "k above universe");
        let plan = ExperimentPlan {
            k_range: [2, 4],
            k_caps: [("big".to_owned(), 3)].into(),
            task_source: Some("toy".into()),
            ..plan
        };
        let report = run_benchmark(&plan, &[NamedGraph::new("toy", &g), NamedGraph::new("big", &g)]).unwrap();
        assert!(report.row("big", Algorithm::RarestFirst, 3).is_some());
        assert!(report.row("big", Algorithm::RarestFirst, 4).is_none());
        assert!(report.row("toy", Algorithm::RarestFirst, 4).is_some());
        let missing = ExperimentPlan {
            task_source: Some("nowhere".into()),
            ..plan
        };
        assert!(run_benchmark(&missing, &[NamedGraph::new("toy", &g)]).is_err());
    }
}
