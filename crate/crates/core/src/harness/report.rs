//! CSV and markdown emission for benchmark reports.
//!
//! Metric tables have one row per `(graph, k)` and one column per algorithm.
//! Cells are empty when no run qualified for the mean.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::run::{BenchmarkReport, BenchmarkRow};
use crate::algorithms::Algorithm;
use crate::error::Result;
use crate::metrics::COST_CSV_HEADER;

/// Columns that can be tabulated per `(graph, k)` and algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Cardinality,
    Diameter,
    SumDistance,
    LeaderDistance,
    MeanWallMs,
    MedianWallMs,
    FallbackFraction,
}

impl Metric {
    pub const COSTS: [Metric; 4] = [
        Metric::Cardinality,
        Metric::Diameter,
        Metric::SumDistance,
        Metric::LeaderDistance,
    ];

    pub fn file_name(self) -> &'static str {
        match self {
            Metric::Cardinality => "cardinality.csv",
            Metric::Diameter => "diameter.csv",
            Metric::SumDistance => "sum_distance.csv",
            Metric::LeaderDistance => "leader_distance.csv",
            Metric::MeanWallMs => "time_mean_ms.csv",
            Metric::MedianWallMs => "time_median_ms.csv",
            Metric::FallbackFraction => "fallback_fraction.csv",
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Metric::Cardinality => "mean team size over full-coverage runs",
            Metric::Diameter => "mean team diameter over full-coverage runs",
            Metric::SumDistance => "mean sum distance over full-coverage runs",
            Metric::LeaderDistance => "mean leader distance over full-coverage runs",
            Metric::MeanWallMs => "mean wall time per call in milliseconds",
            Metric::MedianWallMs => "median wall time per call in milliseconds",
            Metric::FallbackFraction => "fraction of teams that needed fallback experts",
        }
    }

    pub fn value(self, row: &BenchmarkRow) -> Option<f64> {
        match self {
            Metric::Cardinality => row.mean_cardinality,
            Metric::Diameter => row.mean_diameter,
            Metric::SumDistance => row.mean_sum_distance,
            Metric::LeaderDistance => row.mean_leader_distance,
            Metric::MeanWallMs => Some(row.mean_wall_ms),
            Metric::MedianWallMs => Some(row.median_wall_ms),
            Metric::FallbackFraction => Some(row.fallback_fraction),
        }
    }
}

impl BenchmarkReport {
    fn grid_keys(&self) -> Vec<(String, usize)> {
        let mut keys = Vec::new();
        for g in &self.graphs {
            for &k in self.tasks.keys() {
                if self.rows.iter().any(|r| r.graph == g.name && r.k == k) {
                    keys.push((g.name.clone(), k));
                }
            }
        }
        keys
    }

    /// A metric as a `(graph, k) x algorithm` table.
    pub fn metric_csv(&self, metric: Metric, algorithms: &[Algorithm]) -> String {
        let mut out = format!("# {}\ngraph,k", metric.describe());
        for a in algorithms {
            let _ = write!(out, ",{a}");
        }
        out.push('\n');
        for (graph, k) in self.grid_keys() {
            let _ = write!(out, "{graph},{k}");
            for &a in algorithms {
                out.push(',');
                if let Some(v) = self.row(&graph, a, k).and_then(|r| metric.value(r)) {
                    let _ = write!(out, "{v:.4}");
                }
            }
            out.push('\n');
        }
        out
    }

    /// Run counts per row, separating partial and unreachable runs.
    pub fn coverage_csv(&self) -> String {
        let mut out = String::from(
            "# run counts per cell; partial runs left some task skill unassigned\n\
             graph,k,algorithm,runs,full_runs,partial_runs,unreachable_runs,mean_partial_coverage,redraws\n",
        );
        for r in &self.rows {
            let cov = r.mean_partial_coverage.map(|c| format!("{c:.4}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{cov},{}",
                r.graph,
                r.k,
                r.algorithm,
                r.runs,
                r.full_runs,
                r.partial_runs,
                r.unreachable_runs,
                self.redraws.get(&r.k).copied().unwrap_or(0)
            );
        }
        out
    }

    /// Every individual run.
    pub fn runs_csv(&self) -> String {
        let mut out = format!("graph,trial,{COST_CSV_HEADER}\n");
        for r in &self.runs {
            let _ = writeln!(
                out,
                "{},{},{}",
                r.graph,
                r.trial,
                r.report.csv_row(r.algorithm.name(), r.k, r.wall_ms, r.fallback_experts)
            );
        }
        out
    }

    pub fn tasks_csv(&self) -> String {
        let mut out = String::from("k,trial,skills\n");
        for (k, tasks) in &self.tasks {
            for (trial, t) in tasks.iter().enumerate() {
                let _ = writeln!(out, "{k},{trial},{t}");
            }
        }
        out
    }

    pub fn summary_markdown(&self) -> String {
        let p = &self.plan;
        let mut out = String::from("# Benchmark summary\n\n");
        let names: Vec<&str> = p.algorithms.iter().map(|a| a.name()).collect();
        let _ = writeln!(
            out,
            "- task sizes {}..={}, {} trials each, seed {}\n- tasks drawn from `{}`, {} redraws in total\n- algorithms: {}\n",
            p.k_range[0],
            p.k_range[1],
            p.trials,
            p.seed,
            self.task_source,
            self.redraws.values().sum::<usize>(),
            names.join(", ")
        );
        out.push_str("| graph | nodes | edges | skills | k cap |\n|---|---:|---:|---:|---:|\n");
        for g in &self.graphs {
            let cap = g.k_cap.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "| {} | {} | {} | {} | {cap} |", g.name, g.nodes, g.edges, g.skills);
        }
        for (title, metric) in [
            ("Mean leader distance", Metric::LeaderDistance),
            ("Mean sum distance", Metric::SumDistance),
            ("Median wall time (ms)", Metric::MedianWallMs),
        ] {
            let _ = write!(out, "\n## {title}\n\n| graph | k |");
            for n in &names {
                let _ = write!(out, " {n} |");
            }
            out.push_str("\n|---|---:|");
            out.push_str(&"---:|".repeat(names.len()));
            out.push('\n');
            for (graph, k) in self.grid_keys() {
                let _ = write!(out, "| {graph} | {k} |");
                for &a in &p.algorithms {
                    match self.row(&graph, a, k).and_then(|r| metric.value(r)) {
                        Some(v) => {
                            let _ = write!(out, " {v:.3} |");
                        }
                        None => out.push_str(" - |"),
                    }
                }
                out.push('\n');
            }
        }
        out
    }

    /// Writes every table into `dir`; returns the files in write order.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir)?;
        let algs = &self.plan.algorithms;
        let tfc: Vec<Algorithm> = algs.iter().copied().filter(|a| a.is_tfc()).collect();
        let mut files: Vec<(String, String)> = Metric::COSTS
            .iter()
            .chain(&[Metric::MeanWallMs, Metric::MedianWallMs])
            .map(|&m| (m.file_name().to_owned(), self.metric_csv(m, algs)))
            .collect();
        files.push((
            Metric::FallbackFraction.file_name().to_owned(),
            self.metric_csv(Metric::FallbackFraction, &tfc),
        ));
        files.push(("coverage.csv".into(), self.coverage_csv()));
        files.push(("tasks.csv".into(), self.tasks_csv()));
        files.push(("runs.csv".into(), self.runs_csv()));
        files.push(("summary.md".into(), self.summary_markdown()));
        let mut written = Vec::with_capacity(files.len());
        for (name, body) in files {
            let path = dir.join(name);
            std::fs::write(&path, body)?;
            written.push(path);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::toy;
    use crate::harness::{run_benchmark, ExperimentPlan, NamedGraph};

    fn report() -> BenchmarkReport {
        let g = toy();
        let plan = ExperimentPlan {
            k_range: [2, 3],
            trials: 4,
            algorithms: vec![Algorithm::TfcR, Algorithm::TfcN, Algorithm::MinSd],
            ..ExperimentPlan::default()
        };
        run_benchmark(&plan, &[NamedGraph::new("toy", &g)]).unwrap()
    }

    #[test]
    fn metric_table_layout() {
        let r = report();
        let csv = r.metric_csv(Metric::LeaderDistance, &r.plan.algorithms);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# "));
        assert_eq!(lines[1], "graph,k,tfc-r,tfc-n,minsd");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("toy,2,"));
        assert_eq!(lines[3].split(',').count(), 5);
    }

    #[test]
    fn cost_tables_are_reproducible() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let files = report().write(dir_a.path()).unwrap();
        report().write(dir_b.path()).unwrap();
        assert_eq!(files.len(), 11);
        for name in [
            "cardinality.csv",
            "diameter.csv",
            "sum_distance.csv",
            "leader_distance.csv",
            "fallback_fraction.csv",
            "coverage.csv",
            "tasks.csv",
        ] {
            let a = std::fs::read(dir_a.path().join(name)).unwrap();
            let b = std::fs::read(dir_b.path().join(name)).unwrap();
            assert_eq!(a, b, "{name}");
        }
        let fb = std::fs::read_to_string(dir_a.path().join("fallback_fraction.csv")).unwrap();
        assert_eq!(fb.lines().nth(1), Some("graph,k,tfc-r,tfc-n"));
        let md = std::fs::read_to_string(dir_a.path().join("summary.md")).unwrap();
        assert!(md.contains("| toy | 20 | 23 | 5 | - |"));
    }
}
