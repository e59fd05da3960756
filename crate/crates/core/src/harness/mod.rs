//! Seeded experiments: synthetic networks, random tasks, multi-algorithm
//! benchmark runs with CSV and markdown reports, and the multi-community
//! case study.

mod case_study;
mod plan;
mod report;
mod run;
mod synth;
mod tasks;

pub use case_study::{
    bundled_case_tasks, load_case_tasks, parse_case_tasks, run_case_study, team_cell, CaseStudy, CaseTask,
    CaseTaskSpec,
};
pub use plan::ExperimentPlan;
pub use report::Metric;
pub use run::{aggregate, run_benchmark, BenchmarkReport, BenchmarkRow, GraphSummary, NamedGraph, RunRecord};
pub use synth::{generate, skill_token, SynthConfig, SyntheticNetwork};
pub use tasks::{draw_task, generate_tasks};
