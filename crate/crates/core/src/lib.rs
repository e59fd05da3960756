//! Team formation on weighted collaboration graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] holds the immutable expert graph, shortest paths, hop
//!   neighbourhoods, components and degree statistics.
//! * [`metrics`] scores a [`Team`] by diameter, sum distance and leader distance.
//! * [`algorithms`] contains the community-based leader heuristics (TFC-R,
//!   TFC-N and the desirable-community driver) next to the RarestFirst, MinSD
//!   and MinLD baselines.
//! * [`ingest`] turns a DBLP-style XML corpus into graph and community files.
//! * [`analysis`] emits the degree, component and k-hop skill-coverage tables.
//! * [`harness`] runs seeded multi-trial experiments and the multi-team case study.

pub mod algorithms;
pub mod analysis;
pub mod error;
pub mod graph;
pub mod harness;
pub mod ingest;
pub mod metrics;

pub use algorithms::{Algorithm, AlgorithmConfig, LeaderSet, TieBreak};
pub use error::{Error, Result};
pub use graph::{Community, ExpertGraph, ExpertId, GraphBuilder, SkillId, Subgraph};
pub use metrics::{Cost, CostReport, Task, Team};
