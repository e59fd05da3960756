//! Workloads shared by the criterion benchmarks.

use teamform_core::harness::{generate, generate_tasks, SynthConfig};
use teamform_core::{ExpertGraph, Task};

/// Nested synthetic graphs, smallest first, each paired with its name.
pub struct Workload {
    pub graphs: Vec<(String, ExpertGraph)>,
}

impl Workload {
    /// A network of `nodes` experts plus its prefix communities of
    /// `nodes / 25` and `nodes / 5` experts.
    pub fn synthetic(nodes: usize) -> Workload {
        let cfg = SynthConfig {
            nodes,
            communities: vec![("small".into(), nodes / 25), ("mid".into(), nodes / 5)],
            ..SynthConfig::default()
        };
        let net = generate(&cfg).expect("valid synthetic configuration");
        let mut graphs: Vec<(String, ExpertGraph)> = net
            .communities
            .iter()
            .map(|c| (c.name.clone(), c.subgraph(&net.graph).expect("valid community").into_graph()))
            .collect();
        graphs.push(("full".into(), net.graph));
        Workload { graphs }
    }

    /// Tasks drawn from the smallest graph's skills.
    pub fn tasks(&self, k: usize, count: usize, seed: u64) -> Vec<Task> {
        let universe: Vec<String> = self.graphs[0].1.skill_universe_names().into_iter().map(str::to_owned).collect();
        generate_tasks(&universe, k, count, seed).expect("task size within the universe")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_sizes() {
        let w = Workload::synthetic(500);
        let sizes: Vec<usize> = w.graphs.iter().map(|(_, g)| g.len()).collect();
        assert_eq!(sizes, vec![20, 100, 500]);
        assert_eq!(w.tasks(3, 4, 1).len(), 4);
    }
}
