use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};
use serde::{Deserialize, Serialize};

use crate::algorithms::mix_seed;
use crate::error::{Error, Result};
use crate::graph::{Community, ExpertGraph, ExpertId, GraphBuilder};

/// Parameters of the synthetic collaboration network.
///
/// The topology is preferential attachment: expert `i` joins after experts
/// `0..i` and links to `attach` distinct earlier experts chosen with
/// probability proportional to their degree. Every prefix `0..n` is therefore
/// connected, and the nested communities are such prefixes.
///
/// Each expert holds `base_skills + skills_per_log_degree * ln(degree)`
/// distinct skills (rounded), drawn from a Zipf law over `vocabulary` tokens.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub nodes: usize,
    pub attach: usize,
    pub vocabulary: usize,
    pub zipf_exponent: f64,
    pub base_skills: f64,
    pub skills_per_log_degree: f64,
    pub weight_min: f64,
    pub weight_max: f64,
    /// Nested prefix communities, smallest first, as `(name, size)`.
    pub communities: Vec<(String, usize)>,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            nodes: 25_000,
            attach: 3,
            vocabulary: 200,
            zipf_exponent: 1.0,
            base_skills: 3.0,
            skills_per_log_degree: 2.0,
            weight_min: 0.2,
            weight_max: 0.95,
            communities: vec![("small".into(), 1_000), ("mid".into(), 5_000)],
            seed: 7,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_owned()));
        if self.attach == 0 || self.nodes <= self.attach {
            return bad("nodes must exceed attach, and attach must be at least 1");
        }
        if self.vocabulary == 0 {
            return bad("vocabulary must be non-empty");
        }
        if !(self.zipf_exponent >= 0.0 && self.zipf_exponent.is_finite()) {
            return bad("zipf_exponent must be a non-negative number");
        }
        if !(self.base_skills >= 0.0 && self.skills_per_log_degree >= 0.0) {
            return bad("skill counts must be non-negative");
        }
        if !(0.0 <= self.weight_min && self.weight_min <= self.weight_max && self.weight_max.is_finite()) {
            return bad("edge weights need 0 <= weight_min <= weight_max");
        }
        let mut last = 0;
        for (name, size) in &self.communities {
            if *size <= last || *size > self.nodes {
                return Err(Error::InvalidArgument(format!(
                    "community {name} must be larger than the previous one and no larger than the graph"
                )));
            }
            last = *size;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticNetwork {
    pub graph: ExpertGraph,
    /// Nested communities, smallest first; each names the next as parent.
    pub communities: Vec<Community>,
}

pub fn skill_token(rank: usize) -> String {
    format!("w{rank:04}")
}

pub fn generate(cfg: &SynthConfig) -> Result<SyntheticNetwork> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, &[0]));
    let m = cfg.attach;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(cfg.nodes * m);
    let mut ends: Vec<usize> = Vec::with_capacity(2 * cfg.nodes * m);
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    let mut targets: Vec<usize> = Vec::with_capacity(m);
    for v in m + 1..cfg.nodes {
        targets.clear();
        while targets.len() < m {
            let t = *ends.choose(&mut rng).expect("seed clique has edges");
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            ends.extend([t, v]);
        }
    }

    let mut degree = vec![0usize; cfg.nodes];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let zipf = Zipf::new(cfg.vocabulary as f64, cfg.zipf_exponent)
        .map_err(|e| Error::InvalidArgument(format!("zipf law: {e}")))?;
    let mut skill_rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, &[1]));
    let mut b = GraphBuilder::new();
    let mut held: Vec<usize> = Vec::new();
    for (i, &d) in degree.iter().enumerate() {
        let want = (cfg.base_skills + cfg.skills_per_log_degree * (d.max(1) as f64).ln()).round() as usize;
        let want = want.clamp(1, cfg.vocabulary);
        held.clear();
        while held.len() < want {
            let rank = zipf.sample(&mut skill_rng) as usize;
            if !held.contains(&rank) {
                held.push(rank);
            }
        }
        held.sort_unstable();
        b.add_expert(format!("x{i}"), held.iter().map(|&r| skill_token(r)))?;
    }
    let mut weight_rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, &[2]));
    for (u, v) in edges {
        let w = weight_rng.random_range(cfg.weight_min..=cfg.weight_max);
        b.add_edge(ExpertId(u as u32), ExpertId(v as u32), w)?;
    }
    let graph = b.build()?;

    let communities = cfg
        .communities
        .iter()
        .enumerate()
        .map(|(i, (name, size))| {
            let c = Community::new(name.clone(), (0..*size as u32).map(ExpertId));
            match cfg.communities.get(i + 1) {
                Some((parent, _)) => c.with_parent(parent.clone()),
                None => c,
            }
        })
        .collect::<Vec<_>>();
    Community::validate_all(&communities, &graph)?;
    Ok(SyntheticNetwork { graph, communities })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{connected_components, degree_stats};

    fn small() -> SynthConfig {
        SynthConfig {
            nodes: 600,
            communities: vec![("a".into(), 100), ("b".into(), 300)],
            ..SynthConfig::default()
        }
    }

    #[test]
    fn shape_and_determinism() {
        let cfg = small();
        let net = generate(&cfg).unwrap();
        let g = &net.graph;
        assert_eq!(g.len(), 600);
        assert_eq!(g.edge_count(), 6 + (600 - 4) * 3);
        assert_eq!(connected_components(g).len(), 1);
        assert!(g.edges().all(|(_, _, w)| (0.2..=0.95).contains(&w)));
        let stats = degree_stats(g);
        assert!(stats.degrees.iter().all(|&d| d >= 3));
        assert!(*stats.degrees.iter().max().unwrap() > 30);

        let again = generate(&cfg).unwrap();
        assert_eq!(again.graph.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert_eq!(again.graph.skill_universe_names(), g.skill_universe_names());
    }

    #[test]
    fn communities_are_connected_prefixes() {
        let net = generate(&small()).unwrap();
        assert_eq!(net.communities[0].parent.as_deref(), Some("b"));
        assert_eq!(net.communities[1].parent, None);
        for c in &net.communities {
            let sub = c.subgraph(&net.graph).unwrap();
            assert_eq!(connected_components(sub.graph()).len(), 1, "{}", c.name);
        }
    }

    #[test]
    fn bad_configs() {
        let mut cfg = small();
        cfg.communities = vec![("a".into(), 300), ("b".into(), 100)];
        assert!(generate(&cfg).is_err());
        let cfg = SynthConfig { attach: 0, ..small() };
        assert!(generate(&cfg).is_err());
        let cfg = SynthConfig { weight_min: 2.0, ..small() };
        assert!(generate(&cfg).is_err());
    }
}
