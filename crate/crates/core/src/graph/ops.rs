use std::collections::BTreeSet;

use super::{Community, ExpertGraph, ExpertId, PathFinder};
use crate::error::{Error, Result};
use crate::metrics::Task;

/// Weighted shortest-path distance; `None` when `v` is unreachable from `u`.
pub fn shortest_path_distance(g: &ExpertGraph, u: ExpertId, v: ExpertId) -> Result<Option<f64>> {
    g.check(u)?;
    g.check(v)?;
    if u == v {
        return Ok(Some(0.0));
    }
    Ok(PathFinder::new(g).distance(u, v))
}

/// All experts within `k` edges of `v`, excluding `v`. Weights are ignored.
pub fn k_hop_neighborhood(g: &ExpertGraph, v: ExpertId, k: u32) -> Result<BTreeSet<ExpertId>> {
    g.check(v)?;
    if k == 0 {
        return Err(Error::InvalidArgument("hop count must be at least 1".into()));
    }
    Ok(PathFinder::new(g)
        .hops_within(v, k)
        .into_iter()
        .map(|(u, _)| u)
        .collect())
}

/// Components ordered by their smallest member; members ascending.
pub fn connected_components(g: &ExpertGraph) -> Vec<Vec<ExpertId>> {
    let mut label = vec![usize::MAX; g.len()];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for root in g.experts() {
        if label[root.index()] != usize::MAX {
            continue;
        }
        let c = components.len();
        let mut members = vec![root];
        label[root.index()] = c;
        stack.push(root);
        while let Some(u) = stack.pop() {
            for (v, _) in g.neighbors(u) {
                if label[v.index()] == usize::MAX {
                    label[v.index()] = c;
                    members.push(v);
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// Largest component; ties go to the component holding the smallest id.
pub fn largest_connected_component(g: &ExpertGraph) -> Community {
    let best = connected_components(g)
        .into_iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
        .map(|(_, c)| c)
        .unwrap_or_default();
    Community::new("lcc", best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub average: f64,
}

pub fn degree_stats(g: &ExpertGraph) -> DegreeStats {
    DegreeStats {
        degrees: g.experts().map(|v| g.degree(v)).collect(),
        average: degree_stats_average(g),
    }
}

/// High-degree task holders with the default factor of 2.
pub fn hd_set(g: &ExpertGraph, task: &Task) -> Vec<ExpertId> {
    hd_set_with_factor(g, task, 2.0)
}

/// Experts with `degree > factor * d_avg` holding at least one task skill,
/// by descending degree then ascending id.
pub fn hd_set_with_factor(g: &ExpertGraph, task: &Task, factor: f64) -> Vec<ExpertId> {
    let threshold = factor * degree_stats_average(g);
    let holders: BTreeSet<ExpertId> = task
        .skills()
        .iter()
        .filter_map(|s| g.skill_id(s))
        .flat_map(|s| g.support(s).iter().copied())
        .collect();
    let mut out: Vec<ExpertId> = holders
        .into_iter()
        .filter(|&v| g.degree(v) as f64 > threshold)
        .collect();
    out.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    out
}

pub(crate) fn degree_stats_average(g: &ExpertGraph) -> f64 {
    if g.is_empty() {
        0.0
    } else {
        2.0 * g.edge_count() as f64 / g.len() as f64
    }
}
