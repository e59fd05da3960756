use super::{tfc, AlgorithmConfig, FallbackRule};
use crate::error::{Error, Result};
use crate::graph::{Community, ExpertGraph};
use crate::metrics::{Task, Team};

/// A team formed inside one community, with ids in the parent graph.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunityTeam {
    pub community: Community,
    pub team: Team,
}

/// Number of task skills a community must cover to be desirable.
pub fn required_skill_count(task: &Task, threshold: f64) -> Result<usize> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "coverage threshold must lie in (0, 1], got {threshold}"
        )));
    }
    Ok((threshold * task.len() as f64 - 1e-9).ceil().max(0.0) as usize)
}

pub fn is_desirable(g: &ExpertGraph, community: &Community, task: &Task, threshold: f64) -> Result<bool> {
    let need = required_skill_count(task, threshold)?;
    let held = community.skill_union(g);
    let covered = task
        .resolve(g)
        .into_iter()
        .flatten()
        .filter(|s| held.contains(s))
        .count();
    Ok(covered >= need)
}

/// Runs TFC inside every desirable community, in input order.
pub fn dc(
    g: &ExpertGraph,
    communities: &[Community],
    task: &Task,
    threshold: f64,
    cfg: &AlgorithmConfig,
    rule: FallbackRule,
) -> Result<Vec<CommunityTeam>> {
    Community::validate_all(communities, g)?;
    let mut out = Vec::new();
    for c in communities {
        if !is_desirable(g, c, task, threshold)? {
            continue;
        }
        let sub = c.subgraph(g)?;
        let local = tfc(sub.graph(), task, cfg, rule)?;
        out.push(CommunityTeam {
            community: c.clone(),
            team: sub.lift_team(&local),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{toy, toy_id};
    use crate::metrics;

    fn split() -> Vec<Community> {
        let c1: Vec<_> = "ABCDPQRST".chars().map(toy_id).collect();
        let c2: Vec<_> = "EFGHIJKLMNO".chars().map(toy_id).collect();
        vec![Community::new("C1", c1), Community::new("C2", c2)]
    }

    #[test]
    fn threshold_rounding() {
        let t = Task::new(["a", "b", "c", "d", "e"]).unwrap();
        assert_eq!(required_skill_count(&t, 0.6).unwrap(), 3);
        assert_eq!(required_skill_count(&t, 1.0).unwrap(), 5);
        assert_eq!(required_skill_count(&t, 0.61).unwrap(), 4);
        assert!(required_skill_count(&t, 0.0).is_err());
        assert!(required_skill_count(&t, 1.5).is_err());
    }

    #[test]
    fn toy_split_teams_are_lifted() {
        let g = toy();
        let task = Task::new(["a", "b", "c", "d", "e"]).unwrap();
        let teams = dc(&g, &split(), &task, 0.9, &AlgorithmConfig::default(), FallbackRule::Nearest).unwrap();
        assert_eq!(teams.len(), 2);
        assert_eq!(teams[0].community.name, "C1");
        let c1: Vec<_> = split()[0].members.iter().copied().collect();
        for ct in &teams {
            ct.team.validate(&g).unwrap();
            assert!(ct.team.is_complete(&task));
            let report = metrics::evaluate(&g, &ct.team, &task).unwrap();
            assert!(report.leader_distance.is_finite());
        }
        assert!(teams[0].team.members().iter().all(|v| c1.contains(v)));
        assert!(teams[1].team.members().iter().all(|v| !c1.contains(v)));
    }

    #[test]
    fn undesirable_communities_are_skipped() {
        let g = toy();
        let task = Task::new(["a", "b", "c", "d", "e"]).unwrap();
        let small = vec![Community::new("tiny", [toy_id('K'), toy_id('J')])];
        assert!(!is_desirable(&g, &small[0], &task, 0.6).unwrap());
        let teams = dc(&g, &small, &task, 0.6, &AlgorithmConfig::default(), FallbackRule::Random).unwrap();
        assert!(teams.is_empty());
        assert!(is_desirable(&g, &small[0], &task, 0.4).unwrap());
        let no_e = Community::new("no-e", "ACJ".chars().map(toy_id));
        assert!(!is_desirable(&g, &no_e, &task, 1.0).unwrap());
        assert!(is_desirable(&g, &no_e, &task, 0.6).unwrap());
        assert!(!is_desirable(&g, &no_e, &task, 0.8).unwrap());
    }
}
