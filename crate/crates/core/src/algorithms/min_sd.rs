use super::{nearest_from_row, positions, TaskIndex, TieBreak};
use crate::error::Result;
use crate::graph::{ExpertGraph, ExpertId, PathFinder};
use crate::metrics::{Cost, Task, Team};

/// MinSD: star teams around every skill holder, ranked by sum distance.
///
/// Seeds are taken skill by skill in task order and, within a skill, by
/// ascending id; each seed is tried once. A seed's team is the seed plus the
/// nearest holder of every skill (more task skills, then smaller id, on
/// distance ties), and the seed leads it. The first team reaching the
/// smallest sum distance wins.
pub fn min_sd(g: &ExpertGraph, task: &Task) -> Result<Team> {
    let ix = TaskIndex::new(g, task)?;
    let wanted = ix.supported();
    if wanted == 0 {
        return Ok(Team::new());
    }
    let mut pf = PathFinder::new(g);
    let mut tried = vec![false; g.len()];
    let mut best: Option<(Cost, Team)> = None;
    let mut chosen: Vec<ExpertId> = Vec::new();
    for p in positions(wanted) {
        for &seed in g.support(ix.skill(p).expect("supported")) {
            if std::mem::replace(&mut tried[seed.index()], true) {
                continue;
            }
            let row = pf.all_distances(seed);
            let near = nearest_from_row(g, &ix, &row, wanted, TieBreak::MoreSkillsThenId);
            chosen.clear();
            chosen.extend(positions(wanted).map(|q| {
                near[q].map_or_else(|| g.support(ix.skill(q).expect("supported"))[0], |h| h.expert)
            }));
            let sd = star_sum_distance(&mut pf, &chosen);
            if best.as_ref().is_some_and(|(b, _)| sd >= *b) {
                continue;
            }
            let mut team = Team::with_leader(seed);
            for (q, &v) in positions(wanted).zip(&chosen) {
                team.assign(ix.token(q), v);
            }
            best = Some((sd, team));
        }
    }
    Ok(best.map(|(_, t)| t).unwrap_or_default())
}

/// Sum of distances over all pairs of skill positions.
fn star_sum_distance(pf: &mut PathFinder<'_>, chosen: &[ExpertId]) -> Cost {
    let mut distinct: Vec<ExpertId> = chosen.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let weight = |v: ExpertId| chosen.iter().filter(|&&u| u == v).count() as f64;
    let mut total = Cost::ZERO;
    for (i, &u) in distinct.iter().enumerate() {
        let rest = &distinct[i + 1..];
        if rest.is_empty() {
            break;
        }
        let wu = weight(u);
        for (d, &v) in pf.distances_to(u, rest).into_iter().zip(rest) {
            total = total + Cost::from_distance(d.map(|d| d * wu * weight(v)));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{toy, toy_id};
    use crate::metrics;

    #[test]
    fn toy_team() {
        let g = toy();
        let task = Task::new(["a", "b", "c", "d", "e"]).unwrap();
        let team = min_sd(&g, &task).unwrap();
        let members: String = team.members().iter().map(|&v| g.name(v)).collect();
        assert_eq!(members, "ACS");
        assert_eq!(team.leader(), Some(toy_id('S')));
        let r = metrics::evaluate(&g, &team, &task).unwrap();
        assert_eq!(r.sum_distance, Cost::Finite(26.0));
        assert_eq!(r.leader_distance, Cost::Finite(8.0));
    }

    #[test]
    fn star_sum_matches_metric() {
        let g = toy();
        let task = Task::new(["a", "b", "c", "d", "e"]).unwrap();
        let mut pf = PathFinder::new(&g);
        let chosen: Vec<_> = "ACCSS".chars().map(toy_id).collect();
        assert_eq!(star_sum_distance(&mut pf, &chosen), Cost::Finite(26.0));
        let mut team = Team::with_leader(toy_id('A'));
        for (s, &v) in task.skills().iter().zip(&chosen) {
            team.assign(s.clone(), v);
        }
        assert_eq!(metrics::sum_distance(&g, &team, &task).unwrap(), Cost::Finite(26.0));
    }

    #[test]
    fn one_expert_covering_all() {
        let g = toy();
        let task = Task::new(["d", "e"]).unwrap();
        let team = min_sd(&g, &task).unwrap();
        let r = metrics::evaluate(&g, &team, &task).unwrap();
        assert_eq!(r.sum_distance, Cost::ZERO);
        assert_eq!(team.len(), 1);
        let single = min_sd(&g, &Task::new(["a"]).unwrap()).unwrap();
        assert_eq!(single.len(), 1);
    }
}
