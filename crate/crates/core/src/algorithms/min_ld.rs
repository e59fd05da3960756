use super::{
    nearest_from_row, positions, tfc_leaders, AlgorithmConfig, LeaderSet, TaskIndex, TieBreak,
};
use crate::error::Result;
use crate::graph::{ExpertGraph, ExpertId, PathFinder};
use crate::metrics::{Cost, Task, Team};

/// MinLD: for each leader candidate, take the nearest holder of every skill
/// and keep the team with the smallest leader distance.
///
/// Holders tied on distance are ranked by how many task skills they hold,
/// then by id. Candidates are visited in ascending id for
/// [`LeaderSet::All`] and in high-degree order for [`LeaderSet::HighDegree`];
/// a later candidate must be strictly better to win. If no expert clears the
/// degree bar, the high-degree set falls back to the same single leader TFC
/// would use.
pub fn min_ld(g: &ExpertGraph, task: &Task, leaders: LeaderSet, cfg: &AlgorithmConfig) -> Result<Team> {
    cfg.validate()?;
    let ix = TaskIndex::new(g, task)?;
    let wanted = ix.supported();
    if wanted == 0 {
        return Ok(Team::new());
    }
    let candidates: Vec<ExpertId> = match leaders {
        LeaderSet::All => g.experts().collect(),
        LeaderSet::HighDegree => tfc_leaders(g, task, cfg),
    };
    let mut pf = PathFinder::new(g);
    let mut best: Option<(Cost, Team)> = None;
    let mut members: Vec<(ExpertId, f64)> = Vec::new();
    for leader in candidates {
        let row = pf.all_distances(leader);
        let near = nearest_from_row(g, &ix, &row, wanted, TieBreak::MoreSkillsThenId);
        members.clear();
        let mut ld = Cost::ZERO;
        for p in positions(wanted) {
            match near[p] {
                Some(h) => members.push((h.expert, h.distance)),
                None => ld = Cost::Unreachable,
            }
        }
        members.sort_unstable_by_key(|&(v, _)| v);
        members.dedup_by_key(|&mut (v, _)| v);
        ld = members.iter().fold(ld, |acc, &(_, d)| acc + Cost::Finite(d));
        if best.as_ref().is_some_and(|(b, _)| ld >= *b) {
            continue;
        }
        let mut team = Team::with_leader(leader);
        for p in positions(wanted) {
            let expert = near[p].map_or_else(|| g.support(ix.skill(p).expect("supported"))[0], |h| h.expert);
            team.assign(ix.token(p), expert);
        }
        best = Some((ld, team));
    }
    Ok(best.map(|(_, t)| t).unwrap_or_default())
}
