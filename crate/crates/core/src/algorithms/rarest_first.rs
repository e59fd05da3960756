use super::{nearest_from_row, positions, Holder, TaskIndex, TieBreak};
use crate::error::Result;
use crate::graph::{ExpertGraph, ExpertId, PathFinder};
use crate::metrics::{Cost, Task, Team};

/// RarestFirst: anchor on the rarest task skill and pick, among its holders,
/// the one whose farthest nearest-holder distance is smallest.
///
/// The rarest skill is the supported one with the fewest holders (earliest
/// in the task on ties). Anchors are scanned by ascending id and only a
/// strictly smaller cost replaces the incumbent; the team then takes the
/// nearest holder of every other skill, smallest id first on distance ties.
/// Skills no anchor can reach are given to their smallest-id holder.
pub fn rarest_first(g: &ExpertGraph, task: &Task) -> Result<Team> {
    let ix = TaskIndex::new(g, task)?;
    let Some(rarest) = positions(ix.supported())
        .min_by_key(|&p| (g.support(ix.skill(p).expect("supported")).len(), p))
    else {
        return Ok(Team::new());
    };
    let mut pf = PathFinder::new(g);
    let wanted = ix.supported();
    let mut best: Option<(Cost, Team)> = None;
    for &anchor in g.support(ix.skill(rarest).expect("supported")) {
        let row = pf.all_distances(anchor);
        let near = nearest_from_row(g, &ix, &row, wanted, TieBreak::AscendingId);
        let cost = positions(wanted).fold(Cost::ZERO, |acc, p| {
            acc.max(Cost::from_distance(near[p].map(|h| h.distance)))
        });
        if best.as_ref().is_some_and(|(b, _)| cost >= *b) {
            continue;
        }
        best = Some((cost, build(g, &ix, anchor, &near, wanted)));
    }
    Ok(best.map(|(_, t)| t).unwrap_or_default())
}

fn build(
    g: &ExpertGraph,
    ix: &TaskIndex<'_>,
    anchor: ExpertId,
    near: &[Option<Holder>],
    wanted: u64,
) -> Team {
    let mut team = Team::with_leader(anchor);
    for p in positions(wanted) {
        let expert = match near[p] {
            Some(h) => h.expert,
            None => g.support(ix.skill(p).expect("supported"))[0],
        };
        team.assign(ix.token(p), expert);
    }
    team
}
