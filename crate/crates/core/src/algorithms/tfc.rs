use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{mix_seed, nearest_holders, positions, AlgorithmConfig, TaskIndex};
use crate::error::Result;
use crate::graph::{hd_set_with_factor, ExpertGraph, ExpertId, PathFinder};
use crate::metrics::{Cost, Task, Team};

/// How TFC covers skills missing from the leader's hop neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FallbackRule {
    /// A uniformly random holder (TFC-R).
    Random,
    /// The holder closest to the leader (TFC-N).
    Nearest,
}

/// The team grown around one leader, with its leader distance.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub leader: ExpertId,
    pub team: Team,
    pub leader_distance: Cost,
}

pub fn tfc_r(g: &ExpertGraph, task: &Task, cfg: &AlgorithmConfig) -> Result<Team> {
    tfc(g, task, cfg, FallbackRule::Random)
}

pub fn tfc_n(g: &ExpertGraph, task: &Task, cfg: &AlgorithmConfig) -> Result<Team> {
    tfc(g, task, cfg, FallbackRule::Nearest)
}

/// Best candidate by leader distance; the first candidate wins ties.
pub fn tfc(g: &ExpertGraph, task: &Task, cfg: &AlgorithmConfig, rule: FallbackRule) -> Result<Team> {
    cfg.validate()?;
    let ix = TaskIndex::new(g, task)?;
    let mut pf = PathFinder::new(g);
    let mut search = LeaderSearch::default();
    let mut current = Draft::default();
    let mut best: Option<Draft> = None;
    for leader in tfc_leaders(g, task, cfg) {
        search.run(&mut pf, &ix, leader, cfg, rule, &mut current);
        match &mut best {
            Some(b) if current.leader_distance >= b.leader_distance => {}
            Some(b) => std::mem::swap(b, &mut current),
            None => best = Some(std::mem::take(&mut current)),
        }
    }
    Ok(best.map(|d| d.team(&ix)).unwrap_or_default())
}

/// Leader candidates: the high-degree task holders or, if there are none,
/// the single task holder of largest degree (smallest id on ties).
pub fn tfc_leaders(g: &ExpertGraph, task: &Task, cfg: &AlgorithmConfig) -> Vec<ExpertId> {
    let hd = hd_set_with_factor(g, task, cfg.hd_degree_factor);
    if !hd.is_empty() {
        return hd;
    }
    task.resolve(g)
        .into_iter()
        .flatten()
        .flat_map(|s| g.support(s).iter().copied())
        .min_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)))
        .into_iter()
        .collect()
}

pub fn tfc_candidates(
    g: &ExpertGraph,
    task: &Task,
    cfg: &AlgorithmConfig,
    rule: FallbackRule,
) -> Result<Vec<Candidate>> {
    let leaders = tfc_leaders(g, task, cfg);
    tfc_with_leaders(g, task, cfg, rule, &leaders)
}

/// One candidate per leader in `leaders`, in the given order.
pub fn tfc_with_leaders(
    g: &ExpertGraph,
    task: &Task,
    cfg: &AlgorithmConfig,
    rule: FallbackRule,
    leaders: &[ExpertId],
) -> Result<Vec<Candidate>> {
    cfg.validate()?;
    for &v in leaders {
        g.check(v)?;
    }
    let ix = TaskIndex::new(g, task)?;
    let mut pf = PathFinder::new(g);
    let mut search = LeaderSearch::default();
    let mut draft = Draft::default();
    Ok(leaders
        .iter()
        .map(|&leader| {
            search.run(&mut pf, &ix, leader, cfg, rule, &mut draft);
            Candidate {
                leader,
                team: draft.team(&ix),
                leader_distance: draft.leader_distance,
            }
        })
        .collect())
}

/// One leader's team in compact form.
#[derive(Debug)]
struct Draft {
    leader: ExpertId,
    own: u64,
    /// Neighbourhood picks with the skill bits each one covers.
    picks: Vec<(ExpertId, u64)>,
    /// Fallback holders by skill position.
    fallback: Vec<(usize, ExpertId)>,
    leader_distance: Cost,
}

impl Default for Draft {
    fn default() -> Self {
        Draft {
            leader: ExpertId(0),
            own: 0,
            picks: Vec::new(),
            fallback: Vec::new(),
            leader_distance: Cost::ZERO,
        }
    }
}

impl Draft {
    fn team(&self, ix: &TaskIndex<'_>) -> Team {
        let mut team = Team::with_leader(self.leader);
        ix.assign(&mut team, self.own, self.leader);
        for &(expert, bits) in &self.picks {
            ix.assign(&mut team, bits, expert);
        }
        for &(pos, expert) in &self.fallback {
            team.assign(ix.token(pos), expert);
            team.mark_fallback(expert);
        }
        team
    }
}

/// Scratch state for growing one leader's team.
#[derive(Default)]
struct LeaderSearch {
    /// Hop neighbourhood members still holding uncovered skills: (expert, hop, task mask).
    pool: Vec<(ExpertId, u32, u64)>,
    others: Vec<ExpertId>,
}

impl LeaderSearch {
    fn run(
        &mut self,
        pf: &mut PathFinder<'_>,
        ix: &TaskIndex<'_>,
        leader: ExpertId,
        cfg: &AlgorithmConfig,
        rule: FallbackRule,
        draft: &mut Draft,
    ) {
        let own = ix.mask(leader);
        draft.leader = leader;
        draft.own = own;
        draft.picks.clear();
        draft.fallback.clear();

        let ball = pf.hops_within(leader, cfg.hop_limit);
        let mut not_covered = ix.all() & !own;
        for limit in 1..=cfg.hop_limit {
            if not_covered == 0 {
                break;
            }
            not_covered = ix.all() & !own;
            draft.picks.clear();
            self.pool.clear();
            self.pool.extend(
                ball.iter()
                    .filter(|&&(_, h)| h <= limit)
                    .map(|&(v, h)| (v, h, ix.mask(v) & not_covered))
                    .filter(|&(_, _, m)| m != 0),
            );
            let mut coverable = self.pool.iter().fold(0, |acc, &(_, _, m)| acc | m);
            while coverable != 0 {
                let (at, &(expert, _, mask)) = self
                    .pool
                    .iter()
                    .enumerate()
                    .max_by(|(_, a), (_, b)| {
                        (a.2 & coverable)
                            .count_ones()
                            .cmp(&(b.2 & coverable).count_ones())
                            .then(b.1.cmp(&a.1))
                            .then(b.0.cmp(&a.0))
                    })
                    .expect("coverable skills imply a non-empty pool");
                let gained = mask & coverable;
                draft.picks.push((expert, gained));
                coverable &= !gained;
                not_covered &= !gained;
                self.pool.swap_remove(at);
            }
        }

        let remaining = not_covered & ix.supported();
        if remaining != 0 {
            match rule {
                FallbackRule::Random => {
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(mix_seed(cfg.rng_seed, &[u64::from(leader.0)]));
                    for pos in positions(remaining) {
                        let s = ix.skill(pos).expect("supported skill");
                        let holder = *pf
                            .graph()
                            .support(s)
                            .choose(&mut rng)
                            .expect("supported skill has holders");
                        draft.fallback.push((pos, holder));
                    }
                }
                FallbackRule::Nearest => {
                    let near = nearest_holders(pf, ix, leader, remaining, cfg.tie_break);
                    for pos in positions(remaining) {
                        let holder = match near[pos] {
                            Some(h) => h.expert,
                            None => pf.graph().support(ix.skill(pos).expect("supported skill"))[0],
                        };
                        draft.fallback.push((pos, holder));
                    }
                }
            }
        }

        self.others.clear();
        self.others.extend(draft.picks.iter().map(|&(v, _)| v));
        self.others.extend(draft.fallback.iter().map(|&(_, v)| v));
        self.others.retain(|&v| v != leader);
        self.others.sort_unstable();
        self.others.dedup();
        draft.leader_distance = self
            .others
            .iter()
            .fold(Cost::ZERO, |acc, &v| acc + Cost::from_distance(pf.pair_distance(leader, v)));
    }
}
