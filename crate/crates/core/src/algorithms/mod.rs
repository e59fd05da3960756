//! Team formation algorithms.
//!
//! The community-based heuristics pick a high-degree leader, grow the team
//! from the leader's hop neighbourhood and fill whatever is left either with
//! random holders ([`tfc_r`]) or with the holders nearest to the leader
//! ([`tfc_n`]). [`dc`] runs them once per desirable community.
//!
//! The skill-centric baselines are [`rarest_first`], [`min_sd`] and
//! [`min_ld`] (optionally restricted to the high-degree leader set).
//!
//! Every algorithm is deterministic given its [`AlgorithmConfig`]; tie-breaks
//! are spelled out on each function.

mod dc;
mod min_ld;
mod min_sd;
mod rarest_first;
mod tfc;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ExpertGraph, ExpertId, PathFinder, SkillId, Visit};
use crate::metrics::{Task, Team};

pub use dc::{dc, is_desirable, required_skill_count, CommunityTeam};
pub use min_ld::min_ld;
pub use min_sd::min_sd;
pub use rarest_first::rarest_first;
pub use tfc::{
    tfc, tfc_candidates, tfc_leaders, tfc_n, tfc_r, tfc_with_leaders, Candidate, FallbackRule,
};

/// Rule for choosing among holders at the same distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Smallest expert id.
    #[default]
    AscendingId,
    /// The holder of more task skills, then the smallest id.
    MoreSkillsThenId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlgorithmConfig {
    pub rng_seed: u64,
    pub hop_limit: u32,
    pub hd_degree_factor: f64,
    /// Tie rule for the nearest-holder fallback of TFC-N.
    pub tie_break: TieBreak,
}

pub const DEFAULT_SEED: u64 = 20_200_801;

impl Default for AlgorithmConfig {
    fn default() -> Self {
        AlgorithmConfig {
            rng_seed: DEFAULT_SEED,
            hop_limit: 2,
            hd_degree_factor: 2.0,
            tie_break: TieBreak::AscendingId,
        }
    }
}

impl AlgorithmConfig {
    pub fn with_seed(seed: u64) -> Self {
        AlgorithmConfig {
            rng_seed: seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.hop_limit == 0 {
            return Err(Error::InvalidArgument("hop_limit must be at least 1".into()));
        }
        if !(self.hd_degree_factor.is_finite() && self.hd_degree_factor > 0.0) {
            return Err(Error::InvalidArgument(
                "hd_degree_factor must be a positive number".into(),
            ));
        }
        Ok(())
    }
}

/// Which experts MinLD may use as leader.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeaderSet {
    All,
    HighDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    TfcR,
    TfcN,
    RarestFirst,
    MinLd,
    MinLdStar,
    MinSd,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::TfcR,
        Algorithm::TfcN,
        Algorithm::RarestFirst,
        Algorithm::MinLd,
        Algorithm::MinLdStar,
        Algorithm::MinSd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::TfcR => "tfc-r",
            Algorithm::TfcN => "tfc-n",
            Algorithm::RarestFirst => "rf",
            Algorithm::MinLd => "minld",
            Algorithm::MinLdStar => "minld-star",
            Algorithm::MinSd => "minsd",
        }
    }

    pub fn is_tfc(self) -> bool {
        matches!(self, Algorithm::TfcR | Algorithm::TfcN)
    }

    pub fn run(self, g: &ExpertGraph, task: &Task, cfg: &AlgorithmConfig) -> Result<Team> {
        match self {
            Algorithm::TfcR => tfc_r(g, task, cfg),
            Algorithm::TfcN => tfc_n(g, task, cfg),
            Algorithm::RarestFirst => rarest_first(g, task),
            Algorithm::MinLd => min_ld(g, task, LeaderSet::All, cfg),
            Algorithm::MinLdStar => min_ld(g, task, LeaderSet::HighDegree, cfg),
            Algorithm::MinSd => min_sd(g, task),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown algorithm {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

impl Serialize for Algorithm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Algorithm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// SplitMix64 finaliser folded over `parts`; used to derive independent,
/// order-free RNG streams from one base seed.
pub fn mix_seed(base: u64, parts: &[u64]) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    parts
        .iter()
        .fold(splitmix(base), |acc, &p| splitmix(acc ^ splitmix(p)))
}

/// Task skills as bit positions, with per-expert masks of held task skills.
pub(crate) struct TaskIndex<'a> {
    task: &'a Task,
    ids: Vec<Option<SkillId>>,
    masks: Vec<u64>,
    /// Bits of every task skill.
    all: u64,
    /// Bits of task skills with at least one holder.
    supported: u64,
}

pub(crate) const MAX_TASK_SKILLS: usize = 64;

impl<'a> TaskIndex<'a> {
    pub(crate) fn new(g: &ExpertGraph, task: &'a Task) -> Result<Self> {
        if task.len() > MAX_TASK_SKILLS {
            return Err(Error::InvalidTask(format!(
                "tasks are limited to {MAX_TASK_SKILLS} skills, got {}",
                task.len()
            )));
        }
        let ids = task.resolve(g);
        let mut masks = vec![0u64; g.len()];
        let mut supported = 0;
        for (pos, id) in ids.iter().enumerate() {
            let Some(s) = id else { continue };
            for &v in g.support(*s) {
                masks[v.index()] |= 1 << pos;
                supported |= 1 << pos;
            }
        }
        let all = if task.len() == 64 {
            u64::MAX
        } else {
            (1u64 << task.len()) - 1
        };
        Ok(TaskIndex {
            task,
            ids,
            masks,
            all,
            supported,
        })
    }

    #[inline]
    pub(crate) fn mask(&self, v: ExpertId) -> u64 {
        self.masks[v.index()]
    }

    pub(crate) fn token(&self, pos: usize) -> &'a str {
        &self.task.skills()[pos]
    }

    pub(crate) fn skill(&self, pos: usize) -> Option<SkillId> {
        self.ids[pos]
    }

    pub(crate) fn all(&self) -> u64 {
        self.all
    }

    pub(crate) fn supported(&self) -> u64 {
        self.supported
    }

    /// Assigns every skill in `bits` to `expert`.
    pub(crate) fn assign(&self, team: &mut Team, bits: u64, expert: ExpertId) {
        for pos in positions(bits) {
            team.assign(self.token(pos), expert);
        }
    }
}

/// Set bit positions, ascending.
pub(crate) fn positions(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(p)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Holder {
    pub expert: ExpertId,
    pub distance: f64,
}

/// For every skill bit in `wanted`, the holder nearest to `source`.
///
/// Nodes settle in `(distance, id)` order, so the first holder seen at the
/// minimum distance has the smallest id; with [`TieBreak::MoreSkillsThenId`]
/// the search keeps going through the tied distance band. Unreachable skills
/// stay `None`.
pub(crate) fn nearest_holders(
    pf: &mut PathFinder<'_>,
    ix: &TaskIndex<'_>,
    source: ExpertId,
    wanted: u64,
    tie: TieBreak,
) -> Vec<Option<Holder>> {
    let mut best: Vec<Option<Holder>> = vec![None; MAX_TASK_SKILLS];
    let mut missing = wanted & ix.supported();
    let mut horizon = f64::NEG_INFINITY;
    if missing == 0 {
        return best;
    }
    pf.dijkstra(source, |v, d| {
        if missing == 0 && d > horizon {
            return Visit::Stop;
        }
        let m = ix.mask(v) & wanted;
        if m == 0 {
            return Visit::Continue;
        }
        for pos in positions(m) {
            match best[pos] {
                None => {
                    best[pos] = Some(Holder {
                        expert: v,
                        distance: d,
                    });
                    missing &= !(1 << pos);
                    horizon = horizon.max(d);
                }
                Some(h) if tie == TieBreak::MoreSkillsThenId && d == h.distance => {
                    let (mine, theirs) = (ix.mask(v).count_ones(), ix.mask(h.expert).count_ones());
                    if mine > theirs || (mine == theirs && v < h.expert) {
                        best[pos] = Some(Holder {
                            expert: v,
                            distance: d,
                        });
                    }
                }
                Some(_) => {}
            }
        }
        if missing == 0 && tie == TieBreak::AscendingId {
            Visit::Stop
        } else {
            Visit::Continue
        }
    });
    best
}

/// Nearest holders read off a complete distance row by scanning each
/// skill's support; ties as in [`nearest_holders`].
pub(crate) fn nearest_from_row(
    g: &ExpertGraph,
    ix: &TaskIndex<'_>,
    row: &[Option<f64>],
    wanted: u64,
    tie: TieBreak,
) -> Vec<Option<Holder>> {
    let mut best: Vec<Option<Holder>> = vec![None; MAX_TASK_SKILLS];
    for pos in positions(wanted & ix.supported()) {
        let s = ix.skill(pos).expect("supported skill");
        for &v in g.support(s) {
            let Some(d) = row[v.index()] else { continue };
            let better = match best[pos] {
                None => true,
                Some(h) if d < h.distance => true,
                Some(h) if d == h.distance && tie == TieBreak::MoreSkillsThenId => {
                    let (mine, theirs) = (ix.mask(v).count_ones(), ix.mask(h.expert).count_ones());
                    mine > theirs || (mine == theirs && v < h.expert)
                }
                Some(_) => false,
            };
            if better {
                best[pos] = Some(Holder {
                    expert: v,
                    distance: d,
                });
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{toy, toy_id};

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("steiner".parse::<Algorithm>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(AlgorithmConfig::default().validate().is_ok());
        let bad = AlgorithmConfig {
            hop_limit: 0,
            ..AlgorithmConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = AlgorithmConfig {
            hd_degree_factor: 0.0,
            ..AlgorithmConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn mixed_seeds_differ() {
        assert_ne!(mix_seed(1, &[2, 3]), mix_seed(1, &[3, 2]));
        assert_eq!(mix_seed(7, &[1]), mix_seed(7, &[1]));
    }

    #[test]
    fn nearest_holders_from_g() {
        let g = toy();
        let task = Task::new(["a", "c", "e"]).unwrap();
        let ix = TaskIndex::new(&g, &task).unwrap();
        let mut pf = PathFinder::new(&g);
        let near = nearest_holders(&mut pf, &ix, toy_id('G'), ix.all(), TieBreak::AscendingId);
        let got: Vec<_> = near[..3]
            .iter()
            .map(|h| h.map(|h| (h.expert, h.distance)))
            .collect();
        // F and H both hold c at distance 3; ascending id picks F.
        assert_eq!(
            got,
            vec![
                Some((toy_id('J'), 3.0)),
                Some((toy_id('F'), 3.0)),
                Some((toy_id('I'), 2.0)),
            ]
        );
        let near = nearest_holders(&mut pf, &ix, toy_id('G'), ix.all(), TieBreak::MoreSkillsThenId);
        // H holds both c and e, F only c.
        assert_eq!(near[1].unwrap().expert, toy_id('H'));
    }

    #[test]
    fn row_scan_matches_search() {
        let g = toy();
        let task = Task::new(["a", "b", "c", "d", "e"]).unwrap();
        let ix = TaskIndex::new(&g, &task).unwrap();
        let mut pf = PathFinder::new(&g);
        for v in g.experts() {
            let row = pf.all_distances(v);
            for tie in [TieBreak::AscendingId, TieBreak::MoreSkillsThenId] {
                assert_eq!(
                    nearest_from_row(&g, &ix, &row, ix.all(), tie),
                    nearest_holders(&mut pf, &ix, v, ix.all(), tie),
                    "from {v} with {tie:?}"
                );
            }
        }
    }

    #[test]
    fn nearest_holder_tie_prefers_more_skills() {
        let g = toy();
        let task = Task::new(["a", "b", "c", "d", "e"]).unwrap();
        let ix = TaskIndex::new(&g, &task).unwrap();
        let mut pf = PathFinder::new(&g);
        let near = nearest_holders(&mut pf, &ix, toy_id('A'), ix.all(), TieBreak::MoreSkillsThenId);
        // B{d,e} and T{d} tie at 4 for skill d.
        assert_eq!(near[3].unwrap().expert, toy_id('B'));
        let near = nearest_holders(&mut pf, &ix, toy_id('A'), ix.all(), TieBreak::AscendingId);
        assert_eq!(near[3].unwrap().expert, toy_id('B'));
    }
}
