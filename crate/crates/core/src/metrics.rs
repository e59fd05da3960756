//! Communication-cost measures of a team.
//!
//! * diameter: the largest shortest-path distance between two members;
//! * sum distance (SD): the sum of distances between the experts responsible
//!   for every pair of task skills, so an expert covering several skills is
//!   counted once per skill;
//! * leader distance (LD): the sum of distances from the leader to every
//!   other member.
//!
//! Distances across components are [`Cost::Unreachable`], never a large
//! finite stand-in.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{validate_skill, ExpertGraph, ExpertId, PathFinder, SkillId};

/// Ordered list of distinct required skills.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Task {
    skills: Vec<String>,
}

impl Task {
    pub fn new<I, S>(skills: I) -> Result<Task>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let skills: Vec<String> = skills.into_iter().map(Into::into).collect();
        if skills.is_empty() {
            return Err(Error::InvalidTask("a task needs at least one skill".into()));
        }
        let mut seen = HashSet::new();
        for s in &skills {
            validate_skill(s)?;
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidTask(format!("skill {s:?} listed twice")));
            }
        }
        Ok(Task { skills })
    }

    /// Parses a comma-separated skill list, trimming blanks around tokens.
    pub fn parse(list: &str) -> Result<Task> {
        Task::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    pub fn skills(&self) -> &[String] {
        &self.skills
    }

    pub fn len(&self) -> usize {
        self.skills.len()
    }

    pub fn is_empty(&self) -> bool {
        self.skills.is_empty()
    }

    /// Skill ids in task order; `None` for tokens the graph has never seen.
    pub fn resolve(&self, g: &ExpertGraph) -> Vec<Option<SkillId>> {
        self.skills.iter().map(|s| g.skill_id(s)).collect()
    }

    /// Skills nobody in `g` holds.
    pub fn unsupported<'t>(&'t self, g: &ExpertGraph) -> Vec<&'t str> {
        self.skills
            .iter()
            .filter(|s| g.support_of(s).is_empty())
            .map(String::as_str)
            .collect()
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.skills.join(","))
    }
}

/// A leader plus a skill → expert assignment.
///
/// Members are always the assigned experts together with the leader.
/// Experts added by a fallback step (outside the leader's hop neighbourhood)
/// are additionally flagged.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Team {
    leader: Option<ExpertId>,
    assignment: BTreeMap<String, ExpertId>,
    members: BTreeSet<ExpertId>,
    fallback: BTreeSet<ExpertId>,
}

impl Team {
    pub fn new() -> Self {
        Team::default()
    }

    pub fn with_leader(leader: ExpertId) -> Self {
        let mut t = Team::default();
        t.set_leader(leader);
        t
    }

    pub fn set_leader(&mut self, leader: ExpertId) {
        self.leader = Some(leader);
        self.rebuild_members();
    }

    /// Assigns `skill` to `expert`, replacing any previous holder.
    pub fn assign(&mut self, skill: impl Into<String>, expert: ExpertId) {
        self.assignment.insert(skill.into(), expert);
        self.rebuild_members();
    }

    pub fn mark_fallback(&mut self, expert: ExpertId) {
        self.fallback.insert(expert);
    }

    fn rebuild_members(&mut self) {
        self.members = self.assignment.values().copied().collect();
        self.members.extend(self.leader);
        self.fallback.retain(|v| self.members.contains(v));
    }

    pub fn leader(&self) -> Option<ExpertId> {
        self.leader
    }

    pub fn members(&self) -> &BTreeSet<ExpertId> {
        &self.members
    }

    pub fn assignment(&self) -> &BTreeMap<String, ExpertId> {
        &self.assignment
    }

    pub fn expert_for(&self, skill: &str) -> Option<ExpertId> {
        self.assignment.get(skill).copied()
    }

    pub fn fallback(&self) -> &BTreeSet<ExpertId> {
        &self.fallback
    }

    pub fn used_fallback(&self) -> bool {
        !self.fallback.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn covered(&self, task: &Task) -> usize {
        task.skills()
            .iter()
            .filter(|s| self.assignment.contains_key(s.as_str()))
            .count()
    }

    pub fn coverage(&self, task: &Task) -> f64 {
        self.covered(task) as f64 / task.len() as f64
    }

    pub fn is_complete(&self, task: &Task) -> bool {
        self.covered(task) == task.len()
    }

    pub fn map_ids(&self, mut f: impl FnMut(ExpertId) -> ExpertId) -> Team {
        Team {
            leader: self.leader.map(&mut f),
            assignment: self
                .assignment
                .iter()
                .map(|(s, &v)| (s.clone(), f(v)))
                .collect(),
            members: self.members.iter().map(|&v| f(v)).collect(),
            fallback: self.fallback.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Checks members ⊆ V and that every assigned expert holds its skill.
    pub fn validate(&self, g: &ExpertGraph) -> Result<()> {
        for &v in &self.members {
            g.check(v)?;
        }
        for (skill, &v) in &self.assignment {
            let held = g.skill_id(skill).is_some_and(|s| g.has_skill(v, s));
            if !held {
                return Err(Error::InvalidArgument(format!(
                    "expert {} is assigned {skill:?} but does not hold it",
                    g.name(v)
                )));
            }
        }
        Ok(())
    }

    /// Member names, with `*` after experts added by the fallback step.
    pub fn display_names(&self, g: &ExpertGraph) -> Vec<String> {
        self.members
            .iter()
            .map(|&v| {
                let mark = if self.fallback.contains(&v) { "*" } else { "" };
                format!("{}{mark}", g.name(v))
            })
            .collect()
    }
}

/// A non-negative cost, or unreachable when a required path does not exist.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Cost {
    Finite(f64),
    Unreachable,
}

impl Cost {
    pub const ZERO: Cost = Cost::Finite(0.0);

    pub fn from_distance(d: Option<f64>) -> Cost {
        d.map_or(Cost::Unreachable, Cost::Finite)
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    /// `f64::INFINITY` for unreachable, handy for reductions.
    pub fn as_f64(self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }

    pub fn max(self, other: Cost) -> Cost {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Unreachable,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(v) => write!(f, "{v}"),
            Cost::Unreachable => f.write_str("inf"),
        }
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cost::Finite(v) => s.serialize_f64(*v),
            Cost::Unreachable => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostReport {
    pub cardinality: usize,
    pub diameter: Cost,
    pub sum_distance: Cost,
    pub leader_distance: Cost,
    pub covered: f64,
}

pub const COST_CSV_HEADER: &str =
    "algorithm,k,cardinality,diameter,sum_distance,leader_distance,covered,wall_ms,random_experts";

impl CostReport {
    pub fn csv_row(&self, algorithm: &str, k: usize, wall_ms: f64, random_experts: usize) -> String {
        format!(
            "{algorithm},{k},{},{},{},{},{},{wall_ms:.3},{random_experts}",
            self.cardinality, self.diameter, self.sum_distance, self.leader_distance, self.covered
        )
    }
}

/// Shortest-path distances between every pair of `experts`.
struct DistanceTable {
    experts: Vec<ExpertId>,
    dist: Vec<Vec<Option<f64>>>,
}

impl DistanceTable {
    fn new(g: &ExpertGraph, experts: impl IntoIterator<Item = ExpertId>) -> Result<Self> {
        let experts: Vec<ExpertId> = experts.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        for &v in &experts {
            g.check(v)?;
        }
        let mut pf = PathFinder::new(g);
        let dist = experts
            .iter()
            .map(|&v| pf.distances_to(v, &experts))
            .collect();
        Ok(DistanceTable { experts, dist })
    }

    fn slot(&self, v: ExpertId) -> usize {
        self.experts.binary_search(&v).expect("expert is in the table")
    }

    fn get(&self, u: ExpertId, v: ExpertId) -> Cost {
        Cost::from_distance(self.dist[self.slot(u)][self.slot(v)])
    }

    fn diameter(&self) -> Cost {
        let mut worst = Cost::ZERO;
        for i in 0..self.experts.len() {
            for j in i + 1..self.experts.len() {
                worst = worst.max(Cost::from_distance(self.dist[i][j]));
            }
        }
        worst
    }
}

fn sd_over(table: &DistanceTable, holders: &[ExpertId]) -> Cost {
    let mut total = Cost::ZERO;
    for (i, &u) in holders.iter().enumerate() {
        for &v in &holders[i + 1..] {
            if u != v {
                total = total + table.get(u, v);
            }
        }
    }
    total
}

fn ld_over(table: &DistanceTable, members: &BTreeSet<ExpertId>, leader: ExpertId) -> Cost {
    members
        .iter()
        .filter(|&&v| v != leader)
        .fold(Cost::ZERO, |acc, &v| acc + table.get(v, leader))
}

/// Largest member-pair distance; zero for a singleton.
pub fn diameter(g: &ExpertGraph, team: &Team) -> Result<Cost> {
    if team.is_empty() {
        return Err(Error::EmptyTeam);
    }
    Ok(DistanceTable::new(g, team.members().iter().copied())?.diameter())
}

/// Sum over task-skill pairs of the distance between their assigned experts.
pub fn sum_distance(g: &ExpertGraph, team: &Team, task: &Task) -> Result<Cost> {
    let holders = task
        .skills()
        .iter()
        .map(|s| team.expert_for(s).ok_or_else(|| Error::UncoveredSkill(s.clone())))
        .collect::<Result<Vec<_>>>()?;
    let table = DistanceTable::new(g, holders.iter().copied())?;
    Ok(sd_over(&table, &holders))
}

/// Sum of distances from the leader to every other member.
pub fn leader_distance(g: &ExpertGraph, team: &Team) -> Result<Cost> {
    let leader = team.leader().ok_or(Error::MissingLeader)?;
    let table = DistanceTable::new(g, team.members().iter().copied())?;
    Ok(ld_over(&table, team.members(), leader))
}

/// All measures at once. Uncovered skills lower `covered` and are left out
/// of SD instead of failing.
pub fn evaluate(g: &ExpertGraph, team: &Team, task: &Task) -> Result<CostReport> {
    if team.is_empty() {
        return Ok(CostReport {
            cardinality: 0,
            diameter: Cost::ZERO,
            sum_distance: Cost::ZERO,
            leader_distance: Cost::ZERO,
            covered: 0.0,
        });
    }
    let leader = team.leader().ok_or(Error::MissingLeader)?;
    let table = DistanceTable::new(g, team.members().iter().copied())?;
    let holders: Vec<ExpertId> = task
        .skills()
        .iter()
        .filter_map(|s| team.expert_for(s))
        .collect();
    Ok(CostReport {
        cardinality: team.len(),
        diameter: table.diameter(),
        sum_distance: sd_over(&table, &holders),
        leader_distance: ld_over(&table, team.members(), leader),
        covered: team.coverage(task),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{toy, toy_id};
    use crate::graph::GraphBuilder;

    fn team(leader: char, assignment: &[(&str, char)]) -> Team {
        let mut t = Team::with_leader(toy_id(leader));
        for &(s, v) in assignment {
            t.assign(s, toy_id(v));
        }
        t
    }

    fn abcde() -> Task {
        Task::new(["a", "b", "c", "d", "e"]).unwrap()
    }

    fn acs(leader: char) -> Team {
        team(
            leader,
            &[("a", 'A'), ("b", 'C'), ("c", 'C'), ("d", 'S'), ("e", 'S')],
        )
    }

    #[test]
    fn task_validation() {
        assert!(Task::new(Vec::<String>::new()).is_err());
        assert!(Task::new(["a", "a"]).is_err());
        assert!(Task::new(["A"]).is_err());
        assert_eq!(Task::parse(" a, b ,c").unwrap().skills(), ["a", "b", "c"]);
    }

    #[test]
    fn acs_costs() {
        let g = toy();
        let t = acs('C');
        t.validate(&g).unwrap();
        assert_eq!(diameter(&g, &t).unwrap(), Cost::Finite(5.0));
        assert_eq!(sum_distance(&g, &t, &abcde()).unwrap(), Cost::Finite(26.0));
        assert_eq!(leader_distance(&g, &t).unwrap(), Cost::Finite(5.0));
        assert_eq!(leader_distance(&g, &acs('S')).unwrap(), Cost::Finite(8.0));
    }

    #[test]
    fn jfgi_costs() {
        let g = toy();
        let t = team(
            'J',
            &[("a", 'J'), ("b", 'J'), ("c", 'F'), ("d", 'G'), ("e", 'I')],
        );
        let r = evaluate(&g, &t, &abcde()).unwrap();
        assert_eq!(r.sum_distance, Cost::Finite(30.0));
        assert_eq!(r.leader_distance, Cost::Finite(10.0));
        assert_eq!(r.cardinality, 4);
    }

    #[test]
    fn aqcb_costs() {
        let g = toy();
        let t = team(
            'A',
            &[("a", 'A'), ("b", 'Q'), ("c", 'C'), ("d", 'B'), ("e", 'Q')],
        );
        let r = evaluate(&g, &t, &abcde()).unwrap();
        assert_eq!(r.leader_distance, Cost::Finite(7.0));
        assert_eq!(r.sum_distance, Cost::Finite(28.0));
        assert_eq!(r.cardinality, 4);
        assert_eq!(r.covered, 1.0);
    }

    #[test]
    fn singleton_costs_are_zero() {
        let g = toy();
        let t = team('S', &[("d", 'S'), ("e", 'S')]);
        let task = Task::new(["d", "e"]).unwrap();
        assert_eq!(diameter(&g, &t).unwrap(), Cost::ZERO);
        assert_eq!(leader_distance(&g, &t).unwrap(), Cost::ZERO);
        assert_eq!(sum_distance(&g, &t, &task).unwrap(), Cost::ZERO);
    }

    #[test]
    fn error_paths() {
        let g = toy();
        let mut leaderless = Team::new();
        leaderless.assign("a", toy_id('A'));
        assert!(matches!(leader_distance(&g, &leaderless), Err(Error::MissingLeader)));
        assert!(matches!(diameter(&g, &Team::new()), Err(Error::EmptyTeam)));
        let partial = team('A', &[("a", 'A')]);
        assert!(matches!(
            sum_distance(&g, &partial, &abcde()),
            Err(Error::UncoveredSkill(s)) if s == "b"
        ));
        let r = evaluate(&g, &Team::new(), &abcde()).unwrap();
        assert_eq!(r.covered, 0.0);
        assert_eq!(evaluate(&g, &partial, &abcde()).unwrap().covered, 0.2);
    }

    #[test]
    fn split_team_is_unreachable() {
        let mut b = GraphBuilder::new();
        let x = b.add_expert("x", ["a"]).unwrap();
        let y = b.add_expert("y", ["b"]).unwrap();
        let g = b.build().unwrap();
        let mut t = Team::with_leader(x);
        t.assign("a", x);
        t.assign("b", y);
        let task = Task::new(["a", "b"]).unwrap();
        assert_eq!(diameter(&g, &t).unwrap(), Cost::Unreachable);
        assert_eq!(leader_distance(&g, &t).unwrap(), Cost::Unreachable);
        let r = evaluate(&g, &t, &task).unwrap();
        assert_eq!(r.sum_distance, Cost::Unreachable);
        assert_eq!(
            r.csv_row("x", 2, 1.0, 0),
            "x,2,2,inf,inf,inf,1,1.000,0"
        );
    }

    #[test]
    fn reassignment_drops_stale_members() {
        let mut t = Team::with_leader(ExpertId(0));
        t.assign("a", ExpertId(1));
        t.mark_fallback(ExpertId(1));
        t.assign("a", ExpertId(2));
        assert_eq!(t.members().iter().copied().collect::<Vec<_>>(), vec![ExpertId(0), ExpertId(2)]);
        assert!(!t.used_fallback());
    }
}
