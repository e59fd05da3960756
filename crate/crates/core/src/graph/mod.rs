//! Immutable weighted, undirected expert graph.
//!
//! Experts are dense integer ids `0..n`. Adjacency is stored in compressed
//! sparse rows, sorted by neighbour id, so iteration order is deterministic.
//! Skill tokens are interned into [`SkillId`]s; induced subgraphs share the
//! parent's skill table so ids stay comparable across communities.

mod community;
pub mod fixtures;
pub mod io;
mod ops;
mod paths;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use community::{Community, Subgraph};
pub use ops::{
    connected_components, degree_stats, hd_set, hd_set_with_factor, k_hop_neighborhood,
    largest_connected_component, shortest_path_distance, DegreeStats,
};
pub use paths::{PathFinder, Visit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpertId(pub u32);

impl ExpertId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ExpertId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkillId(pub u32);

impl SkillId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Interned skill vocabulary, shared between a graph and its subgraphs.
#[derive(Debug, Default)]
pub(crate) struct SkillTable {
    names: Vec<String>,
    index: HashMap<String, SkillId>,
}

impl SkillTable {
    fn intern(&mut self, token: &str) -> SkillId {
        if let Some(&id) = self.index.get(token) {
            return id;
        }
        let id = SkillId(self.names.len() as u32);
        self.names.push(token.to_owned());
        self.index.insert(token.to_owned(), id);
        id
    }
}

pub(crate) fn validate_skill(token: &str) -> Result<()> {
    let ok = !token.is_empty()
        && !token.chars().any(char::is_whitespace)
        && !token.chars().any(char::is_uppercase);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidSkill(token.to_owned()))
    }
}

#[derive(Debug, Clone)]
pub struct ExpertGraph {
    names: Vec<String>,
    skills: Vec<Vec<SkillId>>,
    offsets: Vec<usize>,
    targets: Vec<ExpertId>,
    weights: Vec<f64>,
    table: Arc<SkillTable>,
    support: Vec<Vec<ExpertId>>,
}

/// Borrowed view of a single expert.
#[derive(Debug, Clone, Copy)]
pub struct Expert<'g> {
    pub id: ExpertId,
    pub name: &'g str,
    graph: &'g ExpertGraph,
}

impl<'g> Expert<'g> {
    pub fn skills(&self) -> impl Iterator<Item = &'g str> + 'g {
        let g = self.graph;
        g.skills[self.id.index()].iter().map(move |&s| g.skill_name(s))
    }
}

impl ExpertGraph {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn experts(&self) -> impl Iterator<Item = ExpertId> + '_ {
        (0..self.names.len() as u32).map(ExpertId)
    }

    pub fn contains(&self, v: ExpertId) -> bool {
        v.index() < self.names.len()
    }

    pub(crate) fn check(&self, v: ExpertId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidExpert(v))
        }
    }

    pub fn expert(&self, v: ExpertId) -> Result<Expert<'_>> {
        self.check(v)?;
        Ok(Expert {
            id: v,
            name: &self.names[v.index()],
            graph: self,
        })
    }

    pub fn name(&self, v: ExpertId) -> &str {
        &self.names[v.index()]
    }

    /// First expert whose display name equals `name`.
    pub fn find_by_name(&self, name: &str) -> Option<ExpertId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| ExpertId(i as u32))
    }

    #[inline]
    pub fn degree(&self, v: ExpertId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    /// Neighbours of `v` with edge weights, ascending by neighbour id.
    #[inline]
    pub fn neighbors(&self, v: ExpertId) -> impl Iterator<Item = (ExpertId, f64)> + '_ {
        let range = self.offsets[v.index()]..self.offsets[v.index() + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (ExpertId, ExpertId, f64)> + '_ {
        self.experts().flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }

    pub fn edge_weight(&self, u: ExpertId, v: ExpertId) -> Option<f64> {
        let range = self.offsets[u.index()]..self.offsets[u.index() + 1];
        let row = &self.targets[range.clone()];
        row.binary_search(&v)
            .ok()
            .map(|i| self.weights[range.start + i])
    }

    pub fn skill_id(&self, token: &str) -> Option<SkillId> {
        self.table.index.get(token).copied()
    }

    pub fn skill_name(&self, s: SkillId) -> &str {
        &self.table.names[s.index()]
    }

    /// Skill ids held by `v`, sorted ascending.
    #[inline]
    pub fn skills_of(&self, v: ExpertId) -> &[SkillId] {
        &self.skills[v.index()]
    }

    pub fn skill_names_of(&self, v: ExpertId) -> impl Iterator<Item = &str> + '_ {
        self.skills[v.index()].iter().map(|&s| self.skill_name(s))
    }

    pub fn has_skill(&self, v: ExpertId, s: SkillId) -> bool {
        self.skills[v.index()].binary_search(&s).is_ok()
    }

    /// Experts holding `s`, ascending by id.
    #[inline]
    pub fn support(&self, s: SkillId) -> &[ExpertId] {
        self.support.get(s.index()).map_or(&[], Vec::as_slice)
    }

    pub fn support_of(&self, token: &str) -> &[ExpertId] {
        self.skill_id(token).map_or(&[], |s| self.support(s))
    }

    /// Skills held by at least one expert of this graph.
    pub fn skill_universe(&self) -> impl Iterator<Item = SkillId> + '_ {
        self.support
            .iter()
            .enumerate()
            .filter(|(_, holders)| !holders.is_empty())
            .map(|(i, _)| SkillId(i as u32))
    }

    pub fn skill_universe_names(&self) -> BTreeSet<&str> {
        self.skill_universe().map(|s| self.skill_name(s)).collect()
    }

    pub fn skill_universe_len(&self) -> usize {
        self.support.iter().filter(|h| !h.is_empty()).count()
    }

    /// Induced subgraph on `members`. Local ids follow ascending parent id.
    pub fn induced<I>(&self, members: I) -> Result<Subgraph>
    where
        I: IntoIterator<Item = ExpertId>,
    {
        let members: BTreeSet<ExpertId> = members.into_iter().collect();
        for &m in &members {
            self.check(m)?;
        }
        let to_parent: Vec<ExpertId> = members.into_iter().collect();
        let mut local = vec![u32::MAX; self.len()];
        for (i, &p) in to_parent.iter().enumerate() {
            local[p.index()] = i as u32;
        }
        let mut offsets = Vec::with_capacity(to_parent.len() + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        offsets.push(0);
        for &p in &to_parent {
            for (q, w) in self.neighbors(p) {
                let lq = local[q.index()];
                if lq != u32::MAX {
                    targets.push(ExpertId(lq));
                    weights.push(w);
                }
            }
            offsets.push(targets.len());
        }
        let names = to_parent
            .iter()
            .map(|&p| self.names[p.index()].clone())
            .collect();
        let skills: Vec<Vec<SkillId>> = to_parent
            .iter()
            .map(|&p| self.skills[p.index()].clone())
            .collect();
        let support = build_support(self.table.names.len(), &skills);
        let graph = ExpertGraph {
            names,
            skills,
            offsets,
            targets,
            weights,
            table: Arc::clone(&self.table),
            support,
        };
        Ok(Subgraph::new(graph, to_parent))
    }

    /// Re-derives every structural invariant. Used by tests and loaders.
    pub fn validate(&self) -> Result<()> {
        for u in self.experts() {
            let mut prev: Option<ExpertId> = None;
            for (v, w) in self.neighbors(u) {
                if v == u {
                    return Err(Error::InvalidGraph(format!("self-loop on {u}")));
                }
                if prev.is_some_and(|p| p >= v) {
                    return Err(Error::InvalidGraph(format!("parallel edge {u}-{v}")));
                }
                prev = Some(v);
                if !(w.is_finite() && w >= 0.0) {
                    return Err(Error::InvalidGraph(format!("bad weight {w} on {u}-{v}")));
                }
                if self.edge_weight(v, u) != Some(w) {
                    return Err(Error::InvalidGraph(format!("asymmetric edge {u}-{v}")));
                }
            }
        }
        for (i, holders) in self.support.iter().enumerate() {
            let s = SkillId(i as u32);
            for &v in holders {
                if !self.has_skill(v, s) {
                    return Err(Error::InvalidGraph(format!(
                        "support of {} lists {v} which lacks it",
                        self.skill_name(s)
                    )));
                }
            }
        }
        for v in self.experts() {
            for &s in self.skills_of(v) {
                if self.support(s).binary_search(&v).is_err() {
                    return Err(Error::InvalidGraph(format!(
                        "{v} holds {} but is missing from its support",
                        self.skill_name(s)
                    )));
                }
            }
        }
        Ok(())
    }
}

fn build_support(n_skills: usize, skills: &[Vec<SkillId>]) -> Vec<Vec<ExpertId>> {
    let mut support = vec![Vec::new(); n_skills];
    for (v, held) in skills.iter().enumerate() {
        for &s in held {
            support[s.index()].push(ExpertId(v as u32));
        }
    }
    support
}

/// Single-writer construction of an [`ExpertGraph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    skills: Vec<BTreeSet<SkillId>>,
    table: SkillTable,
    edges: Vec<(u32, u32, f64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn add_expert<I, S>(&mut self, name: impl Into<String>, skills: I) -> Result<ExpertId>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut held = BTreeSet::new();
        for token in skills {
            let token = token.as_ref();
            validate_skill(token)?;
            held.insert(self.table.intern(token));
        }
        let id = ExpertId(self.names.len() as u32);
        self.names.push(name.into());
        self.skills.push(held);
        Ok(id)
    }

    pub fn add_skill(&mut self, v: ExpertId, token: &str) -> Result<()> {
        validate_skill(token)?;
        let s = self.table.intern(token);
        self.skills
            .get_mut(v.index())
            .ok_or(Error::InvalidExpert(v))?
            .insert(s);
        Ok(())
    }

    pub fn add_edge(&mut self, u: ExpertId, v: ExpertId, weight: f64) -> Result<()> {
        let n = self.names.len();
        if u.index() >= n {
            return Err(Error::InvalidExpert(u));
        }
        if v.index() >= n {
            return Err(Error::InvalidExpert(v));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop on {u}")));
        }
        if !(weight.is_finite() && weight >= 0.0) {
            return Err(Error::InvalidGraph(format!(
                "edge {u}-{v} has invalid weight {weight}"
            )));
        }
        let (a, b) = if u < v { (u.0, v.0) } else { (v.0, u.0) };
        self.edges.push((a, b, weight + 0.0));
        Ok(())
    }

    pub fn build(self) -> Result<ExpertGraph> {
        let n = self.names.len();
        let mut edges = self.edges;
        edges.sort_by_key(|e| (e.0, e.1));
        if let Some(w) = edges.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidGraph(format!(
                "parallel edge {}-{}",
                w[0].0, w[0].1
            )));
        }
        let mut degree = vec![0usize; n];
        for &(a, b, _) in &edges {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![ExpertId(0); 2 * edges.len()];
        let mut weights = vec![0.0; 2 * edges.len()];
        for &(a, b, w) in &edges {
            let (a, b) = (a as usize, b as usize);
            targets[cursor[a]] = ExpertId(b as u32);
            weights[cursor[a]] = w;
            cursor[a] += 1;
            targets[cursor[b]] = ExpertId(a as u32);
            weights[cursor[b]] = w;
            cursor[b] += 1;
        }
        // rows are filled in (a, b) order; the "a" side is sorted but the "b"
        // side interleaves, so sort each row.
        for v in 0..n {
            let range = offsets[v]..offsets[v + 1];
            let mut row: Vec<(ExpertId, f64)> = targets[range.clone()]
                .iter()
                .copied()
                .zip(weights[range.clone()].iter().copied())
                .collect();
            row.sort_by_key(|&(t, _)| t);
            for (i, (t, w)) in row.into_iter().enumerate() {
                targets[range.start + i] = t;
                weights[range.start + i] = w;
            }
        }
        let skills: Vec<Vec<SkillId>> = self
            .skills
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let support = build_support(self.table.names.len(), &skills);
        Ok(ExpertGraph {
            names: self.names,
            skills,
            offsets,
            targets,
            weights,
            table: Arc::new(self.table),
            support,
        })
    }
}
