use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{ExpertGraph, ExpertId, SkillId};
use crate::error::{Error, Result};
use crate::metrics::Team;

/// A named subset of experts, possibly nested inside a parent community.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Community {
    pub name: String,
    pub members: BTreeSet<ExpertId>,
    pub parent: Option<String>,
}

impl Community {
    pub fn new(name: impl Into<String>, members: impl IntoIterator<Item = ExpertId>) -> Self {
        Community {
            name: name.into(),
            members: members.into_iter().collect(),
            parent: None,
        }
    }

    pub fn with_parent(mut self, parent: impl Into<String>) -> Self {
        self.parent = Some(parent.into());
        self
    }

    /// The whole graph as a single community.
    pub fn whole(name: impl Into<String>, g: &ExpertGraph) -> Self {
        Community::new(name, g.experts())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Union of the members' skills.
    pub fn skill_union(&self, g: &ExpertGraph) -> BTreeSet<SkillId> {
        self.members
            .iter()
            .flat_map(|&v| g.skills_of(v).iter().copied())
            .collect()
    }

    pub fn subgraph(&self, g: &ExpertGraph) -> Result<Subgraph> {
        g.induced(self.members.iter().copied())
    }

    /// Checks membership in `g` and containment in the named parent.
    pub fn validate_all(communities: &[Community], g: &ExpertGraph) -> Result<()> {
        let by_name: HashMap<&str, &Community> =
            communities.iter().map(|c| (c.name.as_str(), c)).collect();
        if by_name.len() != communities.len() {
            return Err(Error::InvalidArgument(
                "duplicate community names".to_owned(),
            ));
        }
        for c in communities {
            if let Some(&v) = c.members.iter().find(|&&v| !g.contains(v)) {
                return Err(Error::InvalidExpert(v));
            }
            if let Some(parent) = &c.parent {
                let p = by_name.get(parent.as_str()).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "community {} names unknown parent {parent}",
                        c.name
                    ))
                })?;
                if !c.members.is_subset(&p.members) {
                    return Err(Error::InvalidArgument(format!(
                        "community {} is not contained in its parent {parent}",
                        c.name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// An induced subgraph together with its local → parent id map.
#[derive(Debug, Clone)]
pub struct Subgraph {
    graph: ExpertGraph,
    to_parent: Vec<ExpertId>,
}

impl Subgraph {
    pub(crate) fn new(graph: ExpertGraph, to_parent: Vec<ExpertId>) -> Self {
        Subgraph { graph, to_parent }
    }

    pub fn graph(&self) -> &ExpertGraph {
        &self.graph
    }

    pub fn into_graph(self) -> ExpertGraph {
        self.graph
    }

    pub fn to_parent(&self, local: ExpertId) -> ExpertId {
        self.to_parent[local.index()]
    }

    pub fn from_parent(&self, parent: ExpertId) -> Option<ExpertId> {
        self.to_parent
            .binary_search(&parent)
            .ok()
            .map(|i| ExpertId(i as u32))
    }

    /// Rewrites a team found on the subgraph into parent ids.
    pub fn lift_team(&self, team: &Team) -> Team {
        team.map_ids(|v| self.to_parent(v))
    }
}
