use std::path::PathBuf;

use thiserror::Error;

use crate::graph::ExpertId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expert id {0} is not in the graph")]
    InvalidExpert(ExpertId),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid skill token {0:?}: tokens must be non-empty, lowercase and whitespace-free")]
    InvalidSkill(String),

    #[error("invalid task: {0}")]
    InvalidTask(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("team has no leader")]
    MissingLeader,

    #[error("task skill {0:?} is not assigned to any team member")]
    UncoveredSkill(String),

    #[error("team is empty")]
    EmptyTeam,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("xml error at byte {offset}: {message}")]
    Xml { offset: u64, message: String },

    #[error("unknown entity &{name}; at byte {offset}")]
    UnknownEntity { offset: u64, name: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
