//! The 20-expert toy collaboration graph used throughout the tests.
//!
//! Experts are named `A`..`T` and carry ids `0..20` in that order.

use super::{ExpertGraph, ExpertId, GraphBuilder};

pub const TOY_SKILLS: [(char, &str); 20] = [
    ('A', "a"),
    ('B', "d e"),
    ('C', "b c"),
    ('D', "c e"),
    ('E', "b c d"),
    ('F', "c"),
    ('G', "d"),
    ('H', "c e"),
    ('I', "e"),
    ('J', "a b"),
    ('K', "a"),
    ('L', "b"),
    ('M', "b"),
    ('N', "c"),
    ('O', "d"),
    ('P', "d"),
    ('Q', "b e"),
    ('R', "a"),
    ('S', "d e"),
    ('T', "d"),
];

pub const TOY_EDGES: [(char, char, f64); 23] = [
    ('A', 'B', 4.0),
    ('B', 'T', 2.0),
    ('C', 'T', 2.0),
    ('C', 'S', 3.0),
    ('A', 'C', 2.0),
    ('B', 'G', 3.0),
    ('C', 'F', 4.0),
    ('G', 'H', 3.0),
    ('G', 'F', 3.0),
    ('G', 'I', 2.0),
    ('C', 'D', 3.0),
    ('D', 'E', 3.0),
    ('E', 'F', 2.0),
    ('G', 'J', 3.0),
    ('F', 'J', 2.0),
    ('L', 'J', 2.0),
    ('J', 'K', 1.0),
    ('O', 'E', 3.0),
    ('N', 'E', 2.0),
    ('M', 'E', 3.0),
    ('A', 'R', 2.0),
    ('A', 'Q', 1.0),
    ('P', 'D', 1.0),
];

/// Id of toy expert `name` (`'A'..='T'`).
pub fn toy_id(name: char) -> ExpertId {
    assert!(('A'..='T').contains(&name), "no toy expert {name}");
    ExpertId(name as u32 - 'A' as u32)
}

pub fn toy() -> ExpertGraph {
    let mut b = GraphBuilder::new();
    for (name, skills) in TOY_SKILLS {
        b.add_expert(name.to_string(), skills.split(' '))
            .expect("toy skills are valid tokens");
    }
    for (u, v, w) in TOY_EDGES {
        b.add_edge(toy_id(u), toy_id(v), w)
            .expect("toy edges are valid");
    }
    b.build().expect("toy graph is well formed")
}
