//! Independent reference implementations used as test oracles.
//!
//! Everything here works on a dense all-pairs distance matrix built by
//! Floyd-Warshall and on plain hop counts, so it shares no search code with
//! the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teamform_core::algorithms::{mix_seed, FallbackRule, TieBreak};
use teamform_core::{AlgorithmConfig, Cost, ExpertGraph, ExpertId, GraphBuilder, Task};

pub const SKILLS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// A random graph of at most 25 experts and 6 skills with dyadic weights,
/// so every path sum is exact in any order, plus a task over supported skills.
pub fn random_instance(seed: u64) -> (ExpertGraph, Task) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=25);
    let p_edge = rng.random_range(0.08..0.5);
    let p_skill = rng.random_range(0.1..0.5);
    let universe = rng.random_range(1..=SKILLS.len());
    let mut b = GraphBuilder::new();
    for i in 0..n {
        let skills: Vec<&str> = SKILLS[..universe]
            .iter()
            .copied()
            .filter(|_| rng.random_bool(p_skill))
            .collect();
        b.add_expert(format!("v{i}"), skills).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p_edge) {
                let w = f64::from(rng.random_range(0u32..=64)) / 16.0;
                b.add_edge(ExpertId(u as u32), ExpertId(v as u32), w).unwrap();
            }
        }
    }
    let mut g = b.build().unwrap();
    if g.skill_universe_len() == 0 {
        let mut b = GraphBuilder::new();
        for v in g.experts() {
            let s: Vec<&str> = if v.0 == 0 { vec!["a"] } else { vec![] };
            b.add_expert(g.name(v), s).unwrap();
        }
        for (u, v, w) in g.edges() {
            b.add_edge(u, v, w).unwrap();
        }
        g = b.build().unwrap();
    }
    let supported: Vec<String> = g.skill_universe_names().into_iter().map(str::to_owned).collect();
    let k = rng.random_range(1..=supported.len());
    let mut picked: Vec<String> = supported.choose_multiple(&mut rng, k).cloned().collect();
    picked.sort_by_key(|_| rng.random::<u32>());
    (g, Task::new(picked).unwrap())
}

/// All-pairs weighted distances; `f64::INFINITY` when unreachable.
pub fn floyd_warshall(g: &ExpertGraph) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (u, v, w) in g.edges() {
        let (u, v) = (u.index(), v.index());
        d[u][v] = d[u][v].min(w);
        d[v][u] = d[v][u].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// All-pairs hop counts; `usize::MAX` when unreachable.
pub fn hop_matrix(g: &ExpertGraph) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut h = vec![vec![usize::MAX; n]; n];
    for (i, row) in h.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v, _) in g.edges() {
        h[u.index()][v.index()] = 1;
        h[v.index()][u.index()] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if h[i][k] != usize::MAX && h[k][j] != usize::MAX && h[i][k] + h[k][j] < h[i][j] {
                    h[i][j] = h[i][k] + h[k][j];
                }
            }
        }
    }
    h
}

pub fn cost(d: f64) -> Cost {
    if d.is_finite() {
        Cost::Finite(d)
    } else {
        Cost::Unreachable
    }
}

fn holds(g: &ExpertGraph, v: usize, skill: &str) -> bool {
    g.skill_names_of(ExpertId(v as u32)).any(|s| s == skill)
}

fn task_skill_count(g: &ExpertGraph, v: usize, task: &Task) -> usize {
    task.skills().iter().filter(|s| holds(g, v, s)).count()
}

fn holders(g: &ExpertGraph, skill: &str) -> Vec<usize> {
    (0..g.len()).filter(|&v| holds(g, v, skill)).collect()
}

/// Holder of `skill` nearest to `from`, or `None` if none is reachable.
pub fn nearest(g: &ExpertGraph, d: &[Vec<f64>], task: &Task, from: usize, skill: &str, tie: TieBreak) -> Option<usize> {
    let mut best: Option<usize> = None;
    for v in holders(g, skill) {
        if !d[from][v].is_finite() {
            continue;
        }
        best = match best {
            None => Some(v),
            Some(b) if d[from][v] < d[from][b] => Some(v),
            Some(b) if d[from][v] == d[from][b] && tie == TieBreak::MoreSkillsThenId => {
                if task_skill_count(g, v, task) > task_skill_count(g, b, task) {
                    Some(v)
                } else {
                    Some(b)
                }
            }
            keep => keep,
        };
    }
    best
}

fn leader_distance(d: &[Vec<f64>], leader: usize, members: &BTreeSet<usize>) -> Cost {
    members
        .iter()
        .filter(|&&m| m != leader)
        .fold(Cost::ZERO, |acc, &m| acc + cost(d[leader][m]))
}

/// Smallest member-based leader distance over every possible leader, each
/// taking the nearest holder of every skill.
pub fn min_ld_all(g: &ExpertGraph, d: &[Vec<f64>], task: &Task) -> Cost {
    let mut best: Option<Cost> = None;
    for leader in 0..g.len() {
        let mut members = BTreeSet::from([leader]);
        let mut ld_unreachable = false;
        for s in task.skills() {
            if holders(g, s).is_empty() {
                continue;
            }
            match nearest(g, d, task, leader, s, TieBreak::MoreSkillsThenId) {
                Some(v) => {
                    members.insert(v);
                }
                None => ld_unreachable = true,
            }
        }
        let ld = if ld_unreachable {
            Cost::Unreachable
        } else {
            leader_distance(d, leader, &members)
        };
        if best.is_none_or(|b| ld < b) {
            best = Some(ld);
        }
    }
    best.unwrap_or(Cost::ZERO)
}

/// High-degree task holders by descending degree then id, or the single
/// highest-degree task holder when none clears the bar.
pub fn hd_leaders(g: &ExpertGraph, task: &Task, factor: f64) -> Vec<usize> {
    let n = g.len();
    let degree: Vec<usize> = (0..n).map(|v| g.neighbors(ExpertId(v as u32)).count()).collect();
    let avg = if n == 0 { 0.0 } else { degree.iter().sum::<usize>() as f64 / n as f64 };
    let holders: Vec<usize> = (0..n).filter(|&v| task_skill_count(g, v, task) > 0).collect();
    let mut hd: Vec<usize> = holders
        .iter()
        .copied()
        .filter(|&v| degree[v] as f64 > factor * avg)
        .collect();
    hd.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
    if hd.is_empty() {
        if let Some(&v) = holders.iter().max_by(|&&a, &&b| degree[a].cmp(&degree[b]).then(b.cmp(&a))) {
            hd.push(v);
        }
    }
    hd
}

/// Leader distance of the team TFC grows around `leader`.
pub fn tfc_candidate_ld(
    g: &ExpertGraph,
    d: &[Vec<f64>],
    hops: &[Vec<usize>],
    task: &Task,
    leader: usize,
    cfg: &AlgorithmConfig,
    rule: FallbackRule,
) -> Cost {
    let skills = task.skills();
    let own: BTreeSet<&str> = skills.iter().map(String::as_str).filter(|s| holds(g, leader, s)).collect();
    let mut members = BTreeSet::from([leader]);
    let mut uncovered: BTreeSet<&str> = skills.iter().map(String::as_str).filter(|s| !own.contains(s)).collect();
    let mut picks: BTreeSet<usize> = BTreeSet::new();
    for limit in 1..=cfg.hop_limit as usize {
        if uncovered.is_empty() {
            break;
        }
        uncovered = skills.iter().map(String::as_str).filter(|s| !own.contains(s)).collect();
        picks.clear();
        let mut pool: Vec<usize> = (0..g.len())
            .filter(|&v| v != leader && hops[leader][v] <= limit)
            .collect();
        loop {
            let gain = |v: usize| uncovered.iter().filter(|s| holds(g, v, s)).count();
            let Some(&best) = pool
                .iter()
                .filter(|&&v| gain(v) > 0)
                .min_by(|&&a, &&b| {
                    gain(b)
                        .cmp(&gain(a))
                        .then(hops[leader][a].cmp(&hops[leader][b]))
                        .then(a.cmp(&b))
                })
            else {
                break;
            };
            uncovered.retain(|s| !holds(g, best, s));
            picks.insert(best);
            pool.retain(|&v| v != best);
        }
    }
    members.extend(&picks);
    let remaining: Vec<&str> = skills
        .iter()
        .map(String::as_str)
        .filter(|s| uncovered.contains(s) && !holders(g, s).is_empty())
        .collect();
    match rule {
        FallbackRule::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.rng_seed, &[leader as u64]));
            for s in remaining {
                let hs: Vec<ExpertId> = holders(g, s).into_iter().map(|v| ExpertId(v as u32)).collect();
                members.insert(hs.choose(&mut rng).unwrap().index());
            }
        }
        FallbackRule::Nearest => {
            for s in remaining {
                let v = nearest(g, d, task, leader, s, cfg.tie_break).unwrap_or(holders(g, s)[0]);
                members.insert(v);
            }
        }
    }
    leader_distance(d, leader, &members)
}

/// Best leader distance over all TFC candidates.
pub fn tfc_ld(g: &ExpertGraph, task: &Task, cfg: &AlgorithmConfig, rule: FallbackRule) -> Cost {
    let d = floyd_warshall(g);
    let hops = hop_matrix(g);
    hd_leaders(g, task, cfg.hd_degree_factor)
        .into_iter()
        .map(|l| tfc_candidate_ld(g, &d, &hops, task, l, cfg, rule))
        .fold(None, |best: Option<Cost>, c| match best {
            Some(b) if c >= b => Some(b),
            _ => Some(c),
        })
        .unwrap_or(Cost::ZERO)
}
