use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::{ExpertGraph, ExpertId};

/// Returned by a Dijkstra visitor to continue or stop the search early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visit {
    Continue,
    Stop,
}

/// Heap key: non-negative finite `f64` bit patterns order like the values,
/// so `(bits, id)` under `Reverse` gives a min-heap on `(distance, id)`.
type Entry = Reverse<(u64, u32)>;

fn entry(dist: f64, node: ExpertId) -> Entry {
    Reverse((dist.to_bits(), node.0))
}

/// Reusable single-source search workspace over one graph.
///
/// Buffers are stamped with an epoch so consecutive searches cost only what
/// they touch. Nodes are settled in `(distance, id)` order, which makes every
/// early-terminating query deterministic.
#[derive(Debug)]
pub struct PathFinder<'g> {
    graph: &'g ExpertGraph,
    dist: Vec<f64>,
    seen: Vec<u32>,
    done: Vec<u32>,
    epoch: u32,
    heap: BinaryHeap<Entry>,
    queue: VecDeque<(ExpertId, u32)>,
    back: Option<Box<Backward>>,
}

/// Second search frontier for point-to-point queries.
#[derive(Debug)]
struct Backward {
    dist: Vec<f64>,
    seen: Vec<u32>,
    done: Vec<u32>,
    heap: BinaryHeap<Entry>,
}

impl<'g> PathFinder<'g> {
    pub fn new(graph: &'g ExpertGraph) -> Self {
        let n = graph.len();
        PathFinder {
            graph,
            dist: vec![0.0; n],
            seen: vec![0; n],
            done: vec![0; n],
            epoch: 0,
            heap: BinaryHeap::new(),
            queue: VecDeque::new(),
            back: None,
        }
    }

    pub fn graph(&self) -> &'g ExpertGraph {
        self.graph
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.seen.fill(0);
            self.done.fill(0);
            if let Some(b) = self.back.as_deref_mut() {
                b.seen.fill(0);
                b.done.fill(0);
            }
            self.epoch = 1;
        }
        self.heap.clear();
        self.queue.clear();
    }

    /// Runs Dijkstra from `source`, calling `visit` on every settled node in
    /// nondecreasing distance order (the source first, at 0).
    pub fn dijkstra<F>(&mut self, source: ExpertId, mut visit: F)
    where
        F: FnMut(ExpertId, f64) -> Visit,
    {
        self.next_epoch();
        let epoch = self.epoch;
        self.dist[source.index()] = 0.0;
        self.seen[source.index()] = epoch;
        self.heap.push(entry(0.0, source));
        while let Some(Reverse((bits, id))) = self.heap.pop() {
            let (dist, node) = (f64::from_bits(bits), ExpertId(id));
            let i = node.index();
            if self.done[i] == epoch {
                continue;
            }
            self.done[i] = epoch;
            if visit(node, dist) == Visit::Stop {
                return;
            }
            for (next, w) in self.graph.neighbors(node) {
                let j = next.index();
                if self.done[j] == epoch {
                    continue;
                }
                let candidate = dist + w;
                if self.seen[j] != epoch || candidate < self.dist[j] {
                    self.seen[j] = epoch;
                    self.dist[j] = candidate;
                    self.heap.push(entry(candidate, next));
                }
            }
        }
    }

    pub fn distance(&mut self, u: ExpertId, v: ExpertId) -> Option<f64> {
        let mut found = None;
        self.dijkstra(u, |node, d| {
            if node == v {
                found = Some(d);
                Visit::Stop
            } else {
                Visit::Continue
            }
        });
        found
    }

    /// Distances from `source` to each of `targets`, stopping once all are settled.
    pub fn distances_to(&mut self, source: ExpertId, targets: &[ExpertId]) -> Vec<Option<f64>> {
        let mut out = vec![None; targets.len()];
        let mut pending: Vec<(ExpertId, usize)> =
            targets.iter().copied().enumerate().map(|(i, t)| (t, i)).collect();
        pending.sort_unstable();
        let mut remaining = pending.len();
        if remaining == 0 {
            return out;
        }
        self.dijkstra(source, |node, d| {
            let lo = pending.partition_point(|&(t, _)| t < node);
            for &(t, i) in &pending[lo..] {
                if t != node {
                    break;
                }
                out[i] = Some(d);
                remaining -= 1;
            }
            if remaining == 0 {
                Visit::Stop
            } else {
                Visit::Continue
            }
        });
        out
    }

    /// Distance between `s` and `t` by bidirectional Dijkstra, always growing
    /// the frontier with fewer queued entries.
    pub fn pair_distance(&mut self, s: ExpertId, t: ExpertId) -> Option<f64> {
        if s == t {
            return Some(0.0);
        }
        let n = self.graph.len();
        self.next_epoch();
        let epoch = self.epoch;
        let back = self.back.get_or_insert_with(|| {
            Box::new(Backward {
                dist: vec![0.0; n],
                seen: vec![0; n],
                done: vec![0; n],
                heap: BinaryHeap::new(),
            })
        });
        back.heap.clear();
        self.dist[s.index()] = 0.0;
        self.seen[s.index()] = epoch;
        self.heap.push(entry(0.0, s));
        back.dist[t.index()] = 0.0;
        back.seen[t.index()] = epoch;
        back.heap.push(entry(0.0, t));

        let mut best = f64::INFINITY;
        while let (Some(&Reverse((fb, _))), Some(&Reverse((bb, _)))) = (self.heap.peek(), back.heap.peek()) {
            if f64::from_bits(fb) + f64::from_bits(bb) >= best {
                break;
            }
            let forward = self.heap.len() <= back.heap.len();
            let (dist, seen, done, heap, o_dist, o_seen) = if forward {
                (&mut self.dist, &mut self.seen, &mut self.done, &mut self.heap, &back.dist, &back.seen)
            } else {
                (&mut back.dist, &mut back.seen, &mut back.done, &mut back.heap, &self.dist, &self.seen)
            };
            let Reverse((bits, id)) = heap.pop().expect("peeked");
            let (d, node) = (f64::from_bits(bits), ExpertId(id));
            if done[node.index()] == epoch {
                continue;
            }
            done[node.index()] = epoch;
            for (next, w) in self.graph.neighbors(node) {
                let j = next.index();
                let candidate = d + w;
                if o_seen[j] == epoch {
                    best = best.min(candidate + o_dist[j]);
                }
                if done[j] != epoch && (seen[j] != epoch || candidate < dist[j]) {
                    seen[j] = epoch;
                    dist[j] = candidate;
                    heap.push(entry(candidate, next));
                }
            }
        }
        best.is_finite().then_some(best)
    }

    pub fn all_distances(&mut self, source: ExpertId) -> Vec<Option<f64>> {
        let mut out = vec![None; self.graph.len()];
        self.dijkstra(source, |node, d| {
            out[node.index()] = Some(d);
            Visit::Continue
        });
        out
    }

    /// Nodes within `max_hops` edges of `source` (excluding it), with their
    /// hop count, in BFS order.
    pub fn hops_within(&mut self, source: ExpertId, max_hops: u32) -> Vec<(ExpertId, u32)> {
        self.next_epoch();
        let epoch = self.epoch;
        let mut out = Vec::new();
        self.seen[source.index()] = epoch;
        self.queue.push_back((source, 0));
        while let Some((node, hop)) = self.queue.pop_front() {
            if hop == max_hops {
                continue;
            }
            for (next, _) in self.graph.neighbors(node) {
                let j = next.index();
                if self.seen[j] != epoch {
                    self.seen[j] = epoch;
                    out.push((next, hop + 1));
                    self.queue.push_back((next, hop + 1));
                }
            }
        }
        out
    }
}
