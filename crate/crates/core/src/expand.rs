//! From maximal triangle-free k-chromatic graphs to all k-chromatic graphs,
//! and the heuristic search for graphs that are not vertex-critical.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalKey};
use crate::color::{has_chromatic_number, is_k_colorable, vertex_critical_unchecked};
use crate::graph::Graph;
use crate::mtfgen::mtf_closure;
use crate::par::map_sharded;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("graph does not have chromatic number {0}")]
    ChromaticMismatch(usize),
    #[error("graph is vertex-critical, no vertex can be removed")]
    VertexCritical,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpansionOutput {
    /// Canonical representatives sorted by key.
    pub graphs: Vec<Graph>,
    /// Inputs without chromatic number `k` or with a triangle, by index.
    pub rejected: Vec<usize>,
}

fn canon_pair(g: &Graph) -> (CanonicalKey, Graph) {
    let form = canonical_form(g);
    (form.key(), form.graph)
}

/// All k-chromatic spanning subgraphs of the inputs, up to isomorphism.
///
/// Edges are removed one at a time while the graph stays k-chromatic; each
/// graph is expanded once, however many removal orders reach it.
pub fn expand_by_edge_removal(inputs: &[Graph], k: usize, workers: usize) -> ExpansionOutput {
    let mut out = ExpansionOutput::default();
    let mut seen: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    let mut frontier = Vec::new();
    for (i, g) in inputs.iter().enumerate() {
        if !g.is_triangle_free() || !has_chromatic_number(g, k) {
            out.rejected.push(i);
            continue;
        }
        let (key, c) = canon_pair(g);
        if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
            e.insert(c.clone());
            frontier.push(c);
        }
    }
    while !frontier.is_empty() {
        let children = map_sharded(&frontier, workers, |g| {
            g.edges()
                .map(|(u, v)| g.without_edge(u, v))
                .filter(|h| is_k_colorable(h, k - 1).is_none())
                .map(|h| canon_pair(&h))
                .collect::<Vec<_>>()
        });
        let mut next = BTreeMap::new();
        for (key, h) in children.into_iter().flatten() {
            if !seen.contains_key(&key) {
                next.entry(key).or_insert(h);
            }
        }
        frontier = next.values().cloned().collect();
        seen.extend(next);
    }
    out.graphs = seen.into_values().collect();
    out
}

/// How k-critical spanning subgraphs are extracted from a pool member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalMode {
    /// Every k-critical spanning subgraph, up to isomorphism.
    Exact,
    /// Greedy edge removal along `samples` random edge orders.
    Sampled { samples: usize },
}

/// k-critical spanning subgraphs of a k-chromatic graph, sorted by key.
pub fn critical_subgraphs(g: &Graph, k: usize, mode: CriticalMode, seed: u64) -> Vec<Graph> {
    let mut found: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    match mode {
        CriticalMode::Exact => {
            let mut seen = BTreeSet::new();
            let (key, c) = canon_pair(g);
            seen.insert(key);
            let mut stack = vec![c];
            while let Some(h) = stack.pop() {
                let mut leaf = true;
                for (u, v) in h.edges() {
                    let child = h.without_edge(u, v);
                    if is_k_colorable(&child, k - 1).is_none() {
                        leaf = false;
                        let (key, c) = canon_pair(&child);
                        if seen.insert(key) {
                            stack.push(c);
                        }
                    }
                }
                if leaf {
                    let (key, c) = canon_pair(&h);
                    found.insert(key, c);
                }
            }
        }
        CriticalMode::Sampled { samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples.max(1) {
                let mut edges: Vec<(usize, usize)> = g.edges().collect();
                edges.shuffle(&mut rng);
                let mut h = g.clone();
                for (u, v) in edges {
                    h.remove_edge(u, v);
                    if is_k_colorable(&h, k - 1).is_some() {
                        h.add_edge(u, v);
                    }
                }
                let (key, c) = canon_pair(&h);
                found.insert(key, c);
            }
        }
    }
    found.into_values().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicConfig {
    /// Maximum number of rounds; 0 leaves the pool untouched.
    pub max_rounds: usize,
    /// Stop once the harvest holds at least this many graphs.
    pub quota: usize,
    pub mode: CriticalMode,
    pub seed: u64,
    pub workers: usize,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            max_rounds: 100,
            quota: 1,
            mode: CriticalMode::Exact,
            seed: 0,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// A round added nothing to the pool.
    Fixpoint,
    Quota,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundLog {
    pub round: usize,
    pub processed: usize,
    pub new_graphs: usize,
    pub pool_size: usize,
    pub harvest_size: usize,
}

impl std::fmt::Display for RoundLog {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "round={} processed={} new={} pool={} harvest={}",
            self.round, self.processed, self.new_graphs, self.pool_size, self.harvest_size
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicOutcome {
    /// Maximal triangle-free k-chromatic graphs, sorted by key.
    pub pool: Vec<Graph>,
    /// Completions that are not vertex-critical, whether or not they were
    /// already in the pool.
    pub harvest: Vec<Graph>,
    pub journal: Vec<RoundLog>,
    pub stop: StopReason,
}

/// Alternates between taking k-critical spanning subgraphs of new pool
/// members and completing them to maximal triangle-free graphs in every
/// way. Completions with chromatic number `k` join the pool; those that are
/// not vertex-critical also join the harvest.
pub fn heuristic_search(seeds: &[Graph], k: usize, cfg: &HeuristicConfig) -> HeuristicOutcome {
    let mut pool: BTreeMap<CanonicalKey, Graph> =
        seeds.iter().map(canon_pair).collect();
    let mut harvest: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    let mut pending: Vec<(CanonicalKey, Graph)> =
        pool.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
    let mut journal = Vec::new();
    let mut stop = StopReason::Budget;
    for round in 1..=cfg.max_rounds {
        let batch = std::mem::take(&mut pending);
        let indexed: Vec<(usize, &Graph)> = batch.iter().map(|(_, g)| g).enumerate().collect();
        let results = map_sharded(&indexed, cfg.workers, |&(i, g)| {
            let seed = cfg.seed ^ ((round as u64) << 32) ^ i as u64;
            let mut out = Vec::new();
            for crit in critical_subgraphs(g, k, cfg.mode, seed) {
                for closed in mtf_closure(&crit).expect("subgraph of a triangle-free graph") {
                    if is_k_colorable(&closed, k).is_some() {
                        let (key, c) = canon_pair(&closed);
                        let nvc = !vertex_critical_unchecked(&c, k);
                        out.push((key, c, nvc));
                    }
                }
            }
            out
        });
        let mut new_graphs = 0;
        for (key, g, not_vc) in results.into_iter().flatten() {
            if not_vc {
                harvest.entry(key.clone()).or_insert_with(|| g.clone());
            }
            if pool.contains_key(&key) {
                continue;
            }
            new_graphs += 1;
            pool.insert(key.clone(), g.clone());
            pending.push((key, g));
        }
        pending.sort_by(|a, b| a.0.cmp(&b.0));
        journal.push(RoundLog {
            round,
            processed: batch.len(),
            new_graphs,
            pool_size: pool.len(),
            harvest_size: harvest.len(),
        });
        if harvest.len() >= cfg.quota.max(1) {
            stop = StopReason::Quota;
            break;
        }
        if new_graphs == 0 {
            stop = StopReason::Fixpoint;
            break;
        }
    }
    HeuristicOutcome {
        pool: pool.into_values().collect(),
        harvest: harvest.into_values().collect(),
        journal,
        stop,
    }
}

/// All `g - v` that keep chromatic number `k`, up to isomorphism, sorted by
/// key.
pub fn descend_order(g: &Graph, k: usize) -> Result<Vec<Graph>, ExpandError> {
    if !has_chromatic_number(g, k) {
        return Err(ExpandError::ChromaticMismatch(k));
    }
    let found: BTreeMap<CanonicalKey, Graph> = (0..g.order())
        .map(|v| g.delete_vertex(v))
        .filter(|h| is_k_colorable(h, k - 1).is_none())
        .map(|h| canon_pair(&h))
        .collect();
    if found.is_empty() {
        return Err(ExpandError::VertexCritical);
    }
    Ok(found.into_values().collect())
}
