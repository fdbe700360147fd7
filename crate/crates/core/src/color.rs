//! Exact vertex colouring and colour-criticality.
//!
//! The decision procedure is a DSATUR-style backtracking search: the next
//! vertex is one with the fewest admissible colours (ties broken by degree
//! into the uncoloured part), a vertex with no admissible colour fails the
//! branch immediately, and a fresh colour is only ever the next unused
//! index, which breaks colour-permutation symmetry.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("graph has chromatic number {actual}, expected {expected}")]
    ChromaticMismatch { expected: usize, actual: usize },
    #[error("graph contains a triangle")]
    ContainsTriangle,
}

/// A proper colouring with colours `0..k`, normalised so that colours first
/// appear in increasing order along the vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn from_assignment(colors: Vec<usize>) -> Coloring {
        let mut map: Vec<Option<usize>> = Vec::new();
        let mut next = 0;
        let colors = colors
            .into_iter()
            .map(|c| {
                if map.len() <= c {
                    map.resize(c + 1, None);
                }
                *map[c].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Coloring { colors }
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn num_colors(&self) -> usize {
        self.colors.iter().map(|&c| c + 1).max().unwrap_or(0)
    }

    /// Direct edge scan.
    pub fn is_proper_for(&self, g: &Graph) -> bool {
        self.colors.len() == g.order() && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    classes: Vec<VertexSet>,
    color: Vec<usize>,
    uncolored: VertexSet,
}

const NONE: usize = usize::MAX;

impl Dsatur<'_> {
    fn solve(&mut self) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        let used = self.classes.len();
        let nb = self.g.neighbours(v);
        for c in 0..used {
            if nb.intersects(self.classes[c]) {
                continue;
            }
            self.assign(v, c);
            if self.solve() {
                return true;
            }
            self.unassign(v, c);
        }
        if used < self.k {
            self.classes.push(VertexSet::EMPTY);
            self.assign(v, used);
            if self.solve() {
                return true;
            }
            self.unassign(v, used);
            self.classes.pop();
        }
        false
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.classes[c].insert(v);
        self.color[v] = c;
        self.uncolored.remove(v);
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.classes[c].remove(v);
        self.color[v] = NONE;
        self.uncolored.insert(v);
    }

    /// Uncoloured vertex with the fewest admissible colours; `None` when all
    /// vertices are coloured. Returns a vertex with zero options if one
    /// exists, so the caller fails fast.
    fn pick(&self) -> Option<usize> {
        let used = self.classes.len();
        let mut best: Option<(usize, usize, usize)> = None;
        for v in self.uncolored.iter() {
            let nb = self.g.neighbours(v);
            let blocked = self.classes.iter().filter(|c| nb.intersects(**c)).count();
            let options = (used - blocked) + usize::from(used < self.k);
            if options == 0 {
                return Some(v);
            }
            let free_deg = (nb & self.uncolored).len();
            let better = match best {
                None => true,
                Some((o, d, _)) => options < o || (options == o && free_deg > d),
            };
            if better {
                best = Some((options, free_deg, v));
            }
        }
        best.map(|(_, _, v)| v)
    }
}

/// A proper colouring with at most `k` colours, if one exists.
pub fn is_k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    let n = g.order();
    if n == 0 {
        return Some(Coloring { colors: Vec::new() });
    }
    if k == 0 {
        return None;
    }
    let mut solver = Dsatur {
        g,
        k,
        classes: Vec::with_capacity(k),
        color: vec![NONE; n],
        uncolored: g.vertices(),
    };
    if solver.solve() {
        let c = Coloring::from_assignment(solver.color);
        debug_assert!(c.is_proper_for(g));
        Some(c)
    } else {
        None
    }
}

/// Greedy DSATUR colouring (no backtracking), an upper bound on χ.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.order();
    let mut solver = Dsatur {
        g,
        k: usize::MAX,
        classes: Vec::new(),
        color: vec![NONE; n],
        uncolored: g.vertices(),
    };
    while let Some(v) = solver.pick() {
        let nb = g.neighbours(v);
        let c = (0..solver.classes.len())
            .find(|&c| !nb.intersects(solver.classes[c]))
            .unwrap_or_else(|| {
                solver.classes.push(VertexSet::EMPTY);
                solver.classes.len() - 1
            });
        solver.assign(v, c);
    }
    Coloring::from_assignment(solver.color)
}

/// Size of a greedily grown clique, a lower bound on χ.
fn greedy_clique(g: &Graph) -> usize {
    let mut best = 0;
    for v in 0..g.order() {
        let mut clique = 1;
        let mut cand = g.neighbours(v);
        while let Some(u) = cand.iter().max_by_key(|&u| (g.neighbours(u) & cand).len()) {
            clique += 1;
            cand &= g.neighbours(u);
        }
        best = best.max(clique);
    }
    best
}

pub fn chromatic_number(g: &Graph) -> usize {
    if g.order() == 0 {
        return 0;
    }
    let lower = greedy_clique(g);
    let mut upper = greedy_coloring(g).num_colors();
    while upper > lower {
        if is_k_colorable(g, upper - 1).is_some() {
            upper -= 1;
        } else {
            break;
        }
    }
    upper
}

/// χ(g) == k, using one colourability test for `k` and one refutation for
/// `k - 1`.
pub fn has_chromatic_number(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return g.order() == 0;
    }
    is_k_colorable(g, k).is_some() && is_k_colorable(g, k - 1).is_none()
}

fn check_chromatic(g: &Graph, k: usize) -> Result<(), ColorError> {
    if has_chromatic_number(g, k) {
        Ok(())
    } else {
        Err(ColorError::ChromaticMismatch {
            expected: k,
            actual: chromatic_number(g),
        })
    }
}

/// Every vertex deletion lowers χ to `k - 1`.
pub fn is_vertex_critical(g: &Graph, k: usize) -> Result<bool, ColorError> {
    check_chromatic(g, k)?;
    Ok(vertex_critical_unchecked(g, k))
}

/// Vertex-criticality for a graph already known to be k-chromatic.
pub fn vertex_critical_unchecked(g: &Graph, k: usize) -> bool {
    (0..g.order()).all(|v| is_k_colorable(&g.delete_vertex(v), k - 1).is_some())
}

/// Vertex-critical and every edge deletion lowers χ to `k - 1`.
pub fn is_critical(g: &Graph, k: usize) -> Result<bool, ColorError> {
    check_chromatic(g, k)?;
    Ok(vertex_critical_unchecked(g, k) && edge_critical_unchecked(g, k))
}

/// Every edge deletion lowers χ, for a graph already known to be k-chromatic.
pub fn edge_critical_unchecked(g: &Graph, k: usize) -> bool {
    g.edges()
        .all(|(u, v)| is_k_colorable(&g.without_edge(u, v), k - 1).is_some())
}

/// `χ(g) <= ceil((Δ(g) + 1 + ω(g)) / 2)` with `ω = 2` for triangle-free `g`.
pub fn reed_check(g: &Graph) -> Result<bool, ColorError> {
    if !g.is_triangle_free() {
        return Err(ColorError::ContainsTriangle);
    }
    let omega = if g.edge_count() > 0 { 2 } else { g.order().min(1) };
    let bound = (g.max_degree() + 1 + omega).div_ceil(2);
    Ok(chromatic_number(g) <= bound)
}

/// Second opinion on `χ(g) == k`: the solver is rerun on `restarts` random
/// relabellings, every witness is checked by edge scan against the original
/// graph, and every run must agree.
pub fn verify_chromatic_number(g: &Graph, k: usize, restarts: usize, seed: u64) -> bool {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..restarts.max(1) {
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm);
        let Some(witness) = is_k_colorable(&h, k) else {
            return false;
        };
        let pulled = Coloring::from_assignment((0..n).map(|v| witness.color(perm[v])).collect());
        if !pulled.is_proper_for(g) || pulled.num_colors() > k {
            return false;
        }
        if k > 0 && is_k_colorable(&h, k - 1).is_some() {
            return false;
        }
    }
    true
}
