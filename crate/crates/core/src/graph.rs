//! Undirected simple graphs stored as per-vertex adjacency bitsets.

use std::fmt;

use thiserror::Error;

use crate::bitset::{VertexSet, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Cycle-length regime for a search: triangle-free (girth at least 4) or
/// girth at least 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GirthMode {
    TriangleFree,
    AtLeastFive,
}

impl GirthMode {
    pub fn min_girth(self) -> usize {
        match self {
            GirthMode::TriangleFree => 4,
            GirthMode::AtLeastFive => 5,
        }
    }

    pub fn admits(self, g: &Graph) -> bool {
        match self {
            GirthMode::TriangleFree => g.is_triangle_free(),
            GirthMode::AtLeastFive => g.girth().is_none_or(|c| c >= 5),
        }
    }
}

/// An undirected simple graph on the vertices `0..order`.
///
/// `adj[v]` holds the neighbourhood of `v`. The adjacency relation is kept
/// symmetric and loop-free by every mutating method.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `order` vertices.
    ///
    /// Panics if `order` exceeds [`MAX_ORDER`]; use [`Graph::try_new`] for
    /// untrusted sizes.
    pub fn new(order: usize) -> Graph {
        Graph::try_new(order).expect("graph order out of range")
    }

    pub fn try_new(order: usize) -> Result<Graph, GraphError> {
        if order > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(order));
        }
        Ok(Graph {
            adj: vec![VertexSet::EMPTY; order],
        })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::try_new(order)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbourhoods, checking every invariant.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Graph, GraphError> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let valid = VertexSet::full(n);
        for (v, &nb) in adj.iter().enumerate() {
            if nb.contains(v) {
                return Err(GraphError::SelfLoop(v));
            }
            if let Some(u) = (nb - valid).first() {
                return Err(GraphError::VertexOutOfRange { vertex: u, order: n });
            }
        }
        let mut g = Graph { adj };
        for v in 0..n {
            for u in g.adj[v].iter() {
                g.adj[u].insert(v);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 0..n {
            for u in 0..v {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::complete_bipartite(1, leaves)
    }

    /// The Grötzsch graph, i.e. the Mycielski graph of the 5-cycle.
    pub fn grotzsch() -> Graph {
        Graph::cycle(5).mycielski()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Adds the edge `{u, v}`. Panics on loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("invalid edge");
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.remove_edge(u, v);
        g
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, &nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).min().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(|s| s.len()).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// No three mutually adjacent vertices.
    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| !self.adj[u].intersects(self.adj[v]))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            queue.clear();
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.push(root);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                if let Some(b) = best {
                    if 2 * dist[u] >= b {
                        break;
                    }
                }
                for w in self.adj[u].iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Vertices at distance exactly 1 or 2 from `v`.
    pub fn within_distance_two(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v];
        for u in self.adj[v].iter() {
            s |= self.adj[u];
        }
        s.without(v)
    }

    /// Largest distance between two vertices, `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.order();
        let mut diam = 0;
        for root in 0..n {
            let mut seen = VertexSet::singleton(root);
            let mut frontier = seen;
            let mut depth = 0;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for u in frontier.iter() {
                    next |= self.adj[u];
                }
                next = next - seen;
                if next.is_empty() {
                    break;
                }
                seen |= next;
                frontier = next;
                depth += 1;
            }
            if seen.len() != n {
                return None;
            }
            diam = diam.max(depth);
        }
        Some(diam)
    }

    /// Maximal triangle-free: triangle-free, and every non-adjacent pair of
    /// distinct vertices has a common neighbour.
    pub fn is_mtf(&self) -> bool {
        if !self.is_triangle_free() {
            return false;
        }
        let n = self.order();
        (0..n).all(|u| {
            let non_adj = self.vertices() - self.adj[u] - VertexSet::singleton(u);
            non_adj
                .iter()
                .filter(|&v| v > u)
                .all(|v| self.adj[u].intersects(self.adj[v]))
        })
    }

    /// Induced subgraph on `keep`, relabelled `0..|keep|` in increasing order.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Graph {
        let keep = keep & self.vertices();
        let old: Vec<usize> = keep.iter().collect();
        let mut new_label = [u8::MAX; MAX_ORDER];
        for (i, &v) in old.iter().enumerate() {
            new_label[v] = i as u8;
        }
        let adj = old
            .iter()
            .map(|&v| {
                (self.adj[v] & keep)
                    .iter()
                    .map(|u| new_label[u] as usize)
                    .collect()
            })
            .collect();
        Graph { adj }
    }

    pub fn delete_vertex(&self, v: usize) -> Graph {
        self.induced_subgraph(self.vertices().without(v))
    }

    /// `G \ (N(v) ∪ {v})` with order-preserving relabelling.
    pub fn delete_closed_neighbourhood(&self, v: usize) -> Graph {
        self.induced_subgraph(self.vertices() - self.adj[v].with(v))
    }

    /// Appends a vertex adjacent to `neighbours`.
    pub fn with_new_vertex(&self, neighbours: VertexSet) -> Graph {
        let n = self.order();
        assert!(n < MAX_ORDER, "graph order out of range");
        let mut adj = self.adj.clone();
        for u in neighbours.iter() {
            adj[u].insert(n);
        }
        adj.push(neighbours);
        Graph { adj }
    }

    /// Mycielski graph: originals `0..n`, shadow `i + n` adjacent to the
    /// original neighbours of `i`, apex `2n` adjacent to every shadow.
    pub fn mycielski(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::new(2 * n + 1);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
            g.add_edge(u + n, v);
            g.add_edge(u, v + n);
        }
        for i in 0..n {
            g.add_edge(i + n, 2 * n);
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.order();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut adj = vec![VertexSet::EMPTY; n];
        for v in 0..n {
            adj[perm[v]] = self.adj[v].iter().map(|u| perm[u]).collect();
        }
        Graph { adj }
    }

    /// Checks symmetry, absence of loops and the order mask.
    pub fn is_valid(&self) -> bool {
        let n = self.order();
        n <= MAX_ORDER
            && (0..n).all(|v| {
                let nb = self.adj[v];
                !nb.contains(v)
                    && nb.is_subset(self.vertices())
                    && nb.iter().all(|u| self.adj[u].contains(v))
            })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges().collect::<Vec<_>>())
    }
}
