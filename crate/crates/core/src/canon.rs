//! Canonical labelling, automorphism groups and isomorphism rejection.
//!
//! The labelling search follows the individualise-and-refine scheme:
//!
//! * the partition of the vertex set is refined to the coarsest equitable
//!   partition (every vertex of a cell has the same number of neighbours in
//!   each other cell);
//! * while the partition is not discrete, the first smallest non-singleton
//!   cell is chosen and each of its vertices is individualised in turn;
//! * each discrete leaf defines a relabelling, and the leaf whose permuted
//!   adjacency matrix is lexicographically smallest wins.
//!
//! Two leaves with identical matrices yield an automorphism. Automorphisms
//! that fix the current prefix prune sibling branches in the same orbit, and
//! the orbit sizes along the first path multiply to `|Aut(G)|`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::graph6;

/// Isomorphism-invariant identifier: the graph6 encoding of the canonically
/// relabelled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// The canonical representative.
    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical keys are valid graph6")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.as_str())
    }
}

/// Output of the canonical labelling search.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// `g.relabel(&labelling)`.
    pub graph: Graph,
    /// `labelling[v]` is the canonical label of vertex `v`.
    pub labelling: Vec<usize>,
    pub automorphism_order: BigUint,
    /// Automorphisms found during the search; they generate `Aut(G)`.
    pub generators: Vec<Vec<usize>>,
}

impl CanonicalForm {
    pub fn key(&self) -> CanonicalKey {
        CanonicalKey(graph6::encode_bytes(&self.graph))
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
        aut_order: BigUint::from(1u32),
    };
    let mut root = Partition::unit(n);
    if n > 0 {
        root.refine(g, VecDeque::from([0]), VertexSet::singleton(0));
    }
    let mut path = Vec::new();
    search.visit(root, &mut path, true);
    let best = search.best.expect("search visits at least one leaf");
    let mut labelling = vec![0; n];
    for (i, &v) in best.lab.iter().enumerate() {
        labelling[v] = i;
    }
    CanonicalForm {
        graph: g.relabel(&labelling),
        labelling,
        automorphism_order: search.aut_order,
        generators: search.generators,
    }
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    canonical_form(g).key()
}

pub fn automorphism_group_order(g: &Graph) -> BigUint {
    canonical_form(g).automorphism_order
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && a.degree_sequence() == b.degree_sequence()
        && canonical_key(a) == canonical_key(b)
}

/// Ordered partition: `lab` lists vertices cell by cell and `starts` marks
/// the positions where a cell begins.
#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    starts: VertexSet,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        Partition {
            lab: (0..n).collect(),
            starts: if n > 0 { VertexSet::singleton(0) } else { VertexSet::EMPTY },
        }
    }

    #[inline]
    fn cell_end(&self, s: usize) -> usize {
        self.starts.next_after(s).unwrap_or(self.lab.len())
    }

    fn is_discrete(&self) -> bool {
        self.starts.len() == self.lab.len()
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> (usize, usize) {
        let n = self.lab.len();
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < n {
            let e = self.cell_end(s);
            if e - s > 1 && best.is_none_or(|(bs, be)| e - s < be - bs) {
                best = Some((s, e));
                if e - s == 2 {
                    break;
                }
            }
            s = e;
        }
        best.expect("partition is not discrete")
    }

    /// Moves `v` to the front of its cell as a new singleton cell and
    /// refines. `v` must lie in the cell starting at `s`.
    fn individualise(&self, g: &Graph, s: usize, v: usize) -> Partition {
        let mut p = self.clone();
        let e = p.cell_end(s);
        let pos = (s..e).find(|&i| p.lab[i] == v).expect("vertex in target cell");
        p.lab.swap(s, pos);
        p.starts.insert(s + 1);
        p.refine(
            g,
            VecDeque::from([s]),
            VertexSet::singleton(s),
        );
        p
    }

    /// Splits cells by neighbour counts into splitter cells until the
    /// partition is equitable. Cells are queued by start position.
    fn refine(&mut self, g: &Graph, mut queue: VecDeque<usize>, mut queued: VertexSet) {
        let n = self.lab.len();
        let adj = g.adjacency();
        let mut count = [0u32; 128];
        while let Some(ws) = queue.pop_front() {
            queued.remove(ws);
            let we = self.cell_end(ws);
            let splitter: VertexSet = self.lab[ws..we].iter().copied().collect();
            let mut s = 0;
            while s < n {
                let e = self.cell_end(s);
                if e - s > 1 {
                    let mut uniform = true;
                    let first = (adj[self.lab[s]] & splitter).len() as u32;
                    for &x in &self.lab[s..e] {
                        let c = (adj[x] & splitter).len() as u32;
                        count[x] = c;
                        uniform &= c == first;
                    }
                    if !uniform {
                        self.lab[s..e].sort_unstable_by_key(|&x| count[x]);
                        for i in s + 1..e {
                            if count[self.lab[i]] != count[self.lab[i - 1]] {
                                self.starts.insert(i);
                            }
                        }
                        let mut p = s;
                        while p < e {
                            if !queued.contains(p) {
                                queued.insert(p);
                                queue.push_back(p);
                            }
                            p = self.cell_end(p);
                        }
                    }
                }
                s = e;
            }
        }
    }
}

struct Leaf {
    lab: Vec<usize>,
    cert: Vec<u128>,
    path: Vec<usize>,
}

enum Flow {
    Continue,
    /// Resume the loop of the ancestor at this depth.
    Jump(usize),
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
    aut_order: BigUint,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    fn certificate(&self, lab: &[usize]) -> Vec<u128> {
        let n = lab.len();
        let mut pos = [0usize; 128];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        (0..n)
            .map(|i| {
                self.g
                    .neighbours(lab[i])
                    .iter()
                    .fold(0u128, |acc, u| acc | (1u128 << pos[u]))
            })
            .collect()
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut perm = vec![0; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            perm[a] = b;
        }
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            self.generators.push(perm);
        }
    }

    fn leaf(&mut self, part: &Partition, path: &[usize]) -> Flow {
        let cert = self.certificate(&part.lab);
        let first = match &self.first {
            None => {
                let leaf = Leaf {
                    lab: part.lab.clone(),
                    cert,
                    path: path.to_vec(),
                };
                self.best = Some(Leaf {
                    lab: leaf.lab.clone(),
                    cert: leaf.cert.clone(),
                    path: leaf.path.clone(),
                });
                self.first = Some(leaf);
                return Flow::Continue;
            }
            Some(first) => first,
        };
        if cert == first.cert {
            let level = common_prefix(path, &first.path);
            let from = first.lab.clone();
            self.record_automorphism(&from, &part.lab);
            return Flow::Jump(level);
        }
        let best = self.best.as_ref().expect("best set with first");
        match cert.cmp(&best.cert) {
            std::cmp::Ordering::Less => {
                self.best = Some(Leaf {
                    lab: part.lab.clone(),
                    cert,
                    path: path.to_vec(),
                });
                Flow::Continue
            }
            std::cmp::Ordering::Equal => {
                let level = common_prefix(path, &best.path);
                let from = best.lab.clone();
                self.record_automorphism(&from, &part.lab);
                Flow::Jump(level)
            }
            std::cmp::Ordering::Greater => Flow::Continue,
        }
    }

    /// Orbits of the group generated by the known automorphisms that fix
    /// every vertex of `path`.
    fn orbits_fixing(&self, path: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gen in &self.generators {
            if path.iter().any(|&p| gen[p] != p) {
                continue;
            }
            for (x, &y) in gen.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }

    fn visit(&mut self, part: Partition, path: &mut Vec<usize>, on_first_path: bool) -> Flow {
        if part.is_discrete() {
            return self.leaf(&part, path);
        }
        let depth = path.len();
        let (s, e) = part.target_cell();
        let mut cell = part.lab[s..e].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, Vec<usize>)> = None;
        for &v in &cell {
            if !explored.is_empty() {
                let stale = orbits.as_ref().is_none_or(|(k, _)| *k != self.generators.len());
                if stale {
                    orbits = Some((self.generators.len(), self.orbits_fixing(path)));
                }
                let orb = &orbits.as_ref().expect("computed above").1;
                if explored.iter().any(|&u| orb[u] == orb[v]) {
                    continue;
                }
            }
            let child = part.individualise(self.g, s, v);
            path.push(v);
            let flow = self.visit(child, path, on_first_path && explored.is_empty());
            path.pop();
            explored.push(v);
            if let Flow::Jump(level) = flow {
                if level < depth {
                    return flow;
                }
            }
        }
        if on_first_path {
            let orb = self.orbits_fixing(path);
            let size = orb.iter().filter(|&&r| r == orb[cell[0]]).count();
            self.aut_order *= BigUint::from(size);
        }
        Flow::Continue
    }
}

/// Set of canonical keys seen so far, with acceptance counters.
#[derive(Clone, Debug, Default)]
pub struct DedupStore {
    seen: HashSet<CanonicalKey>,
    rejected: u64,
}

impl DedupStore {
    pub fn new() -> DedupStore {
        DedupStore::default()
    }

    /// True iff the isomorphism class of `g` was not seen before.
    pub fn insert(&mut self, g: &Graph) -> bool {
        self.insert_key(canonical_key(g))
    }

    pub fn insert_key(&mut self, key: CanonicalKey) -> bool {
        let fresh = self.seen.insert(key);
        if !fresh {
            self.rejected += 1;
        }
        fresh
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.seen.contains(key)
    }

    pub fn accepted_count(&self) -> u64 {
        self.seen.len() as u64
    }

    pub fn rejected_count(&self) -> u64 {
        self.rejected
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }

    /// Absorbs another store. Keys present in both count as rejections.
    pub fn merge(&mut self, other: DedupStore) {
        self.rejected += other.rejected;
        for key in other.seen {
            self.insert_key(key);
        }
    }

    pub fn sorted_keys(&self) -> Vec<CanonicalKey> {
        let mut keys: Vec<_> = self.seen.iter().cloned().collect();
        keys.sort();
        keys
    }
}
