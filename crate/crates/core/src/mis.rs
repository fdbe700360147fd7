//! Enumeration of maximal independent sets and of distance-3 vertex sets.

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Maximal independent sets grouped by size.
///
/// Within one size class the sets are sorted lexicographically by their
/// ascending vertex lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndependentSetIndex {
    by_size: Vec<Vec<VertexSet>>,
}

impl IndependentSetIndex {
    /// Groups `sets` by size and sorts each class.
    pub fn from_sets(sets: impl IntoIterator<Item = VertexSet>, max_size: usize) -> Self {
        let mut by_size = vec![Vec::new(); max_size + 1];
        for s in sets {
            by_size[s.len()].push(s);
        }
        for class in &mut by_size {
            class.sort_by(|a, b| a.lex_cmp(*b));
            class.dedup();
        }
        IndependentSetIndex { by_size }
    }

    pub fn max_size(&self) -> usize {
        self.by_size.len().saturating_sub(1)
    }

    /// Sets of exactly `size` vertices; empty beyond `max_size`.
    pub fn sets_of_size(&self, size: usize) -> &[VertexSet] {
        self.by_size.get(size).map_or(&[], |v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All sets, largest first, lexicographic within a size.
    pub fn iter_descending(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.by_size.iter().rev().flat_map(|c| c.iter().copied())
    }
}

/// All maximal independent sets of `g` with at most `max_size` vertices.
///
/// Bron–Kerbosch on the complement with pivoting: a maximal independent set
/// extending `chosen` must contain the pivot or one of its candidate
/// neighbours, so only those are branched on.
pub fn enumerate_maximal_independent_sets(g: &Graph, max_size: usize) -> IndependentSetIndex {
    let mut found = Vec::new();
    if g.order() > 0 {
        mis_rec(g, VertexSet::EMPTY, g.vertices(), VertexSet::EMPTY, max_size, &mut found);
    }
    IndependentSetIndex::from_sets(found, max_size)
}

fn mis_rec(
    g: &Graph,
    chosen: VertexSet,
    mut cand: VertexSet,
    mut excluded: VertexSet,
    max_size: usize,
    out: &mut Vec<VertexSet>,
) {
    if cand.is_empty() {
        if excluded.is_empty() {
            out.push(chosen);
        }
        return;
    }
    if chosen.len() == max_size {
        return;
    }
    let pivot = (cand | excluded)
        .iter()
        .max_by_key(|&u| (g.neighbours(u) & cand).len())
        .expect("candidates non-empty");
    let branch = cand & g.neighbours(pivot).with(pivot);
    for v in branch.iter() {
        let blocked = g.neighbours(v).with(v);
        mis_rec(
            g,
            chosen.with(v),
            cand - blocked,
            excluded - blocked,
            max_size,
            out,
        );
        cand.remove(v);
        excluded.insert(v);
    }
}

/// Every non-empty vertex set of at most `max_size` vertices whose members
/// are pairwise at distance at least 3, sorted by size descending and then
/// lexicographically.
pub fn enumerate_distance3_independent_sets(g: &Graph, max_size: usize) -> Vec<VertexSet> {
    let n = g.order();
    let near: Vec<VertexSet> = (0..n).map(|v| g.within_distance_two(v)).collect();
    let mut found = Vec::new();
    fn rec(
        near: &[VertexSet],
        chosen: VertexSet,
        cand: VertexSet,
        max_size: usize,
        out: &mut Vec<VertexSet>,
    ) {
        if !chosen.is_empty() {
            out.push(chosen);
        }
        if chosen.len() == max_size {
            return;
        }
        for v in cand.iter() {
            let rest = VertexSet::from_bits(cand.bits() & !((2u128 << v).wrapping_sub(1)));
            rec(near, chosen.with(v), rest - near[v], max_size, out);
        }
    }
    if max_size > 0 {
        rec(&near, VertexSet::EMPTY, g.vertices(), max_size, &mut found);
    }
    found.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.lex_cmp(*b)));
    found
}
