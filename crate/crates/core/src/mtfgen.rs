//! Exhaustive generation of maximal triangle-free (mtf) graphs.
//!
//! Two independent routes produce the same isomorphism classes:
//!
//! * [`MtfMethod::Filter`] generates every triangle-free graph of order `n`
//!   by vertex augmentation with canonical deduplication at each order and
//!   keeps the mtf ones. Exact but only practical for small orders.
//! * [`MtfMethod::Decomposition`] builds each mtf graph around a vertex `v`
//!   of maximum degree `d`. The rest `H = G \ N[v]` is triangle-free with
//!   `Δ(H) <= d - 1`, and every neighbour of `v` is joined to a non-empty
//!   maximal independent set of `H`. All multisets of `d` such sets are
//!   tried under the degree cap, and the mtf results are kept.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::canon::{canonical_form, canonical_key, CanonicalKey};
use crate::graph::{GirthMode, Graph};
use crate::mis::enumerate_maximal_independent_sets;
use crate::par::map_sharded;

/// Largest order for which [`MtfMethod::Auto`] uses the filter route.
pub const FILTER_MAX_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MtfMethod {
    /// Filter up to [`FILTER_MAX_ORDER`] vertices, decomposition above.
    Auto,
    Decomposition,
    Filter,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MtfError {
    #[error("input graph contains a triangle")]
    ContainsTriangle,
}

fn merge_by_key(parts: Vec<Vec<(CanonicalKey, Graph)>>) -> Vec<Graph> {
    let mut merged: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    for part in parts {
        for (key, g) in part {
            merged.entry(key).or_insert(g);
        }
    }
    merged.into_values().collect()
}

/// All children of `g` obtained by adding one vertex, under the degree cap
/// and girth regime.
fn augmentations(g: &Graph, max_degree: usize, girth: GirthMode) -> Vec<Graph> {
    let n = g.order();
    let eligible: VertexSet = (0..n).filter(|&v| g.degree(v) < max_degree).collect();
    let blocked: Vec<VertexSet> = (0..n)
        .map(|v| match girth {
            GirthMode::TriangleFree => g.neighbours(v),
            GirthMode::AtLeastFive => g.within_distance_two(v),
        })
        .collect();
    let mut out = Vec::new();
    fn rec(
        g: &Graph,
        blocked: &[VertexSet],
        chosen: VertexSet,
        cand: VertexSet,
        cap: usize,
        out: &mut Vec<Graph>,
    ) {
        out.push(g.with_new_vertex(chosen));
        if chosen.len() == cap {
            return;
        }
        for v in cand.iter() {
            let later = VertexSet::from_bits(cand.bits() & !((2u128 << v).wrapping_sub(1)));
            rec(g, blocked, chosen.with(v), later - blocked[v], cap, out);
        }
    }
    rec(g, &blocked, VertexSet::EMPTY, eligible, max_degree, &mut out);
    out
}

/// Canonical representatives of all graphs of order `n` in the girth regime
/// with maximum degree at most `max_degree`, sorted by canonical key.
pub fn generate_triangle_free(
    n: usize,
    max_degree: Option<usize>,
    girth: GirthMode,
    workers: usize,
) -> Vec<Graph> {
    let cap = max_degree.unwrap_or(usize::MAX);
    let mut level = vec![Graph::new(0)];
    for _ in 0..n {
        let parts = map_sharded(&level, workers, |g| {
            augmentations(g, cap, girth)
                .into_iter()
                .map(|c| {
                    let form = canonical_form(&c);
                    (form.key(), form.graph)
                })
                .collect::<Vec<_>>()
        });
        level = merge_by_key(parts);
    }
    level
}

/// All mtf graphs of order `n` with minimum degree at least `min_degree`,
/// one canonical representative per isomorphism class, sorted by key.
pub fn generate_mtf(n: usize, min_degree: usize) -> Vec<Graph> {
    generate_mtf_with(n, min_degree, MtfMethod::Auto, 1)
}

pub fn generate_mtf_with(n: usize, min_degree: usize, method: MtfMethod, workers: usize) -> Vec<Graph> {
    let method = match method {
        MtfMethod::Auto if n <= FILTER_MAX_ORDER => MtfMethod::Filter,
        MtfMethod::Auto => MtfMethod::Decomposition,
        m => m,
    };
    match method {
        MtfMethod::Filter => generate_triangle_free(n, None, GirthMode::TriangleFree, workers)
            .into_iter()
            .filter(|g| g.is_mtf() && g.min_degree() >= min_degree)
            .collect(),
        _ => generate_mtf_decomposition(n, min_degree, workers),
    }
}

fn generate_mtf_decomposition(n: usize, min_degree: usize, workers: usize) -> Vec<Graph> {
    let mut jobs: Vec<(usize, Graph)> = Vec::new();
    let mut parts = Vec::new();
    if n == 1 {
        if min_degree == 0 {
            parts.push(vec![(canonical_key(&Graph::new(1)), Graph::new(1))]);
        }
    } else if n >= 2 {
        let star = Graph::star(n - 1);
        if star.min_degree() >= min_degree {
            let form = canonical_form(&star);
            parts.push(vec![(form.key(), form.graph)]);
        }
        for d in 2..n - 1 {
            let m = n - d - 1;
            for host in generate_triangle_free(m, Some(d - 1), GirthMode::TriangleFree, workers) {
                jobs.push((d, host));
            }
        }
    }
    parts.extend(map_sharded(&jobs, workers, |(d, host)| {
        attach_neighbourhood(host, *d, min_degree)
            .into_iter()
            .map(|g| {
                let form = canonical_form(&g);
                (form.key(), form.graph)
            })
            .collect()
    }));
    merge_by_key(parts)
}

/// Mtf graphs `G` with a vertex `v` of maximum degree `d` and
/// `G \ N[v] = host`.
fn attach_neighbourhood(host: &Graph, d: usize, min_degree: usize) -> Vec<Graph> {
    let m = host.order();
    let min_set = min_degree.saturating_sub(1).max(1);
    let sets: Vec<VertexSet> = enumerate_maximal_independent_sets(host, d - 1)
        .iter_descending()
        .filter(|s| s.len() >= min_set)
        .collect();
    let mut load: Vec<usize> = (0..m).map(|u| host.degree(u)).collect();
    let mut picked: Vec<VertexSet> = Vec::with_capacity(d);
    let mut out = Vec::new();

    struct Ctx<'a> {
        host: &'a Graph,
        sets: &'a [VertexSet],
        d: usize,
        min_degree: usize,
    }

    fn rec(
        ctx: &Ctx,
        start: usize,
        load: &mut [usize],
        picked: &mut Vec<VertexSet>,
        covered: VertexSet,
        out: &mut Vec<Graph>,
    ) {
        let m = ctx.host.order();
        if picked.len() == ctx.d {
            if covered != ctx.host.vertices() {
                return;
            }
            let mut g = ctx.host.clone();
            for s in picked.iter() {
                g = g.with_new_vertex(*s);
            }
            g = g.with_new_vertex(VertexSet::full(m + ctx.d) - VertexSet::full(m));
            if g.max_degree() == ctx.d && g.min_degree() >= ctx.min_degree && g.is_mtf() {
                out.push(g);
            }
            return;
        }
        for i in start..ctx.sets.len() {
            let s = ctx.sets[i];
            if s.iter().any(|u| load[u] >= ctx.d) {
                continue;
            }
            for u in s.iter() {
                load[u] += 1;
            }
            picked.push(s);
            rec(ctx, i, load, picked, covered | s, out);
            picked.pop();
            for u in s.iter() {
                load[u] -= 1;
            }
        }
    }

    let ctx = Ctx {
        host,
        sets: &sets,
        d,
        min_degree,
    };
    rec(&ctx, 0, &mut load, &mut picked, VertexSet::EMPTY, &mut out);
    out
}

/// All mtf supergraphs of `g` on the same vertex set, one per isomorphism
/// class, sorted by canonical key. Each returned graph contains `g`.
pub fn mtf_closure(g: &Graph) -> Result<Vec<Graph>, MtfError> {
    if !g.is_triangle_free() {
        return Err(MtfError::ContainsTriangle);
    }
    let n = g.order();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    // later[i][x]: partners y of x in pairs[i..]
    let mut later = vec![vec![VertexSet::EMPTY; n]; pairs.len() + 1];
    for i in (0..pairs.len()).rev() {
        later[i] = later[i + 1].clone();
        let (u, v) = pairs[i];
        later[i][u].insert(v);
        later[i][v].insert(u);
    }

    struct Ctx<'a> {
        pairs: &'a [(usize, usize)],
        later: &'a [Vec<VertexSet>],
    }

    fn viable(ctx: &Ctx, g: &Graph, idx: usize, pending: &[(usize, usize)]) -> bool {
        let fut = &ctx.later[idx];
        pending.iter().all(|&(a, b)| {
            (g.neighbours(a) | fut[a]).intersects(g.neighbours(b) | fut[b])
        })
    }

    fn rec(
        ctx: &Ctx,
        idx: usize,
        g: &mut Graph,
        pending: &mut Vec<(usize, usize)>,
        out: &mut BTreeMap<CanonicalKey, Graph>,
    ) {
        if idx == ctx.pairs.len() {
            if pending.iter().all(|&(a, b)| g.neighbours(a).intersects(g.neighbours(b))) {
                debug_assert!(g.is_mtf());
                out.entry(canonical_key(g)).or_insert_with(|| g.clone());
            }
            return;
        }
        let (u, v) = ctx.pairs[idx];
        if g.neighbours(u).intersects(g.neighbours(v)) {
            rec(ctx, idx + 1, g, pending, out);
            return;
        }
        g.add_edge(u, v);
        if viable(ctx, g, idx + 1, pending) {
            rec(ctx, idx + 1, g, pending, out);
        }
        g.remove_edge(u, v);
        pending.push((u, v));
        if viable(ctx, g, idx + 1, pending) {
            rec(ctx, idx + 1, g, pending, out);
        }
        pending.pop();
    }

    let ctx = Ctx {
        pairs: &pairs,
        later: &later,
    };
    let mut out = BTreeMap::new();
    let mut work = g.clone();
    rec(&ctx, 0, &mut work, &mut Vec::new(), &mut out);
    Ok(out.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_key;
    use crate::color::chromatic_number;

    fn keys(gs: &[Graph]) -> Vec<CanonicalKey> {
        let mut k: Vec<_> = gs.iter().map(canonical_key).collect();
        k.sort();
        k
    }

    fn brute_force(n: usize, keep: impl Fn(&Graph) -> bool) -> Vec<CanonicalKey> {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut found = std::collections::BTreeSet::new();
        for mask in 0..1u64 << pairs.len() {
            let mut g = Graph::new(n);
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
            if keep(&g) {
                found.insert(canonical_key(&g));
            }
        }
        found.into_iter().collect()
    }

    #[test]
    fn triangle_free_counts() {
        let counts: Vec<usize> = (0..=7)
            .map(|n| generate_triangle_free(n, None, GirthMode::TriangleFree, 2).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 7, 14, 38, 107]);
        for n in 0..=6 {
            let tf = |g: &Graph| g.is_triangle_free();
            assert_eq!(keys(&generate_triangle_free(n, None, GirthMode::TriangleFree, 1)), brute_force(n, tf));
            let capped = |g: &Graph| g.is_triangle_free() && g.max_degree() <= 2;
            assert_eq!(keys(&generate_triangle_free(n, Some(2), GirthMode::TriangleFree, 1)), brute_force(n, capped));
            let g5 = |g: &Graph| GirthMode::AtLeastFive.admits(g);
            assert_eq!(keys(&generate_triangle_free(n, None, GirthMode::AtLeastFive, 1)), brute_force(n, g5));
        }
    }

    #[test]
    fn order_five_mtf() {
        let got = keys(&generate_mtf(5, 0));
        let expected = keys(&[Graph::cycle(5), Graph::complete_bipartite(2, 3), Graph::star(4)]);
        assert_eq!(got, expected);
        assert_eq!(keys(&generate_mtf(5, 2)), keys(&[Graph::cycle(5), Graph::complete_bipartite(2, 3)]));
    }

    #[test]
    fn tiny_orders() {
        assert_eq!(generate_mtf(1, 0).len(), 1);
        assert!(generate_mtf(1, 1).is_empty());
        assert_eq!(generate_mtf_with(2, 0, MtfMethod::Decomposition, 1).len(), 1);
        assert_eq!(generate_mtf_with(2, 0, MtfMethod::Filter, 1).len(), 1);
    }

    #[test]
    fn both_routes_agree_up_to_ten() {
        for n in 1..=10 {
            for min_degree in [0, 2, 3] {
                let a = generate_mtf_with(n, min_degree, MtfMethod::Filter, 4);
                let b = generate_mtf_with(n, min_degree, MtfMethod::Decomposition, 4);
                assert_eq!(keys(&a), keys(&b), "n={n} min_degree={min_degree}");
                assert!(b.iter().all(|g| g.is_mtf() && g.min_degree() >= min_degree));
            }
        }
    }

    #[test]
    fn grotzsch_is_the_only_four_chromatic_mtf_on_eleven() {
        let four: Vec<Graph> = generate_mtf(11, 2)
            .into_iter()
            .filter(|g| chromatic_number(g) == 4)
            .collect();
        assert_eq!(keys(&four), keys(&[Graph::grotzsch()]));
    }

    #[test]
    fn closure_examples() {
        let c5 = mtf_closure(&Graph::cycle(5)).unwrap();
        assert_eq!(keys(&c5), keys(&[Graph::cycle(5)]));
        let p4 = mtf_closure(&Graph::path(4)).unwrap();
        assert_eq!(keys(&p4), keys(&[Graph::cycle(4)]));
        let g = Graph::grotzsch();
        let (u, v) = g.edges().next().unwrap();
        let closure = mtf_closure(&g.without_edge(u, v)).unwrap();
        assert!(keys(&closure).contains(&canonical_key(&g)));
        assert_eq!(mtf_closure(&Graph::complete(3)), Err(MtfError::ContainsTriangle));
    }

    #[test]
    fn closure_outputs_are_mtf_supergraphs() {
        let g = Graph::cycle(7);
        for h in mtf_closure(&g).unwrap() {
            assert!(h.is_mtf());
            assert!(g.edges().all(|(a, b)| h.has_edge(a, b)));
            assert_eq!(h.order(), g.order());
        }
        assert!(mtf_closure(&Graph::new(4)).unwrap().iter().all(|h| h.order() == 4));
    }
}
