//! Maximum-degree extension.
//!
//! A graph `G` with a vertex `v` of maximum degree `d` splits into `v`, its
//! neighbours `n_1..n_d` and the rest `H = G \ N[v]`. Extension runs this
//! backwards: starting from a host `H` it adds `v` and `d` neighbours, joins
//! every neighbour to an independent set of `H` and keeps the results that
//! have the target chromatic number.
//!
//! In the triangle-free regime the neighbours are joined to maximal
//! independent sets and the outputs are exactly the maximal triangle-free
//! graphs. In the girth-5 regime the sets must be pairwise disjoint and
//! their members pairwise at distance at least 3.
//!
//! [`lower_bound_certificate`] uses extension to prove that no graph of a
//! given order and chromatic number exists.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bitset::{VertexSet, MAX_ORDER};
use crate::canon::{canonical_key, CanonicalKey};
use crate::classify::CountReport;
use crate::color::{chromatic_number, is_k_colorable, vertex_critical_unchecked};
use crate::graph::{GirthMode, Graph};
use crate::mis::{
    enumerate_distance3_independent_sets, enumerate_maximal_independent_sets,
    IndependentSetIndex,
};
use crate::mtfgen::generate_triangle_free;
use crate::par::map_sharded;

/// Smallest possible maximum degree of a triangle-free graph with
/// chromatic number `k`.
///
/// Brooks' theorem gives `Δ >= k` once `k >= 4`; odd cycles leave `Δ = 2`
/// for `k = 3`. Kostochka's bound `χ <= 2Δ/3 + 2` for triangle-free graphs
/// gives `Δ >= ceil(3(k - 2) / 2)`, which is stronger from `k = 7` on.
pub fn min_max_degree(k: usize) -> usize {
    match k {
        0 | 1 => 0,
        2 => 1,
        3 => 2,
        _ => k.max((3 * (k - 2)).div_ceil(2)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionSpec {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub girth: GirthMode,
    pub vertex_critical_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("chromatic number {0} is too small for extension (need at least 2)")]
    ChromaticTooSmall(usize),
    #[error("maximum degree {d} is below {bound}, the least possible for chromatic number {k}")]
    DegreeBelowBound { k: usize, d: usize, bound: usize },
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("lower-bound certificates need chromatic number at least 3, got {0}")]
    CertificateUnsupported(usize),
}

impl ExtensionSpec {
    /// Triangle-free regime, all outputs kept.
    pub fn new(k: usize, n: usize, d: usize) -> ExtensionSpec {
        ExtensionSpec {
            k,
            n,
            d,
            girth: GirthMode::TriangleFree,
            vertex_critical_only: false,
        }
    }

    pub fn with_girth(mut self, girth: GirthMode) -> Self {
        self.girth = girth;
        self
    }

    pub fn with_vertex_critical_only(mut self, on: bool) -> Self {
        self.vertex_critical_only = on;
        self
    }

    pub fn validate(&self) -> Result<(), ExtendError> {
        if self.k < 2 {
            return Err(ExtendError::ChromaticTooSmall(self.k));
        }
        if self.n > MAX_ORDER {
            return Err(ExtendError::OrderTooLarge(self.n));
        }
        let bound = min_max_degree(self.k);
        if self.d < bound {
            return Err(ExtendError::DegreeBelowBound {
                k: self.k,
                d: self.d,
                bound,
            });
        }
        Ok(())
    }

    /// `n - d - 1`, or `None` when the degree cannot fit.
    pub fn host_order(&self) -> Option<usize> {
        self.n.checked_sub(self.d + 1)
    }

    /// Hosts of maximal triangle-free outputs keep one degree free for the
    /// edge to a neighbour of `v`; girth-5 hosts need not.
    pub fn host_max_degree(&self) -> usize {
        match self.girth {
            GirthMode::TriangleFree => self.d.saturating_sub(1),
            GirthMode::AtLeastFive => self.d,
        }
    }

    pub fn host_class(&self) -> String {
        let m = self.host_order().map_or("-".to_string(), |m| m.to_string());
        let g = match self.girth {
            GirthMode::TriangleFree => "",
            GirthMode::AtLeastFive => ",girth>=5",
        };
        format!("({},{},<={}{})", self.k - 1, m, self.host_max_degree(), g)
    }

    /// Why `host` is not a valid starting graph, if it is not.
    pub fn check_host(&self, host: &Graph) -> Result<(), HostRejection> {
        let expected = self.host_order().unwrap_or(0);
        if host.order() != expected {
            return Err(HostRejection::Order {
                expected,
                actual: host.order(),
            });
        }
        if !self.girth.admits(host) {
            return Err(HostRejection::Girth);
        }
        if host.max_degree() > self.host_max_degree() {
            return Err(HostRejection::MaxDegree {
                limit: self.host_max_degree(),
                actual: host.max_degree(),
            });
        }
        let chi = chromatic_number(host);
        if chi != self.k - 1 {
            return Err(HostRejection::ChromaticNumber {
                expected: self.k - 1,
                actual: chi,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HostRejection {
    Order { expected: usize, actual: usize },
    Girth,
    MaxDegree { limit: usize, actual: usize },
    ChromaticNumber { expected: usize, actual: usize },
}

impl fmt::Display for HostRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HostRejection::Order { expected, actual } => {
                write!(f, "order {actual}, expected {expected}")
            }
            HostRejection::Girth => write!(f, "girth too small"),
            HostRejection::MaxDegree { limit, actual } => {
                write!(f, "maximum degree {actual} exceeds {limit}")
            }
            HostRejection::ChromaticNumber { expected, actual } => {
                write!(f, "chromatic number {actual}, expected {expected}")
            }
        }
    }
}

/// Search state of the neighbour assignment for one host.
///
/// `load[u]` is the degree host vertex `u` would have with the current
/// assignment. A vertex whose load has reached `d` is forbidden; in the
/// girth-5 regime every vertex of an assigned set is forbidden as well.
#[derive(Debug, Clone)]
pub struct AssignmentState {
    host: Graph,
    sets: IndependentSetIndex,
    assigned: Vec<VertexSet>,
    load: Vec<usize>,
    used: VertexSet,
    prune: bool,
}

impl AssignmentState {
    pub fn new(host: Graph, spec: &ExtensionSpec) -> AssignmentState {
        let cap = spec.d.saturating_sub(1);
        let sets = match spec.girth {
            GirthMode::TriangleFree => enumerate_maximal_independent_sets(&host, cap),
            GirthMode::AtLeastFive => IndependentSetIndex::from_sets(
                enumerate_distance3_independent_sets(&host, cap),
                cap,
            ),
        };
        let load = (0..host.order()).map(|u| host.degree(u)).collect();
        AssignmentState {
            host,
            sets,
            assigned: Vec::new(),
            load,
            used: VertexSet::EMPTY,
            prune: true,
        }
    }

    /// Reference mode: degree overflow is only rejected at the leaves.
    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn assigned(&self) -> &[VertexSet] {
        &self.assigned
    }

    pub fn forbidden(&self, d: usize) -> VertexSet {
        let mut f = self.used;
        if self.prune {
            f |= (0..self.host.order()).filter(|&u| self.load[u] >= d).collect();
        }
        f
    }

    fn assign(&mut self, s: VertexSet, girth: GirthMode) {
        for u in s.iter() {
            self.load[u] += 1;
        }
        if girth == GirthMode::AtLeastFive {
            self.used |= s;
        }
        self.assigned.push(s);
    }

    fn unassign(&mut self, girth: GirthMode) {
        let s = self.assigned.pop().expect("assignment stack non-empty");
        for u in s.iter() {
            self.load[u] -= 1;
        }
        if girth == GirthMode::AtLeastFive {
            self.used = self.used - s;
        }
    }

    /// Host, then the neighbours of `v` in assignment order, then `v`.
    pub fn expanded_graph(&self) -> Graph {
        let m = self.host.order();
        let mut g = self.host.clone();
        for s in &self.assigned {
            g = g.with_new_vertex(*s);
        }
        g.with_new_vertex(VertexSet::full(m + self.assigned.len()) - VertexSet::full(m))
    }
}

/// Completes the assignment in `state` in every possible way and returns
/// the expanded graphs that pass the output filters, in search order.
///
/// Set sizes are tried in decreasing order and, within one size, set
/// indices never decrease, so every multiset of sets is visited once. In
/// vertex-critical mode a set is never reused and neighbours keep at least
/// `k - 2` host neighbours.
pub fn connect_indep_sets(state: &mut AssignmentState, spec: &ExtensionSpec) -> Vec<Graph> {
    let mut out = Vec::new();
    if spec.host_order() != Some(state.host.order()) || spec.d == 0 {
        return out;
    }
    let (order, index) = match state.assigned.last() {
        None => (spec.d, 0),
        Some(last) => {
            let size = last.len();
            let j = state
                .sets
                .sets_of_size(size)
                .iter()
                .position(|s| s == last)
                .unwrap_or(0);
            (size, j + spec.vertex_critical_only as usize)
        }
    };
    connect(state, spec, order, index, &mut out);
    out
}

fn connect(
    state: &mut AssignmentState,
    spec: &ExtensionSpec,
    set_order: usize,
    set_index: usize,
    out: &mut Vec<Graph>,
) {
    if state.assigned.len() == spec.d {
        let g = state.expanded_graph();
        if passes_output_filters(&g, spec) {
            out.push(g);
        }
        return;
    }
    let min_order = if spec.vertex_critical_only {
        spec.k.saturating_sub(2).max(1)
    } else {
        1
    };
    if set_order < min_order {
        return;
    }
    let count = state.sets.sets_of_size(set_order).len();
    for j in set_index..count {
        let s = state.sets.sets_of_size(set_order)[j];
        if s.intersects(state.forbidden(spec.d)) {
            continue;
        }
        state.assign(s, spec.girth);
        let next = j + spec.vertex_critical_only as usize;
        connect(state, spec, set_order, next, out);
        state.unassign(spec.girth);
    }
    if set_order > min_order {
        connect(state, spec, set_order - 1, 0, out);
    }
}

fn passes_output_filters(g: &Graph, spec: &ExtensionSpec) -> bool {
    if g.max_degree() != spec.d {
        return false;
    }
    let shape_ok = match spec.girth {
        GirthMode::TriangleFree => g.is_mtf(),
        GirthMode::AtLeastFive => GirthMode::AtLeastFive.admits(g),
    };
    shape_ok
        && is_k_colorable(g, spec.k - 1).is_none()
        && (!spec.vertex_critical_only || vertex_critical_unchecked(g, spec.k))
}

/// One output of [`extend_all`]: the graph keeps the layout of
/// [`AssignmentState::expanded_graph`], so deleting the closed
/// neighbourhood of its last vertex gives back host `host_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extended {
    pub key: CanonicalKey,
    pub graph: Graph,
    pub host_index: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtensionOutput {
    /// One graph per isomorphism class, sorted by key.
    pub graphs: Vec<Extended>,
    pub rejected_hosts: Vec<(usize, HostRejection)>,
    /// Outputs before isomorphism rejection.
    pub raw_count: usize,
}

impl ExtensionOutput {
    pub fn keys(&self) -> Vec<CanonicalKey> {
        self.graphs.iter().map(|e| e.key.clone()).collect()
    }
}

/// Runs the extension on every host. Hosts that fail
/// [`ExtensionSpec::check_host`] are reported and skipped.
pub fn extend_all(
    spec: &ExtensionSpec,
    hosts: &[Graph],
    workers: usize,
) -> Result<ExtensionOutput, ExtendError> {
    extend_all_with(spec, hosts, workers, true)
}

/// [`extend_all`] without forbidden-vertex pruning; slower, same output.
pub fn extend_all_reference(
    spec: &ExtensionSpec,
    hosts: &[Graph],
    workers: usize,
) -> Result<ExtensionOutput, ExtendError> {
    extend_all_with(spec, hosts, workers, false)
}

fn extend_all_with(
    spec: &ExtensionSpec,
    hosts: &[Graph],
    workers: usize,
    prune: bool,
) -> Result<ExtensionOutput, ExtendError> {
    spec.validate()?;
    let mut output = ExtensionOutput::default();
    if spec.host_order().is_none() {
        return Ok(output);
    }
    let results = map_sharded(hosts, workers, |h| {
        spec.check_host(h).map(|()| {
            let mut state = AssignmentState::new(h.clone(), spec);
            if !prune {
                state = state.without_pruning();
            }
            connect_indep_sets(&mut state, spec)
                .into_iter()
                .map(|g| (canonical_key(&g), g))
                .collect::<Vec<_>>()
        })
    });
    let mut found: BTreeMap<CanonicalKey, Extended> = BTreeMap::new();
    for (host_index, r) in results.into_iter().enumerate() {
        match r {
            Err(why) => output.rejected_hosts.push((host_index, why)),
            Ok(list) => {
                output.raw_count += list.len();
                for (key, graph) in list {
                    found.entry(key.clone()).or_insert(Extended {
                        key,
                        graph,
                        host_index,
                    });
                }
            }
        }
    }
    output.graphs = found.into_values().collect();
    Ok(output)
}

/// Where a fact comes from. Imported facts are taken on trust and make
/// every conclusion drawn from them conditional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactSource {
    Verified(String),
    Imported(String),
}

impl fmt::Display for FactSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactSource::Verified(s) => write!(f, "verified:{s:?}"),
            FactSource::Imported(s) => write!(f, "imported:{s:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fact {
    /// No graph in the girth regime with chromatic number at least `k` has
    /// at most `max_order` vertices.
    NoGraphsUpTo {
        k: usize,
        max_order: usize,
        girth: GirthMode,
        source: FactSource,
    },
    /// Every graph in the girth regime with chromatic number exactly `k`
    /// on `order` vertices has maximum degree at least `bound`; `None`
    /// means there is no such graph.
    MaxDegreeAtLeast {
        k: usize,
        order: usize,
        girth: GirthMode,
        bound: Option<usize>,
        source: FactSource,
    },
}

impl Fact {
    pub fn source(&self) -> &FactSource {
        match self {
            Fact::NoGraphsUpTo { source, .. } | Fact::MaxDegreeAtLeast { source, .. } => source,
        }
    }

    pub fn is_imported(&self) -> bool {
        matches!(self.source(), FactSource::Imported(_))
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::NoGraphsUpTo { k, max_order, girth, source } => write!(
                f,
                "no chi>={k} girth>={} graph on <={max_order} vertices ({source})",
                girth.min_girth()
            ),
            Fact::MaxDegreeAtLeast { k, order, girth, bound, source } => match bound {
                Some(b) => write!(
                    f,
                    "every chi={k} girth>={} graph on {order} vertices has max degree >={b} ({source})",
                    girth.min_girth()
                ),
                None => write!(
                    f,
                    "no chi={k} girth>={} graph on {order} vertices ({source})",
                    girth.min_girth()
                ),
            },
        }
    }
}

/// A collection of facts consulted by [`lower_bound_certificate`].
///
/// Triangle-free facts also apply to the girth-5 regime, and a bound for
/// chromatic number `k` also covers every larger chromatic number.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnownFacts {
    facts: Vec<Fact>,
}

impl KnownFacts {
    pub fn new() -> KnownFacts {
        KnownFacts::default()
    }

    /// Published results used for the frontier cases: the smallest
    /// triangle-free 5-chromatic graphs have 22 vertices, the 5-chromatic
    /// triangle-free graphs on 22 to 24 vertices have maximum degree at
    /// least 7, and the smallest 4-chromatic graphs of girth 5 have 21
    /// vertices.
    pub fn literature() -> KnownFacts {
        let mut facts = KnownFacts::new();
        facts.push(Fact::NoGraphsUpTo {
            k: 5,
            max_order: 21,
            girth: GirthMode::TriangleFree,
            source: FactSource::Imported("smallest triangle-free 5-chromatic order is 22".into()),
        });
        for order in 22..=24 {
            facts.push(Fact::MaxDegreeAtLeast {
                k: 5,
                order,
                girth: GirthMode::TriangleFree,
                bound: Some(7),
                source: FactSource::Imported(format!(
                    "5-chromatic triangle-free graphs on {order} vertices have max degree >=7"
                )),
            });
        }
        facts.push(Fact::NoGraphsUpTo {
            k: 4,
            max_order: 20,
            girth: GirthMode::AtLeastFive,
            source: FactSource::Imported("smallest 4-chromatic girth-5 order is 21".into()),
        });
        facts
    }

    pub fn push(&mut self, fact: Fact) {
        self.facts.push(fact);
    }

    pub fn iter(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter()
    }

    /// Reads maximum-degree facts off a complete count report of the
    /// graphs with chromatic number `k`; a zero row means the class is
    /// empty.
    pub fn add_count_report(&mut self, k: usize, girth: GirthMode, report: &CountReport, label: &str) {
        for row in report.rows() {
            self.push(Fact::MaxDegreeAtLeast {
                k,
                order: row.n,
                girth,
                bound: row.min_max_degree(),
                source: FactSource::Verified(format!("{label}, n={}", row.n)),
            });
        }
    }

    /// A fact showing that no graph in the regime with chromatic number at
    /// least `k` has `order` vertices.
    pub fn no_graphs(&self, k: usize, order: usize, girth: GirthMode) -> Option<&Fact> {
        self.facts.iter().find(|f| match f {
            Fact::NoGraphsUpTo { k: fk, max_order, girth: fg, .. } => {
                *fk <= k && *max_order >= order && *fg <= girth
            }
            _ => false,
        })
    }

    /// A fact showing that no graph with chromatic number exactly `k`,
    /// `order` vertices and maximum degree at most `max_degree` exists.
    pub fn no_exact_graphs_with_degree(
        &self,
        k: usize,
        order: usize,
        max_degree: usize,
        girth: GirthMode,
    ) -> Option<&Fact> {
        self.no_graphs(k, order, girth).or_else(|| {
            self.facts.iter().find(|f| match f {
                Fact::MaxDegreeAtLeast { k: fk, order: fo, girth: fg, bound, .. } => {
                    *fk == k && *fo == order && *fg <= girth && bound.is_none_or(|b| b > max_degree)
                }
                _ => false,
            })
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CertificateOptions {
    /// Host classes up to this order are generated exhaustively.
    pub max_host_order: usize,
    pub workers: usize,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            max_host_order: 10,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseVerdict {
    ClosedByFact(Fact),
    /// Every host was generated and extended without output.
    ClosedByRun { hosts: usize },
    /// Extension found graphs with the target parameters.
    Witness { hosts: usize, graphs: Vec<Graph> },
    Undecided(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub d: usize,
    pub host_class: String,
    pub verdict: CaseVerdict,
}

impl CaseReport {
    pub fn is_closed(&self) -> bool {
        matches!(
            self.verdict,
            CaseVerdict::ClosedByFact(_) | CaseVerdict::ClosedByRun { .. }
        )
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case d={} hosts={} ", self.d, self.host_class)?;
        match &self.verdict {
            CaseVerdict::ClosedByFact(fact) => {
                write!(f, "verdict=closed-by-fact count=0 fact=\"{fact}\"")
            }
            CaseVerdict::ClosedByRun { hosts } => {
                write!(f, "verdict=closed-by-run count=0 host_count={hosts}")
            }
            CaseVerdict::Witness { hosts, graphs } => write!(
                f,
                "verdict=witness count={} host_count={hosts}",
                graphs.len()
            ),
            CaseVerdict::Undecided(why) => write!(f, "verdict=undecided reason=\"{why}\""),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateVerdict {
    /// No graph with the target parameters exists.
    NoGraph,
    WitnessFound,
    Undecided,
}

impl fmt::Display for CertificateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateVerdict::NoGraph => "no-graph",
            CertificateVerdict::WitnessFound => "witness",
            CertificateVerdict::Undecided => "undecided",
        })
    }
}

/// Case analysis over the maximum degree for "no graph in the girth regime
/// with `n` vertices has chromatic number at least `k`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub k: usize,
    pub n: usize,
    pub girth: GirthMode,
    /// Girth 5 only: the fact that no smaller graph exists, which lets the
    /// argument assume a vertex-critical counterexample.
    pub prerequisite: Option<Fact>,
    pub cases: Vec<CaseReport>,
    pub verdict: CertificateVerdict,
}

impl Certificate {
    /// Imported facts the verdict depends on.
    pub fn assumptions(&self) -> Vec<&Fact> {
        let mut used: Vec<&Fact> = self
            .cases
            .iter()
            .filter_map(|c| match &c.verdict {
                CaseVerdict::ClosedByFact(f) => Some(f),
                _ => None,
            })
            .chain(self.prerequisite.as_ref())
            .filter(|f| f.is_imported())
            .collect();
        used.dedup();
        used
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Graph> {
        self.cases.iter().flat_map(|c| match &c.verdict {
            CaseVerdict::Witness { graphs, .. } => graphs.as_slice(),
            _ => &[],
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "certificate k={} n={} girth>={} verdict={}\n",
            self.k,
            self.n,
            self.girth.min_girth(),
            self.verdict
        );
        if let Some(p) = &self.prerequisite {
            out.push_str(&format!("prerequisite fact=\"{p}\"\n"));
        }
        for c in &self.cases {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        for a in self.assumptions() {
            out.push_str(&format!("assumes fact=\"{a}\"\n"));
        }
        out
    }
}

/// Decides whether a graph of order `n` with chromatic number at least `k`
/// exists in the girth regime, one case per possible maximum degree `d`.
///
/// Triangle-free regime: such a graph can be padded and completed to a
/// maximal triangle-free graph `G` on `n` vertices. With `v` of maximum
/// degree `d`, `G \ N[v]` has chromatic number at least `k - 1` and maximum
/// degree at most `d - 1`, so extending every such host finds `G`.
///
/// Girth-5 regime: given that no smaller example exists, a minimal example
/// is vertex-critical on exactly `n` vertices, so every neighbour of `v`
/// has a neighbour in the host and extension over distance-3 sets finds it.
///
/// A case is closed by a fact ruling out its host class, or by generating
/// the host class, checking that none of its members has chromatic number
/// `k` or more, and extending it without output. Anything else leaves the
/// case undecided.
pub fn lower_bound_certificate(
    k: usize,
    n: usize,
    girth: GirthMode,
    facts: &KnownFacts,
    opts: &CertificateOptions,
) -> Result<Certificate, ExtendError> {
    if k < 3 {
        return Err(ExtendError::CertificateUnsupported(k));
    }
    if n > MAX_ORDER {
        return Err(ExtendError::OrderTooLarge(n));
    }
    let prerequisite = match girth {
        GirthMode::TriangleFree => None,
        GirthMode::AtLeastFive if n == 0 => None,
        GirthMode::AtLeastFive => facts.no_graphs(k, n - 1, girth).cloned(),
    };
    let prerequisite_ok = girth == GirthMode::TriangleFree || n == 0 || prerequisite.is_some();
    let mut cases = Vec::new();
    for d in min_max_degree(k)..n {
        let spec = ExtensionSpec::new(k, n, d).with_girth(girth);
        let m = spec.host_order().expect("d < n");
        let host_class = spec.host_class();
        let verdict = if let Some(f) =
            facts.no_exact_graphs_with_degree(k - 1, m, spec.host_max_degree(), girth)
        {
            // exact-chromatic facts only cover hosts when no host reaches k
            let covers_all = matches!(f, Fact::NoGraphsUpTo { .. })
                || facts.no_graphs(k, m, girth).is_some();
            if covers_all {
                CaseVerdict::ClosedByFact(f.clone())
            } else {
                run_case(&spec, opts)
            }
        } else {
            run_case(&spec, opts)
        };
        cases.push(CaseReport {
            d,
            host_class,
            verdict,
        });
    }
    let verdict = if cases.iter().any(|c| matches!(c.verdict, CaseVerdict::Witness { .. })) {
        CertificateVerdict::WitnessFound
    } else if prerequisite_ok && cases.iter().all(CaseReport::is_closed) {
        CertificateVerdict::NoGraph
    } else {
        CertificateVerdict::Undecided
    };
    Ok(Certificate {
        k,
        n,
        girth,
        prerequisite,
        cases,
        verdict,
    })
}

fn run_case(spec: &ExtensionSpec, opts: &CertificateOptions) -> CaseVerdict {
    let m = spec.host_order().expect("d < n");
    if m > opts.max_host_order {
        return CaseVerdict::Undecided(format!(
            "host order {m} exceeds the generation limit {}",
            opts.max_host_order
        ));
    }
    let candidates = generate_triangle_free(m, Some(spec.host_max_degree()), spec.girth, opts.workers);
    let chis = map_sharded(&candidates, opts.workers, chromatic_number);
    if let Some(bad) = chis.iter().position(|&c| c >= spec.k) {
        return CaseVerdict::Undecided(format!(
            "host class contains a graph with chromatic number {}",
            chis[bad]
        ));
    }
    let hosts: Vec<Graph> = candidates
        .into_iter()
        .zip(chis)
        .filter(|&(_, c)| c == spec.k - 1)
        .map(|(g, _)| g)
        .collect();
    let out = extend_all(spec, &hosts, opts.workers).expect("spec validated by caller");
    debug_assert!(out.rejected_hosts.is_empty());
    if out.graphs.is_empty() {
        CaseVerdict::ClosedByRun { hosts: hosts.len() }
    } else {
        CaseVerdict::Witness {
            hosts: hosts.len(),
            graphs: out.graphs.into_iter().map(|e| e.graph).collect(),
        }
    }
}

/// Certifies the orders `1..=up_to` in turn. Each order shown empty is
/// recorded as a verified fact before the next one is attempted.
pub fn certify_up_to(
    k: usize,
    up_to: usize,
    girth: GirthMode,
    facts: &KnownFacts,
    opts: &CertificateOptions,
) -> Result<Vec<Certificate>, ExtendError> {
    let mut facts = facts.clone();
    let mut out = Vec::new();
    for n in 1..=up_to {
        let cert = lower_bound_certificate(k, n, girth, &facts, opts)?;
        if cert.verdict == CertificateVerdict::NoGraph && cert.assumptions().is_empty() {
            facts.push(Fact::NoGraphsUpTo {
                k,
                max_order: n,
                girth,
                source: FactSource::Verified(format!("certificate k={k} n={n}")),
            });
        }
        out.push(cert);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::chromatic_number;
    use crate::mtfgen::generate_mtf;

    fn hosts(k: usize, m: usize, max_deg: usize, girth: GirthMode) -> Vec<Graph> {
        generate_triangle_free(m, Some(max_deg), girth, 2)
            .into_iter()
            .filter(|g| chromatic_number(g) == k)
            .collect()
    }

    #[test]
    fn degree_bounds() {
        let got: Vec<usize> = (0..=8).map(min_max_degree).collect();
        assert_eq!(got, vec![0, 0, 1, 2, 4, 5, 6, 8, 9]);
        assert!(ExtensionSpec::new(4, 11, 3).validate().is_err());
        assert!(ExtensionSpec::new(7, 50, 7).validate().is_err());
        assert!(ExtensionSpec::new(7, 50, 8).validate().is_ok());
    }

    #[test]
    fn grotzsch_from_c5() {
        let spec = ExtensionSpec::new(4, 11, 5);
        let out = extend_all(&spec, &[Graph::cycle(5)], 1).unwrap();
        assert_eq!(out.graphs.len(), 1);
        assert_eq!(out.graphs[0].key, canonical_key(&Graph::grotzsch()));
        let g = &out.graphs[0].graph;
        assert_eq!(g.delete_closed_neighbourhood(10), Graph::cycle(5));
    }

    #[test]
    fn degenerate_degree_gives_nothing() {
        let spec = ExtensionSpec::new(4, 13, 13);
        let out = extend_all(&spec, &[Graph::cycle(5)], 1).unwrap();
        assert!(out.graphs.is_empty() && out.rejected_hosts.is_empty());
    }

    #[test]
    fn bad_hosts_are_reported() {
        let spec = ExtensionSpec::new(4, 11, 5);
        let out = extend_all(&spec, &[Graph::cycle(6), Graph::complete(3).delete_vertex(0), Graph::cycle(5)], 1).unwrap();
        assert_eq!(out.graphs.len(), 1);
        assert_eq!(out.rejected_hosts.len(), 2);
        assert!(matches!(out.rejected_hosts[0].1, HostRejection::Order { .. }));
    }

    #[test]
    fn forbidden_everywhere_exhausts() {
        // The only set {0} is used up by the first neighbour.
        let spec = ExtensionSpec::new(2, 4, 2).with_girth(GirthMode::AtLeastFive);
        let out = extend_all(&spec, &[Graph::new(1)], 1).unwrap();
        assert!(out.graphs.is_empty() && out.rejected_hosts.is_empty());
        let out = extend_all(&ExtensionSpec::new(2, 4, 2), &[Graph::new(1)], 1).unwrap();
        assert_eq!(out.keys(), vec![canonical_key(&Graph::cycle(4))]);
    }

    #[test]
    fn n3_certificates() {
        let certs = certify_up_to(3, 5, GirthMode::TriangleFree, &KnownFacts::new(), &CertificateOptions::default()).unwrap();
        assert!(certs[..4].iter().all(|c| c.verdict == CertificateVerdict::NoGraph));
        assert_eq!(certs[4].verdict, CertificateVerdict::WitnessFound);
        let w: Vec<CanonicalKey> = certs[4].witnesses().map(canonical_key).collect();
        assert_eq!(w, vec![canonical_key(&Graph::cycle(5))]);
    }

    #[test]
    fn pruning_does_not_change_output() {
        for n in 9..=12 {
            for d in 4..n {
                let spec = ExtensionSpec::new(4, n, d);
                let m = n - d - 1;
                let hs = hosts(3, m, d - 1, GirthMode::TriangleFree);
                let a = extend_all(&spec, &hs, 2).unwrap();
                let b = extend_all_reference(&spec, &hs, 2).unwrap();
                assert_eq!(a.keys(), b.keys(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn matches_mtf_generation_up_to_twelve() {
        for n in 8..=12 {
            let mut keys: Vec<CanonicalKey> = Vec::new();
            for d in 4..n {
                let spec = ExtensionSpec::new(4, n, d);
                let hs = hosts(3, n - d - 1, d - 1, GirthMode::TriangleFree);
                let out = extend_all(&spec, &hs, 2).unwrap();
                for e in &out.graphs {
                    assert_eq!(e.graph.max_degree(), d);
                    assert_eq!(e.graph.delete_closed_neighbourhood(n - 1), hs[e.host_index]);
                }
                keys.extend(out.keys());
            }
            keys.sort();
            let mut expected: Vec<CanonicalKey> = generate_mtf(n, 2)
                .iter()
                .filter(|g| chromatic_number(g) == 4)
                .map(canonical_key)
                .collect();
            expected.sort();
            assert_eq!(keys, expected, "n={n}");
        }
    }

    #[test]
    fn vertex_critical_mode_agrees_with_filter() {
        for d in 4..12 {
            let spec = ExtensionSpec::new(4, 12, d);
            let hs = hosts(3, 11 - d, d - 1, GirthMode::TriangleFree);
            let all = extend_all(&spec, &hs, 1).unwrap();
            let mut filtered: Vec<CanonicalKey> = all
                .graphs
                .iter()
                .filter(|e| vertex_critical_unchecked(&e.graph, 4))
                .map(|e| e.key.clone())
                .collect();
            filtered.sort();
            let vc = extend_all(&spec.with_vertex_critical_only(true), &hs, 1).unwrap();
            assert_eq!(vc.keys(), filtered, "d={d}");
        }
    }

    #[test]
    fn girth_five_extension() {
        // C5 is 3-chromatic of girth 5; the only neighbour sets are
        // singletons, so d = 5 disjoint singletons covers C5 fully.
        let spec = ExtensionSpec::new(4, 11, 5).with_girth(GirthMode::AtLeastFive);
        let out = extend_all(&spec, &[Graph::cycle(5)], 1).unwrap();
        for e in &out.graphs {
            assert!(e.graph.girth().unwrap() >= 5);
            assert_eq!(chromatic_number(&e.graph), 4);
        }
        // a 4-chromatic girth-5 graph needs 21 vertices
        assert!(out.graphs.is_empty());
    }

    #[test]
    fn girth_five_sets_are_disjoint() {
        let spec = ExtensionSpec::new(3, 10, 3).with_girth(GirthMode::AtLeastFive);
        let host = Graph::path(6);
        let mut state = AssignmentState::new(host, &spec);
        // only the exhaustive search itself is exercised; every output has
        // girth at least 5 and the neighbours' host sets are disjoint
        for g in connect_indep_sets(&mut state, &spec) {
            assert!(g.girth().is_none_or(|c| c >= 5));
            let sets: Vec<VertexSet> = (6..9).map(|x| g.neighbours(x) & VertexSet::full(6)).collect();
            for i in 0..3 {
                for j in 0..i {
                    assert!(!sets[i].intersects(sets[j]));
                }
            }
        }
    }

    #[test]
    fn n4_certificates() {
        let certs = certify_up_to(4, 11, GirthMode::TriangleFree, &KnownFacts::new(), &CertificateOptions::default()).unwrap();
        for c in &certs[..10] {
            assert_eq!(c.verdict, CertificateVerdict::NoGraph, "{}", c.render());
            assert!(c.cases.iter().all(|cs| matches!(cs.verdict, CaseVerdict::ClosedByRun { .. })));
        }
        assert_eq!(certs[10].verdict, CertificateVerdict::WitnessFound);
        let w: Vec<CanonicalKey> = certs[10].witnesses().map(canonical_key).collect();
        assert_eq!(w, vec![canonical_key(&Graph::grotzsch())]);
    }

    #[test]
    fn imported_facts_close_cases() {
        let facts = KnownFacts::literature();
        let opts = CertificateOptions {
            max_host_order: 6,
            workers: 1,
        };
        let c = lower_bound_certificate(6, 28, GirthMode::TriangleFree, &facts, &opts).unwrap();
        let d6 = c.cases.iter().find(|cs| cs.d == 6).unwrap();
        assert!(matches!(d6.verdict, CaseVerdict::ClosedByFact(ref f) if f.is_imported()));
        assert_eq!(c.verdict, CertificateVerdict::NoGraph);
        assert!(!c.assumptions().is_empty());
        let g5 = lower_bound_certificate(5, 27, GirthMode::AtLeastFive, &facts, &opts).unwrap();
        for cs in &g5.cases {
            if cs.d > 5 {
                assert!(cs.is_closed(), "{cs}");
            }
        }
        let d5 = g5.cases.iter().find(|cs| cs.d == 5).unwrap();
        assert!(matches!(d5.verdict, CaseVerdict::Undecided(_)));
        assert_eq!(g5.verdict, CertificateVerdict::Undecided);
    }

    #[test]
    fn facts_from_count_reports() {
        use crate::classify::GraphRecord;
        let report: CountReport = [GraphRecord::new(Graph::grotzsch())].iter().collect();
        let mut facts = KnownFacts::new();
        facts.add_count_report(4, GirthMode::TriangleFree, &report, "complete list");
        assert!(facts.no_exact_graphs_with_degree(4, 11, 4, GirthMode::TriangleFree).is_some());
        assert!(facts.no_exact_graphs_with_degree(4, 11, 5, GirthMode::TriangleFree).is_none());
        assert!(facts.no_exact_graphs_with_degree(4, 11, 4, GirthMode::AtLeastFive).is_some());
    }
}
