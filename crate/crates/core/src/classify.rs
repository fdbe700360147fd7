//! Per-graph classification and per-order count tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::canon::automorphism_group_order;
use crate::color::{chromatic_number, edge_critical_unchecked, vertex_critical_unchecked};
use crate::graph::Graph;
use crate::par::map_sharded;

/// A graph together with its computed invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphRecord {
    pub graph: Graph,
    pub chi: usize,
    pub max_deg: usize,
    pub min_deg: usize,
    /// `None` for forests.
    pub girth: Option<usize>,
    pub is_mtf: bool,
    pub is_vertex_critical: bool,
    /// Only ever set together with `is_vertex_critical`.
    pub is_critical: bool,
    pub is_regular: bool,
    pub aut_order: BigUint,
}

impl GraphRecord {
    pub fn new(graph: Graph) -> GraphRecord {
        let chi = chromatic_number(&graph);
        Self::with_chi(graph, chi)
    }

    fn with_chi(graph: Graph, chi: usize) -> GraphRecord {
        let is_vertex_critical = chi > 0 && vertex_critical_unchecked(&graph, chi);
        let is_critical = is_vertex_critical && edge_critical_unchecked(&graph, chi);
        GraphRecord {
            chi,
            max_deg: graph.max_degree(),
            min_deg: graph.min_degree(),
            girth: graph.girth(),
            is_mtf: graph.is_mtf(),
            is_vertex_critical,
            is_critical,
            is_regular: graph.is_regular(),
            aut_order: automorphism_group_order(&graph),
            graph,
        }
    }
}

/// Why an input graph was left out of a classification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyIssue {
    ContainsTriangle { index: usize },
    WrongChromaticNumber { index: usize, expected: usize, actual: usize },
}

impl std::fmt::Display for ClassifyIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassifyIssue::ContainsTriangle { index } => {
                write!(f, "input {index}: contains a triangle")
            }
            ClassifyIssue::WrongChromaticNumber { index, expected, actual } => {
                write!(f, "input {index}: chromatic number {actual}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Classified {
    pub records: Vec<GraphRecord>,
    pub issues: Vec<ClassifyIssue>,
}

/// Classifies every triangle-free k-chromatic input; anything else is
/// reported in `issues` and skipped. Records keep the input order.
pub fn classify_stream(graphs: &[Graph], k: usize, workers: usize) -> Classified {
    let results = map_sharded(graphs, workers, |g| {
        if !g.is_triangle_free() {
            return Err(None);
        }
        let chi = chromatic_number(g);
        if chi != k {
            return Err(Some(chi));
        }
        Ok(GraphRecord::with_chi(g.clone(), chi))
    });
    let mut out = Classified::default();
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(rec) => out.records.push(rec),
            Err(None) => out.issues.push(ClassifyIssue::ContainsTriangle { index }),
            Err(Some(actual)) => out.issues.push(ClassifyIssue::WrongChromaticNumber {
                index,
                expected: k,
                actual,
            }),
        }
    }
    out
}

/// Tallies for one order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: usize,
    pub by_max_degree: BTreeMap<usize, usize>,
    pub total: usize,
    pub vertex_critical: usize,
    pub critical: usize,
    pub mtf: usize,
    pub regular: usize,
}

impl CountRow {
    fn add(&mut self, r: &GraphRecord) {
        *self.by_max_degree.entry(r.max_deg).or_default() += 1;
        self.total += 1;
        self.vertex_critical += r.is_vertex_critical as usize;
        self.critical += r.is_critical as usize;
        self.mtf += r.is_mtf as usize;
        self.regular += r.is_regular as usize;
    }

    fn merge(&mut self, other: &CountRow) {
        for (&d, &c) in &other.by_max_degree {
            *self.by_max_degree.entry(d).or_default() += c;
        }
        self.total += other.total;
        self.vertex_critical += other.vertex_critical;
        self.critical += other.critical;
        self.mtf += other.mtf;
        self.regular += other.regular;
    }

    pub fn count_with_max_degree(&self, d: usize) -> usize {
        self.by_max_degree.get(&d).copied().unwrap_or(0)
    }

    /// Smallest maximum degree present in the row.
    pub fn min_max_degree(&self) -> Option<usize> {
        self.by_max_degree.iter().find(|(_, &c)| c > 0).map(|(&d, _)| d)
    }

    pub fn is_consistent(&self) -> bool {
        self.by_max_degree.values().sum::<usize>() == self.total
            && self.critical <= self.vertex_critical
            && self.vertex_critical <= self.total
            && self.mtf <= self.total
            && self.regular <= self.total
    }
}

/// Count rows keyed by order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountReport {
    rows: BTreeMap<usize, CountRow>,
}

impl CountReport {
    pub fn new() -> CountReport {
        CountReport::default()
    }

    pub fn add(&mut self, r: &GraphRecord) {
        let n = r.graph.order();
        self.rows
            .entry(n)
            .or_insert_with(|| CountRow { n, ..CountRow::default() })
            .add(r);
    }

    /// Adds an order with no graphs, so it shows up as a zero row.
    pub fn add_empty_row(&mut self, n: usize) {
        self.rows.entry(n).or_insert_with(|| CountRow { n, ..CountRow::default() });
    }

    pub fn merge(&mut self, other: &CountReport) {
        for (&n, row) in &other.rows {
            self.rows
                .entry(n)
                .or_insert_with(|| CountRow { n, ..CountRow::default() })
                .merge(row);
        }
    }

    pub fn row(&self, n: usize) -> Option<&CountRow> {
        self.rows.get(&n)
    }

    pub fn rows(&self) -> impl Iterator<Item = &CountRow> {
        self.rows.values()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_consistent(&self) -> bool {
        self.rows.values().all(CountRow::is_consistent)
    }

    /// Counts by maximum degree, one column per degree seen anywhere in the
    /// report, then the row total.
    pub fn render_degree_table(&self) -> String {
        let degrees: Vec<usize> = {
            let mut all: Vec<usize> = self
                .rows
                .values()
                .flat_map(|r| r.by_max_degree.keys().copied())
                .collect();
            all.sort_unstable();
            all.dedup();
            all
        };
        let mut header = vec!["n".to_string()];
        header.extend(degrees.iter().map(|d| format!("D={d}")));
        header.push("total".into());
        let body = self.rows.values().map(|r| {
            let mut cells = vec![r.n.to_string()];
            cells.extend(degrees.iter().map(|&d| r.count_with_max_degree(d).to_string()));
            cells.push(r.total.to_string());
            cells
        });
        render_aligned(header, body.collect())
    }

    /// Counts of all, vertex-critical, critical and mtf graphs per order.
    pub fn render_class_table(&self) -> String {
        let header = ["n", "all", "vcrit", "crit", "mtf"].map(String::from).to_vec();
        let body = self
            .rows
            .values()
            .map(|r| {
                [r.n, r.total, r.vertex_critical, r.critical, r.mtf]
                    .map(|x| x.to_string())
                    .to_vec()
            })
            .collect();
        render_aligned(header, body)
    }

    /// Inverse of [`CountReport::to_json_lines`]; rows for the same order
    /// are merged.
    pub fn from_json_lines(text: &str) -> Result<CountReport, serde_json::Error> {
        let mut report = CountReport::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let row: CountRow = serde_json::from_str(line)?;
            report.add_empty_row(row.n);
            report.rows.get_mut(&row.n).expect("row inserted").merge(&row);
        }
        Ok(report)
    }

    /// One JSON object per row.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for row in self.rows.values() {
            out.push_str(&serde_json::to_string(row).expect("rows serialise"));
            out.push('\n');
        }
        out
    }
}

impl<'a> FromIterator<&'a GraphRecord> for CountReport {
    fn from_iter<I: IntoIterator<Item = &'a GraphRecord>>(iter: I) -> Self {
        let mut report = CountReport::new();
        for r in iter {
            report.add(r);
        }
        report
    }
}

fn render_aligned(header: Vec<String>, body: Vec<Vec<String>>) -> String {
    let cols = header.len();
    let mut widths = vec![0; cols];
    for row in std::iter::once(&header).chain(&body) {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&body) {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join("  "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grotzsch_record() {
        let r = GraphRecord::new(Graph::grotzsch());
        assert_eq!(r.chi, 4);
        assert_eq!((r.max_deg, r.min_deg), (5, 3));
        assert_eq!(r.girth, Some(4));
        assert!(r.is_mtf && r.is_vertex_critical && r.is_critical && !r.is_regular);
        assert_eq!(r.aut_order, BigUint::from(10u32));
    }

    #[test]
    fn non_critical_padding() {
        let g = Graph::grotzsch().with_new_vertex(crate::bitset::VertexSet::EMPTY);
        let r = GraphRecord::new(g);
        assert!(!r.is_vertex_critical && !r.is_critical && !r.is_mtf);
        assert_eq!(r.girth, Some(4));
    }

    #[test]
    fn stream_flags_mismatches() {
        let inputs = vec![Graph::cycle(5), Graph::complete(3), Graph::cycle(6)];
        let c = classify_stream(&inputs, 3, 2);
        assert_eq!(c.records.len(), 1);
        assert_eq!(
            c.issues,
            vec![
                ClassifyIssue::ContainsTriangle { index: 1 },
                ClassifyIssue::WrongChromaticNumber { index: 2, expected: 3, actual: 2 },
            ]
        );
        let report: CountReport = c.records.iter().collect();
        let row = report.row(5).unwrap();
        assert_eq!(row.by_max_degree, BTreeMap::from([(2, 1)]));
        assert_eq!((row.total, row.vertex_critical, row.critical, row.mtf, row.regular), (1, 1, 1, 1, 1));
        assert!(classify_stream(&[], 4, 3).records.is_empty());
        assert!(CountReport::new().is_empty());
    }

    #[test]
    fn merge_is_order_free() {
        let a: Vec<GraphRecord> = [Graph::cycle(5), Graph::cycle(7), Graph::cycle(9)]
            .into_iter()
            .map(GraphRecord::new)
            .collect();
        let whole: CountReport = a.iter().collect();
        let mut left: CountReport = a[..1].iter().collect();
        let right: CountReport = a[1..].iter().rev().collect();
        left.merge(&right);
        assert_eq!(left, whole);
        assert!(whole.is_consistent());
    }

    #[test]
    fn rendering() {
        let report: CountReport = [GraphRecord::new(Graph::cycle(5))].iter().collect();
        assert_eq!(
            report.render_class_table(),
            "n  all  vcrit  crit  mtf\n5    1      1     1    1\n"
        );
        assert_eq!(report.render_degree_table(), "n  D=2  total\n5    1      1\n");
        assert_eq!(CountReport::from_json_lines(&report.to_json_lines()).unwrap(), report);
        assert_eq!(
            report.to_json_lines(),
            "{\"n\":5,\"by_max_degree\":{\"2\":1},\"total\":1,\"vertex_critical\":1,\"critical\":1,\"mtf\":1,\"regular\":1}\n"
        );
    }
}
