//! Dense unweighted directed graphs and vertex orderings.
//!
//! Vertices are `0..n`. Callers that need external names keep a
//! [`LabelTable`] next to the graph; the graph itself never sees labels.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Unweighted simple digraph stored as a row-major 0/1 adjacency matrix.
///
/// The diagonal is always zero and `n >= 2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    adj: Vec<u8>,
}

impl Digraph {
    /// Wraps a square 0/1 matrix with zero diagonal.
    pub fn from_adjacency<R: AsRef<[i64]>>(matrix: &[R]) -> Result<Self> {
        let n = matrix.len();
        for (row, r) in matrix.iter().enumerate() {
            let len = r.as_ref().len();
            if len != n {
                return Err(Error::NonSquare { row, len, n });
            }
        }
        if n < 2 {
            return Err(Error::TooSmall { min: 2, got: n });
        }
        let mut adj = vec![0u8; n * n];
        for (i, r) in matrix.iter().enumerate() {
            for (j, &value) in r.as_ref().iter().enumerate() {
                match value {
                    0 => {}
                    1 if i == j => return Err(Error::SelfLoop(i)),
                    1 => adj[i * n + j] = 1,
                    _ => return Err(Error::NonBinaryEntry { row: i, col: j, value }),
                }
            }
        }
        Ok(Self { n, adj })
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        check_n(n, 2)?;
        Ok(Self { n, adj: vec![0; n * n] })
    }

    /// Edges `i -> j` for every `i < j`.
    pub fn complete_dominance(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| i < j)
    }

    /// Edges `i -> i+1 (mod n)`.
    pub fn cycle(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| j == (i + 1) % n)
    }

    /// Every ordered pair of distinct vertices is an edge.
    pub fn complete(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    /// Builds a graph from an edge predicate; the predicate is never asked about `(i, i)`.
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_n(n, 2)?;
        let mut adj = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j && edge(i, j) {
                    adj[i * n + j] = 1;
                }
            }
        }
        Ok(Self { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j] != 0
    }

    #[inline]
    pub(crate) fn entry(&self, i: usize, j: usize) -> u8 {
        self.adj[i * self.n + j]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|&a| a as usize).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n * n)
            .filter(move |&k| self.adj[k] != 0)
            .map(move |k| (k / n, k % n))
    }

    /// Row sums of the adjacency matrix.
    pub fn out_degrees(&self) -> Vec<usize> {
        self.adj
            .chunks_exact(self.n)
            .map(|row| row.iter().map(|&a| a as usize).sum())
            .collect()
    }

    /// Copy of the graph with entry `(i, j)` flipped.
    pub fn toggle_edge(&self, i: usize, j: usize) -> Result<Self> {
        self.check_pair(i, j)?;
        let mut g = self.clone();
        g.adj[i * self.n + j] ^= 1;
        Ok(g)
    }

    /// Copy of the graph with edge `(i, j)` present or absent.
    pub fn with_edge(&self, i: usize, j: usize, present: bool) -> Result<Self> {
        self.check_pair(i, j)?;
        let mut g = self.clone();
        g.adj[i * self.n + j] = present as u8;
        Ok(g)
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        for index in [i, j] {
            if index >= self.n {
                return Err(Error::IndexOutOfRange { index, n: self.n });
            }
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        Ok(())
    }

    /// Every edge reversed (adjacency transpose).
    pub fn reversed(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.has_edge(j, i)).expect("n already validated")
    }

    /// Relabels vertices so that old vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        VertexOrdering::new(perm.to_vec())?.check_len(self.n)?;
        let mut adj = vec![0u8; self.n * self.n];
        for (i, j) in self.edges() {
            adj[perm[i] * self.n + perm[j]] = 1;
        }
        Ok(Self { n: self.n, adj })
    }

    /// Adjacency matrix as nested rows.
    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.adj
            .chunks_exact(self.n)
            .map(|row| row.iter().map(|&a| a as i64).collect())
            .collect()
    }

    /// Adjacency as a dense `f64` matrix, row-major.
    pub fn adjacency_f64(&self) -> Vec<f64> {
        self.adj.iter().map(|&a| a as f64).collect()
    }

    /// Parses the text format: a line with `n`, then `n` lines of `n`
    /// whitespace-separated 0/1 digits. Blank lines and `#` comments are skipped.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            lines.push(line.to_owned());
        }
        let (header, body) = lines
            .split_first()
            .ok_or_else(|| Error::GraphFormat("empty file".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::GraphFormat(format!("bad vertex count {header:?}")))?;
        if body.len() != n {
            return Err(Error::GraphFormat(format!(
                "expected {n} matrix rows, found {}",
                body.len()
            )));
        }
        let rows = body
            .iter()
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<i64>()
                            .map_err(|_| Error::GraphFormat(format!("bad entry {tok:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_adjacency(&rows)
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{}", self.n)?;
        for row in self.adj.chunks_exact(self.n) {
            let line: Vec<&str> = row.iter().map(|&a| if a != 0 { "1" } else { "0" }).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_text(std::io::BufReader::new(file))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_text(&mut w)?;
        w.flush()?;
        Ok(())
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Digraph(n={})", self.n)?;
        for row in self.adj.chunks_exact(self.n) {
            let line: String = row.iter().map(|&a| if a != 0 { '1' } else { '.' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::TooSmall { min, got: n })
    } else {
        Ok(())
    }
}

/// A ranking of the vertices: `order[p]` is the vertex at position `p`,
/// position 0 being the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexOrdering(Vec<usize>);

impl VertexOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidConfig(format!("vertex {v} appears twice in ordering")));
            }
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Bottom-to-top ordering.
    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: n, got: self.0.len() })
        }
    }
}

impl fmt::Display for VertexOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Stable mapping between caller-supplied labels and vertex indices.
///
/// Labels are sorted on construction so the same label set always maps to
/// the same indices regardless of input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTable {
    labels: Vec<String>,
}

impl LabelTable {
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        labels.dedup();
        Self { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The four-vertex example: edges 1->2, 1->3, 1->4, 3->2, 4->2 (1-indexed).
    pub(crate) fn example_graph() -> Digraph {
        Digraph::from_adjacency(&[
            [0, 1, 1, 1],
            [0, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 1, 0, 0],
        ])
        .unwrap()
    }

    #[test]
    fn from_adjacency_accepts_example() {
        let g = example_graph();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.out_degrees(), vec![3, 0, 1, 1]);
    }

    #[test]
    fn from_adjacency_errors() {
        assert_eq!(Digraph::from_adjacency(&[[0, 0], [0, 0]]).unwrap().edge_count(), 0);
        assert!(matches!(
            Digraph::from_adjacency(&[[0, 0, 0], [0, 1, 0], [0, 0, 0]]),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            Digraph::from_adjacency(&[vec![0, 1], vec![0]]),
            Err(Error::NonSquare { row: 1, .. })
        ));
        assert!(matches!(
            Digraph::from_adjacency(&[[0, 2], [0, 0]]),
            Err(Error::NonBinaryEntry { value: 2, .. })
        ));
        assert!(matches!(Digraph::from_adjacency(&[[0]]), Err(Error::TooSmall { .. })));
        assert!(matches!(
            Digraph::from_adjacency::<[i64; 0]>(&[]),
            Err(Error::TooSmall { .. })
        ));
    }

    #[test]
    fn complete_dominance_shape() {
        let g = Digraph::complete_dominance(4).unwrap();
        assert_eq!(
            g.to_rows(),
            vec![
                vec![0, 1, 1, 1],
                vec![0, 0, 1, 1],
                vec![0, 0, 0, 1],
                vec![0, 0, 0, 0]
            ]
        );
        assert_eq!(g.out_degrees(), vec![3, 2, 1, 0]);
        let g2 = Digraph::complete_dominance(2).unwrap();
        assert_eq!(g2.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        for n in 2..10 {
            assert_eq!(Digraph::complete_dominance(n).unwrap().edge_count(), n * (n - 1) / 2);
        }
        assert!(Digraph::complete_dominance(1).is_err());
    }

    #[test]
    fn dominance_reversal_is_dominance() {
        let n = 6;
        let g = Digraph::complete_dominance(n).unwrap();
        let rev: Vec<usize> = (0..n).map(|v| n - 1 - v).collect();
        assert_eq!(g.reversed().relabeled(&rev).unwrap(), g);
    }

    #[test]
    fn cycle_shape() {
        let c3 = Digraph::cycle(3).unwrap();
        assert_eq!(c3.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        let c2 = Digraph::cycle(2).unwrap();
        assert!(c2.has_edge(0, 1) && c2.has_edge(1, 0));
        assert_eq!(Digraph::cycle(5).unwrap().out_degrees(), vec![1; 5]);
    }

    #[test]
    fn toggle_edge_behaviour() {
        let g = Digraph::complete_dominance(4).unwrap();
        let h = g.toggle_edge(2, 3).unwrap();
        assert!(!h.has_edge(2, 3));
        assert_eq!(h.edge_count(), 5);
        assert!(g.has_edge(2, 3));
        assert_eq!(h.toggle_edge(2, 3).unwrap(), g);
        assert!(matches!(g.toggle_edge(1, 1), Err(Error::SelfLoop(1))));
        assert!(matches!(g.toggle_edge(0, 4), Err(Error::IndexOutOfRange { index: 4, .. })));
    }

    #[test]
    fn text_format_round_trip() {
        let g = example_graph();
        let mut buf = Vec::new();
        g.write_text(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "4\n0 1 1 1\n0 0 0 0\n0 1 0 0\n0 1 0 0\n");
        assert_eq!(Digraph::read_text(&buf[..]).unwrap(), g);
        assert!(Digraph::read_text("3\n0 1 0\n0 0 1\n".as_bytes()).is_err());
        assert!(Digraph::read_text("".as_bytes()).is_err());
    }

    #[test]
    fn ordering_validation() {
        assert!(VertexOrdering::new(vec![2, 0, 1]).is_ok());
        assert!(VertexOrdering::new(vec![0, 0, 1]).is_err());
        assert!(VertexOrdering::new(vec![0, 3, 1]).is_err());
        assert_eq!(VertexOrdering::new(vec![2, 0, 1]).unwrap().reversed().as_slice(), &[1, 0, 2]);
    }

    #[test]
    fn label_table_is_sorted_and_stable() {
        let a = LabelTable::new(["Wales", "Ireland", "England", "Wales"]);
        let b = LabelTable::new(["England", "Wales", "Ireland"]);
        assert_eq!(a, b);
        assert_eq!(a.index_of("Ireland"), Some(1));
        assert_eq!(a.label(2), Some("Wales"));
        assert_eq!(a.index_of("France"), None);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = Digraph> {
            (2usize..9).prop_flat_map(|n| {
                proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                    Digraph::from_fn(n, |i, j| bits[i * n + j]).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn rows_round_trip(g in arb_graph()) {
                prop_assert_eq!(Digraph::from_adjacency(&g.to_rows()).unwrap(), g);
            }

            #[test]
            fn degrees_sum_to_edges(g in arb_graph()) {
                prop_assert_eq!(g.out_degrees().iter().sum::<usize>(), g.edge_count());
            }

            #[test]
            fn toggle_changes_one_entry(g in arb_graph(), a in 0usize..8, b in 0usize..8) {
                let n = g.n();
                let (i, j) = (a % n, b % n);
                prop_assume!(i != j);
                let h = g.toggle_edge(i, j).unwrap();
                let diff = g.edge_count() as i64 - h.edge_count() as i64;
                prop_assert_eq!(diff.abs(), 1);
                let changed = (0..n)
                    .flat_map(|x| (0..n).map(move |y| (x, y)))
                    .filter(|&(x, y)| g.has_edge(x, y) != h.has_edge(x, y))
                    .count();
                prop_assert_eq!(changed, 1);
            }
        }
    }
}
