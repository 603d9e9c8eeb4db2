//! Undirected simple graphs with bit-packed adjacency rows.
//!
//! Every row holds `ceil(n / 64)` words; bit `v` of row `u` is set iff `uv`
//! is an edge. Rows are kept symmetric and loop-free by every constructor in
//! this crate, so word-parallel operations (powers, products, equality under
//! a bijection) can work on whole rows at once.

mod build;
mod distance;
pub mod io;
mod iso;
mod power;
mod product;

pub use build::{make_complete, make_complete_multipartite, make_cycle, make_empty, make_path};
pub use distance::{all_pairs_distances, bfs_distances, diameter, DistanceMatrix};
pub use io::{detect_format, export_graph, import_graph, Format};
pub use iso::{first_mismatch, induced_subgraph, is_same_labeled};
pub use power::{graph_power, graph_power_bfs};
pub use product::{cartesian_product, lexicographic_product};

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Iterates the indices of the set bits in a packed row.
pub(crate) fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &word)| {
        let mut w = word;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + b)
            }
        })
    })
}

#[inline]
pub(crate) fn popcount(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// Sets bits `start..start + len` of a packed row.
pub(crate) fn set_range(row: &mut [u64], start: usize, len: usize) {
    let end = start + len;
    let mut i = start;
    while i < end {
        let wi = i / WORD_BITS;
        let bit = i % WORD_BITS;
        let take = (WORD_BITS - bit).min(end - i);
        let mask = if take == WORD_BITS {
            u64::MAX
        } else {
            ((1u64 << take) - 1) << bit
        };
        row[wi] |= mask;
        i += take;
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("a complete graph needs at least one vertex")]
    EmptyGraph,
    #[error("argument `{0}` must be positive")]
    ZeroArgument(&'static str),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("labels must be total and distinct: {0}")]
    BadLabels(String),
    #[error("graph power exponent must be at least 1")]
    ZeroPower,
    #[error("malformed bijection: {0}")]
    BadBijection(String),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("graph has {n} vertices, above the capacity cap of {cap}")]
    Capacity { n: usize, cap: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{0} cannot encode a graph with {1} vertices")]
    Unencodable(&'static str, usize),
}

/// An undirected simple graph on vertices `0..vertex_count`.
///
/// Equality (`==`) compares vertex count and adjacency only; labels are
/// descriptive metadata and do not participate.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            labels: None,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        let words = words_for(n);
        debug_assert_eq!(rows.len(), n * words);
        let g = Graph {
            n,
            words,
            rows,
            labels: None,
        };
        debug_assert_eq!(g.check_invariants(), Ok(()));
        g
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn edge_count(&self) -> usize {
        popcount(&self.rows) / 2
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, v: usize) -> &mut [u64] {
        &mut self.rows[v * self.words..(v + 1) * self.words]
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.rows[u * self.words + v / WORD_BITS] >> (v % WORD_BITS)) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.set_edge(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        let w = self.words;
        self.rows[u * w + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.rows[v * w + u / WORD_BITS] |= 1 << (u % WORD_BITS);
    }

    pub fn degree(&self, v: usize) -> usize {
        popcount(self.row(v))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Vertices other than `v` not adjacent to `v`, ascending.
    pub fn non_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.row(v)
            .iter()
            .enumerate()
            .flat_map(move |(wi, &word)| {
                let valid = if (wi + 1) * WORD_BITS <= n {
                    u64::MAX
                } else {
                    (1u64 << (n % WORD_BITS)) - 1
                };
                let mut w = !word & valid;
                std::iter::from_fn(move || {
                    if w == 0 {
                        None
                    } else {
                        let b = w.trailing_zeros() as usize;
                        w &= w - 1;
                        Some(wi * WORD_BITS + b)
                    }
                })
            })
            .filter(move |&u| u != v)
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<(), GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::BadLabels(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::BadLabels(format!("duplicate label {l:?}")));
            }
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        self.set_labels(labels)?;
        Ok(self)
    }

    pub fn clear_labels(&mut self) {
        self.labels = None;
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for v in 0..self.n {
            let src = self.row(v).to_vec();
            let dst = g.row_mut(v);
            set_range(dst, 0, self.n);
            for (d, s) in dst.iter_mut().zip(src) {
                *d &= !s;
            }
            dst[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        }
        g
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Checks symmetry, absence of loops and that no bit beyond `n` is set.
    pub fn check_invariants(&self) -> Result<(), GraphError> {
        for u in 0..self.n {
            if self.has_edge(u, u) {
                return Err(GraphError::SelfLoop(u));
            }
            let row = self.row(u);
            if let Some(last) = row.last() {
                let tail = self.n % WORD_BITS;
                if tail != 0 && last >> tail != 0 {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: self.words * WORD_BITS - 1,
                        n: self.n,
                    });
                }
            }
            for v in iter_bits(row) {
                if !self.has_edge(v, u) {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(())
    }

    pub fn ensure_capacity(&self, cap: usize) -> Result<(), GraphError> {
        if self.n > cap {
            Err(GraphError::Capacity { n: self.n, cap })
        } else {
            Ok(())
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.n)
            .field("edges", &self.edge_count())
            .field("labeled", &self.labels.is_some())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_range_crosses_words() {
        let mut row = vec![0u64; 3];
        set_range(&mut row, 60, 70);
        assert_eq!(popcount(&row), 70);
        assert_eq!(iter_bits(&row).next(), Some(60));
        assert_eq!(iter_bits(&row).last(), Some(129));
    }

    #[test]
    fn add_edge_rejects_loops_and_range() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert_eq!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
        g.add_edge(0, 2).unwrap();
        assert!(g.has_edge(2, 0));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.check_invariants(), Ok(()));
    }

    #[test]
    fn labels_must_be_distinct_and_total() {
        let g = Graph::new(2);
        assert!(g.clone().with_labels(vec!["a".into()]).is_err());
        assert!(g.clone().with_labels(vec!["a".into(), "a".into()]).is_err());
        let g = g.with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(g.label(1), Some("b"));
    }

    #[test]
    fn non_neighbors_respect_word_tail() {
        let mut g = Graph::new(70);
        g.add_edge(0, 69).unwrap();
        g.add_edge(0, 1).unwrap();
        let non: Vec<usize> = g.non_neighbors(0).collect();
        assert_eq!(non.len(), 67);
        assert_eq!(non.first(), Some(&2));
        assert_eq!(non.last(), Some(&68));
        assert_eq!(make_complete(5).unwrap().non_neighbors(3).count(), 0);
    }

    #[test]
    fn complement_of_triangle_is_empty() {
        let k3 = make_complete(3).unwrap();
        assert_eq!(k3.complement().edge_count(), 0);
        assert_eq!(k3.complement().complement(), k3);
    }

    #[test]
    fn equality_ignores_labels() {
        let a = make_path(3).unwrap();
        let b = a.clone().with_labels(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        assert_eq!(a, b);
    }
}
