//! The graphs `H_{3n} = G_{3n} □ K_3`, verifiers for the structure of their
//! powers, the adversarial list assignments and their counting certificate,
//! and the end-to-end pipeline tying these together.
//!
//! Vertex `(y, c)` of `H_{3n}` has index `3 * rank(y) + c`, where `rank` is
//! the index of `y` in `G_{3n}`.

mod counting;
mod pipeline;
pub mod recheck;
mod structure;

pub use counting::{
    adversarial_list_size, block_graph, build_adversarial_lists, verify_counting_argument, AdversarialInstance,
    CountingCertificate, DirectSearch, Pigeonhole, BLOCK_SIZE,
};
pub use pipeline::{run_theorem_pipeline, GraphStats, PipelineOptions, TheoremReport};
pub use structure::{
    chi_certificate, composition_certificate, structure_certificate, verify_chi_of_h, verify_lexico_proposition,
    verify_power_composition, verify_power_composition_of, verify_structure_theorem, BlockLayout,
};

use thiserror::Error;

use crate::cayley::{build_cayley_capped, gamma_index, CayleyBundle, CayleyError, GroupVector};
use crate::coloring::ColoringError;
use crate::graph::{cartesian_product, make_complete, Graph, GraphError};

/// Default ceiling on the number of vertices of any constructed graph.
pub const DEFAULT_VERTEX_CAP: usize = 20_000;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("construction needs {vertices} vertices, above the capacity cap of {cap}")]
    Capacity { vertices: usize, cap: usize },
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("checkpoint {path}: {message}")]
    Checkpoint { path: String, message: String },
}

/// `3^e`, or `None` on overflow.
pub(crate) fn pow3(e: usize) -> Option<usize> {
    3usize.checked_pow(u32::try_from(e).ok()?)
}

/// `|V(H_{3n})| = 3^{3n}`, checked against `cap`.
pub(crate) fn h_vertex_count(n: usize, cap: usize) -> Result<usize, CertifyError> {
    if n == 0 {
        return Err(CertifyError::InvalidArgument("n must be positive".into()));
    }
    match pow3(3 * n) {
        Some(v) if v <= cap => Ok(v),
        Some(v) => Err(CertifyError::Capacity { vertices: v, cap }),
        None => Err(CertifyError::Capacity {
            vertices: usize::MAX,
            cap,
        }),
    }
}

/// `H_{3n}` together with the Cayley graph it was built from.
#[derive(Clone, Debug)]
pub struct HBundle {
    n: usize,
    cayley: CayleyBundle,
    graph: Graph,
}

impl HBundle {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cayley(&self) -> &CayleyBundle {
        &self.cayley
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex(&self, v: usize) -> (&GroupVector, usize) {
        (self.cayley.vertex(v / 3), v % 3)
    }

    pub fn index_of(&self, y: &GroupVector, c: usize) -> Option<usize> {
        if c >= 3 {
            return None;
        }
        self.cayley.index_of(y).map(|i| 3 * i + c)
    }

    pub fn label(&self, v: usize) -> String {
        let (y, c) = self.vertex(v);
        format!("{}:{c}", y.compact())
    }
}

/// Inverse of the vertex labels of [`build_h`]: `"102:1"` is
/// `((1,0,2), 1)`.
pub fn parse_h_label(label: &str) -> Option<(GroupVector, usize)> {
    let (y, c) = label.split_once(':')?;
    let coords = y.bytes().map(|b| b.checked_sub(b'0')).collect::<Option<Vec<u8>>>()?;
    let y = GroupVector::new(coords).ok()?;
    let c: usize = c.parse().ok()?;
    (c < 3).then_some((y, c))
}

pub fn build_h(n: usize) -> Result<HBundle, CertifyError> {
    build_h_capped(n, DEFAULT_VERTEX_CAP)
}

/// Builds `H_{3n}`, refusing graphs with more than `cap` vertices.
pub fn build_h_capped(n: usize, cap: usize) -> Result<HBundle, CertifyError> {
    h_vertex_count(n, cap)?;
    let cayley = build_cayley_capped(3 * n, 3 * n)?;
    let mut graph = cartesian_product(cayley.graph(), &make_complete(3)?);
    let labels = (0..graph.vertex_count())
        .map(|v| format!("{}:{}", cayley.vertex(v / 3).compact(), v % 3))
        .collect();
    graph.set_labels(labels)?;
    debug_assert!(cayley
        .vertices()
        .iter()
        .enumerate()
        .all(|(i, y)| gamma_index(y) == Some(i)));
    Ok(HBundle { n, cayley, graph })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h6_shape() {
        let h = build_h(2).unwrap();
        assert_eq!(h.graph().vertex_count(), 729);
        assert_eq!(h.graph().is_regular(), Some(32));
        let h3 = build_h(1).unwrap();
        assert_eq!(h3.graph().vertex_count(), 27);
    }

    #[test]
    fn labels_round_trip() {
        let h = build_h(2).unwrap();
        for v in [0, 1, 2, 100, 728] {
            let label = h.graph().label(v).unwrap();
            assert_eq!(label, h.label(v));
            let (y, c) = parse_h_label(label).unwrap();
            assert_eq!(h.index_of(&y, c), Some(v));
        }
        assert_eq!(parse_h_label("10:3"), None);
        assert_eq!(parse_h_label("1x:0"), None);
    }

    #[test]
    fn capacity_and_arguments() {
        assert!(matches!(build_h(0), Err(CertifyError::InvalidArgument(_))));
        assert!(matches!(
            build_h(4),
            Err(CertifyError::Capacity {
                vertices: 531441,
                cap: 20000
            })
        ));
        assert!(matches!(
            build_h_capped(2, 700),
            Err(CertifyError::Capacity {
                vertices: 729,
                cap: 700
            })
        ));
    }
}
