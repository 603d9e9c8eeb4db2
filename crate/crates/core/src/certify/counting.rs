//! The adversarial list assignment on `K_r[K_3 □ K_3]` and the counting
//! argument showing it admits no proper colouring when `5r > 3t/2`.
//!
//! The palette `A` is split into three ranges `A_1, A_2, A_3` of `t/2`
//! colours each. Stratum `R_i` is the set of vertices whose `K_3 □ K_3`
//! coordinate has first component `i`; every vertex of `R_i` gets the list
//! `A ∖ A_i`.

use std::ops::Range;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{pow3, CertifyError};
use crate::certificate::{Certificate, Status};
use crate::coloring::{
    list_feasible, min_distinct_coloring, min_distinct_colors_exhaustive, Color, ColorSet, ColoringError,
    ListAssignment,
};
use crate::graph::{cartesian_product, induced_subgraph, lexicographic_product, make_complete, Graph};

/// Vertices per block (`|V(K_3 □ K_3)|`).
pub const BLOCK_SIZE: usize = 9;

/// `K_3 □ K_3` with vertex `(u, v)` at index `3u + v`.
pub fn block_graph() -> Graph {
    let k3 = make_complete(3).expect("K_3 is nonempty");
    cartesian_product(&k3, &k3)
}

/// Largest even integer strictly below `(10/9) 3^{3n-1}`.
pub fn adversarial_list_size(n: usize) -> Option<usize> {
    if n == 0 {
        return None;
    }
    let numerator = pow3(3 * n - 1)?.checked_mul(10)?;
    let below = (numerator - 1) / 9;
    Some(below - below % 2)
}

#[derive(Clone, Debug)]
pub struct AdversarialInstance {
    pub r: usize,
    pub t: usize,
    pub palette_parts: [Range<Color>; 3],
    pub graph: Graph,
    pub lists: ListAssignment,
}

impl AdversarialInstance {
    pub fn block_of(&self, v: usize) -> usize {
        v / BLOCK_SIZE
    }

    /// Stratum index `0..3` of `v` (first coordinate inside its block).
    pub fn stratum_of(&self, v: usize) -> usize {
        (v % BLOCK_SIZE) / 3
    }

    pub fn block(&self, x: usize) -> Vec<usize> {
        (x * BLOCK_SIZE..(x + 1) * BLOCK_SIZE).collect()
    }

    pub fn stratum(&self, i: usize) -> Vec<usize> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.stratum_of(v) == i)
            .collect()
    }

    pub fn palette_size(&self) -> usize {
        3 * self.t / 2
    }
}

pub fn build_adversarial_lists(r: usize, t: usize) -> Result<AdversarialInstance, CertifyError> {
    if r == 0 {
        return Err(CertifyError::InvalidArgument("r must be positive".into()));
    }
    if t < 2 || t % 2 != 0 {
        return Err(CertifyError::InvalidArgument(format!(
            "list size t must be even and at least 2, got {t}"
        )));
    }
    let half = Color::try_from(t / 2).map_err(|_| CertifyError::InvalidArgument(format!("list size {t} too large")))?;
    let palette_parts = [0..half, half..2 * half, 2 * half..3 * half];
    let pool: Vec<ColorSet> = (0..3)
        .map(|i| {
            ColorSet::new(
                palette_parts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .flat_map(|(_, range)| range.clone()),
            )
        })
        .collect();
    let n = r
        .checked_mul(BLOCK_SIZE)
        .ok_or_else(|| CertifyError::InvalidArgument("r too large".into()))?;
    let list_of = (0..n).map(|v| (v % BLOCK_SIZE) / 3).collect();
    let lists = ListAssignment::from_pool(pool, list_of)?;
    let graph = lexicographic_product(&make_complete(r)?, &block_graph());
    Ok(AdversarialInstance {
        r,
        t,
        palette_parts,
        graph,
        lists,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pigeonhole {
    pub needed: usize,
    pub available: usize,
}

/// Outcome of the direct list-colouring search on small instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectSearch {
    pub feasible: bool,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingCertificate {
    pub r: usize,
    pub t: usize,
    /// Every independent triple of `K_3 □ K_3` meets all three strata.
    pub triple_span_checked: bool,
    /// The three stratum lists have empty common intersection.
    pub empty_intersection_checked: bool,
    /// Largest independent set of `K_3 □ K_3`.
    pub block_independence_number: usize,
    /// Lower bound on colours per block following from the two facts above.
    pub derived_block_bound: usize,
    /// Exact minimum number of distinct colours in a list colouring of one
    /// block; `None` when a block admits no list colouring at all.
    pub per_block_min_colors: Option<usize>,
    /// Vertices in different blocks are all adjacent, so block colour sets
    /// are pairwise disjoint.
    pub cross_block_disjointness_checked: bool,
    pub pigeonhole: Pigeonhole,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direct_search: Option<DirectSearch>,
    /// A block colouring attaining `per_block_min_colors`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_coloring: Option<Vec<Color>>,
    pub conclusion: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CountingCertificate {
    /// `t + 1` when the instance is certified infeasible.
    pub fn chi_l_lower_bound(&self) -> Option<usize> {
        (self.conclusion == Status::InfeasibleCertified).then_some(self.t + 1)
    }

    pub fn to_certificate(&self) -> Certificate {
        let mut cert = Certificate::new("counting_argument")
            .param("r", self.r)
            .param("t", self.t);
        cert.status = self.conclusion;
        cert.stat("triple_span_checked", self.triple_span_checked);
        cert.stat("empty_intersection_checked", self.empty_intersection_checked);
        cert.stat("block_independence_number", self.block_independence_number);
        cert.stat("derived_block_bound", self.derived_block_bound);
        cert.stat("per_block_min_colors", json!(self.per_block_min_colors));
        cert.stat(
            "cross_block_disjointness_checked",
            self.cross_block_disjointness_checked,
        );
        cert.stat("pigeonhole", json!(self.pigeonhole));
        if let Some(d) = self.direct_search {
            cert.stat("direct_search", json!(d));
        }
        if let Some(bound) = self.chi_l_lower_bound() {
            cert.stat("chi_l_lower_bound", bound);
        }
        if let Some(c) = &self.block_coloring {
            cert.witness = Some(json!({ "block_coloring": c }));
        }
        cert.notes = self.notes.clone();
        cert
    }
}

/// Largest direct-search instance: blocks and list size.
const DIRECT_MAX_R: usize = 2;
const DIRECT_MAX_T: usize = 8;

fn is_h_block_count(r: usize) -> bool {
    (1..)
        .map_while(|n| pow3(3 * n - 2))
        .take_while(|&p| p <= r)
        .any(|p| p == r)
}

fn check_well_formed(inst: &AdversarialInstance, pattern: &Graph) -> Result<(), CertifyError> {
    let total = inst.r * BLOCK_SIZE;
    let malformed = |m: String| Err(CertifyError::Malformed(m));
    if inst.graph.vertex_count() != total || inst.lists.vertex_count() != total {
        return malformed(format!(
            "expected {total} vertices, graph has {} and lists cover {}",
            inst.graph.vertex_count(),
            inst.lists.vertex_count()
        ));
    }
    if inst.t % 2 != 0 {
        return malformed(format!("odd list size {}", inst.t));
    }
    for v in 0..total {
        if inst.lists.list(v).len() != inst.t {
            return malformed(format!("vertex {v} has {} colours", inst.lists.list(v).len()));
        }
        if inst.lists.list(v) != inst.lists.list(inst.stratum_of(v) * 3) {
            return malformed(format!("list of vertex {v} differs from its stratum"));
        }
    }
    if inst.lists.palette().len() != inst.palette_size() {
        return malformed(format!(
            "palette has {} colours, expected {}",
            inst.lists.palette().len(),
            inst.palette_size()
        ));
    }
    for x in 0..inst.r {
        if induced_subgraph(&inst.graph, &inst.block(x))? != *pattern {
            return malformed(format!("block {x} does not induce K3 box K3"));
        }
    }
    Ok(())
}

/// Verifies the counting argument as a chain of finite checks:
///
/// 1. every independent triple of the block meets all three strata;
/// 2. the three stratum lists have no common colour;
/// 3. hence a colour class inside a block has at most two vertices, and a
///    block needs at least `⌈9/2⌉ = 5` colours (confirmed by the exact
///    minimum-distinct-colours oracle, and by plain enumeration for `t <= 8`);
/// 4. all cross-block pairs are adjacent, so blocks use disjoint colours;
/// 5. `5r > 3t/2` then exhausts the palette.
///
/// For `r <= 2, t <= 8` the whole instance is also searched directly; a
/// feasible outcome contradicting the chain yields FAILED.
pub fn verify_counting_argument(inst: &AdversarialInstance) -> Result<CountingCertificate, CertifyError> {
    let pattern = block_graph();
    check_well_formed(inst, &pattern)?;
    let mut notes = Vec::new();
    if !is_h_block_count(inst.r) {
        notes.push(format!(
            "r = {} is not of the form 3^(3n-2); no H_{{3n}} power has this many blocks, so the instance stands on its own",
            inst.r
        ));
    }

    let strata: Vec<usize> = (0..BLOCK_SIZE).map(|v| inst.stratum_of(v)).collect();
    let mut triple_span = true;
    let mut alpha = 0;
    for set in 1u32..(1 << BLOCK_SIZE) {
        let members: Vec<usize> = (0..BLOCK_SIZE).filter(|&v| set >> v & 1 == 1).collect();
        let independent = members
            .iter()
            .all(|&u| members.iter().all(|&v| !pattern.has_edge(u, v)));
        if !independent {
            continue;
        }
        alpha = alpha.max(members.len());
        if members.len() == 3 {
            let mut hit = [false; 3];
            for &v in &members {
                hit[strata[v]] = true;
            }
            triple_span &= hit.iter().all(|&h| h);
        }
    }

    let stratum_lists: Vec<&ColorSet> = (0..3).map(|i| inst.lists.list(3 * i)).collect();
    let empty_intersection = stratum_lists[0]
        .intersection(stratum_lists[1])
        .intersection(stratum_lists[2])
        .is_empty();

    let max_class = if triple_span && empty_intersection {
        alpha.min(2)
    } else {
        alpha
    };
    let derived = BLOCK_SIZE.div_ceil(max_class.max(1));

    let block0 = inst.block(0);
    let block_lists = inst.lists.restrict(&block0);
    let mut conclusion_failed = false;
    let (per_block, block_coloring) = match min_distinct_coloring(&pattern, &block_lists) {
        Ok(c) => (Some(c.distinct_colors()), Some(c.0)),
        Err(ColoringError::Infeasible) => {
            notes.push("a single block admits no list colouring".into());
            (None, None)
        }
        Err(e) => return Err(e.into()),
    };
    if inst.t <= DIRECT_MAX_T {
        let exhaustive = match min_distinct_colors_exhaustive(&pattern, &block_lists) {
            Ok(m) => Some(m),
            Err(ColoringError::Infeasible) => None,
            Err(e) => return Err(e.into()),
        };
        if exhaustive != per_block {
            notes.push(format!(
                "block oracles disagree: quotiented {per_block:?}, direct {exhaustive:?}"
            ));
            conclusion_failed = true;
        }
    }
    if per_block.is_some_and(|m| m < derived) {
        notes.push(format!(
            "block needs only {} colours, below the derived bound {derived}",
            per_block.unwrap_or(0)
        ));
        conclusion_failed = true;
    }

    let total = inst.graph.vertex_count();
    let cross_block = (0..total).all(|u| {
        let x = inst.block_of(u);
        inst.graph.non_neighbors(u).all(|v| inst.block_of(v) == x)
    });

    let pigeonhole = Pigeonhole {
        needed: derived * inst.r,
        available: inst.lists.palette().len(),
    };
    let chain_holds = triple_span && empty_intersection && cross_block;
    let mut conclusion = if per_block.is_none() || (chain_holds && pigeonhole.needed > pigeonhole.available) {
        Status::InfeasibleCertified
    } else {
        Status::Inconclusive
    };
    if conclusion == Status::Inconclusive && chain_holds {
        notes.push(format!(
            "pigeonhole premise fails ({} <= {}); no feasibility claim is made",
            pigeonhole.needed, pigeonhole.available
        ));
    }

    let direct_search = if inst.r <= DIRECT_MAX_R && inst.t <= DIRECT_MAX_T {
        let outcome = list_feasible(&inst.graph, &inst.lists)?;
        if outcome.is_feasible() && conclusion == Status::InfeasibleCertified {
            notes.push("direct search found a list colouring the chain rules out".into());
            conclusion_failed = true;
        }
        Some(DirectSearch {
            feasible: outcome.is_feasible(),
            nodes: outcome.nodes,
        })
    } else {
        None
    };
    if conclusion_failed {
        conclusion = Status::Failed;
    }

    Ok(CountingCertificate {
        r: inst.r,
        t: inst.t,
        triple_span_checked: triple_span,
        empty_intersection_checked: empty_intersection,
        block_independence_number: alpha,
        derived_block_bound: derived,
        per_block_min_colors: per_block,
        cross_block_disjointness_checked: cross_block,
        pigeonhole,
        direct_search,
        block_coloring,
        conclusion,
        notes,
    })
}

/// Timed wrapper used by the pipeline and the command line.
pub(crate) fn counting_stage(r: usize, t: usize) -> Result<(CountingCertificate, Certificate), CertifyError> {
    let start = Instant::now();
    let inst = build_adversarial_lists(r, t)?;
    let counting = verify_counting_argument(&inst)?;
    let cert = counting.to_certificate().timed(start);
    Ok((counting, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_sizes_for_small_n() {
        assert_eq!(adversarial_list_size(1), Some(8));
        assert_eq!(adversarial_list_size(2), Some(268));
        assert_eq!(adversarial_list_size(3), Some(7288));
        assert_eq!(adversarial_list_size(0), None);
    }

    #[test]
    fn instance_shape() {
        let inst = build_adversarial_lists(81, 268).unwrap();
        assert_eq!(inst.palette_size(), 402);
        assert_eq!(inst.lists.palette().len(), 402);
        assert_eq!(inst.lists.min_list_len(), Some(268));
        assert_eq!(inst.graph.vertex_count(), 729);
        let inst = build_adversarial_lists(1, 4).unwrap();
        assert_eq!(inst.graph.vertex_count(), 9);
        assert_eq!(inst.lists.palette().len(), 6);
        assert!(build_adversarial_lists(2, 5).is_err());
        assert!(build_adversarial_lists(0, 4).is_err());
    }

    #[test]
    fn strata_are_cliques_covering_everything() {
        let inst = build_adversarial_lists(3, 6).unwrap();
        let mut covered = 0;
        for i in 0..3 {
            let s = inst.stratum(i);
            covered += s.len();
            for &u in &s {
                for &v in &s {
                    assert!(u == v || inst.graph.has_edge(u, v));
                }
            }
        }
        assert_eq!(covered, 27);
    }

    #[test]
    fn full_scale_instance_is_certified() {
        let c = verify_counting_argument(&build_adversarial_lists(81, 268).unwrap()).unwrap();
        assert_eq!(c.conclusion, Status::InfeasibleCertified);
        assert_eq!(
            c.pigeonhole,
            Pigeonhole {
                needed: 405,
                available: 402
            }
        );
        assert_eq!(c.per_block_min_colors, Some(5));
        assert_eq!(c.chi_l_lower_bound(), Some(269));
        assert!(c.notes.is_empty());
    }

    #[test]
    fn boundary_cases() {
        let c = verify_counting_argument(&build_adversarial_lists(1, 4).unwrap()).unwrap();
        assert_eq!(c.conclusion, Status::Inconclusive);
        assert_eq!(c.direct_search.map(|d| d.feasible), Some(true));
        let c = verify_counting_argument(&build_adversarial_lists(2, 6).unwrap()).unwrap();
        assert_eq!(c.conclusion, Status::InfeasibleCertified);
        assert_eq!(c.direct_search.map(|d| d.feasible), Some(false));
        assert!(c.notes.iter().any(|n| n.contains("stands on its own")));
        // t = 2: each stratum is a triangle with two colours
        let c = verify_counting_argument(&build_adversarial_lists(1, 2).unwrap()).unwrap();
        assert_eq!(c.conclusion, Status::InfeasibleCertified);
        assert_eq!(c.per_block_min_colors, None);
    }

    #[test]
    fn malformed_instances_are_rejected() {
        let mut inst = build_adversarial_lists(2, 4).unwrap();
        inst.graph = Graph::new(18);
        assert!(matches!(
            verify_counting_argument(&inst),
            Err(CertifyError::Malformed(_))
        ));
        let mut inst = build_adversarial_lists(2, 4).unwrap();
        inst.lists = ListAssignment::uniform(18, 0..4);
        assert!(matches!(
            verify_counting_argument(&inst),
            Err(CertifyError::Malformed(_))
        ));
    }

    #[test]
    fn h_block_counts() {
        assert!(is_h_block_count(3));
        assert!(is_h_block_count(81));
        assert!(is_h_block_count(2187));
        assert!(!is_h_block_count(2));
        assert!(!is_h_block_count(9));
    }
}
