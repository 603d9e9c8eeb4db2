//! Search for list assignments that admit no proper colouring.
//!
//! Feasibility of a list assignment is invariant under renaming colours, so it
//! suffices to enumerate one representative per renaming class. Vertices are
//! visited in a fixed order and colours are named by first appearance: the
//! list of each vertex is some subset of the colours already named plus a
//! block of the next `f` fresh names. A `t`-list assignment on `n` vertices
//! names at most `t * n` colours, so capping the universe there loses nothing.

use serde::{Deserialize, Serialize};

use super::{list_feasible, Budget, Color, ColoringError, ListAssignment, Meter};
use crate::graph::{induced_subgraph, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundType {
    /// A `t`-list assignment with no proper colouring was found: `χ_l > t`.
    LowerBoundWitness,
    /// Every canonical `t`-list assignment is colourable: `χ_l <= t`.
    UpperBoundExhaustive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub assignments_checked: u64,
    pub nodes: u64,
    /// Colour universe of the final pass.
    pub universe: usize,
    /// Whether the requested universe reaches `t * |V|`, the size needed for
    /// an exhaustive verdict to cover every assignment.
    pub universe_sufficient: bool,
    pub passes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoosabilityVerdict {
    pub bound_type: BoundType,
    pub t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ListAssignment>,
    pub search_stats: SearchStats,
}

/// Looks for a `t`-list assignment on `g`, over at most `universe` colours,
/// under which `g` has no proper colouring.
///
/// Universes `t + 1, t + 2, ...` are searched in turn, since small witnesses
/// tend to use few colours; the final pass uses `min(universe, t * |V|)`.
/// Returns [`ColoringError::Inconclusive`] when the budget runs out.
pub fn find_bad_assignment(
    g: &Graph,
    t: usize,
    universe: usize,
    budget: Budget,
) -> Result<ChoosabilityVerdict, ColoringError> {
    let n = g.vertex_count();
    if t == 0 {
        return Err(ColoringError::InvalidArgument("list size t must be positive".into()));
    }
    if universe < t {
        return Err(ColoringError::InvalidArgument(format!(
            "universe {universe} smaller than list size {t}"
        )));
    }
    let full = t * n.max(1);
    let cap = universe.min(full);
    let order = search_order(g);
    let mut meter = budget.start();
    let mut stats = SearchStats {
        universe_sufficient: cap >= full,
        ..SearchStats::default()
    };
    let first = (t + 1).min(cap);
    for u in first..=cap {
        stats.universe = u;
        stats.passes += 1;
        let mut s = Enumerator {
            g,
            t,
            universe: u,
            order: &order,
            lists: vec![Vec::new(); n],
            meter: &mut meter,
            checked: 0,
        };
        let outcome = s.search(0, 0);
        stats.assignments_checked += s.checked;
        let lists = s.lists;
        stats.nodes = meter.nodes;
        match outcome {
            Outcome::Found => {
                let witness = ListAssignment::from_lists(lists);
                debug_assert!(!list_feasible(g, &witness)?.is_feasible());
                return Ok(ChoosabilityVerdict {
                    bound_type: BoundType::LowerBoundWitness,
                    t,
                    witness: Some(witness),
                    search_stats: stats,
                });
            }
            Outcome::OutOfBudget => return Err(ColoringError::Inconclusive(stats)),
            Outcome::Exhausted => {}
        }
    }
    Ok(ChoosabilityVerdict {
        bound_type: BoundType::UpperBoundExhaustive,
        t,
        witness: None,
        search_stats: stats,
    })
}

/// Maximum-cardinality order: each next vertex has the most neighbours among
/// those already placed (ties: higher degree, lower index), so infeasible
/// prefixes show up early.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (weight[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            weight[w] += 1;
        }
    }
    order
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Enumerator<'a, 'm> {
    g: &'a Graph,
    t: usize,
    universe: usize,
    order: &'a [usize],
    lists: Vec<Vec<Color>>,
    meter: &'m mut Meter,
    checked: u64,
}

impl Enumerator<'_, '_> {
    /// Assigns lists to `order[pos..]`; `named` colours are already in use.
    fn search(&mut self, pos: usize, named: usize) -> Outcome {
        if pos == self.order.len() {
            return Outcome::Exhausted;
        }
        let v = self.order[pos];
        let max_fresh = self.t.min(self.universe - named);
        for fresh in 0..=max_fresh {
            let reused = self.t - fresh;
            if reused > named {
                continue;
            }
            let mut subset: Vec<usize> = (0..reused).collect();
            loop {
                if !self.meter.tick() {
                    return Outcome::OutOfBudget;
                }
                let mut list: Vec<Color> = subset.iter().map(|&c| c as Color).collect();
                list.extend((named..named + fresh).map(|c| c as Color));
                self.lists[v] = list;
                if !self.prefix_feasible(pos) {
                    self.complete_with_fresh(pos + 1, named + fresh);
                    return Outcome::Found;
                }
                match self.search(pos + 1, named + fresh) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
                if !next_combination(&mut subset, named) {
                    break;
                }
            }
            self.lists[v].clear();
        }
        Outcome::Exhausted
    }

    fn prefix_feasible(&mut self, pos: usize) -> bool {
        self.checked += 1;
        let prefix = &self.order[..=pos];
        let sub = induced_subgraph(self.g, prefix).expect("prefix vertices are distinct and in range");
        let lists = ListAssignment::from_lists(prefix.iter().map(|&v| self.lists[v].clone()).collect());
        list_feasible(&sub, &lists)
            .expect("prefix lists match the prefix subgraph")
            .is_feasible()
    }

    /// Gives the unvisited vertices lists of fresh colours; any extension of
    /// an uncolourable prefix stays uncolourable.
    fn complete_with_fresh(&mut self, pos: usize, mut named: usize) {
        for &v in &self.order[pos..] {
            self.lists[v] = (named..named + self.t).map(|c| c as Color).collect();
            named += self.t;
        }
    }
}

/// Advances `subset` to the next `k`-combination of `0..n` in lexicographic
/// order; false when it was the last.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_complete_multipartite, make_cycle, make_path};

    #[test]
    fn combinations_enumerate_binomial_counts() {
        let mut s = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut s, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }

    #[test]
    fn even_cycle_is_two_choosable() {
        let v = find_bad_assignment(&make_cycle(4).unwrap(), 2, 8, Budget::unlimited()).unwrap();
        assert_eq!(v.bound_type, BoundType::UpperBoundExhaustive);
        assert!(v.search_stats.universe_sufficient);
        assert_eq!(v.search_stats.universe, 8);
    }

    #[test]
    fn k33_is_not_two_choosable() {
        let g = make_complete_multipartite(3, 2).unwrap();
        let v = find_bad_assignment(&g, 2, 12, Budget::unlimited()).unwrap();
        assert_eq!(v.bound_type, BoundType::LowerBoundWitness);
        let w = v.witness.unwrap();
        assert_eq!(w.min_list_len(), Some(2));
        assert!(!list_feasible(&g, &w).unwrap().is_feasible());
    }

    #[test]
    fn odd_cycle_is_not_two_choosable_but_three() {
        let c5 = make_cycle(5).unwrap();
        let v = find_bad_assignment(&c5, 2, 10, Budget::unlimited()).unwrap();
        assert_eq!(v.bound_type, BoundType::LowerBoundWitness);
        let v = find_bad_assignment(&c5, 3, 15, Budget::unlimited()).unwrap();
        assert_eq!(v.bound_type, BoundType::UpperBoundExhaustive);
    }

    #[test]
    fn trees_are_two_choosable_and_cliques_need_n() {
        let v = find_bad_assignment(&make_path(4).unwrap(), 2, 8, Budget::unlimited()).unwrap();
        assert_eq!(v.bound_type, BoundType::UpperBoundExhaustive);
        let k3 = make_complete(3).unwrap();
        let v = find_bad_assignment(&k3, 2, 6, Budget::unlimited()).unwrap();
        assert_eq!(v.bound_type, BoundType::LowerBoundWitness);
    }

    #[test]
    fn small_universe_is_flagged() {
        let v = find_bad_assignment(&make_cycle(4).unwrap(), 2, 3, Budget::unlimited()).unwrap();
        assert_eq!(v.bound_type, BoundType::UpperBoundExhaustive);
        assert!(!v.search_stats.universe_sufficient);
    }

    #[test]
    fn argument_and_budget_errors() {
        let g = make_cycle(4).unwrap();
        assert!(matches!(
            find_bad_assignment(&g, 0, 4, Budget::unlimited()),
            Err(ColoringError::InvalidArgument(_))
        ));
        assert!(matches!(
            find_bad_assignment(&g, 3, 2, Budget::unlimited()),
            Err(ColoringError::InvalidArgument(_))
        ));
        assert!(matches!(
            find_bad_assignment(&g, 2, 8, Budget::with_nodes(2)),
            Err(ColoringError::Inconclusive(_))
        ));
    }
}
