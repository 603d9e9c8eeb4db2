use super::{Budget, Meter};
use crate::graph::{iter_bits, Graph, WORD_BITS};

/// Graphs up to this many vertices get an exact maximum clique; larger ones a
/// greedy clique flagged as heuristic.
pub const EXACT_CLIQUE_LIMIT: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clique {
    pub vertices: Vec<usize>,
    /// True when the search proved no larger clique exists.
    pub exact: bool,
}

impl Clique {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// A clique of `g`, maximum when `g` has at most [`EXACT_CLIQUE_LIMIT`]
/// vertices (colour-bounded branch and bound), greedy otherwise.
pub fn max_clique_lower_bound(g: &Graph) -> Clique {
    let mut meter = Budget::unlimited().start();
    max_clique_with(g, &mut meter)
}

pub(crate) fn max_clique_with(g: &Graph, meter: &mut Meter) -> Clique {
    let n = g.vertex_count();
    let mut best = greedy_clique(g);
    if n > EXACT_CLIQUE_LIMIT {
        return Clique {
            vertices: best,
            exact: false,
        };
    }
    let w = g.words();
    let mut all = vec![0u64; w];
    crate::graph::set_range(&mut all, 0, n);
    let mut search = CliqueSearch {
        g,
        meter,
        best: &mut best,
        current: Vec::new(),
        aborted: false,
    };
    search.expand(all);
    let exact = !search.aborted;
    best.sort_unstable();
    Clique { vertices: best, exact }
}

/// Best of the greedy cliques grown from each vertex, always adding the
/// candidate of largest degree.
fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
    starts.truncate(64);
    let mut best = Vec::new();
    for s in starts {
        let mut clique = vec![s];
        let mut cand = g.row(s).to_vec();
        while let Some(v) = iter_bits(&cand).max_by_key(|&v| (degree[v], std::cmp::Reverse(v))) {
            clique.push(v);
            for (c, r) in cand.iter_mut().zip(g.row(v)) {
                *c &= r;
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

struct CliqueSearch<'a, 'm> {
    g: &'a Graph,
    meter: &'m mut Meter,
    best: &'a mut Vec<usize>,
    current: Vec<usize>,
    aborted: bool,
}

impl CliqueSearch<'_, '_> {
    fn expand(&mut self, mut cand: Vec<u64>) {
        if !self.meter.tick() {
            self.aborted = true;
            return;
        }
        // greedy colouring of the candidates gives the bound
        let mut order = Vec::new();
        let mut bound = Vec::new();
        let mut uncolored = cand.clone();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut q = uncolored.clone();
            loop {
                let Some(v) = iter_bits(&q).next() else { break };
                q[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
                uncolored[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
                for (x, r) in q.iter_mut().zip(self.g.row(v)) {
                    *x &= !r;
                }
                order.push(v);
                bound.push(color);
            }
        }
        for i in (0..order.len()).rev() {
            if self.aborted || self.current.len() + bound[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            self.current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    *self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        cartesian_product, lexicographic_product, make_complete, make_complete_multipartite, make_cycle,
    };

    fn brute_force_clique(g: &Graph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|&s| {
                (0..n).all(|u| (0..n).all(|v| u == v || s >> u & 1 == 0 || s >> v & 1 == 0 || g.has_edge(u, v)))
            })
            .map(u32::count_ones)
            .max()
            .unwrap_or(0) as usize
    }

    fn is_clique(g: &Graph, vs: &[usize]) -> bool {
        vs.iter().all(|&u| vs.iter().all(|&v| u == v || g.has_edge(u, v)))
    }

    #[test]
    fn known_clique_numbers() {
        let k3 = make_complete(3).unwrap();
        let box33 = cartesian_product(&k3, &k3);
        let cases = [
            (make_complete_multipartite(3, 3).unwrap(), 3),
            (box33.clone(), 3),
            (lexicographic_product(&make_complete(2).unwrap(), &box33), 6),
            (make_cycle(5).unwrap(), 2),
        ];
        for (g, omega) in cases {
            let c = max_clique_lower_bound(&g);
            assert!(c.exact);
            assert_eq!(c.size(), omega);
            assert_eq!(brute_force_clique(&g), omega);
            assert!(is_clique(&g, &c.vertices));
        }
    }

    #[test]
    fn matches_brute_force_on_pseudorandom_graphs() {
        let mut state = 0x2545F4914F6CDD1Du64;
        for _ in 0..30 {
            let n = 12;
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 5 < 3 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let c = max_clique_lower_bound(&g);
            assert_eq!(c.size(), brute_force_clique(&g));
            assert!(is_clique(&g, &c.vertices));
        }
    }

    #[test]
    fn node_budget_marks_result_inexact() {
        let g = lexicographic_product(&make_cycle(7).unwrap(), &make_complete(3).unwrap());
        let mut meter = Budget::with_nodes(1).start();
        let c = max_clique_with(&g, &mut meter);
        assert!(!c.exact);
        assert!(is_clique(&g, &c.vertices));
    }
}
