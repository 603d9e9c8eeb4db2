use super::clique::max_clique_with;
use super::{Budget, Color, Coloring, ColoringError, Meter};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chi: usize,
    pub coloring: Coloring,
    /// Clique used as the lower-bound witness.
    pub clique: Vec<usize>,
}

/// Greedy DSATUR colouring: repeatedly colour the uncoloured vertex seeing the
/// most distinct colours (ties: higher degree, then lower index) with the
/// smallest colour it can take.
pub fn dsatur_coloring(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut color = vec![Color::MAX; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == Color::MAX)
            .max_by_key(|&v| (sat[v], adj[v].len(), std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains");
        let c = (0..).find(|&c| !seen[v].get(c).copied().unwrap_or(false)).unwrap();
        color[v] = c as Color;
        for &w in &adj[v] {
            if seen[w].len() <= c {
                seen[w].resize(c + 1, false);
            }
            if !seen[w][c] {
                seen[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    Coloring(color)
}

/// Exact chromatic number with witnesses.
///
/// The clique bound and the DSATUR bound are computed first; when they meet
/// the answer is immediate. Otherwise each `k` from the lower bound upward is
/// tested by DSATUR-ordered backtracking with the clique precoloured and new
/// colours introduced in order.
pub fn chromatic_number(g: &Graph, budget: Budget) -> Result<ChromaticResult, ColoringError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(ChromaticResult {
            chi: 0,
            coloring: Coloring(Vec::new()),
            clique: Vec::new(),
        });
    }
    let mut meter = budget.start();
    let clique = max_clique_with(g, &mut meter).vertices;
    let greedy = dsatur_coloring(g);
    let upper = greedy.distinct_colors();
    let lower = clique.len();
    debug_assert!(lower <= upper);
    let mut best = (upper, greedy);
    for k in lower..upper {
        match KColoring::new(g, k, &clique).solve(&mut meter) {
            Search::Found(c) => {
                best = (k, c);
                break;
            }
            Search::Exhausted => {}
            Search::OutOfBudget => {
                return Err(ColoringError::BudgetExhausted {
                    lower: k,
                    upper: best.0,
                })
            }
        }
    }
    let (chi, coloring) = best;
    assert!(is_proper_unchecked(g, &coloring), "chromatic witness must be proper");
    Ok(ChromaticResult { chi, coloring, clique })
}

fn is_proper_unchecked(g: &Graph, c: &Coloring) -> bool {
    g.edges().all(|(u, v)| c.0[u] != c.0[v])
}

enum Search {
    Found(Coloring),
    Exhausted,
    OutOfBudget,
}

struct KColoring {
    k: usize,
    adj: Vec<Vec<usize>>,
    color: Vec<usize>,
    forbid: Vec<u32>,
    sat: Vec<usize>,
    remaining: usize,
}

const NONE: usize = usize::MAX;

impl KColoring {
    fn new(g: &Graph, k: usize, clique: &[usize]) -> Self {
        let n = g.vertex_count();
        let mut s = KColoring {
            k,
            adj: (0..n).map(|v| g.neighbors(v).collect()).collect(),
            color: vec![NONE; n],
            forbid: vec![0; n * k],
            sat: vec![0; n],
            remaining: n,
        };
        for (c, &v) in clique.iter().enumerate() {
            s.assign(v, c);
        }
        s
    }

    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = c;
        self.remaining -= 1;
        let mut ok = true;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            let f = &mut self.forbid[w * self.k + c];
            *f += 1;
            if *f == 1 {
                self.sat[w] += 1;
                if self.color[w] == NONE && self.sat[w] == self.k {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        self.remaining += 1;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            let f = &mut self.forbid[w * self.k + c];
            *f -= 1;
            if *f == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn select(&self) -> usize {
        (0..self.color.len())
            .filter(|&v| self.color[v] == NONE)
            .max_by_key(|&v| (self.sat[v], self.adj[v].len(), std::cmp::Reverse(v)))
            .expect("called with uncoloured vertices left")
    }

    fn solve(mut self, meter: &mut Meter) -> Search {
        let used = self.color.iter().filter(|&&c| c != NONE).count();
        match self.search(used, meter) {
            Some(true) => Search::Found(Coloring(self.color.iter().map(|&c| c as Color).collect())),
            Some(false) => Search::Exhausted,
            None => Search::OutOfBudget,
        }
    }

    /// `used` colours `0..used` are in play; the next fresh colour is `used`.
    fn search(&mut self, used: usize, meter: &mut Meter) -> Option<bool> {
        if self.remaining == 0 {
            return Some(true);
        }
        if !meter.tick() {
            return None;
        }
        let v = self.select();
        for c in 0..(used + 1).min(self.k) {
            if self.forbid[v * self.k + c] != 0 {
                continue;
            }
            let ok = self.assign(v, c);
            if ok {
                match self.search(used.max(c + 1), meter) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => {
                        self.unassign(v);
                        return None;
                    }
                }
            }
            self.unassign(v);
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::graph::{cartesian_product, make_complete, make_complete_multipartite, make_cycle, make_path};

    /// Smallest k such that some assignment of colours 0..k is proper, by
    /// enumerating every assignment.
    fn brute_force_chi(g: &Graph) -> usize {
        let n = g.vertex_count();
        for k in 1..=n {
            let total = k.pow(n as u32);
            for code in 0..total {
                let mut x = code;
                let c: Vec<Color> = (0..n)
                    .map(|_| {
                        let d = x % k;
                        x /= k;
                        d as Color
                    })
                    .collect();
                if g.edges().all(|(u, v)| c[u] != c[v]) {
                    return k;
                }
            }
        }
        n
    }

    fn chi(g: &Graph) -> usize {
        let r = chromatic_number(g, Budget::unlimited()).unwrap();
        assert!(is_proper(g, &r.coloring).unwrap());
        assert_eq!(r.coloring.distinct_colors(), r.chi);
        r.chi
    }

    #[test]
    fn named_graphs() {
        let k3 = make_complete(3).unwrap();
        assert_eq!(chi(&cartesian_product(&k3, &k3)), 3);
        assert_eq!(chi(&make_complete_multipartite(3, 3).unwrap()), 3);
        assert_eq!(chi(&make_cycle(5).unwrap()), 3);
        assert_eq!(chi(&make_cycle(6).unwrap()), 2);
        assert_eq!(chi(&make_path(1).unwrap()), 1);
        assert_eq!(chi(&Graph::new(0)), 0);
    }

    #[test]
    fn agrees_with_enumeration_on_small_graphs() {
        let mut state = 0x9E3779B97F4A7C15u64;
        for trial in 0..60 {
            let n = 3 + trial % 6;
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    if (state >> 33) % 100 < 55 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let r = chromatic_number(&g, Budget::unlimited()).unwrap();
            assert_eq!(r.chi, brute_force_chi(&g), "trial {trial}");
            assert!(r.clique.len() <= r.chi && r.chi <= dsatur_coloring(&g).distinct_colors());
        }
    }

    #[test]
    fn grotzsch_like_gap_needs_search() {
        // Mycielski graph of C5: triangle-free, chromatic number 4
        let mut g = Graph::new(11);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, (i + 4) % 5).unwrap();
            g.add_edge(5 + i, 10).unwrap();
        }
        let r = chromatic_number(&g, Budget::unlimited()).unwrap();
        assert_eq!(r.clique.len(), 2);
        assert_eq!(r.chi, 4);
    }

    #[test]
    fn budget_reports_bounds() {
        let mut g = Graph::new(11);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, (i + 4) % 5).unwrap();
            g.add_edge(5 + i, 10).unwrap();
        }
        match chromatic_number(&g, Budget::with_nodes(3)) {
            Err(ColoringError::BudgetExhausted { lower, upper }) => assert!(lower <= 4 && 4 <= upper),
            other => panic!("{other:?}"),
        }
    }
}
