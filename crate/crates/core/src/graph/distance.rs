use std::collections::VecDeque;

use rayon::prelude::*;

use super::Graph;

/// Single-source breadth-first distances. `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.vertex_count()];
    if source >= g.vertex_count() {
        return dist;
    }
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap_or(0);
        for v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Shortest-path distances between every ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<Option<u32>>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `None` when `v` is unreachable from `u`.
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Option<u32>] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Largest finite distance, or `None` if some pair is disconnected.
    pub fn max_distance(&self) -> Option<u32> {
        self.dist.iter().try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }
}

/// BFS from every source; sources are processed in parallel, results are
/// identical for any thread count.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.vertex_count();
    let rows: Vec<Vec<Option<u32>>> = (0..n).into_par_iter().map(|s| bfs_distances(g, s)).collect();
    DistanceMatrix {
        n,
        dist: rows.into_iter().flatten().collect(),
    }
}

/// Diameter of a connected graph; `None` if disconnected or empty.
pub fn diameter(g: &Graph) -> Option<u32> {
    if g.vertex_count() == 0 {
        return None;
    }
    (0..g.vertex_count())
        .into_par_iter()
        .map(|s| {
            bfs_distances(g, s)
                .into_iter()
                .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
        })
        .collect::<Option<Vec<u32>>>()
        .map(|e| e.into_iter().max().unwrap_or(0))
}
