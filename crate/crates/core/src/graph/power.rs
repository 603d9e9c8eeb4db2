use std::collections::VecDeque;

use rayon::prelude::*;

use super::{iter_bits, Graph, GraphError, WORD_BITS};

#[inline]
fn or_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= *s;
    }
}

/// `G^k`: same vertex set, `u ~ v` iff `1 <= d(u, v) <= k`.
///
/// Grows closed balls one radius at a time on packed rows. For each vertex the
/// next ball is built either as `B_j(v) ∪ N(frontier)` or as
/// `B_j(v) ∪ ⋃_{u ∈ N(v)} B_j(u)`, whichever touches fewer rows; both equal
/// `B_{j+1}(v)`. Stops early once no ball grows.
pub fn graph_power(g: &Graph, k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::ZeroPower);
    }
    let n = g.vertex_count();
    if k == 1 || n == 0 {
        return Ok(g.clone());
    }
    let w = g.words();
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();

    let mut prev = vec![0u64; n * w];
    let mut ball = g.rows().to_vec();
    for v in 0..n {
        prev[v * w + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        ball[v * w + v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }
    let mut next = vec![0u64; n * w];

    for _ in 1..k {
        let grew = next
            .par_chunks_mut(w)
            .enumerate()
            .map(|(v, out)| {
                let b = &ball[v * w..(v + 1) * w];
                let p = &prev[v * w..(v + 1) * w];
                out.copy_from_slice(b);
                let frontier: usize = b.iter().zip(p).map(|(x, y)| (x & !y).count_ones() as usize).sum();
                if frontier == 0 {
                    return false;
                }
                if frontier <= degrees[v] {
                    for (wi, (x, y)) in b.iter().zip(p).enumerate() {
                        let mut bits = x & !y;
                        while bits != 0 {
                            let u = wi * WORD_BITS + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            or_into(out, g.row(u));
                        }
                    }
                } else {
                    for u in g.neighbors(v) {
                        or_into(out, &ball[u * w..(u + 1) * w]);
                    }
                }
                out != b
            })
            .reduce(|| false, |a, b| a || b);
        std::mem::swap(&mut prev, &mut ball);
        std::mem::swap(&mut ball, &mut next);
        if !grew {
            break;
        }
    }

    for v in 0..n {
        ball[v * w + v / WORD_BITS] &= !(1 << (v % WORD_BITS));
    }
    let mut out = Graph::from_rows(n, ball);
    if let Some(labels) = g.labels() {
        out.set_labels(labels.to_vec())?;
    }
    Ok(out)
}

/// `G^k` by one breadth-first search per source, truncated at depth `k`.
///
/// Slower than [`graph_power`] on dense powers; kept as an independent route
/// for cross-checking.
pub fn graph_power_bfs(g: &Graph, k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::ZeroPower);
    }
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| iter_bits(g.row(v)).collect()).collect();
    let reach: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut depth = vec![u32::MAX; n];
            depth[s] = 0;
            let mut queue = VecDeque::from([s]);
            let mut found = Vec::new();
            while let Some(u) = queue.pop_front() {
                if depth[u] as usize == k {
                    continue;
                }
                for &v in &adj[u] {
                    if depth[v] == u32::MAX {
                        depth[v] = depth[u] + 1;
                        found.push(v);
                        queue.push_back(v);
                    }
                }
            }
            found
        })
        .collect();
    let mut out = Graph::new(n);
    for (s, vs) in reach.into_iter().enumerate() {
        for v in vs {
            out.set_edge(s, v);
        }
    }
    if let Some(labels) = g.labels() {
        out.set_labels(labels.to_vec())?;
    }
    Ok(out)
}
