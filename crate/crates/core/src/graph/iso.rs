use super::{iter_bits, Graph, GraphError, WORD_BITS};

fn check_bijection(g1: &Graph, g2: &Graph, bijection: &[usize]) -> Result<Vec<usize>, GraphError> {
    let n = g1.vertex_count();
    if g2.vertex_count() != n {
        return Err(GraphError::BadBijection(format!(
            "vertex counts differ ({n} vs {})",
            g2.vertex_count()
        )));
    }
    if bijection.len() != n {
        return Err(GraphError::BadBijection(format!(
            "map has {} entries for {n} vertices",
            bijection.len()
        )));
    }
    let mut inverse = vec![usize::MAX; n];
    for (u, &image) in bijection.iter().enumerate() {
        if image >= n {
            return Err(GraphError::BadBijection(format!("{u} maps to {image}, out of range")));
        }
        if inverse[image] != usize::MAX {
            return Err(GraphError::BadBijection(format!(
                "{} and {u} both map to {image}",
                inverse[image]
            )));
        }
        inverse[image] = u;
    }
    Ok(inverse)
}

/// First pair `(u, v)` of `g1` whose adjacency differs from that of
/// `(bijection[u], bijection[v])` in `g2`, scanning `u` in order.
pub fn first_mismatch(g1: &Graph, g2: &Graph, bijection: &[usize]) -> Result<Option<(usize, usize)>, GraphError> {
    let inverse = check_bijection(g1, g2, bijection)?;
    let identity = bijection.iter().enumerate().all(|(u, &v)| u == v);
    let mut mapped = vec![0u64; g2.words()];
    for u in 0..g1.vertex_count() {
        let target = g2.row(bijection[u]);
        let row: &[u64] = if identity {
            g1.row(u)
        } else {
            mapped.iter_mut().for_each(|w| *w = 0);
            for v in iter_bits(g1.row(u)) {
                let b = bijection[v];
                mapped[b / WORD_BITS] |= 1 << (b % WORD_BITS);
            }
            &mapped
        };
        if let Some((wi, diff)) = row
            .iter()
            .zip(target)
            .map(|(a, b)| a ^ b)
            .enumerate()
            .find(|&(_, d)| d != 0)
        {
            let b = wi * WORD_BITS + diff.trailing_zeros() as usize;
            return Ok(Some((u, inverse[b])));
        }
    }
    Ok(None)
}

/// True iff `bijection` maps `g1` onto `g2` preserving adjacency and
/// non-adjacency.
pub fn is_same_labeled(g1: &Graph, g2: &Graph, bijection: &[usize]) -> Result<bool, GraphError> {
    Ok(first_mismatch(g1, g2, bijection)?.is_none())
}

/// Subgraph induced by `vertices`, reindexed in the given order. The new
/// vertex `i` carries the label of `vertices[i]` in `g`, or its index when
/// `g` is unlabeled.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<Graph, GraphError> {
    let n = g.vertex_count();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in vertices.iter().enumerate() {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        if position[v] != usize::MAX {
            return Err(GraphError::DuplicateVertex(v));
        }
        position[v] = i;
    }
    let mut out = Graph::new(vertices.len());
    for (i, &v) in vertices.iter().enumerate() {
        for u in g.neighbors(v) {
            let j = position[u];
            if j != usize::MAX && j > i {
                out.set_edge(i, j);
            }
        }
    }
    let labels = vertices
        .iter()
        .map(|&v| g.label(v).map_or_else(|| v.to_string(), str::to_owned))
        .collect();
    out.set_labels(labels)?;
    Ok(out)
}
