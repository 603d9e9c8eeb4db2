use super::{set_range, Graph, GraphError, WORD_BITS};

/// `K_n`. Fails for `n = 0`.
pub fn make_complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut g = Graph::new(n);
    for v in 0..n {
        let row = g.row_mut(v);
        set_range(row, 0, n);
        row[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
    }
    debug_assert_eq!(g.check_invariants(), Ok(()));
    Ok(g)
}

/// `K_{part_size * parts}`: `parts` blocks of `part_size` consecutive vertices,
/// adjacent iff in different blocks. Vertex `v` lives in block `v / part_size`.
pub fn make_complete_multipartite(part_size: usize, parts: usize) -> Result<Graph, GraphError> {
    if part_size == 0 {
        return Err(GraphError::ZeroArgument("part_size"));
    }
    if parts == 0 {
        return Err(GraphError::ZeroArgument("parts"));
    }
    let n = part_size * parts;
    let mut g = Graph::new(n);
    for v in 0..n {
        let block = v / part_size;
        let row = g.row_mut(v);
        set_range(row, 0, block * part_size);
        set_range(row, (block + 1) * part_size, n - (block + 1) * part_size);
    }
    debug_assert_eq!(g.check_invariants(), Ok(()));
    Ok(g)
}

pub fn make_empty(n: usize) -> Graph {
    Graph::new(n)
}

pub fn make_path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// `C_n` for `n >= 3`.
pub fn make_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::ZeroArgument("cycle length (needs >= 3)"));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}
