//! Graph products. Vertex `(a, b)` of a product is index `a * |V(H)| + b`.

use super::{iter_bits, set_range, Graph};

fn pair_labels(g: &Graph, h: &Graph) -> Option<Vec<String>> {
    let (gl, hl) = (g.labels()?, h.labels()?);
    Some(
        gl.iter()
            .flat_map(|a| hl.iter().map(move |b| format!("({a},{b})")))
            .collect(),
    )
}

/// `G □ H`: `(g1,h1) ~ (g2,h2)` iff `h1 = h2` and `g1g2 ∈ E(G)`, or `g1 = g2`
/// and `h1h2 ∈ E(H)`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let (gn, hn) = (g.vertex_count(), h.vertex_count());
    let mut out = Graph::new(gn * hn);
    for a in 0..gn {
        for b in 0..hn {
            let v = a * hn + b;
            for b2 in iter_bits(h.row(b)) {
                out.set_edge(v, a * hn + b2);
            }
            for a2 in iter_bits(g.row(a)) {
                out.set_edge(v, a2 * hn + b);
            }
        }
    }
    if let Some(labels) = pair_labels(g, h) {
        out.set_labels(labels).expect("pairs of distinct labels are distinct");
    }
    debug_assert_eq!(out.check_invariants(), Ok(()));
    out
}

/// `G[H]`: `(g1,h1) ~ (g2,h2)` iff `g1g2 ∈ E(G)`, or `g1 = g2` and
/// `h1h2 ∈ E(H)`.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Graph {
    let (gn, hn) = (g.vertex_count(), h.vertex_count());
    let mut out = Graph::new(gn * hn);
    for a in 0..gn {
        let joined: Vec<usize> = iter_bits(g.row(a)).collect();
        for b in 0..hn {
            let v = a * hn + b;
            let row = out.row_mut(v);
            for &a2 in &joined {
                set_range(row, a2 * hn, hn);
            }
            for b2 in iter_bits(h.row(b)) {
                let u = a * hn + b2;
                row[u / super::WORD_BITS] |= 1 << (u % super::WORD_BITS);
            }
        }
    }
    if let Some(labels) = pair_labels(g, h) {
        out.set_labels(labels).expect("pairs of distinct labels are distinct");
    }
    debug_assert_eq!(out.check_invariants(), Ok(()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle};

    #[test]
    fn k3_box_k3() {
        let k3 = make_complete(3).unwrap();
        let b = cartesian_product(&k3, &k3);
        assert_eq!(b.vertex_count(), 9);
        assert_eq!(b.is_regular(), Some(4));
        assert_eq!(b.edge_count(), 18);
    }

    #[test]
    fn unit_right_factor_is_identity() {
        let c5 = make_cycle(5).unwrap();
        let k1 = make_complete(1).unwrap();
        assert_eq!(cartesian_product(&c5, &k1), c5);
        assert_eq!(lexicographic_product(&c5, &k1), c5);
    }

    #[test]
    fn lexicographic_counts() {
        let k3 = make_complete(3).unwrap();
        let box33 = cartesian_product(&k3, &k3);
        let p = lexicographic_product(&make_complete(2).unwrap(), &box33);
        assert_eq!(p.vertex_count(), 18);
        assert_eq!(p.edge_count(), 2 * 18 + 81);
        for u in 0..9 {
            for v in 9..18 {
                assert!(p.has_edge(u, v));
            }
        }
    }

    #[test]
    fn lexicographic_of_completes_is_complete() {
        let p = lexicographic_product(&make_complete(4).unwrap(), &make_complete(3).unwrap());
        assert_eq!(p, make_complete(12).unwrap());
    }

    #[test]
    fn labels_pair_up() {
        let a = make_complete(2)
            .unwrap()
            .with_labels(vec!["x".into(), "y".into()])
            .unwrap();
        let b = make_complete(2)
            .unwrap()
            .with_labels(vec!["0".into(), "1".into()])
            .unwrap();
        let p = cartesian_product(&a, &b);
        assert_eq!(p.label(2), Some("(y,0)"));
    }
}
