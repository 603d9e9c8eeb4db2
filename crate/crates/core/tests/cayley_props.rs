use std::collections::{HashMap, VecDeque};

use chroma_core::cayley::{
    enumerate_gamma, equivalence_classes, gamma_index, generators, verify_distance_lemma, verify_power_multipartite,
};
use chroma_core::graph::{bfs_distances, graph_power};
use chroma_core::{build_cayley, GroupVector, Status};
use proptest::prelude::*;

fn vector(c: &[u8]) -> GroupVector {
    GroupVector::new(c.to_vec()).unwrap()
}

/// Distances from 0 in G_m by BFS directly over coordinate vectors.
fn vector_bfs(m: usize) -> HashMap<Vec<u8>, u32> {
    let mut gens = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let mut x = vec![0u8; m];
                x[i] = 1;
                x[j] = 2;
                gens.push(x);
            }
        }
    }
    let mut dist = HashMap::from([(vec![0u8; m], 0)]);
    let mut queue = VecDeque::from([vec![0u8; m]]);
    while let Some(y) = queue.pop_front() {
        let d = dist[&y];
        for x in &gens {
            let z: Vec<u8> = y.iter().zip(x).map(|(a, b)| (a + b) % 3).collect();
            dist.entry(z.clone()).or_insert_with(|| {
                queue.push_back(z);
                d + 1
            });
        }
    }
    dist
}

#[test]
fn gamma_sizes_and_small_members() {
    for m in 1..=7 {
        assert_eq!(enumerate_gamma(m).unwrap().len(), 3usize.pow(m as u32 - 1));
    }
    assert_eq!(enumerate_gamma(1).unwrap(), vec![vector(&[0])]);
    assert_eq!(
        enumerate_gamma(2).unwrap(),
        vec![vector(&[0, 0]), vector(&[1, 2]), vector(&[2, 1])]
    );
    assert_eq!(generators(2).unwrap(), vec![vector(&[1, 2]), vector(&[2, 1])]);
}

#[test]
fn vector_arithmetic() {
    assert_eq!(vector(&[1, 2]).add(&vector(&[2, 1])).unwrap(), vector(&[0, 0]));
    assert_eq!(vector(&[1, 0, 2]).neg(), vector(&[2, 0, 1]));
    let a = GroupVector::all_ones(3);
    assert_eq!(a.add(&a).unwrap(), GroupVector::all_twos(3));
    assert!(vector(&[1, 2]).add(&vector(&[1, 2, 0])).is_err());
}

#[test]
fn small_cayley_graphs() {
    let g2 = build_cayley(2).unwrap();
    assert_eq!((g2.graph().vertex_count(), g2.graph().edge_count()), (3, 3));

    let g3 = build_cayley(3).unwrap();
    assert_eq!(g3.graph().vertex_count(), 9);
    assert_eq!(g3.graph().is_regular(), Some(6));
    // complement is three disjoint triangles whose differences are a and b
    let comp = g3.graph().complement();
    assert_eq!(comp.edge_count(), 9);
    let (a, b) = (GroupVector::all_ones(3), GroupVector::all_twos(3));
    for (u, v) in comp.edges() {
        let d = g3.vertex(v).sub(g3.vertex(u)).unwrap();
        assert!(d == a || d == b);
    }

    let g6 = build_cayley(6).unwrap();
    assert_eq!(g6.graph().vertex_count(), 243);
    assert_eq!(g6.graph().is_regular(), Some(30));
}

#[test]
fn degree_is_m_times_m_minus_one() {
    for m in 2..=7 {
        let b = build_cayley(m).unwrap();
        assert_eq!(b.graph().is_regular(), Some(m * (m - 1)), "m = {m}");
    }
}

#[test]
fn generators_avoid_zero_and_class_shifts() {
    for n in 1..=3 {
        let m = 3 * n;
        let forbidden = [GroupVector::zero(m), GroupVector::all_ones(m), GroupVector::all_twos(m)];
        let gens = generators(m).unwrap();
        assert_eq!(gens.len(), m * (m - 1));
        assert!(gens.iter().all(|x| !forbidden.contains(x)));
    }
}

#[test]
fn distances_match_vector_bfs() {
    for m in [3, 4, 6] {
        let bundle = build_cayley(m).unwrap();
        let oracle = vector_bfs(m);
        assert_eq!(oracle.len(), bundle.graph().vertex_count());
        let dist = bfs_distances(bundle.graph(), 0);
        for (v, d) in dist.iter().enumerate() {
            assert_eq!(*d, Some(oracle[bundle.vertex(v).coords()]), "m = {m}, vertex {v}");
        }
    }
}

#[test]
fn distance_lemma_examples_at_m6() {
    let bundle = build_cayley(6).unwrap();
    let dist = bfs_distances(bundle.graph(), 0);
    let at = |c: &[u8]| dist[bundle.index_of(&vector(c)).unwrap()];
    assert_eq!(at(&[1, 1, 1, 1, 1, 1]), Some(4));
    assert_eq!(at(&[1, 2, 0, 0, 0, 0]), Some(1));
    assert_eq!(at(&[1, 1, 1, 2, 2, 2]), Some(3));

    let cert = verify_distance_lemma(&bundle).unwrap();
    assert_eq!(cert.status, Status::Verified);
    assert_eq!(cert.stats["max_distance"], serde_json::json!(4));
}

#[test]
fn distance_lemma_holds_against_oracle_at_m9() {
    // The statement itself, checked on the independent vector BFS.
    let oracle = vector_bfs(9);
    for (y, d) in &oracle {
        let nnz = y.iter().filter(|&&c| c != 0).count() as u32;
        let identical = y
            .iter()
            .filter(|&&c| c != 0)
            .all(|&c| Some(&c) == y.iter().find(|&&c| c != 0));
        assert!(3 * d <= 2 * nnz, "{y:?}");
        assert_eq!(3 * d == 2 * nnz, identical, "{y:?}");
    }
    let cert = verify_distance_lemma(&build_cayley(9).unwrap()).unwrap();
    assert_eq!(cert.status, Status::Verified);
    assert_eq!(cert.stats["max_distance"], serde_json::json!(6));
}

#[test]
fn classes_and_multipartite_power() {
    let g3 = build_cayley(3).unwrap();
    let p3 = equivalence_classes(&g3).unwrap();
    assert_eq!(p3.len(), 3);
    let zero_class: Vec<_> = p3.classes()[0].iter().map(|&v| g3.vertex(v).clone()).collect();
    assert_eq!(
        zero_class,
        vec![vector(&[0, 0, 0]), vector(&[1, 1, 1]), vector(&[2, 2, 2])]
    );

    let g6 = build_cayley(6).unwrap();
    let p6 = equivalence_classes(&g6).unwrap();
    assert_eq!(p6.len(), 81);
    let dist: Vec<_> = (0..243).map(|v| bfs_distances(g6.graph(), v)).collect();
    let cube = graph_power(g6.graph(), 3).unwrap();
    for class in p6.classes() {
        for &u in class {
            for &v in class {
                if u != v {
                    assert!(!g6.graph().has_edge(u, v));
                    assert!(!cube.has_edge(u, v));
                    assert_eq!(dist[u][v], Some(4));
                }
            }
        }
    }
    // every pair from different classes is at distance at most 3
    for (u, row) in dist.iter().enumerate() {
        for (v, d) in row.iter().enumerate() {
            if p6.class_of(u) != p6.class_of(v) {
                assert!(d.unwrap() <= 3);
            }
        }
    }
    assert_eq!(verify_power_multipartite(&g6).unwrap().status, Status::Verified);
    assert!(equivalence_classes(&build_cayley(4).unwrap()).is_err());
}

#[test]
fn power_multipartite_outside_hypothesis_is_flagged() {
    let cert = verify_power_multipartite(&build_cayley(3).unwrap()).unwrap();
    assert_eq!(cert.status, Status::Verified);
    assert!(!cert.notes.is_empty());
}

#[test]
fn capacity_and_dimension_errors() {
    assert!(build_cayley(1).is_err());
    assert!(build_cayley(12).is_err());
    assert!(generators(1).is_err());
    assert!(enumerate_gamma(0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translation_is_an_automorphism(g in 0usize..243, pairs in proptest::collection::vec((0usize..243, 0usize..243), 200)) {
        let bundle = build_cayley(6).unwrap();
        let shift = bundle.vertex(g).clone();
        let image = |v: usize| bundle.index_of(&bundle.vertex(v).add(&shift).unwrap()).unwrap();
        for (u, v) in pairs {
            prop_assert_eq!(bundle.graph().has_edge(u, v), bundle.graph().has_edge(image(u), image(v)));
        }
        let mut from_g = bfs_distances(bundle.graph(), g);
        let mut from_0 = bfs_distances(bundle.graph(), 0);
        from_g.sort();
        from_0.sort();
        prop_assert_eq!(from_g, from_0);
    }

    #[test]
    fn gamma_is_closed(m in 2usize..8, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let gamma = enumerate_gamma(m).unwrap();
        let (y, z) = (i.get(&gamma), j.get(&gamma));
        prop_assert!(gamma_index(&y.add(z).unwrap()).is_some());
        prop_assert!(gamma_index(&y.neg()).is_some());
        prop_assert_eq!(gamma_index(y), Some(i.index(gamma.len())));
    }
}
