//! Shared fixtures for the criterion benches.

use chroma_core::certify::{build_adversarial_lists, AdversarialInstance};
use chroma_core::{build_h, Graph};

/// `H_6 = G_6 □ K_3`, 729 vertices.
pub fn h6() -> Graph {
    build_h(2).expect("H_6 fits the default cap").graph().clone()
}

/// The adversarial instance on `K_r[K_3 □ K_3]`.
pub fn adversarial(r: usize, t: usize) -> AdversarialInstance {
    build_adversarial_lists(r, t).expect("t is even and at least 2")
}
