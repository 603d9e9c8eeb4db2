//! Constructions and exact verifiers for graph powers whose list chromatic
//! number exceeds their chromatic number.
//!
//! * [`graph`]: bit-packed simple graphs, products, powers, distances, I/O.
//! * [`cayley`]: `Z_3^m`, the subgroup `Γ_m` and the Cayley graphs `G_m`.
//! * [`coloring`]: exact chromatic number, list colouring, choosability search.
//! * [`certify`]: `H_{3n} = G_{3n} □ K_3`, the structure and counting
//!   verifiers, and the end-to-end pipeline.

pub mod cayley;
pub mod certificate;
pub mod certify;
pub mod coloring;
pub mod graph;

pub use cayley::{build_cayley, CayleyBundle, ClassPartition, GroupVector};
pub use certificate::{Certificate, Status};
pub use certify::{build_h, CertifyError, HBundle, TheoremReport};
pub use coloring::{Coloring, ListAssignment};
pub use graph::{Format, Graph, GraphError};
