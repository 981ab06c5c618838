//! Symmetry-breaking invariants of small graphs.
//!
//! Computes automorphism groups as explicit permutation lists, and from them
//! the distinguishing number `D(G)`, the determining number `Det(G)`, the cost
//! number `ρ(G)` of 2-distinguishable graphs, and distinguishable equivalence
//! of graph pairs. The [`theory`] module checks structural facts about graphs
//! with `Det(G) = D(G) = 2` across whole graph corpora.

pub mod automorphism;
pub mod enumerate;
pub mod equivalence;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod group;
pub mod metrics;
pub mod perm;
pub mod report;
pub mod theory;

pub use automorphism::{automorphism_group, automorphism_group_with, AutConfig};
pub use error::{Error, Result};
pub use family::{generate_family, FamilyKind, FamilySpec};
pub use graph::Graph;
pub use graph6::{encode_graph6, parse_graph6};
pub use group::PermGroup;
pub use perm::{Labeling, Permutation};
