//! Valencies and subdegree multiplicities of finite transitive permutation
//! groups, computed three independent ways: brute-force suborbit enumeration,
//! an inversion engine over arc-stabiliser classes, and closed-form family
//! formulas, cross-validated on a bundled catalog of primitive groups.

pub mod error;
pub mod group;
pub mod lattice;
pub mod numth;
pub mod par;
pub mod perm;
pub mod poset;
pub mod verify;
pub mod catalog;
pub mod engine;
pub mod field;
pub mod files;
pub mod forms;
pub mod graph;
pub mod space;

pub use error::SaxlError;
pub use group::{cyclic_subgroup, Group, Subgroup};
pub use perm::Permutation;

/// Default bound on materialized label sets and enumerated element lists.
pub const DEFAULT_LABEL_CAP: usize = 1_000_000;

/// Default bound on full subgroup-lattice enumeration.
pub const DEFAULT_LATTICE_CAP: usize = 10_000;
