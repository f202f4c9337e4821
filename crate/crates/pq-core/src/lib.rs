//! Finite-algebra workbench for quandle-like structures built from groups.
//!
//! The crate constructs finite groups as validated Cayley tables, derives the
//! magma of normal subgroups under setwise product, checks the quandle axioms
//! (idempotence, self-distributivity, bijective right translations) on any
//! finite binary-operation table, computes per-element kernels and cokernels,
//! and verifies the chain/class-equation and classification structure of the
//! commutative case by explicit isomorphism search.
//!
//! Everything is exact integer combinatorics: no floats, no randomness, all
//! checks exhaustive at the stored sizes.
//!
//! - [`group`] — Cayley tables, conjugacy classes, normal subgroup enumeration
//! - [`magma`] — binary-operation tables, axiom reports, example families
//! - [`iso`] — homomorphism checking and backtracking isomorphism search
//! - [`matrix`] — subscript matrices and their symmetry/trace reports
//! - [`kernel`] — kernels, cokernels, ascending chains, the class equation
//! - [`classify`] — primary decomposition and the chain-product normal form
//! - [`corpus`] — the built-in list of groups used for bulk verification
//!
//! ```
//! use pq_core::{magma::normal_subgroup_magma, Classification, GroupTable, Limits};
//!
//! let limits = Limits::default();
//! let q8 = GroupTable::build("Q8")?;
//! let pg = normal_subgroup_magma(&q8, &limits)?;
//! assert_eq!(pg.size(), 6);
//!
//! // Idempotent and self-distributive, but right translations are not
//! // bijective, so this is not a quandle.
//! let report = pg.check_axioms();
//! assert_eq!(report.classification, Classification::Pseudoquandle);
//!
//! // The subscript matrix is symmetric with trace 6·7/2.
//! let matrix = pq_core::matrix::PqMatrix::from_magma(&pg);
//! assert!(matrix.report(true).symmetric);
//! assert_eq!(matrix.report(true).trace, 21);
//! # Ok::<(), pq_core::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod bitset;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod group;
pub mod iso;
pub mod kernel;
pub mod magma;
pub mod matrix;

pub use bitset::IndexSet;
pub use error::{Error, Result};
pub use group::{ConjugacyPartition, GroupTable, Subgroup};
pub use iso::IsomorphismWitness;
pub use magma::{AxiomReport, Classification, FiniteMagma};

/// Size caps applied by the operations that can blow up combinatorially.
///
/// All caps are inclusive upper bounds; exceeding one yields
/// [`Error::SizeLimit`] instead of an expensive or unbounded computation.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest admissible group order.
    pub max_order: usize,
    /// Largest admissible number of normal subgroups.
    pub max_subgroups: usize,
    /// Largest admissible magma carrier size (direct sums, ingestion).
    pub max_magma: usize,
    /// Largest carrier size accepted by the isomorphism search.
    pub max_iso: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 256,
            max_subgroups: 4096,
            max_magma: 4096,
            max_iso: 64,
        }
    }
}
