//! Inclusion posets of diagonal orbit closures in type A double flag
//! varieties.
//!
//! A pair of block compositions of n cuts out a double flag variety for
//! SL(n), and the diagonal orbit closures on it are indexed by the
//! minimal-length representatives of the corresponding double cosets in
//! the symmetric group.  This crate computes the inclusion order two
//! independent ways, by Bruhat comparison of representatives and by
//! entrywise dominance of contingency-matrix partial sums, and classifies
//! the posets arising from the complexity-one block patterns: eight
//! parameterized rows whose 49 reduced cases fall into 29 isomorphism
//! classes, stable across the whole parameter range.
//!
//! The main entry points are [`CosetSystem`] for a single block pair,
//! [`classify()`] and [`stability_sweep`] for the catalog, and
//! [`verify::acceptance_checks`] for the self-test battery.

pub mod bruhat;
pub mod classify;
pub mod error;
pub mod orbit_matrix;
pub mod parabolic;
pub mod perm;
pub mod poset;
pub mod verify;

pub use bruhat::{bruhat_leq, bruhat_poset, covering_pairs};
pub use classify::{
    classify, compute_case, default_sweep_degree, poset_for_blocks, reduced_case_list,
    row_instances, stability_sweep, stability_sweep_against, statistics, Backend, CaseSpec,
    CatalogStatistics, ClassCatalog, ClassLabel, LabeledCase, PosetClass, SweepReport,
};
pub use error::{Error, Result};
pub use orbit_matrix::{coset_to_matrix, enumerate_margin_matrices, matrix_poset, OrbitMatrix};
pub use parabolic::{BlockComposition, CosetDecomposition, CosetSystem};
pub use perm::{symmetric_group, GeneratorSet, Permutation};
pub use poset::{CanonicalForm, FinitePoset};
