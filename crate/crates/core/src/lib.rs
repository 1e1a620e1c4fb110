//! Finite universal algebra over explicit operation tables.
//!
//! An algebra here is a finite universe `{0, .., n-1}` together with a list
//! of named operations, each stored as a full value table. On top of that
//! representation the crate provides:
//!
//! * relation preservation with explicit counterexample witnesses
//!   ([`preserve`]),
//! * classification of finitary relations into the shapes that induce
//!   maximal clones ([`classify`]),
//! * congruence lattices, factor congruence pairs, and the factorable
//!   congruence property for binary products ([`congruence`]),
//! * central elements and the Boolean algebra they form ([`center`]),
//! * Pierce stalks of a finite algebra and a patchwork test for subdirect
//!   products ([`pierce`]),
//! * clones of relation-preserving operations: enumeration, truncated
//!   algebras, term search, and refutation certificates ([`preprimal`]),
//! * a plain-text file format for algebras and relations ([`io`]), and
//! * end-to-end verification pipelines used by the CLI ([`pipeline`]).
//!
//! Everything is exact and deterministic: no floating point, no hashing
//! order leaks into results, and every search returns its least witness
//! under a documented order.

pub mod algebra;
pub mod center;
pub mod classify;
pub mod congruence;
pub mod error;
pub mod io;
pub mod op;
pub mod pierce;
pub mod pipeline;
pub mod preprimal;
pub mod preserve;
pub mod relation;

#[cfg(test)]
pub(crate) mod testutil;

pub use algebra::FiniteAlgebra;
pub use center::{CenterAlgebra, CentralElement, Decomposition};
pub use classify::RelationClass;
pub use congruence::{Congruence, CongruenceLattice, FactorPair, FhpReport};
pub use error::AlgebraError;
pub use op::{Element, Operation};
pub use pierce::{DiNotSiWitness, PatchworkReport, Stalk, StalkReport};
pub use preprimal::{CloneClosure, PierceTerms, RefutationWitness, TruncatedPreprimal, UTermSearch};
pub use preserve::{Preservation, PreservationWitness};
pub use relation::Relation;

/// Resource caps for the operations that enumerate or search.
///
/// Every cap is checked before the expensive phase starts (where a cheap
/// bound exists) or enforced during it; hitting a cap yields
/// [`AlgebraError::CapExceeded`] rather than silent truncation, except for
/// the clone closure, which reports whether it reached a fixpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe for which congruence lattices are enumerated.
    pub max_lattice_universe: usize,
    /// Largest universe for which isomorphism search is attempted.
    pub max_iso_universe: usize,
    /// Largest candidate table space `n^(n^k)` accepted when enumerating
    /// all operations of arity `k` preserving a relation.
    pub max_pol_candidates: u64,
    /// Most distinct operation tables a clone closure may accumulate.
    pub max_clone_tables: usize,
    /// Most composition attempts a clone closure may spend.
    pub max_clone_work: u64,
    /// Largest tuple space `n^N` enumerated when searching for central
    /// elements.
    pub max_center_tuples: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_lattice_universe: 16,
            max_iso_universe: 12,
            max_pol_candidates: 100_000_000,
            max_clone_tables: 1_000_000,
            max_clone_work: 50_000_000,
            max_center_tuples: 1_000_000,
        }
    }
}
