//! Finite lattices and the admissible operation sequences definable on them.
//!
//! An operation sequence `(f_1, f_2, …)` on a finite lattice `L` assigns an
//! `n`-ary operation to every arity. Admissible sequences satisfy the axioms
//! that higher commutator operations of algebras with a Mal'cev term obey:
//! HC1 (`f_n(α…) <= α_k`), HC2 (monotone), HC3 (`f_{n+1}(α_1…α_{n+1}) <=
//! f_n(α_2…α_{n+1})`), HC4 (symmetric), HC7 (join distributive) and HC8
//! (nested commutators are smaller).
//!
//! Symmetric sequences are functions of multisets of arguments, i.e. of
//! multiplicity vectors `a ∈ ℕ₀^m`. A sequence is stored as the family of
//! upward-closed level sets `R(α) = {a ≠ 0 : E(a) <= α}` where `E(a)` is the
//! value on the multiset `a`; see [`sequence::SequencePresentation`].

pub mod enumerate;
pub mod error;
pub mod json;
pub mod lattice;
pub mod sequence;
pub mod upset;

pub use error::{Error, Result};
pub use lattice::{catalog, product, Decomposition, Lattice, ProductLattice, SplittingPair};
pub use upset::{UpwardClosedSet, Vector};
