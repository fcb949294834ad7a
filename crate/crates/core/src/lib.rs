//! Combinatorial equivariant Burnside groups of finite groups.
//!
//! The crate computes the symbols group generated by triples `(H, Y, beta)`
//! — an abelian subgroup `H` of a finite group `G`, a subgroup `Y` of
//! `Z_G(H)/H` stored through its lift `S`, and a multiset `beta` of nonzero
//! characters generating the dual of `H` — modulo reordering, conjugation,
//! and the blow-up relations. On top of the symbols group it provides
//! prefilter quotients, indexed and projectively indexed variants with their
//! `psi`/`omega` maps, the projectivized-bundle class formula, products,
//! and restriction to subgroups. Quotient structure over the integers is
//! obtained from exact Hermite/Smith normal forms.

pub mod abelian;
pub mod burnside;
pub mod error;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod symbols;

pub use abelian::{AbelianStructure, Character};
pub use burnside::{
    diagonal_product, fibration_class, indexed_push, product, restrict, transport, BurnsideClass,
    Limits, Prefilter, Presentation, ProductGroup, RestrictedGroup,
};
pub use error::Error;
pub use group::{abelian_subgroup_classes, intermediate_subgroups, FiniteGroup, Subgroup};
pub use lattice::{IntMatrix, QuotientStructure, SmithForm};
pub use perm::Perm;
pub use symbols::{
    enumerate_symbols, relation_b1, relation_b2, IndexedSymbol, LinComb, Symbol,
};
