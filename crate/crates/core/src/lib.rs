//! Finite groups given by permutations or Cayley tables, their subgroup
//! lattices, and σ-theoretic predicates over a partition σ of the primes.

pub mod arith;
pub mod bitset;
pub mod catalog;
pub mod chief;
pub mod error;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod limits;
pub mod predicates;
pub mod subgroup;

pub use arith::{ClassId, PrimePartition, RemainderPolicy};
pub use bitset::BitSet;
pub use error::{Error, Result};
pub use group::{quotient_group, Elem, FiniteGroup, GroupHom, GroupLiteral};
pub use lattice::{Lattice, NormalLattice, Poset};
pub use limits::Limits;
pub use subgroup::Subgroup;
