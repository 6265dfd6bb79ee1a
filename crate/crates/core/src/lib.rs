//! Exact construction and structural analysis of small finite groups.
//!
//! Groups are generated from 2x2 matrices over cyclotomic integers, turned
//! into multiplication tables, and then studied purely through their tables:
//! subgroup lattices, lattice automorphisms, quotients, product
//! decompositions, cycle graphs and isomorphism tests.

pub mod cyclotomic;
pub mod error;
pub mod families;
mod graph_iso;
pub mod group;
pub mod lattice;
pub mod matrix;
pub mod structure;

pub use error::{Error, Result};
pub use families::FamilySpec;
pub use group::{generate_group, ElementSet, FiniteGroup, Subgroup, Word, DEFAULT_CAP};
pub use matrix::{standard_matrices, Mat2};
