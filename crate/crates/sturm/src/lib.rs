//! Combinatorics of Sturm global attractors: permutations and their meanders,
//! Morse numbers, regular cell complexes of the 2-sphere with bipolar
//! orientations, Hamiltonian path pairs, duals, and exhaustive censuses.
//!
//! The central objects are *Sturm permutations* (dissipative Morse meanders)
//! and *3-cell templates* (decorated regular sphere complexes). The [`szs`]
//! module converts a template into its permutation; [`enumerate`] generates
//! all Sturm permutations of a given size; [`catalog`] carries the embedded
//! census fixtures.

pub mod catalog;
pub mod complex;
pub mod dual;
pub mod enumerate;
pub mod generators;
pub mod meander;
pub mod perm;
pub mod platonic;
pub mod render;
pub mod szs;

pub use perm::{Permutation, TrivialAction};
