//! Combinatorial maps as permutations on quadricells, graph embeddings,
//! and the enumeration machinery built on top of them.
//!
//! Quadricell `q = 4e + 2a + b` belongs to edge `e`; the involutions
//! `α` and `β` flip bit `a` and bit `b`. Composition of permutations is
//! always "apply the right factor first".

pub mod cli;
pub mod closed_forms;
pub mod embed;
pub mod error;
pub mod graph;
pub mod io;
pub mod map;
pub mod perm;
pub mod poly;
pub mod smanifold;
pub mod voltage;

pub use error::{Error, Result};
pub use graph::MultiGraph;
pub use map::CombMap;
pub use perm::Perm;
