//! Finite quasigroups as Cayley tables: parastrophes, isotopy, holomorphs,
//! identity checking, and exhaustive verification suites.

pub mod claim;
pub mod enumerate;
pub mod error;
pub mod holomorph;
pub mod identities;
pub mod isotopy;
pub mod parastrophe;
pub mod perm;
pub mod quasigroup;
pub mod verify;

/// Elements are indices `0..n`.
pub type Element = usize;

pub use claim::Claim;
pub use error::{Error, Result};
pub use parastrophe::{parastrophe, ParastropheKind};
pub use perm::Perm;
pub use quasigroup::{NucleusKind, Quasigroup, Side};
