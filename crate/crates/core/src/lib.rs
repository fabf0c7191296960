//! Exhaustive computations with π-relative normality, Fitting sets,
//! projectors and injectors on small finite permutation groups.
//!
//! Everything here is pure and allocation-only; file formats, the command
//! line and parallel drivers live in the `pigroups` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod dnormal;
pub mod error;
pub mod fitting;
pub mod group;
pub mod injector;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
pub mod perm;
pub mod pi;
pub mod projector;
pub mod quotient;
pub mod structure;
pub mod suites;

pub use dnormal::Dnormality;
pub use error::{Error, Result};
pub use group::{direct_product, ElementId, Group, Subgroup};
pub use perm::{parse_permutation, Perm};
pub use pi::{ClassSpec, PrimeSet};
pub use quotient::{quotient, QuotientHandle, QuotientView};
pub use structure::Lattice;
