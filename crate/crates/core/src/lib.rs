//! Group codes over finite fields.
//!
//! A linear code `C ≤ F_q^n` is a (left) `G`-code when some bijection between
//! coordinates and the elements of a group `G` of order `n` carries `C` onto a
//! (left) ideal of the group algebra `F_q[G]`. This crate builds the groups,
//! algebras and codes involved and produces checkable certificates
//! ([`theorems::Witness`]) for abelian and cyclic group-code structure,
//! weight divisibility by `|G'|` and embeddings into sums of repetition codes.

pub mod code;
pub mod constructions;
pub mod error;
pub mod ffield;
pub mod galg;
pub mod io;
pub mod linalg;
pub mod par;
pub mod perm;
pub mod theorems;

pub use error::{Error, Result};
pub use par::Exec;
