//! Countermodels for quantifier-free induction over Lisp-like lists.
//!
//! The crate provides exact ordinal arithmetic below ω^ω ([`ordinal`]),
//! canonical transfinite sequences ([`transfinite`]), a many-sorted syntax for
//! the list languages ([`logic`]), the non-standard structures `M1(m)` and `M2`
//! ([`models`]), and induction-schema builders, bounded checkers, certificates
//! and benchmark emission ([`induction`]).

pub mod cli;
pub mod gen;
pub mod induction;
pub mod logic;
pub mod models;
pub mod ordinal;
pub mod transfinite;

pub use ordinal::Ordinal;
pub use transfinite::{Block, NElem, Nat, TransfiniteList};
