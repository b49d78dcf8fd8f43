//! Synchronizing automata through their transition monoids.
//!
//! States are `0..n`, letters `0..k` with display names, and a transformation
//! acts on the right: `s.then(t)` applies `s` first.

pub mod automaton;
pub mod classify;
mod check;
pub mod congruence;
pub mod corpus;
pub mod dot;
mod error;
pub mod format;
pub mod galois;
mod limits;
pub mod lift;
pub mod monoid;
pub mod partition;
pub mod radical;
pub mod report;
pub mod sync;
pub mod transformation;
pub mod verify;

pub use automaton::{Automaton, StateSet, Word};
pub use check::CheckReport;
pub use congruence::Congruence;
pub use error::{Error, Result};
pub use limits::Limits;
pub use monoid::{ElementSet, MonoidIdeal, TransitionMonoid};
pub use partition::Partition;
pub use transformation::Transformation;
