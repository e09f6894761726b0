//! Cycle vertex-connectivity augmentation.
//!
//! Given a cycle `C_n` and candidate chords `S`, find few chords that make
//! `C_n` 3-vertex-connected. The crate provides the combinatorial model,
//! feasibility oracles, local-search approximation, exact lower-bound
//! certificates in rational arithmetic, and a branch-and-bound solver.

pub mod bounds;
pub mod circle;
pub mod error;
pub mod exact;
pub mod feasibility;
pub mod generate;
pub mod instance;
pub mod local_search;
pub mod rational;

mod par;

pub use error::{Error, Result};
pub use instance::{Chord, Instance, LinkSet};
pub use rational::Ratio;
pub use par::is_parallel;
