//! Exact-arithmetic toolkit for Lie algebras given by rational structure
//! constants: centroids, centres, derivations, low-degree cohomology,
//! gradings, central extensions, loop algebras, and root-graded structure,
//! all over Q with no floating point anywhere.

pub mod builders;
pub mod centroid;
pub mod cohom;
pub mod error;
pub mod format;
pub mod lie;
pub mod linalg;
pub mod loopkit;
pub mod poly;
pub mod rational;
pub mod rootgraded;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rat;
