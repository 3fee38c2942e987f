//! Exact linear algebra over Q: dense matrices, a sparse streaming echelon
//! for large kernel computations, canonical subspaces, and simultaneous
//! eigenspace decompositions with rational spectra.

pub mod echelon;
pub mod eigen;
pub mod matrix;
pub mod subspace;

pub use echelon::{kernel_dense, kernel_streamed, solve_dense, Echelon, SparseRow};
pub use eigen::{rational_spectrum, simultaneous_eigenspaces, EigenBlock};
pub use matrix::Matrix;
pub use subspace::Subspace;
