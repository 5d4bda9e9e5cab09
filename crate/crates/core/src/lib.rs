//! Exact computation of matroid depth parameters.
//!
//! The crate works with matroids on at most 16 elements stored as rank tables,
//! vector matroids over small prime fields, and cycle matroids of multigraphs.

#![forbid(unsafe_code)]

pub mod caps;
pub mod decomposition;
pub mod depth;
pub mod error;
pub mod extensions;
pub mod gf;
pub mod graphs;
pub mod io;
pub mod matrix_depth;
pub mod matroid;
pub mod theorems;

pub use caps::{caps, set_caps, Caps};
pub use error::{Error, Result};
pub use gf::FFMatrix;
pub use graphs::MultiGraph;
pub use matroid::{Fingerprint, Mask, OracleMatroid, RankTable};
