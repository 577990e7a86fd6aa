//! Nearest-neighbor condensation.
//!
//! Reduces a labeled training set to a subset that the 1-NN rule classifies
//! the same way. The [`condense`] module holds MSS, RSS, VSS, FCNN and a
//! greedy NET baseline; [`verify`] checks consistency, selectivity, 2-D
//! border points and the angular bounds on RSS and FCNN selections.

pub mod bench;
pub mod cli;
pub mod condense;
pub mod dataset;
pub mod error;
pub mod neighbors;
pub mod verify;

pub use condense::{condense, Algorithm, Subset};
pub use dataset::{Label, LabeledPoint, TrainingSet};
pub use error::{Error, Result};
pub use neighbors::{build_neighbor_table, NeighborTable};
