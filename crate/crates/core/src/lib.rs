//! Reaction systems with interactive processes, attractor analysis, and
//! controllability queries.

pub mod cli;
pub mod control;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod mask;
pub mod models;
pub mod process;
pub mod reaction;
pub mod species;
pub mod status;
pub mod subsets;

pub use error::{Error, Result};
pub use process::{run_process, ContextSequence, Initial, ProcessTrace};
pub use reaction::{Reaction, ReactionSystem, Violation};
pub use species::{SpeciesSet, SpeciesTable};
pub use status::{StatusLabel, StatusMarkers};
