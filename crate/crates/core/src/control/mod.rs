//! Witness search and decision procedures for (target) controllability.

pub mod constraint;
pub mod decide;
pub mod query;
pub mod witness;

pub use constraint::{allowed_contexts, ContextConstraint, DEFAULT_CONTEXT_LIMIT};
pub use decide::{
    decide_controllable, decide_target_controllable, minimal_i, minimal_n, ControllabilityVerdict,
    DecideOptions, MinimalIReport, MinimalNReport, Scope, DEFAULT_EXHAUSTIVE_CEILING,
    EXHAUSTIVE_HARD_LIMIT,
};
pub use query::{ControlQuery, StartMode, DEFAULT_MAX_VISITED};
pub use witness::{
    find_witness, search_witness, trivial_witness, verify_witness, verify_witness_from,
    ControlWitness, SearchOptions, SearchReport, WitnessCheck, DEFAULT_FRONTIER_LIMIT,
};
