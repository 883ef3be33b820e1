//! Text formats: models, Boolean networks, context sequences, traces.

pub mod boolnet;
pub mod context;
pub mod model;
pub(crate) mod scan;
pub mod trace;

pub use boolnet::{
    bn_to_reactions, parse_boolean_network, parse_dnf, serialize_boolean_network, BooleanNetwork,
    Conjunction, Dnf,
};
pub use context::{parse_context_sequence, parse_name_list, parse_set, serialize_context_sequence};
pub use model::{parse_model, serialize_model, ModelDocument};
pub use trace::{export_trace, ExportOptions, TraceFormat, TraceJson};
