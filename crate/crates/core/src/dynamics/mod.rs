//! Orbits, attractors, context graphs, image membership, and nonce extension.

pub mod graph;
pub mod image;
pub mod nonce;
pub mod orbit;

pub use graph::{context_graph, ContextGraph, EdgeSemantics, GraphEdge, GraphOptions};
pub use image::{
    image_membership, projected_image_membership, superset_image_membership, PreimageCertificate,
};
pub use nonce::{nonce_extension, NonceMode, FULL_NONCE_LIMIT};
pub use orbit::{attractor_report, orbit, Orbit};
