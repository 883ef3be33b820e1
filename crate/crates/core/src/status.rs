//! Proliferation status of a state.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::species::SpeciesSet;

/// Ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StatusLabel {
    #[serde(rename = "No proliferation")]
    NoProliferation,
    #[serde(rename = "Proliferation")]
    Proliferation,
    #[serde(rename = "Uncontr. prolif.")]
    UncontrolledProliferation,
}

impl StatusLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            StatusLabel::NoProliferation => "No proliferation",
            StatusLabel::Proliferation => "Proliferation",
            StatusLabel::UncontrolledProliferation => "Uncontr. prolif.",
        }
    }
}

impl fmt::Display for StatusLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Marker species for the two proliferation levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatusMarkers {
    pub proliferation: SpeciesSet,
    pub uncontrolled: SpeciesSet,
}

impl StatusMarkers {
    /// Uncontrolled wins over plain proliferation when both markers are present.
    pub fn classify(&self, state: &SpeciesSet) -> StatusLabel {
        let present = |m: &SpeciesSet| !m.is_empty() && m.is_subset(state);
        if present(&self.uncontrolled) {
            StatusLabel::UncontrolledProliferation
        } else if present(&self.proliferation) {
            StatusLabel::Proliferation
        } else {
            StatusLabel::NoProliferation
        }
    }
}
