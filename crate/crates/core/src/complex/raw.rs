//! Serialized form of a square complex.
//!
//! ```json
//! {
//!   "name": "torus",
//!   "vertices": ["o"],
//!   "edges": [{"id": "a", "from": "o", "to": "o"}, {"id": "b", "from": "o", "to": "o"}],
//!   "squares": [["a", "b", "-a", "-b"]],
//!   "basepoint": "o"
//! }
//! ```
//!
//! Every listed edge gets a reverse named `<id>^-1` unless that id is listed
//! explicitly (or named through the optional `reverse` field). Square sides are
//! signed edge ids: a leading `-` reverses the edge, a leading `+` is ignored.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComplex {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
    #[serde(default)]
    pub squares: Vec<Vec<String>>,
    pub basepoint: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEdge {
    pub id: String,
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reverse: Option<String>,
}

impl RawComplex {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("raw complex serializes")
    }
}
