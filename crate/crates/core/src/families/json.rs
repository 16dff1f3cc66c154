use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, MetricGraph};

/// JSON wire format: vertices, edges and boundary, each sorted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    pub boundary: Vec<String>,
}

impl From<&MetricGraph> for GraphDocument {
    fn from(g: &MetricGraph) -> Self {
        Self { vertices: g.vertex_ids().to_vec(), edges: g.edge_specs(), boundary: g.boundary_ids() }
    }
}

/// Parses and validates a graph document.
pub fn load_graph(json: &str) -> Result<MetricGraph> {
    let doc: GraphDocument = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    let mut seen = BTreeSet::new();
    for e in &doc.edges {
        if !seen.insert(e.id.as_str()) {
            return Err(Error::Schema(format!("duplicate edge id `{}`", e.id)));
        }
        if !e.length.is_finite() || e.length <= 0.0 {
            return Err(Error::Schema(format!("edge `{}` has invalid length {}", e.id, e.length)));
        }
    }
    MetricGraph::new(doc.vertices, doc.edges, doc.boundary)
}

/// Canonical serialization: pretty-printed, sorted arrays, trailing newline.
pub fn save_graph(g: &MetricGraph) -> String {
    let mut s = serde_json::to_string_pretty(&GraphDocument::from(g)).expect("graph document serializes");
    s.push('\n');
    s
}
