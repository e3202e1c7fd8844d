use std::path::Path;

use racg_hecke_core::CoxeterGraph;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `{"generators": ["r","s","t"], "edges": [["r","t"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

impl GraphFile {
    pub fn from_graph(graph: &CoxeterGraph) -> Self {
        GraphFile {
            generators: graph.labels().to_vec(),
            edges: graph
                .edges()
                .into_iter()
                .map(|(a, b)| (graph.label(a).to_string(), graph.label(b).to_string()))
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<CoxeterGraph, CliError> {
        CoxeterGraph::new(&self.generators, &self.edges).map_err(|e| CliError::Config(format!("invalid graph: {e}")))
    }
}

pub fn parse_graph(text: &str) -> Result<CoxeterGraph, CliError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| CliError::Config(format!("graph file: {e}")))?;
    file.to_graph()
}

pub fn load_graph(path: &Path) -> Result<CoxeterGraph, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use racg_hecke_core::catalog;

    #[test]
    fn round_trip() {
        let g = catalog::path_complement();
        let text = serde_json::to_string(&GraphFile::from_graph(&g)).unwrap();
        assert_eq!(text, r#"{"generators":["r","s","t"],"edges":[["r","t"]]}"#);
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_graph("{").is_err());
        assert!(parse_graph(r#"{"generators":["a"],"edges":[["a","b"]]}"#).is_err());
        assert!(parse_graph(r#"{"generators":["a","a"]}"#).is_err());
        assert!(parse_graph(r#"{"generators":["a"],"colour":1}"#).is_err());
        assert_eq!(parse_graph(r#"{"generators":["a","b"]}"#).unwrap().rank(), 2);
    }
}
