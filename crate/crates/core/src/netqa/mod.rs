//! Outlier detection in external link graphs.

mod algo;
mod fetch;
mod graph;
mod outliers;

pub use algo::{connected_components, find_bridges, label_propagation, plurality_labels, DEFAULT_ROUND_CAP};
pub use fetch::{cache_path, fetch_link_graph, link_query, parse_sparql_json, FetchError, FetchOptions, FetchOutcome};
pub use graph::{LinkGraph, LinkGraphBuilder};
pub use outliers::{detect_outliers, tactic_counts, OutlierCandidate, OutlierEvidence, OutlierOptions, Tactic};
