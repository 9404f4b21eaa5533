//! Line graphs of complete graphs, their Eulerian orientations, and
//! connectivity certification of those orientations.

pub mod bridge;
pub mod connectivity;
pub mod euler;
pub mod expansion;
pub mod linegraph;

pub use bridge::{line_graph_bridge_report, BridgeReport};
pub use connectivity::{
    certify_strong_connectivity, disjoint_paths, is_strongly_k_connected, validate_certified,
    validate_refuted, ConnectivityCertificate, Digraph, PairPolicy, RefutedWitness, Verdict,
};
pub use euler::{
    enumerate_eulerian_orientations, eulerian_orientation, EnumeratedOrientations, Orientation,
};
pub use expansion::{expansion_condition, ExpansionRecord, ExpansionReport};
pub use linegraph::{build_line_graph, LineGraph, SimpleGraph};
