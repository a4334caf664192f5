//! Vertex-critical graphs in forbidden-subgraph families.
//!
//! The crate covers graph primitives and graph6 I/O, induced-subgraph
//! search for parameterized patterns, cographs and cotrees, exact
//! colouring, k-vertex-criticality checks and obstructions, the
//! constructive colourings of (P4 + lP1, K_k)-free graphs with their palette
//! bounds, and isomorphism-free enumeration of small graphs.

pub mod chroma;
pub mod cograph;
pub mod construct;
pub mod critical;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod patterns;

pub use chroma::Coloring;
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use graph6::{parse_graph6, to_graph6};
pub use patterns::{Embedding, PatternSpec};
