//! Tile systems and 2t-gon systems over connected bipartite graphs: build
//! the five adjacency-matrix pairs, verify the 2-rank-graph axioms, and
//! compute K-groups, identity-class orders and polyhedron homology by exact
//! integer linear algebra, checking every computation against the closed
//! forms for complete bipartite graphs.
//!
//! The `examples/` directory holds one runnable walk-through per capability;
//! the `tilek` binary exposes the same pipelines as `compute`, `homology`,
//! `sweep` and `skeleton` subcommands.
//!
//! ```
//! use tilek::{BipartiteGraph, SystemKind};
//!
//! let graph = BipartiteGraph::complete(4, 5)?;
//! let report = tilek::ktheory::verify(&graph, SystemKind::PointedTile)?;
//! assert!(report.checks.all_pass());
//! assert_eq!(report.computed.render(), "Z/2 + (Z/6)^3 + Z^24");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod adjacency;
pub mod graph;
pub mod group;
pub mod homology;
pub mod ktheory;
pub mod linalg;
pub mod polygon;
pub mod skeleton;
pub mod sweep;

pub use adjacency::{build_pair, AdjacencyMatrix, SystemKind};
pub use graph::BipartiteGraph;
pub use group::FgAbelianGroup;
pub use ktheory::{compute_k, predict, verify, KTheoryResult, VerificationReport};
pub use linalg::{snf, IntMatrix, Order};
pub use skeleton::Skeleton;
