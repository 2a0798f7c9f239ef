//! Graph spanners, sourcewise spanners and emulators, with exact-distance
//! verification and a layered lower-bound generator.

pub mod additive;
pub mod clustering;
pub mod error;
pub mod graph;
pub mod hybrid;
pub mod lowerbound;
pub mod rng;
pub mod sourcewise;
pub mod spanner;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Dist, Edge, EdgeSet, Emulator, Graph, Path, Vertex, UNREACHABLE};
pub use spanner::{SourceSet, Spanner, SpannerMeta};
