//! Multi-level radius clustering and hub clustering.

mod cgk;
mod sequence;

pub use cgk::{cgk_clustering, CgkClustering};
pub use sequence::{cluster_sequence, nearest_center, ClusterSequence, Level};
