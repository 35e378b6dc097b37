//! Real-world problems encoded as box-bounded continuous objectives.
//!
//! Each encoding comes with a total decoder: any in-bounds decision vector
//! maps to a valid domain solution (partition, tree, assignment, schedule or
//! dispatch), so every optimizer in the crate applies unchanged.

pub mod clustering;
pub mod ed;
pub mod hlp;
pub mod mst;
pub mod pms;

pub use clustering::{clustering_objective, decode_clusters, ClusterAssignment, ClusterObjective, ClusteringInstance};
pub use ed::{ed_objective, Dispatch, EdInstance};
pub use hlp::{decode_hubs, hlp_objective, HlpInstance, HubAssignment};
pub use mst::{decode_tree, mst_objective, prim_mst_oracle, prufer_decode, GraphInstance, SpanningTree};
pub use pms::{decode_schedule, pms_objective, PmsInstance, Schedule};
