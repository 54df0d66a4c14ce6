//! Finite trees of finite groups: groups, paths, normal forms, the edge
//! order and the normalizer condition.

pub mod graph;
pub mod group;
pub mod normalizer;
pub mod order;
pub mod path;
pub mod standard;

pub use graph::{DirEdge, Edge, GraphOfGroups};
pub use group::{FiniteGroupTable, Subgroup};
pub use normalizer::{check_normalizer_condition, NormalizerVerdict};
pub use order::EdgeOrder;
pub use path::GPath;
