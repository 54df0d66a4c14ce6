pub mod config;
pub mod cover;
pub mod covering;
pub mod error;
pub mod girth;
pub mod gluing;
pub mod gog;
pub mod kcover;
pub mod perm;
pub mod words;
pub mod subgroup_graph;
pub mod free_witness;
pub mod permgroup;
pub mod verify;
pub mod vf;
pub mod cli;
