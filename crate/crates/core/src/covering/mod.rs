//! Covering spaces of trees of finite groups built from vertex pieces.

pub mod body;
pub mod extend;
pub mod fold;
pub mod precover;

pub use body::{enumerate_pieces, BodyCatalog, BodyType, Handle};
pub use extend::{
    associated_tuple, close_nontrivial_faces, complete_cover, edge_order_holds, thicken, AssociatedTuple, Completion,
    RoundLog,
};
pub use fold::fold_subgroup;
pub use precover::{e_length, Basepoint, FreeHandle, Gluing, Lift, Piece, PreCovering, PreCoveringDoc, Realization};
