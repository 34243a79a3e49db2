//! Dual separation systems of bipartite graphs: order functions, shifts
//! between the two sides and the edge set, tangles and profiles, and a
//! homological view of orientations.

/// Library version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod bigraph;
pub mod corpus;
pub mod error;
pub mod homology;
pub mod order;
pub mod separation;
pub mod shift;
pub mod tangle;
pub mod verify;

pub use bigraph::{BipartiteGraph, IncidenceRecord, Side, Vertex};
pub use error::{Error, Result};
pub use order::{HalfInt, OrderKind};
pub use separation::{
    enumerate_seps, make_sep, EnumCaps, GroundSet, OrientedSep, SepMode, SubsetMask,
    UnorientedSep,
};
pub use shift::Universe;
pub use tangle::{LowOrderSystem, Orientation, TangleKind, TangleReport};
