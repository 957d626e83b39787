//! Exact recession cones, normal collections, restricted cores and
//! restricted Weber sets for cooperative games on set systems.
//!
//! Coalitions are bitmasks over at most 16 players. All polyhedral work is
//! exact: a double description routine over big integers produces
//! V-representations, and an exact simplex decides hull membership.

pub mod cli;
pub mod coalition;
pub mod core_weber;
pub mod document;
pub mod error;
pub mod lattice;
pub mod normal;
pub mod polyhedra;
pub mod rays;
pub mod setsystem;

pub use coalition::{Coalition, Universe, MAX_PLAYERS};
pub use core_weber::{
    build_restricted_core, is_convex, load_game, marginal_vector, restricted_marginal_vectors,
    restricted_weber, verify_inclusion, Game, InclusionVerdict, MarginalVector,
};
pub use error::{Error, Result};
pub use lattice::{extract_poset, PlayerPoset};
pub use normal::{
    algo1_irredundant, grabisch_xie_collection, kills, lift_collection, validate_normal,
    weber_collection, CollectionKind, Lift, NormalCollection,
};
pub use polyhedra::{
    dd_generators, hull_membership, HPolyhedron, Rational, RationalVector, VRepresentation,
};
pub use rays::{
    rays_distributive, rays_general, rays_regular, recession_cone, wuc_ray_equality_condition,
    OrderedPairRay, RayReport,
};
pub use setsystem::{load_set_system, ChainOfSets, SetSystem, StructureReport};
