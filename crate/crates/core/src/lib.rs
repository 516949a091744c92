//! Combinatorics of ideal triangulations of 3-manifolds with boundary.
//!
//! The crate covers the path from a gluing table to a minimality verdict:
//! edge classes and vertex links ([`topology`]), the dual special spine
//! ([`spine`]), its simple subpolyhedra ([`subpoly`]), the ε-invariant in
//! exact `Z[ε]` arithmetic ([`golden`]), Pachner moves ([`moves`]), o-graph
//! decoding and the `Γ(k,l,m)` family ([`ograph`], [`family`]), and the
//! verdict engine with a small exhaustive census ([`census`]).

pub mod census;
pub mod family;
pub mod golden;
pub mod moves;
pub mod ograph;
pub mod perm;
pub mod signature;
pub mod spine;
pub mod subpoly;
pub mod topology;
pub mod triangulation;
pub mod union_find;

pub use census::{census_enumerate, minimality_verdict, CensusMember, CensusOptions, CensusResult, Criterion, Verdict};
pub use family::{generate_family, search_block_decorations, BlockDecoration};
pub use golden::{epsilon_invariant, golden_mul, golden_pow, golden_to_float, EpsilonInvariant, GoldenNumber};
pub use moves::{applicable_32, apply_23, apply_32, MoveSite};
pub use ograph::{decode_ograph, DecoratedGraph};
pub use perm::Perm4;
pub use signature::{canonical_form, canonical_signature, Signature};
pub use spine::{dualize, spine_stats, traversal_count, ComponentSet, DualSpine, SpineStats};
pub use subpoly::{enumerate_simple_subpolyhedra, is_poor, is_simple_subpolyhedron, subpoly_characteristics};
pub use topology::{edge_classes, euler_characteristic, vertex_links, EdgeClass, VertexLinkReport};
pub use triangulation::{FaceId, FaceRecord, Triangulation, TriangulationError};
