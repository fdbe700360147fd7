//! Exhaustive generation, extension and classification of triangle-free
//! k-chromatic graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`], [`graph6`] and [`fixture`] hold the bitset graph type and
//!   its text formats;
//! * [`canon`] computes canonical keys and automorphism group orders;
//! * [`color`] decides k-colourability and criticality;
//! * [`mis`] enumerates maximal and distance-3 independent sets;
//! * [`mtfgen`] generates maximal triangle-free graphs;
//! * [`extend`] implements the maximum-degree extension and lower-bound
//!   certificates;
//! * [`expand`] covers edge-removal expansion and the heuristic search for
//!   non-vertex-critical graphs;
//! * [`classify`] builds per-order count reports.

pub mod bitset;
pub mod canon;
pub mod classify;
pub mod color;
pub mod expand;
pub mod extend;
pub mod fixture;
pub mod graph;
pub mod graph6;
pub mod mis;
pub mod mtfgen;
pub mod par;

pub use bitset::{VertexSet, MAX_ORDER};
pub use canon::{canonical_key, CanonicalKey, DedupStore};
pub use graph::{GirthMode, Graph, GraphError};
