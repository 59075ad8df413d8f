//! State-based CRDTs with irredundant join decompositions, delta-based and
//! baseline synchronization protocols, and a deterministic network simulator
//! for comparing them.

pub mod crdts;
pub mod ids;
pub mod lattice;
pub mod metrics;
pub mod protocols;
pub mod simnet;
pub mod workloads;

pub use ids::{ObjectId, ReplicaId, Token};
pub use lattice::{decompose, delta, Decomposition, Lattice, LatticeError};
