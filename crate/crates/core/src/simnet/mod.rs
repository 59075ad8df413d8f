//! Deterministic discrete-event network simulation.
//!
//! Time advances in ticks. Every `sync_interval` ticks a period starts: due
//! messages are delivered, each node performs its operations for the period
//! (nodes in id order), then every node runs a synchronization step. Sent
//! messages arrive after a uniformly drawn delay and may be duplicated.
//! Once the workload is exhausted the simulator keeps synchronizing until all
//! replicas hold equal states or a round bound is hit.

mod config;
mod queue;
pub mod script;
mod sim;
mod topology;

pub use config::{ConfigError, DelayRange, SimConfig, WorkloadSpec};
pub use queue::EventQueue;
pub use sim::{round_bound, run, run_with, Outcome, SimError, RNG_NAME};
pub use topology::{Topology, TopologyError, TopologyKind};
