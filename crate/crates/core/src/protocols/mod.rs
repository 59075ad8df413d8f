//! Replica synchronization protocols.
//!
//! Every protocol is a deterministic state machine driven by three events:
//! a local update ([`Replica::operation`]), a periodic synchronization step
//! ([`Replica::sync`]) and message receipt ([`Replica::receive`]). Replicas
//! never talk to the network directly; they return [`Envelope`]s for the
//! caller to deliver.
//!
//! State is replicated per object: a replica holds one lattice value per
//! [`ObjectId`](crate::ObjectId) and every protocol keeps its bookkeeping per
//! object, batching all objects into one message per neighbor.

mod delta;
mod envelope;
mod opbased;
mod replica;
mod scuttlebutt;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ReplicaId;

pub use delta::{BufferEntry, DeltaBuffer};
pub use envelope::{Envelope, Op, Payload, PayloadKind, Size, Version};
pub use opbased::OpMiddleware;
pub use replica::{Memory, ProtocolState, Replica};
pub use scuttlebutt::ScuttlebuttStore;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProtocolKind {
    StateBased,
    DeltaClassic,
    DeltaBp,
    DeltaRr,
    DeltaBpRr,
    Scuttlebutt,
    ScuttlebuttGc,
    OpBased,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 8] = [
        ProtocolKind::StateBased,
        ProtocolKind::DeltaClassic,
        ProtocolKind::DeltaBp,
        ProtocolKind::DeltaRr,
        ProtocolKind::DeltaBpRr,
        ProtocolKind::Scuttlebutt,
        ProtocolKind::ScuttlebuttGc,
        ProtocolKind::OpBased,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProtocolKind::StateBased => "state-based",
            ProtocolKind::DeltaClassic => "delta-classic",
            ProtocolKind::DeltaBp => "delta-bp",
            ProtocolKind::DeltaRr => "delta-rr",
            ProtocolKind::DeltaBpRr => "delta-bp-rr",
            ProtocolKind::Scuttlebutt => "scuttlebutt",
            ProtocolKind::ScuttlebuttGc => "scuttlebutt-gc",
            ProtocolKind::OpBased => "op-based",
        }
    }

    pub fn is_delta(self) -> bool {
        matches!(
            self,
            ProtocolKind::DeltaClassic
                | ProtocolKind::DeltaBp
                | ProtocolKind::DeltaRr
                | ProtocolKind::DeltaBpRr
        )
    }

    /// Avoid back-propagation of δ-groups.
    pub fn bp(self) -> bool {
        matches!(self, ProtocolKind::DeltaBp | ProtocolKind::DeltaBpRr)
    }

    /// Remove redundant state from received δ-groups.
    pub fn rr(self) -> bool {
        matches!(self, ProtocolKind::DeltaRr | ProtocolKind::DeltaBpRr)
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProtocolKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProtocolKind::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown protocol `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error("replica {to} received a message from {from}, which is not a neighbor")]
    UnknownSender { from: ReplicaId, to: ReplicaId },
    #[error("message for {expected} delivered to {actual}")]
    WrongRecipient {
        expected: ReplicaId,
        actual: ReplicaId,
    },
    #[error("{protocol} replica cannot handle a {payload:?} payload")]
    UnexpectedPayload {
        protocol: ProtocolKind,
        payload: PayloadKind,
    },
}

/// Predicted synchronization metadata per node per period, in vector
/// entries: `NP` for Scuttlebutt, `N²P` with garbage collection, `NPU` for
/// the op-based middleware (`U` ops in flight per neighbor) and `P` for
/// delta-based protocols. State-based synchronization ships no metadata.
pub fn metadata_cost(protocol: ProtocolKind, n: u64, p: u64, u: u64) -> u64 {
    match protocol {
        ProtocolKind::StateBased => 0,
        ProtocolKind::Scuttlebutt => n * p,
        ProtocolKind::ScuttlebuttGc => n * n * p,
        ProtocolKind::OpBased => n * p * u,
        _ => p,
    }
}
