//! Hand-scripted runs: explicit operations, synchronization steps and
//! deliveries instead of a schedule. Used to replay small traces step by
//! step.

use crate::crdts::GSet;
use crate::lattice::{Canonical, Lattice};
use crate::protocols::{Envelope, Payload, ProtocolError, ProtocolKind, Replica};
use crate::{ObjectId, ReplicaId};

use super::Topology;

/// One message produced by a labelled synchronization step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentMessage {
    pub label: String,
    pub from: ReplicaId,
    pub to: ReplicaId,
    pub payload: String,
    pub entries: usize,
}

impl std::fmt::Display for SentMessage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}->{} {} ({} entries)",
            self.label, self.from, self.to, self.payload, self.entries
        )
    }
}

pub struct Script<L> {
    replicas: Vec<Replica<L>>,
    in_flight: Vec<Envelope<L>>,
    sent: Vec<SentMessage>,
}

fn describe<L: Lattice + Canonical>(p: &Payload<L>) -> String {
    let join = |items: &mut dyn Iterator<Item = &L>| {
        let mut acc = L::bottom();
        for x in items {
            acc.join_assign(x);
        }
        acc.to_canonical()
    };
    match p {
        Payload::FullState(items) => join(&mut items.iter().map(|(_, x)| x)),
        Payload::Delta { groups, .. } => join(&mut groups.iter().map(|(_, x)| x)),
        Payload::Digest(v) => format!("{v:?}"),
        Payload::SeenMatrix(m) => format!("{m:?}"),
        Payload::Pairs(pairs) => join(&mut pairs.iter().map(|(_, _, x)| x)),
        Payload::Ops(ops) => join(&mut ops.iter().map(|op| &op.delta)),
    }
}

impl<L: Lattice + Canonical> Script<L> {
    pub fn new(kind: ProtocolKind, topology: &Topology) -> Self {
        let n = topology.len();
        Script {
            replicas: (0..n)
                .map(|i| Replica::new(ReplicaId(i as u32), kind, topology.neighbor_ids(i), n))
                .collect(),
            in_flight: Vec::new(),
            sent: Vec::new(),
        }
    }

    pub fn replica(&self, id: ReplicaId) -> &Replica<L> {
        &self.replicas[id.index()]
    }

    pub fn operation(&mut self, node: ReplicaId, object: ObjectId, m: impl FnOnce(&L) -> L) -> L {
        self.replicas[node.index()].operation(object, m)
    }

    pub fn sync(&mut self, node: ReplicaId, label: &str) {
        for env in self.replicas[node.index()].sync() {
            self.sent.push(SentMessage {
                label: label.to_string(),
                from: env.from,
                to: env.to,
                payload: describe(&env.payload),
                entries: env.size.entries,
            });
            self.in_flight.push(env);
        }
    }

    /// Delivers pending messages addressed to `node`, in send order.
    pub fn deliver_to(&mut self, node: ReplicaId) -> Result<(), ProtocolError> {
        let (mine, rest): (Vec<_>, Vec<_>) =
            self.in_flight.drain(..).partition(|e| e.to == node);
        self.in_flight = rest;
        for env in mine {
            let replies = self.replicas[node.index()].receive(env)?;
            self.in_flight.extend(replies);
        }
        Ok(())
    }

    /// Delivers everything, including replies, until nothing is in flight.
    pub fn deliver_all(&mut self) -> Result<(), ProtocolError> {
        while !self.in_flight.is_empty() {
            let batch: Vec<_> = self.in_flight.drain(..).collect();
            for env in batch {
                let replies = self.replicas[env.to.index()].receive(env)?;
                self.in_flight.extend(replies);
            }
        }
        Ok(())
    }

    pub fn sent(&self) -> &[SentMessage] {
        &self.sent
    }

    /// Messages sent at the step with `label`.
    pub fn sent_at(&self, label: &str) -> Vec<&SentMessage> {
        self.sent.iter().filter(|m| m.label == label).collect()
    }
}

const A: ReplicaId = ReplicaId(0);
const B: ReplicaId = ReplicaId(1);
const C: ReplicaId = ReplicaId(2);
const D: ReplicaId = ReplicaId(3);
const OBJ: ObjectId = ObjectId(0);

fn add(e: &'static str) -> impl FnOnce(&GSet<String>) -> GSet<String> {
    move |s| s.add_delta(e.to_string())
}

/// Two replicas A and B. A adds `a`, B adds `b`; B syncs (step 1), A
/// receives and syncs (step 2); B adds `c`, receives and syncs (step 3).
pub fn two_replica_trace(kind: ProtocolKind) -> Result<Script<GSet<String>>, ProtocolError> {
    let t = Topology::from_edges(2, &[(0, 1)]).expect("valid");
    let mut s = Script::new(kind, &t);
    s.operation(A, OBJ, add("a"));
    s.operation(B, OBJ, add("b"));
    s.sync(B, "1");
    s.deliver_to(A)?;
    s.sync(A, "2");
    s.operation(B, OBJ, add("c"));
    s.deliver_to(B)?;
    s.sync(B, "3");
    Ok(s)
}

/// Four replicas, edges A–B, B–C, C–D, A–C. A adds `a`, B adds `b`; B syncs
/// (4), C syncs (5), A syncs (6), C receives from A and syncs (7).
pub fn four_replica_trace(kind: ProtocolKind) -> Result<Script<GSet<String>>, ProtocolError> {
    let t = Topology::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).expect("valid");
    let mut s = Script::new(kind, &t);
    s.operation(A, OBJ, add("a"));
    s.operation(B, OBJ, add("b"));
    s.sync(B, "4");
    s.deliver_all()?;
    s.sync(C, "5");
    s.deliver_all()?;
    s.sync(A, "6");
    s.deliver_to(C)?;
    s.sync(C, "7");
    Ok(s)
}

pub const REPLICA_C: ReplicaId = C;
pub const REPLICA_D: ReplicaId = D;
