use std::collections::BTreeMap;

use crate::lattice::Lattice;
use crate::{ObjectId, ReplicaId};

use super::{
    DeltaBuffer, Envelope, OpMiddleware, Payload, ProtocolError, ProtocolKind, ScuttlebuttStore,
};

#[derive(Debug, Clone)]
pub enum ProtocolState<L> {
    StateBased,
    Delta(DeltaBuffer<L>),
    Scuttlebutt(ScuttlebuttStore<L>),
    OpBased(OpMiddleware<L>),
}

/// Memory footprint in entries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Memory {
    /// CRDT state.
    pub state: usize,
    /// Deltas, versions or ops held for propagation.
    pub buffer: usize,
    /// Vectors, version keys and clocks.
    pub metadata: usize,
}

impl Memory {
    pub fn total(&self) -> usize {
        self.state + self.buffer + self.metadata
    }
}

/// One protocol instance. Holds one lattice value per object.
#[derive(Debug, Clone)]
pub struct Replica<L> {
    id: ReplicaId,
    kind: ProtocolKind,
    neighbors: Vec<ReplicaId>,
    states: BTreeMap<ObjectId, L>,
    proto: ProtocolState<L>,
    last_pending_pairs: usize,
}

impl<L: Lattice> Replica<L> {
    /// `n` is the total number of replicas; ids must be below it.
    pub fn new(id: ReplicaId, kind: ProtocolKind, mut neighbors: Vec<ReplicaId>, n: usize) -> Self {
        neighbors.sort();
        neighbors.dedup();
        let proto = match kind {
            ProtocolKind::StateBased => ProtocolState::StateBased,
            ProtocolKind::Scuttlebutt => {
                ProtocolState::Scuttlebutt(ScuttlebuttStore::new(id, n, false))
            }
            ProtocolKind::ScuttlebuttGc => {
                ProtocolState::Scuttlebutt(ScuttlebuttStore::new(id, n, true))
            }
            ProtocolKind::OpBased => ProtocolState::OpBased(OpMiddleware::new(id, n)),
            k => ProtocolState::Delta(DeltaBuffer::new(k.bp(), k.rr())),
        };
        Replica {
            id,
            kind,
            neighbors,
            states: BTreeMap::new(),
            proto,
            last_pending_pairs: 0,
        }
    }

    pub fn id(&self) -> ReplicaId {
        self.id
    }

    pub fn kind(&self) -> ProtocolKind {
        self.kind
    }

    pub fn neighbors(&self) -> &[ReplicaId] {
        &self.neighbors
    }

    pub fn protocol(&self) -> &ProtocolState<L> {
        &self.proto
    }

    pub fn states(&self) -> &BTreeMap<ObjectId, L> {
        &self.states
    }

    /// State of `object`; bottom if never touched.
    pub fn state(&self, object: ObjectId) -> L {
        self.states.get(&object).cloned().unwrap_or_else(L::bottom)
    }

    /// (op, neighbor) pairs shipped by the last op-based sync.
    pub fn pending_pairs(&self) -> usize {
        self.last_pending_pairs
    }

    pub fn memory(&self) -> Memory {
        let state = self.states.values().map(Lattice::weight).sum();
        let (buffer, metadata) = match &self.proto {
            ProtocolState::StateBased => (0, 0),
            ProtocolState::Delta(b) => (b.weight(), 0),
            ProtocolState::Scuttlebutt(s) => (s.weight(), s.metadata_units()),
            ProtocolState::OpBased(m) => (m.weight(), m.metadata_units()),
        };
        Memory {
            state,
            buffer,
            metadata,
        }
    }

    fn merge(&mut self, object: ObjectId, d: &L) {
        self.states.entry(object).or_insert_with(L::bottom).join_assign(d);
    }

    /// Applies a local update given as a δ-mutator and returns its delta.
    /// A bottom delta changes nothing and is not recorded anywhere.
    pub fn operation(&mut self, object: ObjectId, mutator: impl FnOnce(&L) -> L) -> L {
        let current = self.states.get(&object);
        let d = match current {
            Some(x) => mutator(x),
            None => mutator(&L::bottom()),
        };
        if d.is_bottom() {
            return d;
        }
        self.merge(object, &d);
        match &mut self.proto {
            ProtocolState::StateBased => {}
            ProtocolState::Delta(b) => b.push(object, d.clone(), self.id),
            ProtocolState::Scuttlebutt(s) => {
                s.record_local(object, d.clone());
            }
            ProtocolState::OpBased(m) => {
                m.record_local(object, d.clone());
            }
        }
        d
    }

    /// Periodic synchronization with every neighbor.
    pub fn sync(&mut self) -> Vec<Envelope<L>> {
        let id = self.id;
        let mut out = Vec::new();
        match &mut self.proto {
            ProtocolState::StateBased => {
                let full: Vec<(ObjectId, L)> = self
                    .states
                    .iter()
                    .filter(|(_, x)| !x.is_bottom())
                    .map(|(o, x)| (*o, x.clone()))
                    .collect();
                if !full.is_empty() {
                    for &j in &self.neighbors {
                        out.push(Envelope::new(id, j, Payload::FullState(full.clone())));
                    }
                }
            }
            ProtocolState::Delta(b) => {
                for &j in &self.neighbors {
                    let groups = b.group_for(j);
                    if !groups.is_empty() {
                        let seq = b.next_seq();
                        out.push(Envelope::new(id, j, Payload::Delta { seq, groups }));
                    }
                }
                b.clear();
            }
            ProtocolState::Scuttlebutt(s) => {
                let payload = match s.digest() {
                    Ok(v) => Payload::Digest(v),
                    Err(m) => Payload::SeenMatrix(m),
                };
                for &j in &self.neighbors {
                    out.push(Envelope::new(id, j, payload.clone()));
                }
            }
            ProtocolState::OpBased(m) => {
                let mut pairs = 0;
                for &j in &self.neighbors {
                    let ops = m.outgoing(j);
                    if !ops.is_empty() {
                        pairs += ops.len();
                        out.push(Envelope::new(id, j, Payload::Ops(ops)));
                    }
                }
                m.collect(&self.neighbors);
                self.last_pending_pairs = pairs;
            }
        }
        out
    }

    /// Handles a delivered message and returns any replies.
    pub fn receive(&mut self, env: Envelope<L>) -> Result<Vec<Envelope<L>>, ProtocolError> {
        if env.to != self.id {
            return Err(ProtocolError::WrongRecipient {
                expected: env.to,
                actual: self.id,
            });
        }
        if self.neighbors.binary_search(&env.from).is_err() {
            return Err(ProtocolError::UnknownSender {
                from: env.from,
                to: self.id,
            });
        }
        let from = env.from;
        let unexpected = ProtocolError::UnexpectedPayload {
            protocol: self.kind,
            payload: env.payload.kind(),
        };
        let mut replies = Vec::new();
        match (&mut self.proto, env.payload) {
            (ProtocolState::StateBased, Payload::FullState(items)) => {
                for (o, x) in items {
                    self.states.entry(o).or_insert_with(L::bottom).join_assign(&x);
                }
            }
            (ProtocolState::Delta(b), Payload::Delta { groups, .. }) => {
                for (o, d) in groups {
                    let state = self.states.entry(o).or_insert_with(L::bottom);
                    b.receive(o, &d, from, state);
                }
            }
            (ProtocolState::Scuttlebutt(s), Payload::Digest(theirs)) => {
                let pairs = s.missing(&theirs);
                if !pairs.is_empty() {
                    replies.push(Envelope::new(self.id, from, Payload::Pairs(pairs)));
                }
            }
            (ProtocolState::Scuttlebutt(s), Payload::SeenMatrix(m)) if s.seen_matrix().is_some() => {
                let pairs = s.missing(&m[from.index()]);
                s.merge_seen(&m);
                if !pairs.is_empty() {
                    replies.push(Envelope::new(self.id, from, Payload::Pairs(pairs)));
                }
            }
            (ProtocolState::Scuttlebutt(s), Payload::Pairs(pairs)) => {
                let mut accepted = Vec::new();
                for (version, o, d) in pairs {
                    if s.accept(version, o, d.clone()) {
                        self.states.entry(o).or_insert_with(L::bottom).join_assign(&d);
                        accepted.push(version);
                    }
                }
                s.advance(accepted);
            }
            (ProtocolState::OpBased(m), Payload::Ops(ops)) => {
                for op in m.receive(from, ops) {
                    self.states
                        .entry(op.object)
                        .or_insert_with(L::bottom)
                        .join_assign(&op.delta);
                }
            }
            _ => return Err(unexpected),
        }
        Ok(replies)
    }
}
