use std::collections::{BTreeMap, BTreeSet};

use crate::lattice::Lattice;
use crate::{ObjectId, ReplicaId};

use super::{Op, Version};

/// Store-and-forward causal broadcast.
///
/// Each local update becomes an [`Op`] stamped with the origin's vector
/// clock. Received ops wait in a pending queue until their causal past has
/// been delivered. Every op seen for the first time is also held in a
/// transmit buffer and forwarded to each neighbor that has not seen it yet.
#[derive(Debug, Clone)]
pub struct OpMiddleware<L> {
    me: ReplicaId,
    delivered: Vec<u64>,
    pending: BTreeMap<Version, Op<L>>,
    transmit: BTreeMap<Version, (Op<L>, BTreeSet<ReplicaId>)>,
    delivery_log: Vec<Version>,
}

impl<L: Lattice> OpMiddleware<L> {
    pub fn new(me: ReplicaId, n: usize) -> Self {
        OpMiddleware {
            me,
            delivered: vec![0; n],
            pending: BTreeMap::new(),
            transmit: BTreeMap::new(),
            delivery_log: Vec::new(),
        }
    }

    pub fn delivered(&self) -> &[u64] {
        &self.delivered
    }

    pub fn pending_len(&self) -> usize {
        self.pending.len()
    }

    pub fn transmit_len(&self) -> usize {
        self.transmit.len()
    }

    /// Op ids in the order they were applied locally, own ops included.
    pub fn delivery_log(&self) -> &[Version] {
        &self.delivery_log
    }

    pub fn weight(&self) -> usize {
        let pending: usize = self.pending.values().map(|op| op.delta.weight()).sum();
        let transmit: usize = self.transmit.values().map(|(op, _)| op.delta.weight()).sum();
        pending + transmit
    }

    /// One clock per buffered op plus the delivered clock.
    pub fn metadata_units(&self) -> usize {
        let n = self.delivered.len();
        n * (1 + self.pending.len() + self.transmit.len())
    }

    pub(crate) fn record_local(&mut self, object: ObjectId, delta: L) -> Op<L> {
        let me = self.me.index();
        self.delivered[me] += 1;
        let op = Op {
            origin: self.me,
            vclock: self.delivered.clone(),
            object,
            delta,
        };
        self.delivery_log.push(op.id());
        self.transmit
            .insert(op.id(), (op.clone(), BTreeSet::from([self.me])));
        op
    }

    fn is_known(&self, id: Version) -> bool {
        id.1 <= self.delivered[id.0.index()] || self.pending.contains_key(&id)
    }

    /// Takes in ops received from `from`. Returns the ops that became
    /// deliverable, in delivery order.
    pub(crate) fn receive(&mut self, from: ReplicaId, ops: Vec<Op<L>>) -> Vec<Op<L>> {
        for op in ops {
            let id = op.id();
            if self.is_known(id) {
                if let Some((_, seen)) = self.transmit.get_mut(&id) {
                    seen.insert(from);
                }
                continue;
            }
            self.transmit
                .insert(id, (op.clone(), BTreeSet::from([self.me, from, op.origin])));
            self.pending.insert(id, op);
        }
        self.deliver_ready()
    }

    fn ready(&self, op: &Op<L>) -> bool {
        let o = op.origin.index();
        op.vclock.iter().enumerate().all(|(k, &c)| {
            if k == o {
                c == self.delivered[k] + 1
            } else {
                c <= self.delivered[k]
            }
        })
    }

    fn deliver_ready(&mut self) -> Vec<Op<L>> {
        let mut out = Vec::new();
        loop {
            let next = self
                .pending
                .iter()
                .find(|(_, op)| self.ready(op))
                .map(|(id, _)| *id);
            let Some(id) = next else { break };
            let op = self.pending.remove(&id).expect("present");
            self.delivered[op.origin.index()] += 1;
            self.delivery_log.push(id);
            out.push(op);
        }
        out
    }

    /// Ops to forward to `to`; marks them as seen by `to`.
    pub(crate) fn outgoing(&mut self, to: ReplicaId) -> Vec<Op<L>> {
        let mut out = Vec::new();
        for (op, seen) in self.transmit.values_mut() {
            if seen.insert(to) {
                out.push(op.clone());
            }
        }
        out
    }

    /// Drops ops every neighbor has seen.
    pub(crate) fn collect(&mut self, neighbors: &[ReplicaId]) {
        self.transmit
            .retain(|_, (_, seen)| !neighbors.iter().all(|j| seen.contains(j)));
    }
}
