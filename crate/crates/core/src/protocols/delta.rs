use crate::lattice::{delta, Lattice};
use crate::{ObjectId, ReplicaId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BufferEntry<L> {
    pub object: ObjectId,
    pub delta: L,
    pub origin: ReplicaId,
}

/// The δ-buffer: deltas awaiting propagation, tagged with the replica they
/// came from (the local replica for local updates).
#[derive(Debug, Clone)]
pub struct DeltaBuffer<L> {
    entries: Vec<BufferEntry<L>>,
    bp: bool,
    rr: bool,
    seq: u64,
}

impl<L: Lattice> DeltaBuffer<L> {
    pub fn new(bp: bool, rr: bool) -> Self {
        DeltaBuffer {
            entries: Vec::new(),
            bp,
            rr,
            seq: 0,
        }
    }

    pub fn entries(&self) -> &[BufferEntry<L>] {
        &self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().map(|e| e.delta.weight()).sum()
    }

    pub(crate) fn push(&mut self, object: ObjectId, delta: L, origin: ReplicaId) {
        if !delta.is_bottom() {
            self.entries.push(BufferEntry {
                object,
                delta,
                origin,
            });
        }
    }

    /// The δ-group for `to`, one joined delta per object. With
    /// back-propagation avoidance, entries that came from `to` are left out.
    pub fn group_for(&self, to: ReplicaId) -> Vec<(ObjectId, L)> {
        let mut groups: Vec<(ObjectId, L)> = Vec::new();
        for e in &self.entries {
            if self.bp && e.origin == to {
                continue;
            }
            match groups.iter_mut().find(|(o, _)| *o == e.object) {
                Some((_, g)) => g.join_assign(&e.delta),
                None => groups.push((e.object, e.delta.clone())),
            }
        }
        groups.sort_by_key(|(o, _)| *o);
        groups
    }

    pub(crate) fn next_seq(&mut self) -> u64 {
        self.seq += 1;
        self.seq
    }

    pub(crate) fn clear(&mut self) {
        self.entries.clear();
    }

    /// Applies a received group member to `state`. Returns what was stored
    /// in the buffer, if anything.
    ///
    /// Classic: keep `d` whole when it is not already below the state.
    /// RR: keep only `Δ(d, x)`, the part that strictly inflates the state.
    pub(crate) fn receive(
        &mut self,
        object: ObjectId,
        d: &L,
        from: ReplicaId,
        state: &mut L,
    ) -> Option<L> {
        let stored = if self.rr {
            let fresh = delta(d, state);
            (!fresh.is_bottom()).then_some(fresh)
        } else {
            (!d.leq(state)).then(|| d.clone())
        }?;
        state.join_assign(&stored);
        self.push(object, stored.clone(), from);
        Some(stored)
    }
}
