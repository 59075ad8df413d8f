use std::collections::BTreeMap;

use crate::lattice::Lattice;
use crate::{ObjectId, ReplicaId};

use super::Version;

/// Scuttlebutt key-value store: every local update is stored under a fresh
/// version `(origin, counter)` and the summary vector records the highest
/// contiguous counter known per origin.
///
/// With garbage collection the store also keeps a seen-matrix, row `k` being
/// a lower bound on replica `k`'s summary vector. A version covered by every
/// row has reached everyone and is dropped.
#[derive(Debug, Clone)]
pub struct ScuttlebuttStore<L> {
    me: ReplicaId,
    store: BTreeMap<Version, (ObjectId, L)>,
    vector: Vec<u64>,
    seen: Option<Vec<Vec<u64>>>,
    pruned: u64,
}

impl<L: Lattice> ScuttlebuttStore<L> {
    pub fn new(me: ReplicaId, n: usize, gc: bool) -> Self {
        ScuttlebuttStore {
            me,
            store: BTreeMap::new(),
            vector: vec![0; n],
            seen: gc.then(|| vec![vec![0; n]; n]),
            pruned: 0,
        }
    }

    pub fn vector(&self) -> &[u64] {
        &self.vector
    }

    pub fn seen_matrix(&self) -> Option<&[Vec<u64>]> {
        self.seen.as_deref()
    }

    pub fn versions(&self) -> impl Iterator<Item = &Version> {
        self.store.keys()
    }

    pub fn len(&self) -> usize {
        self.store.len()
    }

    pub fn is_empty(&self) -> bool {
        self.store.is_empty()
    }

    pub fn pruned(&self) -> u64 {
        self.pruned
    }

    pub fn weight(&self) -> usize {
        self.store.values().map(|(_, d)| d.weight()).sum()
    }

    /// Vector entries plus one key per stored version.
    pub fn metadata_units(&self) -> usize {
        let vectors = match &self.seen {
            Some(m) => m.len() * m.len(),
            None => self.vector.len(),
        };
        vectors + self.store.len()
    }

    pub(crate) fn record_local(&mut self, object: ObjectId, delta: L) -> Version {
        let me = self.me.index();
        self.vector[me] += 1;
        let version = (self.me, self.vector[me]);
        self.store.insert(version, (object, delta));
        if let Some(m) = &mut self.seen {
            m[me] = self.vector.clone();
        }
        version
    }

    /// What goes on the wire at a synchronization step: the summary vector,
    /// or the whole seen-matrix when garbage collecting.
    pub(crate) fn digest(&self) -> Result<Vec<u64>, Vec<Vec<u64>>> {
        match &self.seen {
            Some(m) => Err(m.clone()),
            None => Ok(self.vector.clone()),
        }
    }

    /// Stored pairs whose versions `theirs` does not summarize.
    pub(crate) fn missing(&self, theirs: &[u64]) -> Vec<(Version, ObjectId, L)> {
        self.store
            .iter()
            .filter(|((origin, seq), _)| *seq > theirs[origin.index()])
            .map(|(v, (o, d))| (*v, *o, d.clone()))
            .collect()
    }

    /// Folds a peer's seen-matrix into ours and prunes.
    pub(crate) fn merge_seen(&mut self, theirs: &[Vec<u64>]) {
        if let Some(m) = &mut self.seen {
            for (row, other) in m.iter_mut().zip(theirs) {
                for (a, b) in row.iter_mut().zip(other) {
                    *a = (*a).max(*b);
                }
            }
        }
        self.prune();
    }

    /// Accepts a version received from a peer. Returns false when the version
    /// is already summarized locally.
    pub(crate) fn accept(&mut self, version: Version, object: ObjectId, delta: L) -> bool {
        let (origin, seq) = version;
        if seq <= self.vector[origin.index()] {
            return false;
        }
        self.store.insert(version, (object, delta));
        true
    }

    /// Raises the summary vector after a batch of pairs was accepted.
    pub(crate) fn advance(&mut self, versions: impl IntoIterator<Item = Version>) {
        for (origin, seq) in versions {
            let v = &mut self.vector[origin.index()];
            *v = (*v).max(seq);
        }
        if let Some(m) = &mut self.seen {
            m[self.me.index()] = self.vector.clone();
        }
        self.prune();
    }

    fn prune(&mut self) {
        let Some(m) = &self.seen else { return };
        let before = self.store.len();
        self.store
            .retain(|(origin, seq), _| m.iter().any(|row| row[origin.index()] < *seq));
        self.pruned += (before - self.store.len()) as u64;
    }
}
