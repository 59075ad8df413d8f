use crate::lattice::Lattice;
use crate::{ObjectId, ReplicaId};

/// Scuttlebutt version: the origin replica and its update counter.
pub type Version = (ReplicaId, u64);

/// An operation as shipped by the op-based middleware: the update's delta and
/// the origin's vector clock at the time of the update.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Op<L> {
    pub origin: ReplicaId,
    pub vclock: Vec<u64>,
    pub object: ObjectId,
    pub delta: L,
}

impl<L> Op<L> {
    pub fn id(&self) -> Version {
        (self.origin, self.vclock[self.origin.index()])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload<L> {
    FullState(Vec<(ObjectId, L)>),
    Delta { seq: u64, groups: Vec<(ObjectId, L)> },
    Digest(Vec<u64>),
    SeenMatrix(Vec<Vec<u64>>),
    Pairs(Vec<(Version, ObjectId, L)>),
    Ops(Vec<Op<L>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PayloadKind {
    FullState,
    Delta,
    Digest,
    SeenMatrix,
    Pairs,
    Ops,
}

impl<L: Lattice> Payload<L> {
    pub fn kind(&self) -> PayloadKind {
        match self {
            Payload::FullState(_) => PayloadKind::FullState,
            Payload::Delta { .. } => PayloadKind::Delta,
            Payload::Digest(_) => PayloadKind::Digest,
            Payload::SeenMatrix(_) => PayloadKind::SeenMatrix,
            Payload::Pairs(_) => PayloadKind::Pairs,
            Payload::Ops(_) => PayloadKind::Ops,
        }
    }

    /// Size accounting:
    ///
    /// | payload    | entries        | sync metadata | key metadata |
    /// |------------|----------------|---------------|--------------|
    /// | FullState  | state weights  | 0             | 0            |
    /// | Delta      | group weights  | 1 (sequence)  | 0            |
    /// | Digest     | 0              | N             | 0            |
    /// | SeenMatrix | 0              | N²            | 0            |
    /// | Pairs      | delta weights  | 0             | 1 per pair   |
    /// | Ops        | delta weights  | N per op      | 0            |
    pub fn size(&self) -> Size {
        let weigh = |items: &mut dyn Iterator<Item = &L>| {
            items.fold((0, 0), |(e, b), x| (e + x.weight(), b + x.byte_size()))
        };
        match self {
            Payload::FullState(items) => {
                let (entries, bytes) = weigh(&mut items.iter().map(|(_, x)| x));
                Size { entries, bytes, ..Size::default() }
            }
            Payload::Delta { groups, .. } => {
                let (entries, bytes) = weigh(&mut groups.iter().map(|(_, x)| x));
                Size { entries, bytes, sync_meta: 1, key_meta: 0 }
            }
            Payload::Digest(v) => Size { sync_meta: v.len(), ..Size::default() },
            Payload::SeenMatrix(m) => Size {
                sync_meta: m.iter().map(Vec::len).sum(),
                ..Size::default()
            },
            Payload::Pairs(pairs) => {
                let (entries, bytes) = weigh(&mut pairs.iter().map(|(_, _, x)| x));
                Size { entries, bytes, sync_meta: 0, key_meta: pairs.len() }
            }
            Payload::Ops(ops) => {
                let (entries, bytes) = weigh(&mut ops.iter().map(|op| &op.delta));
                Size {
                    entries,
                    bytes,
                    sync_meta: ops.iter().map(|op| op.vclock.len()).sum(),
                    key_meta: 0,
                }
            }
        }
    }
}

/// Transmission size of a message. CRDT payload (`entries`, `bytes`) is kept
/// apart from synchronization metadata (vectors, sequence numbers) and from
/// per-update keys.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Size {
    pub entries: usize,
    pub bytes: usize,
    pub sync_meta: usize,
    pub key_meta: usize,
}

impl Size {
    pub fn metadata(&self) -> usize {
        self.sync_meta + self.key_meta
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope<L> {
    pub from: ReplicaId,
    pub to: ReplicaId,
    pub payload: Payload<L>,
    pub size: Size,
}

impl<L: Lattice> Envelope<L> {
    pub fn new(from: ReplicaId, to: ReplicaId, payload: Payload<L>) -> Self {
        let size = payload.size();
        Envelope { from, to, payload, size }
    }
}
