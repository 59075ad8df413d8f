use crate::ids::ReplicaId;
use crate::lattice::{
    encoding::write_list, Canonical, FiniteBelow, Lattice, ParseError, Parser,
};

use super::{GMap, Max};

/// Grow-only counter: one increment count per replica.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GCounter(GMap<ReplicaId, Max<u64>>);

impl GCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (ReplicaId, u64)>) -> Self {
        GCounter(GMap::from_entries(
            entries.into_iter().map(|(i, n)| (i, Max(n))),
        ))
    }

    /// Count registered by replica `i` (0 when absent).
    pub fn get(&self, i: ReplicaId) -> u64 {
        self.0.get(&i).map_or(0, |m| m.0)
    }

    pub fn value(&self) -> u64 {
        self.0.iter().map(|(_, m)| m.0).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (ReplicaId, u64)> + '_ {
        self.0.iter().map(|(i, m)| (*i, m.0))
    }

    /// Delta of `inc_i`: `{i ↦ p(i) + 1}`.
    pub fn inc_delta(&self, i: ReplicaId) -> Self {
        Self::from_entries([(i, self.get(i) + 1)])
    }

    /// Applies `inc_i` in place and returns its delta.
    pub fn inc(&mut self, i: ReplicaId) -> Self {
        let d = self.inc_delta(i);
        self.join_assign(&d);
        d
    }
}

impl Lattice for GCounter {
    fn bottom() -> Self {
        Self::new()
    }

    fn is_bottom(&self) -> bool {
        self.0.is_bottom()
    }

    fn join_assign(&mut self, other: &Self) {
        self.0.join_assign(&other.0);
    }

    fn leq(&self, other: &Self) -> bool {
        self.0.leq(&other.0)
    }

    fn split(&self) -> Vec<Self> {
        self.0.split().into_iter().map(GCounter).collect()
    }

    fn weight(&self) -> usize {
        self.0.len()
    }
}

impl Canonical for GCounter {
    fn encode(&self, out: &mut String) {
        let entries: Vec<_> = self.entries().collect();
        write_list(out, '{', '}', &entries, |(i, n), out| {
            i.encode(out);
            out.push(':');
            n.encode(out);
        });
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        let entries = p.list('{', '}', |p| {
            let i = ReplicaId::decode(p)?;
            p.expect(':')?;
            Ok((i, u64::decode(p)?))
        })?;
        Ok(Self::from_entries(entries))
    }
}

impl FiniteBelow for GCounter {
    fn region(&self) -> Vec<Self> {
        self.0.region().into_iter().map(GCounter).collect()
    }
}
