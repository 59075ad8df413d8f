use crate::ids::ReplicaId;
use crate::lattice::{
    encoding::write_list, Canonical, FiniteBelow, Lattice, ParseError, Parser,
};

use super::{GMap, Max, Pair};

type Counts = Pair<Max<u64>, Max<u64>>;

/// Positive-negative counter: each replica maps to (increments, decrements).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PNCounter(GMap<ReplicaId, Counts>);

impl PNCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (ReplicaId, u64, u64)>) -> Self {
        PNCounter(GMap::from_entries(
            entries
                .into_iter()
                .map(|(i, p, n)| (i, Pair::new(Max(p), Max(n)))),
        ))
    }

    /// `(increments, decrements)` of replica `i`.
    pub fn get(&self, i: ReplicaId) -> (u64, u64) {
        self.0
            .get(&i)
            .map_or((0, 0), |c| (c.first().0, c.second().0))
    }

    pub fn entries(&self) -> impl Iterator<Item = (ReplicaId, u64, u64)> + '_ {
        self.0
            .iter()
            .map(|(i, c)| (*i, c.first().0, c.second().0))
    }

    pub fn value(&self) -> i64 {
        self.entries().map(|(_, p, n)| p as i64 - n as i64).sum()
    }

    pub fn inc_delta(&self, i: ReplicaId) -> Self {
        Self::from_entries([(i, self.get(i).0 + 1, 0)])
    }

    pub fn dec_delta(&self, i: ReplicaId) -> Self {
        Self::from_entries([(i, 0, self.get(i).1 + 1)])
    }

    pub fn inc(&mut self, i: ReplicaId) -> Self {
        let d = self.inc_delta(i);
        self.join_assign(&d);
        d
    }

    pub fn dec(&mut self, i: ReplicaId) -> Self {
        let d = self.dec_delta(i);
        self.join_assign(&d);
        d
    }
}

impl Lattice for PNCounter {
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
        self.0.split().into_iter().map(PNCounter).collect()
    }

    /// Each replica entry weighs two units (both components).
    fn weight(&self) -> usize {
        2 * self.0.len()
    }
}

impl Canonical for PNCounter {
    fn encode(&self, out: &mut String) {
        let entries: Vec<_> = self.entries().collect();
        write_list(out, '{', '}', &entries, |(i, p, n), out| {
            i.encode(out);
            out.push(':');
            p.encode(out);
            out.push('/');
            n.encode(out);
        });
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        let entries = p.list('{', '}', |p| {
            let i = ReplicaId::decode(p)?;
            p.expect(':')?;
            let inc = u64::decode(p)?;
            p.expect('/')?;
            Ok((i, inc, u64::decode(p)?))
        })?;
        Ok(Self::from_entries(entries))
    }
}

impl FiniteBelow for PNCounter {
    fn region(&self) -> Vec<Self> {
        self.0.region().into_iter().map(PNCounter).collect()
    }
}
