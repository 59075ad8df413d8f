use rand_chacha::ChaCha8Rng;

use crate::crdts::{GCounter, GMap, GSet};
use crate::{ObjectId, ReplicaId, Token};

use super::{Update, Workload};

const OBJECT: ObjectId = ObjectId(0);

/// Each operation adds a globally unique element `node-k`, `k` counting the
/// node's operations from 1.
#[derive(Debug, Clone)]
pub struct GSetWorkload {
    ops: u64,
    issued: Vec<u32>,
}

impl GSetWorkload {
    pub fn new(nodes: usize, ops_per_replica: u64) -> Self {
        GSetWorkload {
            ops: ops_per_replica,
            issued: vec![0; nodes],
        }
    }
}

impl Workload for GSetWorkload {
    type State = GSet<Token>;

    fn label(&self) -> String {
        "gset".into()
    }

    fn periods(&self) -> u64 {
        self.ops
    }

    fn next_ops(&mut self, node: ReplicaId, _: u64, _: &mut ChaCha8Rng) -> Vec<Update<GSet<Token>>> {
        let k = &mut self.issued[node.index()];
        *k += 1;
        let token = Token::new(node.0, *k);
        vec![Update::new(OBJECT, move |s: &GSet<Token>| s.add_delta(token))]
    }
}

/// Each operation is a single increment.
#[derive(Debug, Clone)]
pub struct GCounterWorkload {
    ops: u64,
}

impl GCounterWorkload {
    pub fn new(ops_per_replica: u64) -> Self {
        GCounterWorkload {
            ops: ops_per_replica,
        }
    }
}

impl Workload for GCounterWorkload {
    type State = GCounter;

    fn label(&self) -> String {
        "gcounter".into()
    }

    fn periods(&self) -> u64 {
        self.ops
    }

    fn next_ops(&mut self, node: ReplicaId, _: u64, _: &mut ChaCha8Rng) -> Vec<Update<GCounter>> {
        vec![Update::new(OBJECT, move |c: &GCounter| c.inc_delta(node))]
    }
}

/// Map from key to a register of unique write tokens.
pub type MapState = GMap<u32, GSet<Token>>;

/// Every period, `K%` of the keys change globally. The global budget
/// `G = round(K · keys / 100)` is split into disjoint slices of `⌈G/N⌉` keys
/// (the last nodes get what is left), and the slices rotate through the key
/// space from one period to the next.
#[derive(Debug, Clone)]
pub struct GMapWorkload {
    ops: u64,
    nodes: usize,
    keys: u32,
    percent: f64,
    writes: Vec<u32>,
}

impl GMapWorkload {
    pub fn new(nodes: usize, ops_per_replica: u64, percent: f64, keys: u32) -> Self {
        GMapWorkload {
            ops: ops_per_replica,
            nodes,
            keys,
            percent,
            writes: vec![0; nodes],
        }
    }

    /// Keys changed globally per period.
    pub fn global_budget(&self) -> u32 {
        ((self.percent * f64::from(self.keys) / 100.0).round() as u32).min(self.keys)
    }

    /// Keys updated per node per period, before the remainder cut.
    pub fn per_node(&self) -> u32 {
        self.global_budget().div_ceil(self.nodes as u32)
    }

    /// Keys `node` updates in `period`.
    pub fn keys_for(&self, node: ReplicaId, period: u64) -> Vec<u32> {
        let budget = self.global_budget();
        let per = self.per_node();
        let start = (node.0 * per).min(budget);
        let end = (start + per).min(budget);
        let offset = (period % u64::from(self.keys)) * u64::from(budget);
        (start..end)
            .map(|k| ((u64::from(k) + offset) % u64::from(self.keys)) as u32)
            .collect()
    }
}

impl Workload for GMapWorkload {
    type State = MapState;

    fn label(&self) -> String {
        format!("gmap-{}", self.percent)
    }

    fn periods(&self) -> u64 {
        self.ops
    }

    fn next_ops(&mut self, node: ReplicaId, period: u64, _: &mut ChaCha8Rng) -> Vec<Update<MapState>> {
        let keys = self.keys_for(node, period);
        if keys.is_empty() {
            return Vec::new();
        }
        let w = &mut self.writes[node.index()];
        let entries: Vec<(u32, GSet<Token>)> = keys
            .into_iter()
            .map(|k| {
                *w += 1;
                (k, GSet::singleton(Token::new(node.0, *w)))
            })
            .collect();
        let delta = GMap::from_entries(entries);
        vec![Update::new(OBJECT, move |_: &MapState| delta)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use rand::SeedableRng;

    #[test]
    fn gset_tokens_are_unique() {
        let mut w = GSetWorkload::new(4, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut s = GSet::new();
        for _ in 0..5 {
            for n in 0..4 {
                for u in w.next_ops(ReplicaId(n), 0, &mut rng) {
                    let d = (u.mutator)(&s);
                    assert_eq!(d.weight(), 1);
                    s.join_assign(&d);
                }
            }
        }
        assert!(s.contains(&Token::new(3, 5)));
        assert_eq!(s.len(), 20);
    }

    #[test]
    fn gmap_slices_cover_budget() {
        let w = GMapWorkload::new(15, 100, 10.0, 1000);
        assert_eq!(w.global_budget(), 100);
        assert_eq!(w.per_node(), 7);
        for period in [0, 1, 9, 10, 57] {
            let mut all: Vec<u32> = (0..15)
                .flat_map(|n| w.keys_for(ReplicaId(n), period))
                .collect();
            assert_eq!(w.keys_for(ReplicaId(0), period).len(), 7);
            all.sort();
            all.dedup();
            assert_eq!(all.len(), 100);
        }
    }
}
