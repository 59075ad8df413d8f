use std::collections::BTreeMap;

use crate::lattice::{
    cost, encoding::write_list, Canonical, Element, FiniteBelow, Lattice, ParseError, Parser,
};

/// Grow-only map from keys to lattice values, joined pointwise.
///
/// Keys mapped to the value bottom are never stored, so a map whose values
/// are all bottom is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GMap<K: Element, V: Lattice>(BTreeMap<K, V>);

impl<K: Element, V: Lattice> Default for GMap<K, V> {
    fn default() -> Self {
        GMap(BTreeMap::new())
    }
}

impl<K: Element, V: Lattice> GMap<K, V> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a map, joining duplicate keys and dropping bottom values.
    pub fn from_entries(entries: impl IntoIterator<Item = (K, V)>) -> Self {
        let mut map = Self::new();
        for (k, v) in entries {
            map.join_entry(k, &v);
        }
        map
    }

    pub fn singleton(k: K, v: V) -> Self {
        Self::from_entries([(k, v)])
    }

    pub fn get(&self, k: &K) -> Option<&V> {
        self.0.get(k)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &V)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    /// `self(k) ← self(k) ⊔ v`.
    pub fn join_entry(&mut self, k: K, v: &V) {
        if v.is_bottom() {
            return;
        }
        match self.0.get_mut(&k) {
            Some(cur) => cur.join_assign(v),
            None => {
                cost::visit(1);
                self.0.insert(k, v.clone());
            }
        }
    }

    /// Lifts a delta-mutator on the value at `k`: returns `{k ↦ mδ(self(k))}`,
    /// or bottom when the value delta is bottom. An absent key reads as `V`'s
    /// bottom.
    pub fn update_delta(&self, k: K, value_delta: impl FnOnce(&V) -> V) -> Self {
        let d = match self.0.get(&k) {
            Some(v) => value_delta(v),
            None => value_delta(&V::bottom()),
        };
        Self::singleton(k, d)
    }

    /// Applies [`update_delta`](Self::update_delta) in place and returns the
    /// delta.
    pub fn update(&mut self, k: K, value_delta: impl FnOnce(&V) -> V) -> Self {
        let d = self.update_delta(k, value_delta);
        self.join_assign(&d);
        d
    }
}

impl<K: Element, V: Lattice> Lattice for GMap<K, V> {
    fn bottom() -> Self {
        Self::new()
    }

    fn is_bottom(&self) -> bool {
        self.0.is_empty()
    }

    fn join_assign(&mut self, other: &Self) {
        for (k, v) in &other.0 {
            self.join_entry(k.clone(), v);
        }
    }

    fn leq(&self, other: &Self) -> bool {
        cost::visit(self.0.len());
        self.0
            .iter()
            .all(|(k, v)| other.0.get(k).is_some_and(|w| v.leq(w)))
    }

    fn split(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for (k, v) in &self.0 {
            for part in v.split() {
                out.push(GMap(BTreeMap::from([(k.clone(), part)])));
            }
        }
        out
    }

    fn weight(&self) -> usize {
        self.0.values().map(Lattice::weight).sum()
    }
}

impl<K: Element + Canonical, V: Lattice + Canonical> Canonical for GMap<K, V> {
    fn encode(&self, out: &mut String) {
        let entries: Vec<_> = self.0.iter().collect();
        write_list(out, '{', '}', &entries, |(k, v), out| {
            k.encode(out);
            out.push('=');
            v.encode(out);
        });
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        let entries = p.list('{', '}', |p| {
            let k = K::decode(p)?;
            p.expect('=')?;
            Ok((k, V::decode(p)?))
        })?;
        Ok(Self::from_entries(entries))
    }
}

impl<K: Element, V: FiniteBelow> FiniteBelow for GMap<K, V> {
    fn region(&self) -> Vec<Self> {
        let mut out = vec![Self::new()];
        for (k, v) in &self.0 {
            let below = v.region();
            let mut next = Vec::with_capacity(out.len() * below.len());
            for partial in &out {
                for w in &below {
                    let mut m = partial.clone();
                    if !w.is_bottom() {
                        m.0.insert(k.clone(), w.clone());
                    }
                    next.push(m);
                }
            }
            out = next;
        }
        out
    }
}
