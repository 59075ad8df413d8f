use std::collections::BTreeSet;

use crate::lattice::{
    cost, encoding::write_list, Canonical, Element, FiniteBelow, Lattice, ParseError, Parser,
};

/// Grow-only set; join is union.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GSet<E: Element>(BTreeSet<E>);

impl<E: Element> Default for GSet<E> {
    fn default() -> Self {
        GSet(BTreeSet::new())
    }
}

impl<E: Element> GSet<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(e: E) -> Self {
        GSet(BTreeSet::from([e]))
    }

    pub fn contains(&self, e: &E) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &E> {
        self.0.iter()
    }

    pub fn value(&self) -> &BTreeSet<E> {
        &self.0
    }

    /// Optimal delta-mutator of `add`: `{e}` if absent, bottom otherwise.
    pub fn add_delta(&self, e: E) -> Self {
        if self.0.contains(&e) {
            Self::new()
        } else {
            Self::singleton(e)
        }
    }

    /// Applies `add` in place and returns its delta.
    pub fn add(&mut self, e: E) -> Self {
        let d = self.add_delta(e.clone());
        if !d.is_empty() {
            self.0.insert(e);
        }
        d
    }
}

impl<E: Element> FromIterator<E> for GSet<E> {
    fn from_iter<I: IntoIterator<Item = E>>(iter: I) -> Self {
        GSet(iter.into_iter().collect())
    }
}

impl<E: Element> Lattice for GSet<E> {
    fn bottom() -> Self {
        Self::new()
    }

    fn is_bottom(&self) -> bool {
        self.0.is_empty()
    }

    fn join_assign(&mut self, other: &Self) {
        cost::visit(other.0.len());
        if self.0.is_empty() {
            self.0 = other.0.clone();
            return;
        }
        for e in &other.0 {
            if !self.0.contains(e) {
                self.0.insert(e.clone());
            }
        }
    }

    fn leq(&self, other: &Self) -> bool {
        cost::visit(self.0.len());
        self.0.is_subset(&other.0)
    }

    fn split(&self) -> Vec<Self> {
        cost::visit(self.0.len());
        self.0.iter().cloned().map(Self::singleton).collect()
    }

    fn weight(&self) -> usize {
        self.0.len()
    }
}

impl<E: Element + Canonical> Canonical for GSet<E> {
    fn encode(&self, out: &mut String) {
        write_list(out, '{', '}', &self.0, |e, out| e.encode(out));
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        Ok(p.list('{', '}', E::decode)?.into_iter().collect())
    }
}

impl<E: Element> FiniteBelow for GSet<E> {
    fn region(&self) -> Vec<Self> {
        let items: Vec<&E> = self.0.iter().collect();
        assert!(items.len() < 24, "powerset of {} elements is too large", items.len());
        (0u32..1 << items.len())
            .map(|mask| {
                items
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, e)| (*e).clone())
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(items: &[&str]) -> GSet<String> {
        items.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn add_returns_optimal_delta() {
        let mut x = GSet::new();
        assert_eq!(x.add("a".to_string()), s(&["a"]));
        assert_eq!(x, s(&["a"]));
        assert!(x.add("a".to_string()).is_bottom());
        let mut y = s(&["b"]);
        assert_eq!(y.add("c".to_string()), s(&["c"]));
        assert_eq!(y, s(&["b", "c"]));
    }

    #[test]
    fn encoding() {
        assert_eq!(s(&["b", "a"]).to_canonical(), "{a,b}");
        assert_eq!(GSet::<String>::from_canonical("{ c , a }").unwrap(), s(&["a", "c"]));
        assert_eq!(GSet::<String>::bottom().to_canonical(), "{}");
        assert!(GSet::<String>::from_canonical("{a,").is_err());
    }

    #[test]
    fn region_is_powerset() {
        assert_eq!(s(&["a", "b", "c"]).region().len(), 8);
    }
}
