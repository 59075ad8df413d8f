use std::collections::BTreeSet;
use std::fmt;

use crate::lattice::{
    cost, encoding::write_list, Canonical, Element, FiniteBelow, Lattice, ParseError, Parser,
};

/// A partial order on set elements.
pub trait Poset: Element {
    fn below(&self, other: &Self) -> bool;

    fn strictly_below(&self, other: &Self) -> bool {
        self != other && self.below(other)
    }
}

/// Posets whose principal down-sets are finite and enumerable.
pub trait FiniteDownSet: Poset {
    fn down_set(&self) -> Vec<Self>;
}

/// Point in `ℕ × ℕ` under the product order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub u32, pub u32);

impl Poset for Point {
    fn below(&self, other: &Self) -> bool {
        self.0 <= other.0 && self.1 <= other.1
    }
}

impl FiniteDownSet for Point {
    fn down_set(&self) -> Vec<Self> {
        (0..=self.0)
            .flat_map(|x| (0..=self.1).map(move |y| Point(x, y)))
            .collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

impl Canonical for Point {
    fn encode(&self, out: &mut String) {
        out.push_str(&self.to_string());
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        p.expect('(')?;
        let x = u32::decode(p)?;
        p.expect(',')?;
        let y = u32::decode(p)?;
        p.expect(')')?;
        Ok(Point(x, y))
    }
}

/// Set of maximal elements of a partial order. Always an antichain; join
/// keeps the maximals of the union.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MaxSet<P: Poset>(BTreeSet<P>);

impl<P: Poset> Default for MaxSet<P> {
    fn default() -> Self {
        MaxSet(BTreeSet::new())
    }
}

impl<P: Poset> MaxSet<P> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Maximal elements of `items`.
    pub fn from_elements(items: impl IntoIterator<Item = P>) -> Self {
        let mut out = Self::new();
        for e in items {
            out.insert_maximal(e);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &P> {
        self.0.iter()
    }

    /// True when `e` is dominated by (or equal to) some member.
    pub fn covers(&self, e: &P) -> bool {
        cost::visit(self.0.len());
        self.0.iter().any(|m| e.below(m))
    }

    fn insert_maximal(&mut self, e: P) {
        if self.covers(&e) {
            return;
        }
        self.0.retain(|m| !m.strictly_below(&e));
        self.0.insert(e);
    }

    /// Delta of adding `e`: `{e}` unless it is already dominated.
    pub fn add_delta(&self, e: P) -> Self {
        if self.covers(&e) {
            Self::new()
        } else {
            MaxSet(BTreeSet::from([e]))
        }
    }

    pub fn add(&mut self, e: P) -> Self {
        let d = self.add_delta(e);
        self.join_assign(&d);
        d
    }
}

impl<P: Poset> Lattice for MaxSet<P> {
    fn bottom() -> Self {
        Self::new()
    }

    fn is_bottom(&self) -> bool {
        self.0.is_empty()
    }

    fn join_assign(&mut self, other: &Self) {
        for e in &other.0 {
            self.insert_maximal(e.clone());
        }
    }

    fn leq(&self, other: &Self) -> bool {
        self.0.iter().all(|e| other.covers(e))
    }

    fn split(&self) -> Vec<Self> {
        cost::visit(self.0.len());
        self.0
            .iter()
            .map(|e| MaxSet(BTreeSet::from([e.clone()])))
            .collect()
    }

    fn weight(&self) -> usize {
        self.0.len()
    }
}

impl<P: Poset + Canonical> Canonical for MaxSet<P> {
    fn encode(&self, out: &mut String) {
        write_list(out, '{', '}', &self.0, |e, out| e.encode(out));
    }

    /// Dominated elements in the input are dropped.
    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        Ok(Self::from_elements(p.list('{', '}', P::decode)?))
    }
}

/// All antichains of the down-closure of the set.
impl<P: FiniteDownSet> FiniteBelow for MaxSet<P> {
    fn region(&self) -> Vec<Self> {
        let closure: BTreeSet<P> = self.0.iter().flat_map(|e| e.down_set()).collect();
        let items: Vec<P> = closure.into_iter().collect();
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        fn walk<P: Poset>(
            items: &[P],
            start: usize,
            chosen: &mut Vec<usize>,
            out: &mut Vec<MaxSet<P>>,
        ) {
            out.push(MaxSet(chosen.iter().map(|&i| items[i].clone()).collect()));
            for i in start..items.len() {
                if chosen
                    .iter()
                    .all(|&j| !items[i].below(&items[j]) && !items[j].below(&items[i]))
                {
                    chosen.push(i);
                    walk(items, i + 1, chosen, out);
                    chosen.pop();
                }
            }
        }
        walk(&items, 0, &mut chosen, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::decompose;

    #[test]
    fn join_keeps_maximals() {
        let a = MaxSet::from_elements([Point(1, 0), Point(0, 2)]);
        let b = MaxSet::from_elements([Point(2, 1)]);
        let j = a.join(&b);
        assert_eq!(j, MaxSet::from_elements([Point(0, 2), Point(2, 1)]));
        assert!(a.join(&b).leq(&j));
    }

    #[test]
    fn dominated_add_is_bottom() {
        let mut s = MaxSet::from_elements([Point(2, 2)]);
        assert!(s.add(Point(1, 1)).is_bottom());
        assert_eq!(s.add(Point(3, 0)), MaxSet::from_elements([Point(3, 0)]));
    }

    #[test]
    fn singleton_rule() {
        let s = MaxSet::from_elements([Point(1, 1)]);
        assert_eq!(decompose(&s).members(), std::slice::from_ref(&s));
    }

    #[test]
    fn region_counts_antichains() {
        // Down-closure of (1,1) is the 2x2 grid: antichains are ∅, four
        // singletons and {(0,1),(1,0)}.
        assert_eq!(MaxSet::from_elements([Point(1, 1)]).region().len(), 6);
    }

    #[test]
    fn encoding() {
        let s = MaxSet::from_elements([Point(3, 0), Point(1, 2), Point(0, 0)]);
        assert_eq!(s.to_canonical(), "{(1,2),(3,0)}");
        assert_eq!(MaxSet::<Point>::from_canonical("{(1,2),(3,0)}").unwrap(), s);
    }
}
