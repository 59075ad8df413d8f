use crate::lattice::{cost, Canonical, Chain, FiniteBelow, Lattice, ParseError, Parser};

/// Chain lattice over a totally ordered type: join is `max`, bottom is
/// `T::default()`. Booleans and naturals are the usual instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Max<T>(pub T);

impl<T> Max<T> {
    pub fn get(&self) -> &T {
        &self.0
    }
}

impl<T> Lattice for Max<T>
where
    T: Clone + Ord + Default + std::hash::Hash + std::fmt::Debug + Send + Sync + 'static,
{
    fn bottom() -> Self {
        Max(T::default())
    }

    fn is_bottom(&self) -> bool {
        self.0 == T::default()
    }

    fn join_assign(&mut self, other: &Self) {
        cost::visit(1);
        if other.0 > self.0 {
            self.0 = other.0.clone();
        }
    }

    fn leq(&self, other: &Self) -> bool {
        cost::visit(1);
        self.0 <= other.0
    }

    fn split(&self) -> Vec<Self> {
        cost::visit(1);
        if self.is_bottom() {
            Vec::new()
        } else {
            vec![self.clone()]
        }
    }

    fn weight(&self) -> usize {
        usize::from(!self.is_bottom())
    }
}

impl<T> Chain for Max<T> where
    T: Clone + Ord + Default + std::hash::Hash + std::fmt::Debug + Send + Sync + 'static
{
}

impl<T: Canonical> Canonical for Max<T> {
    fn encode(&self, out: &mut String) {
        self.0.encode(out);
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        T::decode(p).map(Max)
    }
}

impl FiniteBelow for Max<u64> {
    fn region(&self) -> Vec<Self> {
        (0..=self.0).map(Max).collect()
    }
}

impl FiniteBelow for Max<u32> {
    fn region(&self) -> Vec<Self> {
        (0..=self.0).map(Max).collect()
    }
}

impl FiniteBelow for Max<bool> {
    fn region(&self) -> Vec<Self> {
        if self.0 {
            vec![Max(false), Max(true)]
        } else {
            vec![Max(false)]
        }
    }
}
