use crate::lattice::{cost, Canonical, FiniteBelow, Lattice, ParseError, Parser};

/// Cartesian product `A × B`, joined componentwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pair<A, B>(A, B);

impl<A: Lattice, B: Lattice> Pair<A, B> {
    pub fn new(first: A, second: B) -> Self {
        Pair(first, second)
    }

    pub fn first(&self) -> &A {
        &self.0
    }

    pub fn second(&self) -> &B {
        &self.1
    }

    pub fn first_mut(&mut self) -> &mut A {
        &mut self.0
    }

    pub fn second_mut(&mut self) -> &mut B {
        &mut self.1
    }

    pub fn into_parts(self) -> (A, B) {
        (self.0, self.1)
    }
}

impl<A: Lattice, B: Lattice> Lattice for Pair<A, B> {
    fn bottom() -> Self {
        Pair(A::bottom(), B::bottom())
    }

    fn is_bottom(&self) -> bool {
        self.0.is_bottom() && self.1.is_bottom()
    }

    fn join_assign(&mut self, other: &Self) {
        self.0.join_assign(&other.0);
        self.1.join_assign(&other.1);
    }

    fn leq(&self, other: &Self) -> bool {
        self.0.leq(&other.0) && self.1.leq(&other.1)
    }

    /// `⇓a × {⊥} ∪ {⊥} × ⇓b`
    fn split(&self) -> Vec<Self> {
        cost::visit(1);
        let left = self.0.split().into_iter().map(|a| Pair(a, B::bottom()));
        let right = self.1.split().into_iter().map(|b| Pair(A::bottom(), b));
        left.chain(right).collect()
    }

    fn weight(&self) -> usize {
        self.0.weight() + self.1.weight()
    }
}

impl<A: Lattice + Canonical, B: Lattice + Canonical> Canonical for Pair<A, B> {
    fn encode(&self, out: &mut String) {
        out.push('(');
        self.0.encode(out);
        out.push(',');
        self.1.encode(out);
        out.push(')');
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        p.expect('(')?;
        let a = A::decode(p)?;
        p.expect(',')?;
        let b = B::decode(p)?;
        p.expect(')')?;
        Ok(Pair(a, b))
    }
}

impl<A: FiniteBelow, B: FiniteBelow> FiniteBelow for Pair<A, B> {
    fn region(&self) -> Vec<Self> {
        let bs = self.1.region();
        self.0
            .region()
            .into_iter()
            .flat_map(|a| bs.iter().map(move |b| Pair(a.clone(), b.clone())))
            .collect()
    }
}
