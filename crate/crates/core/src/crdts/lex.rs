use std::cmp::Ordering;

use crate::lattice::{cost, Canonical, Chain, FiniteBelow, Lattice, ParseError, Parser};

/// Lexicographic product `C ⊠ A` with a chain as first component.
///
/// A larger first component wins outright; equal first components join the
/// second. Requiring `C: Chain` keeps the product distributive, so every
/// state has a unique irredundant decomposition. A non-chain first component
/// does not type-check:
///
/// ```compile_fail
/// use crdtsync::crdts::{GSet, LexPair};
/// let _ = LexPair::new(GSet::<u32>::new(), GSet::<u32>::new());
/// ```
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LexPair<C, A> {
    version: C,
    value: A,
}

impl<C: Chain, A: Lattice> LexPair<C, A> {
    pub fn new(version: C, value: A) -> Self {
        LexPair { version, value }
    }

    pub fn version(&self) -> &C {
        &self.version
    }

    pub fn value(&self) -> &A {
        &self.value
    }

    fn compare_versions(&self, other: &Self) -> Ordering {
        cost::visit(1);
        match (self.version.leq(&other.version), other.version.leq(&self.version)) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl<C: Chain, A: Lattice> Lattice for LexPair<C, A> {
    fn bottom() -> Self {
        LexPair::new(C::bottom(), A::bottom())
    }

    fn is_bottom(&self) -> bool {
        self.version.is_bottom() && self.value.is_bottom()
    }

    fn join_assign(&mut self, other: &Self) {
        match self.compare_versions(other) {
            Ordering::Less => *self = other.clone(),
            Ordering::Equal => self.value.join_assign(&other.value),
            Ordering::Greater => {}
        }
    }

    fn leq(&self, other: &Self) -> bool {
        match self.compare_versions(other) {
            Ordering::Less => true,
            Ordering::Equal => self.value.leq(&other.value),
            Ordering::Greater => false,
        }
    }

    /// `{c} × ⇓a`; a state with bottom second component is itself
    /// irreducible unless it is the bottom.
    fn split(&self) -> Vec<Self> {
        let parts = self.value.split();
        if parts.is_empty() {
            return if self.version.is_bottom() {
                Vec::new()
            } else {
                vec![self.clone()]
            };
        }
        parts
            .into_iter()
            .map(|a| LexPair::new(self.version.clone(), a))
            .collect()
    }

    fn weight(&self) -> usize {
        self.version.weight() + self.value.weight()
    }
}

impl<C: Chain + Canonical, A: Lattice + Canonical> Canonical for LexPair<C, A> {
    fn encode(&self, out: &mut String) {
        out.push('<');
        self.version.encode(out);
        out.push(',');
        self.value.encode(out);
        out.push('>');
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        p.expect('<')?;
        let c = C::decode(p)?;
        p.expect(',')?;
        let a = A::decode(p)?;
        p.expect('>')?;
        Ok(LexPair::new(c, a))
    }
}

/// Region is the quotient `⟨c, a⟩ / ⟨c, ⊥⟩`; the ideal is infinite whenever
/// `c` is above bottom.
impl<C: Chain, A: FiniteBelow> FiniteBelow for LexPair<C, A> {
    fn region(&self) -> Vec<Self> {
        self.value
            .region()
            .into_iter()
            .map(|a| LexPair::new(self.version.clone(), a))
            .collect()
    }
}
