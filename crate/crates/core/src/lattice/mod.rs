//! Join-semilattice algebra shared by every CRDT in the crate.
//!
//! A state-based CRDT is a join-semilattice with a bottom element. The order
//! is never stored: `x ⊑ y` holds exactly when `x ⊔ y = y`. On top of `join`
//! every type provides its *irredundant join decomposition* (the unique set of
//! join-irreducible states whose join is the state, no member removable),
//! which is what makes the minimum delta [`delta`] computable.

pub mod cost;
pub mod encoding;
pub mod oracle;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub use encoding::{Canonical, ParseError, Parser};
pub use oracle::{FiniteBelow, FiniteLatticeOracle, OracleError};

/// Marker bound for values stored inside sets and maps.
pub trait Element: Clone + Ord + Hash + Debug + Send + Sync + 'static {}

impl<T: Clone + Ord + Hash + Debug + Send + Sync + 'static> Element for T {}

/// A join-semilattice with bottom.
///
/// Implementations keep a canonical representation (no bottom-valued map
/// entries, no redundant set members) so that structural equality coincides
/// with lattice equality.
///
/// `Ord` is an arbitrary total order used only to sort decomposition members
/// deterministically; it is unrelated to the lattice order.
pub trait Lattice: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static {
    fn bottom() -> Self;

    fn is_bottom(&self) -> bool {
        *self == Self::bottom()
    }

    /// In-place join: `self ← self ⊔ other`.
    fn join_assign(&mut self, other: &Self);

    fn join(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.join_assign(other);
        out
    }

    /// `self ⊑ other`. Implementations may override the default for speed but
    /// must agree with `self ⊔ other = other`.
    fn leq(&self, other: &Self) -> bool {
        &self.join(other) == other
    }

    /// Members of the irredundant join decomposition, in no particular order.
    /// Empty for bottom.
    fn split(&self) -> Vec<Self>;

    /// Transmission / memory weight in entries.
    fn weight(&self) -> usize;

    /// Weight in bytes for byte-weighted accounting. Eight bytes per entry
    /// unless a type knows better.
    fn byte_size(&self) -> usize {
        8 * self.weight()
    }
}

/// Marker for totally ordered lattices. Lexicographic products only accept a
/// chain as their first component.
pub trait Chain: Lattice {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("type mismatch: cannot combine {left} with {right}")]
    TypeMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("lexicographic product needs a chain as first component, got {0}")]
    NonChainLexFirst(&'static str),
    #[error("unknown lattice type tag `{0}`")]
    UnknownType(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// An irredundant join decomposition in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition<L> {
    members: Vec<L>,
}

impl<L: Lattice> Decomposition<L> {
    /// Sorts and dedups `members`. Bottom members are discarded.
    pub fn from_members(mut members: Vec<L>) -> Self {
        members.retain(|m| !m.is_bottom());
        members.sort();
        members.dedup();
        Decomposition { members }
    }

    pub fn members(&self) -> &[L] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, L> {
        self.members.iter()
    }

    pub fn into_vec(self) -> Vec<L> {
        self.members
    }

    /// Join of all members; reconstructs the decomposed state.
    pub fn join(&self) -> L {
        join_all(self.members.iter())
    }

    /// True when dropping any single member strictly lowers the join.
    pub fn is_irredundant(&self) -> bool {
        let total = self.join();
        (0..self.members.len()).all(|skip| {
            let rest = join_all(
                self.members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, m)| m),
            );
            rest != total
        })
    }
}

impl<'a, L> IntoIterator for &'a Decomposition<L> {
    type Item = &'a L;
    type IntoIter = std::slice::Iter<'a, L>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Join of an arbitrary collection; bottom for an empty one.
pub fn join_all<'a, L: Lattice>(items: impl IntoIterator<Item = &'a L>) -> L {
    let mut acc = L::bottom();
    for item in items {
        acc.join_assign(item);
    }
    acc
}

/// The irredundant join decomposition `⇓x`, members sorted.
pub fn decompose<L: Lattice>(x: &L) -> Decomposition<L> {
    Decomposition::from_members(x.split())
}

/// Minimum delta: the join of the members of `⇓a` not already below `b`.
///
/// `delta(a, b) ⊔ b = a ⊔ b`, and any `c` with `c ⊔ b = a ⊔ b` satisfies
/// `delta(a, b) ⊑ c`. Bottom iff `a ⊑ b`.
pub fn delta<L: Lattice>(a: &L, b: &L) -> L {
    let mut out = L::bottom();
    for y in a.split() {
        if !y.leq(b) {
            out.join_assign(&y);
        }
    }
    out
}

/// Turns a mutator into its minimum delta-mutator `x ↦ Δ(m(x), x)`.
pub fn optimal_delta_mutator<L, M>(mutator: M) -> impl Fn(&L) -> L
where
    L: Lattice,
    M: Fn(&L) -> L,
{
    move |x| delta(&mutator(x), x)
}

/// `leq` computed from `join` alone. Used to check that overridden `leq`
/// implementations agree with the derived order.
pub fn leq_by_join<L: Lattice>(a: &L, b: &L) -> bool {
    &a.join(b) == b
}
