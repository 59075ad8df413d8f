//! Brute-force oracles over explicitly enumerated finite lattices.
//!
//! Nothing here calls [`Lattice::split`]: join-irreducibility, irredundant
//! decompositions and minimum deltas are found by exhaustive search over the
//! enumerated elements using only `join` and `leq`. Tests compare those
//! results against the structural decomposition rules.

use std::collections::HashMap;

use thiserror::Error;

use super::{join_all, Lattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("element is outside the enumerated universe: {0}")]
    NotInUniverse(String),
    #[error("enumeration has no least element")]
    NoBottom,
    #[error("enumeration is not closed under join")]
    NotClosed,
    #[error("expected exactly one irredundant decomposition, found {0}")]
    NotUnique(usize),
}

/// Enumeration of the finite region below a state.
///
/// For most constructs this is the ideal `↓x = {y | y ⊑ x}`. Lexicographic
/// products and linear sums have infinite ideals; for those the region is the
/// quotient `x / ⟨c, ⊥⟩` (resp. `Right b / Right ⊥`), whose least element is
/// itself join-irreducible in the full lattice.
pub trait FiniteBelow: Lattice {
    fn region(&self) -> Vec<Self>;
}

/// A small lattice given by its element list. Joins are computed on demand
/// from the elements and mapped back to indices, so a table is only
/// materialized when asked for.
#[derive(Debug, Clone)]
pub struct FiniteLatticeOracle<L> {
    elements: Vec<L>,
    index: HashMap<L, usize>,
    bottom: usize,
}

impl<L: Lattice> FiniteLatticeOracle<L> {
    pub fn new(mut elements: Vec<L>) -> Result<Self, OracleError> {
        elements.sort();
        elements.dedup();
        let bottom = elements
            .iter()
            .position(|x| elements.iter().all(|y| x.leq(y)))
            .ok_or(OracleError::NoBottom)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        Ok(FiniteLatticeOracle {
            elements,
            index,
            bottom,
        })
    }

    /// The region below `x` (see [`FiniteBelow`]).
    pub fn below(x: &L) -> Result<Self, OracleError>
    where
        L: FiniteBelow,
    {
        Self::new(x.region())
    }

    pub fn elements(&self) -> &[L] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> &L {
        &self.elements[self.bottom]
    }

    pub fn contains(&self, x: &L) -> bool {
        self.index.contains_key(x)
    }

    fn require(&self, x: &L) -> Result<usize, OracleError> {
        self.index
            .get(x)
            .copied()
            .ok_or_else(|| OracleError::NotInUniverse(format!("{x:?}")))
    }

    /// Index of `elements[i] ⊔ elements[j]`.
    pub fn join(&self, i: usize, j: usize) -> Result<usize, OracleError> {
        let joined = self.elements[i].join(&self.elements[j]);
        self.index.get(&joined).copied().ok_or(OracleError::NotClosed)
    }

    pub fn join_table(&self) -> Result<Vec<Vec<usize>>, OracleError> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.join(i, j)).collect())
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.join_table().is_ok()
    }

    /// `{y | y ⊑ x}` restricted to the universe.
    pub fn ideal(&self, x: &L) -> Result<Self, OracleError> {
        self.require(x)?;
        Self::new(self.elements.iter().filter(|y| y.leq(x)).cloned().collect())
    }

    /// Quotient sublattice `top / bottom = {x | bottom ⊑ x ⊑ top}`.
    pub fn quotient(&self, top: &L, bottom: &L) -> Result<Self, OracleError> {
        self.require(top)?;
        self.require(bottom)?;
        Self::new(
            self.elements
                .iter()
                .filter(|x| bottom.leq(x) && x.leq(top))
                .cloned()
                .collect(),
        )
    }

    /// Pairwise criterion: `x` is join-irreducible iff it is not the universe
    /// bottom and no `y, z ≠ x` in the universe have `y ⊔ z = x`.
    ///
    /// Only elements strictly below `x` can be part of such a pair. The search
    /// folds them into a running join `acc`; the first `e` with
    /// `acc ⊔ e = x` is a witness pair `(acc, e)`, and if the fold never
    /// reaches `x` no pair exists (any pair `y ⊔ z = x` would force the full
    /// join of elements below to be `x`).
    pub fn is_join_irreducible(&self, x: &L) -> Result<bool, OracleError> {
        let xi = self.require(x)?;
        if xi == self.bottom {
            return Ok(false);
        }
        Ok(self.reducing_pair(x).is_none())
    }

    /// A pair `(y, z)` of universe elements different from `x` with `y ⊔ z = x`.
    pub fn reducing_pair(&self, x: &L) -> Option<(L, L)> {
        let mut acc = self.bottom().clone();
        for e in self.elements.iter().filter(|e| *e != x && e.leq(x)) {
            let next = acc.join(e);
            if &next == x {
                return Some((acc, e.clone()));
            }
            acc = next;
        }
        None
    }

    /// Quadratic pair scan over the whole universe. Agrees with
    /// [`is_join_irreducible`](Self::is_join_irreducible); kept for
    /// cross-checking it on tiny lattices.
    pub fn is_join_irreducible_exhaustive(&self, x: &L) -> Result<bool, OracleError> {
        let xi = self.require(x)?;
        if xi == self.bottom {
            return Ok(false);
        }
        for (i, y) in self.elements.iter().enumerate() {
            for z in &self.elements[i..] {
                if y != x && z != x && &y.join(z) == x {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Join-irreducible universe elements below `x`.
    pub fn join_irreducibles_below(&self, x: &L) -> Result<Vec<L>, OracleError> {
        self.require(x)?;
        let mut out = Vec::new();
        for y in self.elements.iter().filter(|y| y.leq(x)) {
            if self.is_join_irreducible(y)? {
                out.push(y.clone());
            }
        }
        Ok(out)
    }

    /// Every irredundant join decomposition of `x` using universe
    /// join-irreducibles.
    ///
    /// An irredundant set is an antichain (a member below another member is
    /// redundant), so the search enumerates antichains of the irreducibles
    /// below `x` and keeps those that join to `x` with no removable member.
    pub fn irredundant_decompositions(&self, x: &L) -> Result<Vec<Vec<L>>, OracleError> {
        let irreducibles = self.join_irreducibles_below(x)?;
        let mut found = Vec::new();
        let mut chosen = Vec::new();
        antichains(&irreducibles, 0, &mut chosen, &mut |set: &[usize]| {
            let members: Vec<L> = set.iter().map(|&i| irreducibles[i].clone()).collect();
            if &join_all(members.iter()) == x && is_irredundant(&members) {
                found.push(members);
            }
        });
        Ok(found)
    }

    /// The decomposition of `x`, requiring it to be unique.
    ///
    /// When the universe is a quotient whose least element is not the lattice
    /// bottom, that least element is irreducible in the full lattice and is
    /// its own decomposition.
    pub fn unique_decomposition(&self, x: &L) -> Result<Vec<L>, OracleError> {
        if x == self.bottom() && !x.is_bottom() {
            return Ok(vec![x.clone()]);
        }
        let mut all = self.irredundant_decompositions(x)?;
        if all.len() != 1 {
            return Err(OracleError::NotUnique(all.len()));
        }
        let mut d = all.pop().unwrap_or_default();
        d.sort();
        Ok(d)
    }

    /// Least `c` in the universe with `c ⊔ b = a ⊔ b`, or `None` when the
    /// candidates have no least element. Build the universe over `a ⊔ b`.
    /// Returns bottom when `a ⊑ b`.
    pub fn minimal_delta(&self, a: &L, b: &L) -> Option<L> {
        if a.leq(b) {
            return Some(L::bottom());
        }
        let target = a.join(b);
        let candidates: Vec<&L> = self
            .elements
            .iter()
            .filter(|c| c.join(b) == target)
            .collect();
        candidates
            .iter()
            .find(|c| candidates.iter().all(|d| c.leq(d)))
            .map(|c| (*c).clone())
    }

    /// All `c` in the universe with `c ⊔ b = a ⊔ b`.
    pub fn delta_candidates(&self, a: &L, b: &L) -> Vec<L> {
        let target = a.join(b);
        self.elements
            .iter()
            .filter(|c| c.join(b) == target)
            .cloned()
            .collect()
    }
}

fn is_irredundant<L: Lattice>(members: &[L]) -> bool {
    let total = join_all(members.iter());
    (0..members.len()).all(|skip| {
        join_all(
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, m)| m),
        ) != total
    })
}

fn antichains<L: Lattice>(
    items: &[L],
    start: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    visit(chosen);
    for i in start..items.len() {
        let comparable = chosen
            .iter()
            .any(|&j| items[i].leq(&items[j]) || items[j].leq(&items[i]));
        if !comparable {
            chosen.push(i);
            antichains(items, i + 1, chosen, visit);
            chosen.pop();
        }
    }
}
