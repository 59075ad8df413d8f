//! Generators and reusable checks shared by the integration test targets.
#![allow(dead_code)]

use crdtsync::crdts::{
    GCounter, GMap, GSet, LexPair, LinearSum, Max, MaxSet, PNCounter, Pair, Point,
};
use crdtsync::lattice::{decompose, delta, join_all, FiniteBelow, FiniteLatticeOracle, Lattice};
use crdtsync::ReplicaId;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Set = GSet<u8>;
pub type Map = GMap<u8, GSet<u8>>;
pub type Duo = Pair<GSet<u8>, GCounter>;
pub type Lex = LexPair<Max<u64>, GSet<u8>>;
pub type Sum = LinearSum<GSet<u8>, GCounter>;
pub type Maxima = MaxSet<Point>;

pub fn gset(universe: u8, max: usize) -> impl Strategy<Value = Set> + Clone {
    prop::collection::btree_set(0..universe, 0..=max).prop_map(|s| s.into_iter().collect())
}

pub fn gcounter(replicas: u32, max_entries: usize, max_value: u64) -> impl Strategy<Value = GCounter> + Clone {
    prop::collection::btree_map(0..replicas, 1..=max_value, 0..=max_entries)
        .prop_map(|m| GCounter::from_entries(m.into_iter().map(|(k, v)| (ReplicaId(k), v))))
}

pub fn pncounter(replicas: u32, max_entries: usize, max_value: u64) -> impl Strategy<Value = PNCounter> + Clone {
    prop::collection::btree_map(0..replicas, (0..=max_value, 0..=max_value), 0..=max_entries)
        .prop_map(|m| {
            PNCounter::from_entries(m.into_iter().map(|(k, (p, n))| (ReplicaId(k), p, n)))
        })
}

pub fn gmap(keys: u8, max_keys: usize, universe: u8, max_values: usize) -> impl Strategy<Value = Map> + Clone {
    prop::collection::btree_map(0..keys, gset(universe, max_values), 0..=max_keys)
        .prop_map(GMap::from_entries)
}

pub fn pair(universe: u8, max: usize, replicas: u32, entries: usize, value: u64) -> impl Strategy<Value = Duo> + Clone {
    (gset(universe, max), gcounter(replicas, entries, value)).prop_map(|(a, b)| Pair::new(a, b))
}

pub fn lex(versions: u64, universe: u8, max: usize) -> impl Strategy<Value = Lex> + Clone {
    (0..versions, gset(universe, max)).prop_map(|(c, s)| LexPair::new(Max(c), s))
}

pub fn sum(universe: u8, max: usize, replicas: u32, entries: usize, value: u64) -> impl Strategy<Value = Sum> + Clone {
    prop_oneof![
        gset(universe, max).prop_map(LinearSum::Left),
        gcounter(replicas, entries, value).prop_map(LinearSum::Right),
    ]
}

pub fn maxset(side: u32, max: usize) -> impl Strategy<Value = Maxima> + Clone {
    prop::collection::vec((0..side, 0..side), 0..=max)
        .prop_map(|pts| MaxSet::from_elements(pts.into_iter().map(|(x, y)| Point(x, y))))
}

pub fn chain(max: u64) -> impl Strategy<Value = Max<u64>> + Clone {
    (0..=max).prop_map(Max)
}

fn fail(msg: String) -> Result<(), TestCaseError> {
    Err(TestCaseError::fail(msg))
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return fail(format!($($fmt)*));
        }
    };
}

/// Commutativity, associativity, idempotence, bottom identity, and `leq`
/// agreeing with the join-derived order.
pub fn semilattice_laws<L: Lattice>(a: &L, b: &L, c: &L) -> Result<(), TestCaseError> {
    ensure!(a.join(b) == b.join(a), "join not commutative: {a:?} {b:?}");
    ensure!(
        a.join(&b.join(c)) == a.join(b).join(c),
        "join not associative: {a:?} {b:?} {c:?}"
    );
    ensure!(a.join(a) == *a, "join not idempotent: {a:?}");
    ensure!(a.join(&L::bottom()) == *a, "bottom not identity: {a:?}");
    ensure!(L::bottom().leq(a), "bottom not least: {a:?}");
    ensure!(
        a.leq(b) == (a.join(b) == *b),
        "leq disagrees with join order: {a:?} {b:?}"
    );
    ensure!(a.leq(&a.join(b)), "join not an upper bound: {a:?} {b:?}");
    Ok(())
}

/// Soundness, irredundancy, no bottom members, and Δ correctness.
pub fn decomposition_laws<L: Lattice>(x: &L, y: &L) -> Result<(), TestCaseError> {
    let d = decompose(x);
    ensure!(d.join() == *x, "decomposition does not rebuild {x:?}: {d:?}");
    ensure!(d.is_irredundant(), "redundant decomposition of {x:?}: {d:?}");
    ensure!(d.iter().all(|m| !m.is_bottom()), "bottom member in {d:?}");
    if x.is_bottom() {
        ensure!(d.is_empty(), "bottom decomposes to {d:?}");
    }
    let dl = delta(x, y);
    ensure!(dl.join(y) == x.join(y), "Δ({x:?}, {y:?}) ⊔ y ≠ x ⊔ y");
    ensure!(dl.is_bottom() == x.leq(y), "Δ bottom iff x ⊑ y broken: {x:?} {y:?}");
    ensure!(x.join(y).weight() <= x.weight() + y.weight(), "weight not subadditive");
    Ok(())
}

/// For an inflationary mutator `m` and its δ-mutator `md`: `x ⊑ m(x)`,
/// `m(x) = x ⊔ md(x)` and `md(x) = Δ(m(x), x)`.
pub fn mutator_laws<L: Lattice>(
    x: &L,
    m: impl Fn(&L) -> L,
    md: impl Fn(&L) -> L,
) -> Result<(), TestCaseError> {
    let full = m(x);
    let d = md(x);
    ensure!(x.leq(&full), "mutator not inflationary at {x:?}");
    ensure!(x.join(&d) == full, "m(x) ≠ x ⊔ mδ(x) at {x:?}: {full:?} vs {d:?}");
    ensure!(d == delta(&full, x), "mδ(x) not minimal at {x:?}: {d:?}");
    Ok(())
}

/// `decompose(x)` equals the unique irredundant decomposition found by
/// exhaustive search, and each member is join-irreducible in the region.
pub fn oracle_decomposition<L: FiniteBelow>(x: &L, limit: usize) -> Result<(), TestCaseError> {
    let oracle = FiniteLatticeOracle::below(x).map_err(|e| TestCaseError::fail(e.to_string()))?;
    ensure!(oracle.len() <= limit, "region of {x:?} has {} elements", oracle.len());
    ensure!(oracle.is_closed(), "region of {x:?} not closed under join");
    let expected = oracle
        .unique_decomposition(x)
        .map_err(|e| TestCaseError::fail(format!("{x:?}: {e}")))?;
    let got = decompose(x).into_vec();
    ensure!(got == expected, "decompose({x:?}) = {got:?}, oracle {expected:?}");
    for m in &got {
        let irreducible = m == oracle.bottom()
            || oracle.is_join_irreducible(m).map_err(|e| TestCaseError::fail(e.to_string()))?;
        ensure!(irreducible, "member {m:?} of {x:?} is reducible");
    }
    Ok(())
}

/// Δ(a, b) ⊔ b = a ⊔ b and Δ(a, b) is below every such candidate in the
/// enumerated region of a ⊔ b.
pub fn oracle_delta<L: FiniteBelow>(a: &L, b: &L, limit: usize) -> Result<(), TestCaseError> {
    let top = a.join(b);
    let oracle = FiniteLatticeOracle::below(&top).map_err(|e| TestCaseError::fail(e.to_string()))?;
    ensure!(oracle.len() <= limit, "region too large: {}", oracle.len());
    let d = delta(a, b);
    ensure!(d.join(b) == top, "Δ({a:?}, {b:?}) ⊔ b ≠ a ⊔ b");
    for c in oracle.delta_candidates(a, b) {
        ensure!(d.leq(&c), "Δ({a:?}, {b:?}) = {d:?} not below candidate {c:?}");
    }
    if a.leq(b) {
        ensure!(d.is_bottom(), "Δ not bottom for {a:?} ⊑ {b:?}");
    } else {
        let brute = oracle.minimal_delta(a, b);
        ensure!(brute.as_ref() == Some(&d), "brute force {brute:?} vs Δ {d:?}");
    }
    Ok(())
}

/// Joins of decomposition members equal the state; used by tests that only
/// have a decomposition at hand.
pub fn rebuild<L: Lattice>(members: &[L]) -> L {
    join_all(members.iter())
}
