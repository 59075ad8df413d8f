mod common;

use common::*;
use crdtsync::crdts::{GCounter, GMap, GSet, LexPair, Max, PNCounter, Point, Poset};
use crdtsync::lattice::{decompose, delta, optimal_delta_mutator, Canonical, Lattice};
use crdtsync::ReplicaId;
use proptest::prelude::*;

fn canonical_roundtrip<L: Lattice + Canonical>(x: &L) -> Result<(), TestCaseError> {
    let text = x.to_canonical();
    let back = L::from_canonical(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert_eq!(&back, x);
    prop_assert_eq!(back.to_canonical(), text);
    Ok(())
}

macro_rules! lattice_suite {
    ($name:ident, $strategy:expr) => {
        mod $name {
            use super::*;

            proptest! {
                #![proptest_config(ProptestConfig::with_cases(256))]

                #[test]
                fn semilattice(a in $strategy, b in $strategy, c in $strategy) {
                    semilattice_laws(&a, &b, &c)?;
                }

                #[test]
                fn decomposition(x in $strategy, y in $strategy) {
                    decomposition_laws(&x, &y)?;
                    decomposition_laws(&y, &x)?;
                }

                #[test]
                fn roundtrip(x in $strategy) {
                    canonical_roundtrip(&x)?;
                }

                #[test]
                fn join_mutator(x in $strategy, y in $strategy) {
                    let m = |s: &_| Lattice::join(s, &y);
                    let md = optimal_delta_mutator(m);
                    mutator_laws(&x, m, md)?;
                }
            }
        }
    };
}

lattice_suite!(gset_laws, gset(12, 8));
lattice_suite!(gcounter_laws, gcounter(4, 3, 7));
lattice_suite!(pncounter_laws, pncounter(4, 2, 5));
lattice_suite!(pair_laws, pair(6, 4, 3, 2, 4));
lattice_suite!(lex_laws, lex(4, 6, 4));
lattice_suite!(sum_laws, sum(6, 4, 3, 2, 4));
lattice_suite!(gmap_laws, gmap(4, 3, 5, 3));
lattice_suite!(maxset_laws, maxset(4, 3));
lattice_suite!(chain_laws, chain(9));

const A: ReplicaId = ReplicaId(0);

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gset_add_delta(s in gset(12, 8), e in 0u8..12) {
        mutator_laws(&s, |x: &Set| { let mut y = x.clone(); y.add(e); y }, |x: &Set| x.add_delta(e))?;
    }

    #[test]
    fn gcounter_inc_delta(p in gcounter(4, 3, 7), i in 0u32..4) {
        let i = ReplicaId(i);
        mutator_laws(&p, |x: &GCounter| { let mut y = x.clone(); y.inc(i); y }, |x: &GCounter| x.inc_delta(i))?;
        let mut q = p.clone();
        q.inc(i);
        prop_assert_eq!(q.value(), p.value() + 1);
    }

    #[test]
    fn pncounter_deltas(p in pncounter(4, 2, 5), i in 0u32..4) {
        let i = ReplicaId(i);
        mutator_laws(&p, |x: &PNCounter| { let mut y = x.clone(); y.inc(i); y }, |x: &PNCounter| x.inc_delta(i))?;
        mutator_laws(&p, |x: &PNCounter| { let mut y = x.clone(); y.dec(i); y }, |x: &PNCounter| x.dec_delta(i))?;
        let mut q = p.clone();
        q.dec(i);
        prop_assert_eq!(q.value(), p.value() - 1);
    }

    #[test]
    fn gmap_update_delta(m in gmap(4, 3, 5, 3), k in 0u8..4, e in 0u8..5) {
        mutator_laws(
            &m,
            |x: &Map| { let mut y = x.clone(); y.update(k, |v| v.add_delta(e)); y },
            |x: &Map| x.update_delta(k, |v| v.add_delta(e)),
        )?;
    }

    #[test]
    fn maxset_add_delta(s in maxset(4, 3), x in 0u32..4, y in 0u32..4) {
        let p = Point(x, y);
        mutator_laws(&s, |m: &Maxima| { let mut n = m.clone(); n.add(p); n }, |m: &Maxima| m.add_delta(p))?;
    }

    #[test]
    fn maxset_is_antichain(s in maxset(5, 5), t in maxset(5, 5)) {
        for m in [&s, &t, &s.join(&t)] {
            let pts: Vec<_> = m.iter().collect();
            for a in &pts {
                for b in &pts {
                    prop_assert!(a == b || !a.below(b), "{:?} below {:?} in {:?}", a, b, m);
                }
            }
        }
    }

    #[test]
    fn gmap_has_no_bottom_values(m in gmap(4, 3, 5, 3), k in 0u8..4) {
        let with_empty = m.join(&GMap::from_entries([(k, GSet::new())]));
        prop_assert_eq!(&with_empty, &m);
        prop_assert!(m.iter().all(|(_, v)| !v.is_bottom()));
    }

    #[test]
    fn delta_of_join_is_split_difference(a in gset(12, 8), b in gset(12, 8)) {
        let d = delta(&a, &b);
        let expected: Set = a.iter().filter(|e| !b.contains(e)).copied().collect();
        prop_assert_eq!(d, expected);
    }
}

#[test]
fn lex_bottom_value_is_its_own_member() {
    let x = LexPair::new(Max(3u64), GSet::<u8>::new());
    assert_eq!(decompose(&x).members(), std::slice::from_ref(&x));
    let y = LexPair::new(Max(3u64), [1u8, 2].into_iter().collect::<GSet<u8>>());
    assert_eq!(
        decompose(&y).members(),
        &[
            LexPair::new(Max(3), GSet::singleton(1)),
            LexPair::new(Max(3), GSet::singleton(2))
        ]
    );
}

#[test]
fn lex_higher_version_discards_value() {
    let old = LexPair::new(Max(1u64), [1u8, 2].into_iter().collect::<GSet<u8>>());
    let new = LexPair::new(Max(2u64), GSet::singleton(9u8));
    assert_eq!(old.join(&new), new);
    assert!(old.leq(&new));
}

#[test]
fn gcounter_delta_keeps_only_advanced_entries() {
    let a = GCounter::from_entries([(A, 5), (ReplicaId(1), 7)]);
    let b = GCounter::from_entries([(A, 6), (ReplicaId(1), 2)]);
    assert_eq!(delta(&a, &b), GCounter::from_entries([(ReplicaId(1), 7)]));
}
