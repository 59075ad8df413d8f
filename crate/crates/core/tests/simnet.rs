use std::collections::{BTreeMap, BTreeSet};

use crdtsync::protocols::ProtocolKind;
use crdtsync::simnet::{run, DelayRange, SimConfig, SimError, Topology, TopologyKind, WorkloadSpec};
use proptest::prelude::*;
use sha2::{Digest, Sha256};

fn config(protocol: ProtocolKind, topology: TopologyKind, workload: WorkloadSpec) -> SimConfig {
    let mut c = SimConfig::new(7, 15, topology, protocol, workload);
    c.ops_per_replica = 20;
    c
}

#[test]
fn runs_are_deterministic() {
    for protocol in ProtocolKind::ALL {
        let mut c = config(protocol, TopologyKind::Mesh, WorkloadSpec::Gset);
        c.delay = DelayRange { min: 1, max: 3 };
        c.duplication = 0.2;
        let a = run(&c).unwrap();
        let b = run(&c).unwrap();
        assert_eq!(a.trace_hash, b.trace_hash, "{protocol}");
        assert_eq!(a.per_node, b.per_node, "{protocol}");
        assert_eq!(a.state_digest, b.state_digest, "{protocol}");
        c.seed += 1;
        let other = run(&c).unwrap();
        assert_ne!(a.trace_hash, other.trace_hash, "{protocol}: seed ignored");
    }
}

#[test]
fn trace_lines_hash_to_trace_hash() {
    let mut c = config(ProtocolKind::DeltaBpRr, TopologyKind::Tree, WorkloadSpec::Gcounter);
    c.trace = true;
    let m = run(&c).unwrap();
    let lines = m.trace.as_ref().unwrap();
    assert!(lines.iter().all(|l| l.split(',').count() == 7));
    let mut joined = String::new();
    for l in lines {
        joined.push_str(l);
        joined.push('\n');
    }
    assert_eq!(hex::encode(Sha256::digest(joined.as_bytes())), m.trace_hash);
}

#[test]
fn zero_ops_converges_immediately() {
    for protocol in ProtocolKind::ALL {
        let mut c = config(protocol, TopologyKind::Mesh, WorkloadSpec::Gset);
        c.ops_per_replica = 0;
        let m = run(&c).unwrap();
        assert_eq!(m.convergence_tick, Some(0), "{protocol}");
        assert_eq!(m.transmission(), 0, "{protocol}");
    }
}

#[test]
fn sent_entries_are_received() {
    for protocol in ProtocolKind::ALL {
        for topology in [TopologyKind::Mesh, TopologyKind::Tree] {
            let mut c = config(protocol, topology, WorkloadSpec::Gcounter);
            c.delay = DelayRange { min: 1, max: 4 };
            let m = run(&c).unwrap();
            let t = m.total();
            assert_eq!(t.entries_sent, t.entries_received, "{protocol} {topology:?}");
        }
    }
}

#[test]
fn every_send_is_delivered() {
    for protocol in ProtocolKind::ALL {
        let mut c = config(protocol, TopologyKind::Mesh, WorkloadSpec::Gset);
        c.delay = DelayRange { min: 1, max: 5 };
        c.duplication = 0.3;
        c.trace = true;
        let m = run(&c).unwrap();
        let mut sent = BTreeMap::new();
        let mut delivered = BTreeSet::new();
        for line in m.trace.unwrap() {
            let f: Vec<&str> = line.split(',').collect();
            let seq: u64 = f[1].parse().unwrap();
            match f[2] {
                "send" => {
                    sent.insert(seq, (f[3].to_string(), f[4].to_string()));
                }
                "deliver" => {
                    assert!(sent.contains_key(&seq), "{protocol}: delivery of unsent {seq}");
                    delivered.insert(seq);
                }
                _ => {}
            }
        }
        let missing: Vec<_> = sent.keys().filter(|s| !delivered.contains(s)).collect();
        assert!(missing.is_empty(), "{protocol}: undelivered {missing:?}");
    }
}

#[test]
fn aggregates_match_per_node_sums() {
    let c = config(ProtocolKind::Scuttlebutt, TopologyKind::Mesh, WorkloadSpec::Gset);
    let m = run(&c).unwrap();
    let mut sum = 0;
    for node in 0..m.nodes {
        sum += m.node_total(node).messages;
    }
    assert_eq!(sum, m.total().messages);
    let by_period: u64 = (0..m.periods()).map(|p| m.period_total(p).messages).sum();
    assert_eq!(by_period, sum);
}

#[test]
fn invalid_config_is_rejected() {
    let mut c = config(ProtocolKind::DeltaBp, TopologyKind::Tree, WorkloadSpec::Gset);
    c.nodes = 10;
    assert!(matches!(run(&c), Err(SimError::Config(_))));
    let mut c = config(ProtocolKind::DeltaBp, TopologyKind::Mesh, WorkloadSpec::Gset);
    c.duplication = 1.5;
    assert!(matches!(run(&c), Err(SimError::Config(_))));
}

#[test]
fn topology_shapes() {
    for n in [5, 8, 15, 16, 32] {
        let t = Topology::mesh(n, 4).unwrap();
        assert!((0..n).all(|i| t.degree(i) == 4), "mesh {n}");
        assert!(t.is_connected());
        assert!(!t.is_acyclic());
        assert_eq!(t.edge_count(), 2 * n);
    }
    for n in [3, 7, 15, 31] {
        let t = Topology::tree(n).unwrap();
        assert!(t.is_connected() && t.is_acyclic(), "tree {n}");
        assert_eq!(t.edge_count(), n - 1);
        let leaves = (0..n).filter(|&i| t.degree(i) <= 1).count();
        assert_eq!(leaves, n.div_ceil(2));
    }
    for bad in [1, 10] {
        assert!(Topology::tree(bad).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Adversarial delivery never prevents convergence, and every protocol
    /// ends in the same state.
    #[test]
    fn adversarial_runs_agree(
        seed in any::<u64>(),
        dup in 0.0f64..0.3,
        max_delay in 1u64..=5,
        tree in any::<bool>(),
    ) {
        let topology = if tree { TopologyKind::Tree } else { TopologyKind::Mesh };
        let mut digests = BTreeSet::new();
        for protocol in ProtocolKind::ALL {
            let mut c = SimConfig::new(seed, 7, topology, protocol, WorkloadSpec::Gset);
            c.ops_per_replica = 5;
            c.duplication = dup;
            c.delay = DelayRange { min: 1, max: max_delay };
            let m = run(&c).map_err(|e| TestCaseError::fail(format!("{protocol}: {e}")))?;
            digests.insert(m.state_digest);
        }
        prop_assert_eq!(digests.len(), 1);
    }
}
