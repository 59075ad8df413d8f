use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::lattice::{cost, Canonical, Lattice};
use crate::metrics::{RunMetrics, Sample};
use crate::protocols::{Envelope, ProtocolError, Replica, Size};
use crate::workloads::{GCounterWorkload, GMapWorkload, GSetWorkload, Retwis, Workload};
use crate::ReplicaId;

use super::{ConfigError, EventQueue, SimConfig, Topology, WorkloadSpec};

pub const RNG_NAME: &str = "chacha8 (stream 0: network, stream i+1: node i)";

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("no convergence after {rounds} quiescent rounds")]
    NotConverged {
        rounds: u64,
        metrics: Box<RunMetrics>,
    },
}

/// Result of a run, with the replicas in their final state.
pub struct Outcome<L> {
    pub metrics: RunMetrics,
    pub replicas: Vec<Replica<L>>,
}

/// Runs the workload named in the configuration.
pub fn run(config: &SimConfig) -> Result<RunMetrics, SimError> {
    config.validate()?;
    let n = config.nodes;
    let ops = config.ops_per_replica;
    let metrics = match &config.workload {
        WorkloadSpec::Gset => run_with(config, GSetWorkload::new(n, ops))?.metrics,
        WorkloadSpec::Gcounter => run_with(config, GCounterWorkload::new(ops))?.metrics,
        WorkloadSpec::Gmap { percent, keys } => {
            run_with(config, GMapWorkload::new(n, ops, *percent, *keys))?.metrics
        }
        WorkloadSpec::Retwis {
            users,
            zipf,
            total_ops,
            byte_weighted,
        } => {
            let mut m = run_with(config, Retwis::new(n, *users, *zipf, *total_ops))?.metrics;
            m.byte_weighted = *byte_weighted;
            m
        }
    };
    Ok(metrics)
}

/// Quiescent rounds allowed after the last operation before a run is
/// declared non-convergent: four network diameters, each hop allowed one
/// sync interval plus the longest delivery delay.
pub fn round_bound(config: &SimConfig, topology: &Topology) -> u64 {
    let hop = 1 + config.delay.max.div_ceil(config.sync_interval);
    4 * (topology.diameter().max(1) as u64) * hop
}

pub fn run_with<W: Workload>(config: &SimConfig, workload: W) -> Result<Outcome<W::State>, SimError> {
    config.validate()?;
    let topology = config.build_topology()?;
    Sim::new(config, topology, workload).run()
}

struct Sim<'c, W: Workload> {
    config: &'c SimConfig,
    topology: Topology,
    workload: W,
    replicas: Vec<Replica<W::State>>,
    queue: EventQueue<Envelope<W::State>>,
    net_rng: ChaCha8Rng,
    node_rngs: Vec<ChaCha8Rng>,
    samples: Vec<Vec<Sample>>,
    period: usize,
    hasher: Sha256,
    trace: Option<Vec<String>>,
}

impl<'c, W: Workload> Sim<'c, W> {
    fn new(config: &'c SimConfig, topology: Topology, workload: W) -> Self {
        let n = config.nodes;
        let stream = |s: u64| {
            let mut r = ChaCha8Rng::seed_from_u64(config.seed);
            r.set_stream(s);
            r
        };
        let replicas = (0..n)
            .map(|i| Replica::new(ReplicaId(i as u32), config.protocol, topology.neighbor_ids(i), n))
            .collect();
        Sim {
            config,
            topology,
            workload,
            replicas,
            queue: EventQueue::new(),
            net_rng: stream(0),
            node_rngs: (0..n).map(|i| stream(i as u64 + 1)).collect(),
            samples: vec![Vec::new(); n],
            period: 0,
            hasher: Sha256::new(),
            trace: config.trace.then(Vec::new),
        }
    }

    fn sample(&mut self, node: ReplicaId) -> &mut Sample {
        let series = &mut self.samples[node.index()];
        if series.len() <= self.period {
            series.resize(self.period + 1, Sample::default());
        }
        &mut series[self.period]
    }

    fn log(&mut self, tick: u64, seq: u64, kind: &str, from: ReplicaId, to: ReplicaId, size: Size) {
        let line = format!(
            "{tick},{seq},{kind},{from},{to},{},{}",
            size.entries,
            size.metadata()
        );
        self.hasher.update(line.as_bytes());
        self.hasher.update(b"\n");
        if let Some(t) = &mut self.trace {
            t.push(line);
        }
    }

    fn send(&mut self, tick: u64, env: Envelope<W::State>) {
        let (from, to, size) = (env.from, env.to, env.size);
        let s = self.sample(from);
        s.entries_sent += size.entries as u64;
        s.bytes_sent += size.bytes as u64;
        s.sync_meta += size.sync_meta as u64;
        s.key_meta += size.key_meta as u64;
        s.messages += 1;
        let d = self.config.delay;
        let dup = self.config.duplication > 0.0 && self.net_rng.gen_bool(self.config.duplication);
        if dup {
            let at = tick + self.net_rng.gen_range(d.min..=d.max);
            let seq = self.queue.push(at, env.clone());
            self.log(tick, seq, "send", from, to, size);
        }
        let at = tick + self.net_rng.gen_range(d.min..=d.max);
        let seq = self.queue.push(at, env);
        self.log(tick, seq, "send", from, to, size);
    }

    fn deliver(&mut self, tick: u64, seq: u64, env: Envelope<W::State>) -> Result<(), SimError> {
        let (from, to, size) = (env.from, env.to, env.size);
        self.log(tick, seq, "deliver", from, to, size);
        let replica = &mut self.replicas[to.index()];
        let (replies, visits) = cost::measure(|| replica.receive(env));
        let replies = replies?;
        let s = self.sample(to);
        s.entries_received += size.entries as u64;
        s.visits += visits;
        for r in replies {
            self.send(tick, r);
        }
        Ok(())
    }

    fn deliver_until(&mut self, until: u64) -> Result<(), SimError> {
        while let Some((tick, seq, env)) = self.queue.pop_due(until) {
            self.deliver(tick, seq, env)?;
        }
        Ok(())
    }

    fn converged(&self) -> bool {
        let live = |r: &Replica<W::State>| {
            r.states()
                .iter()
                .filter(|(_, x)| !x.is_bottom())
                .map(|(o, x)| (*o, x.clone()))
                .collect::<Vec<_>>()
        };
        let first = live(&self.replicas[0]);
        self.replicas[1..].iter().all(|r| live(r) == first)
    }

    fn local_ops(&mut self, tick: u64, period: u64) {
        for i in 0..self.replicas.len() {
            let id = ReplicaId(i as u32);
            let updates = self.workload.next_ops(id, period, &mut self.node_rngs[i]);
            for u in updates {
                let replica = &mut self.replicas[i];
                let (d, visits) = cost::measure(|| replica.operation(u.object, u.mutator));
                self.sample(id).visits += visits;
                let seq = self.queue.bump();
                let size = Size {
                    entries: d.weight(),
                    ..Size::default()
                };
                self.log(tick, seq, "op", id, id, size);
            }
        }
    }

    fn sync_all(&mut self, tick: u64) {
        for i in 0..self.replicas.len() {
            let id = ReplicaId(i as u32);
            let replica = &mut self.replicas[i];
            let (envs, visits) = cost::measure(|| replica.sync());
            let pairs = replica.pending_pairs() as u64;
            let s = self.sample(id);
            s.visits += visits;
            s.pending_pairs += pairs;
            for env in envs {
                self.send(tick, env);
            }
        }
    }

    fn sample_memory(&mut self) {
        for i in 0..self.replicas.len() {
            let m = self.replicas[i].memory();
            let s = self.sample(ReplicaId(i as u32));
            s.memory_state = m.state as u64;
            s.memory_buffer = m.buffer as u64;
            s.memory_meta = m.metadata as u64;
        }
    }

    fn run(mut self) -> Result<Outcome<W::State>, SimError> {
        let interval = self.config.sync_interval;
        let periods = self.workload.periods();
        let bound = round_bound(self.config, &self.topology);
        let mut convergence = None;
        for p in 0u64.. {
            let tick = p * interval;
            self.period = p as usize;
            self.deliver_until(tick)?;
            if p >= periods {
                if self.converged() {
                    convergence = Some(tick);
                    break;
                }
                if p - periods >= bound {
                    break;
                }
            } else {
                self.local_ops(tick, p);
            }
            self.sync_all(tick);
            // Deliveries due before the next period belong to this one.
            self.deliver_until(tick + interval - 1)?;
            self.sample_memory();
        }
        // Messages still in flight when the states agree are delivered, but
        // no further synchronization is started. Their traffic is booked on
        // the final period.
        if convergence.is_some() {
            while let Some((tick, seq, env)) = self.queue.pop() {
                self.deliver(tick, seq, env)?;
            }
        }
        self.sample_memory();
        let metrics = self.finish(convergence);
        if convergence.is_none() {
            return Err(SimError::NotConverged {
                rounds: bound,
                metrics: Box::new(metrics),
            });
        }
        Ok(Outcome {
            metrics,
            replicas: self.replicas,
        })
    }

    fn finish(&mut self, convergence: Option<u64>) -> RunMetrics {
        let mut digest = Sha256::new();
        for (o, x) in self.replicas[0].states() {
            if !x.is_bottom() {
                digest.update(format!("{o}={}\n", x.to_canonical()).as_bytes());
            }
        }
        let hasher = std::mem::take(&mut self.hasher);
        let n = self.replicas.len();
        RunMetrics {
            protocol: self.config.protocol.to_string(),
            topology: format!("{}-{}", self.topology.kind(), self.config.nodes),
            workload: self.workload.label(),
            nodes: n,
            seed: self.config.seed,
            rng: RNG_NAME.into(),
            byte_weighted: false,
            converged: convergence.is_some(),
            convergence_tick: convergence,
            per_node: std::mem::take(&mut self.samples),
            trace_hash: hex::encode(hasher.finalize()),
            state_digest: hex::encode(digest.finalize()),
            trace: self.trace.take(),
        }
    }
}
