//! Transmission, memory and metadata accounting, and CSV output.
//!
//! Everything is counted in entries (set elements, map entries) and metadata
//! units (vector entries, version keys, sequence numbers), never in process
//! memory or wall-clock time. The processing-cost series counts lattice
//! element visits (see [`crate::lattice::cost`]).

mod csv_io;

use serde::{Deserialize, Serialize};

use crate::lattice::Lattice;

pub use csv_io::{
    compare, emit_csv, emit_summary_csv, parse_summary_csv, Comparison, SummaryRow,
    CSV_SCHEMA,
};

/// Weight of a state in entries.
pub fn weigh<L: Lattice>(x: &L) -> usize {
    x.weight()
}

/// One node's counters for one period. Flow counters (sent, received,
/// visits) cover the period; memory gauges are sampled at its end.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub entries_sent: u64,
    pub bytes_sent: u64,
    pub sync_meta: u64,
    pub key_meta: u64,
    pub messages: u64,
    pub entries_received: u64,
    pub memory_state: u64,
    pub memory_buffer: u64,
    pub memory_meta: u64,
    pub pending_pairs: u64,
    pub visits: u64,
}

pub const SERIES: [&str; 11] = [
    "entries_sent",
    "bytes_sent",
    "sync_meta",
    "key_meta",
    "messages",
    "entries_received",
    "memory_state",
    "memory_buffer",
    "memory_meta",
    "pending_pairs",
    "visits",
];

impl Sample {
    pub fn values(&self) -> [u64; 11] {
        [
            self.entries_sent,
            self.bytes_sent,
            self.sync_meta,
            self.key_meta,
            self.messages,
            self.entries_received,
            self.memory_state,
            self.memory_buffer,
            self.memory_meta,
            self.pending_pairs,
            self.visits,
        ]
    }

    pub fn add(&mut self, o: &Sample) {
        self.entries_sent += o.entries_sent;
        self.bytes_sent += o.bytes_sent;
        self.sync_meta += o.sync_meta;
        self.key_meta += o.key_meta;
        self.messages += o.messages;
        self.entries_received += o.entries_received;
        self.memory_state += o.memory_state;
        self.memory_buffer += o.memory_buffer;
        self.memory_meta += o.memory_meta;
        self.pending_pairs += o.pending_pairs;
        self.visits += o.visits;
    }

    pub fn metadata(&self) -> u64 {
        self.sync_meta + self.key_meta
    }

    pub fn memory(&self) -> u64 {
        self.memory_state + self.memory_buffer + self.memory_meta
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub protocol: String,
    pub topology: String,
    pub workload: String,
    pub nodes: usize,
    pub seed: u64,
    /// Random generator algorithm, for reproducibility.
    pub rng: String,
    pub byte_weighted: bool,
    pub converged: bool,
    pub convergence_tick: Option<u64>,
    /// `per_node[i][p]` is node `i` in period `p`.
    pub per_node: Vec<Vec<Sample>>,
    pub trace_hash: String,
    /// Hash of the canonical encoding of the final state of node 0.
    pub state_digest: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<String>>,
}

impl RunMetrics {
    pub fn periods(&self) -> usize {
        self.per_node.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn node_total(&self, node: usize) -> Sample {
        let mut t = Sample::default();
        for s in &self.per_node[node] {
            t.add(s);
        }
        t
    }

    /// Sum over nodes and periods.
    pub fn total(&self) -> Sample {
        let mut t = Sample::default();
        for i in 0..self.per_node.len() {
            t.add(&self.node_total(i));
        }
        t
    }

    /// Sum over nodes for one period.
    pub fn period_total(&self, period: usize) -> Sample {
        let mut t = Sample::default();
        for node in &self.per_node {
            if let Some(s) = node.get(period) {
                t.add(s);
            }
        }
        t
    }

    /// CRDT payload sent: bytes when byte-weighted, entries otherwise.
    pub fn transmission(&self) -> u64 {
        let t = self.total();
        if self.byte_weighted {
            t.bytes_sent
        } else {
            t.entries_sent
        }
    }

    /// Mean memory footprint per node per period.
    pub fn mean_memory(&self) -> f64 {
        let samples: usize = self.per_node.iter().map(Vec::len).sum();
        if samples == 0 {
            return 0.0;
        }
        self.total().memory() as f64 / samples as f64
    }

    /// Share of metadata in everything sent.
    pub fn metadata_fraction(&self) -> f64 {
        let t = self.total();
        let all = t.metadata() + t.entries_sent;
        if all == 0 {
            0.0
        } else {
            t.metadata() as f64 / all as f64
        }
    }
}
