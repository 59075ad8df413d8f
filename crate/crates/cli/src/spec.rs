//! Experiment specification files.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use crdtsync::protocols::ProtocolKind;
use crdtsync::simnet::{DelayRange, SimConfig, TopologyKind, WorkloadSpec};
use serde::{Deserialize, Serialize};

/// A matrix of simulation runs: every combination of workload, topology,
/// node count, protocol and seed is one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: String,
    /// First seed; cells use `seed..seed + repeat`.
    #[serde(default = "one")]
    pub seed: u64,
    #[serde(default = "one")]
    pub repeat: u64,
    pub nodes: Vec<usize>,
    pub topologies: Vec<TopologyKind>,
    pub protocols: Vec<ProtocolKind>,
    pub workloads: Vec<WorkloadSpec>,
    #[serde(default)]
    pub mesh_degree: Option<usize>,
    #[serde(default)]
    pub sync_interval: Option<u64>,
    #[serde(default)]
    pub ops_per_replica: Option<u64>,
    #[serde(default)]
    pub delay: Option<DelayRange>,
    #[serde(default)]
    pub duplication: Option<f64>,
    /// Write the event trace of every cell next to its CSV.
    #[serde(default)]
    pub trace: bool,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn one() -> u64 {
    1
}

impl ExperimentSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = serde_json::from_str(text).context("invalid experiment spec")?;
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            bail!("name `{}` must be non-empty and use only letters, digits, `-` and `_`", self.name);
        }
        for (field, empty) in [
            ("nodes", self.nodes.is_empty()),
            ("topologies", self.topologies.is_empty()),
            ("protocols", self.protocols.is_empty()),
            ("workloads", self.workloads.is_empty()),
        ] {
            if empty {
                bail!("`{field}` must list at least one value");
            }
        }
        if self.repeat == 0 {
            bail!("`repeat` must be positive");
        }
        for cell in self.cells() {
            cell.validate()
                .with_context(|| format!("cell {} is invalid", cell_name(&cell)))?;
        }
        Ok(())
    }

    /// Every cell of the matrix, in a fixed order.
    pub fn cells(&self) -> Vec<SimConfig> {
        let mut out = Vec::new();
        for w in &self.workloads {
            for &t in &self.topologies {
                for &n in &self.nodes {
                    for &p in &self.protocols {
                        for seed in self.seed..self.seed + self.repeat {
                            let mut c = SimConfig::new(seed, n, t, p, w.clone());
                            if let Some(d) = self.mesh_degree {
                                c.mesh_degree = d;
                            }
                            if let Some(i) = self.sync_interval {
                                c.sync_interval = i;
                            }
                            if let Some(o) = self.ops_per_replica {
                                c.ops_per_replica = o;
                            }
                            if let Some(d) = self.delay {
                                c.delay = d;
                            }
                            if let Some(d) = self.duplication {
                                c.duplication = d;
                            }
                            c.trace = self.trace;
                            out.push(c);
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn workload_label(w: &WorkloadSpec) -> String {
    match w {
        WorkloadSpec::Gset => "gset".into(),
        WorkloadSpec::Gcounter => "gcounter".into(),
        WorkloadSpec::Gmap { percent, keys } => format!("gmap{percent}-k{keys}"),
        WorkloadSpec::Retwis { users, zipf, total_ops, byte_weighted } => {
            let unit = if *byte_weighted { "-bytes" } else { "" };
            format!("retwis-u{users}-z{zipf}-ops{total_ops}{unit}")
        }
    }
}

/// File stem of a cell, unique within an experiment.
pub fn cell_name(c: &SimConfig) -> String {
    format!(
        "{}_{}{}_{}_s{}",
        workload_label(&c.workload),
        c.topology,
        c.nodes,
        c.protocol,
        c.seed
    )
}
