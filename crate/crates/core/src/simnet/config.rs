use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::protocols::ProtocolKind;

use super::{Topology, TopologyError, TopologyKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DelayRange {
    pub min: u64,
    pub max: u64,
}

impl Default for DelayRange {
    fn default() -> Self {
        DelayRange { min: 1, max: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WorkloadSpec {
    Gset,
    Gcounter,
    Gmap {
        percent: f64,
        #[serde(default = "default_keys")]
        keys: u32,
    },
    Retwis {
        #[serde(default = "default_users")]
        users: u32,
        zipf: f64,
        #[serde(default = "default_total_ops")]
        total_ops: u64,
        #[serde(default)]
        byte_weighted: bool,
    },
}

fn default_keys() -> u32 {
    1000
}

fn default_users() -> u32 {
    100
}

fn default_total_ops() -> u64 {
    1000
}

fn default_interval() -> u64 {
    1
}

fn default_ops() -> u64 {
    100
}

fn default_degree() -> usize {
    4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub seed: u64,
    pub nodes: usize,
    pub topology: TopologyKind,
    #[serde(default = "default_degree")]
    pub mesh_degree: usize,
    /// Ticks between synchronization steps.
    #[serde(default = "default_interval")]
    pub sync_interval: u64,
    #[serde(default = "default_ops")]
    pub ops_per_replica: u64,
    /// Delivery delay in ticks, drawn uniformly from the inclusive range.
    #[serde(default)]
    pub delay: DelayRange,
    /// Probability that a message is delivered twice.
    #[serde(default)]
    pub duplication: f64,
    pub protocol: ProtocolKind,
    pub workload: WorkloadSpec,
    /// Keep the event trace lines in the result.
    #[serde(default)]
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

impl SimConfig {
    pub fn new(
        seed: u64,
        nodes: usize,
        topology: TopologyKind,
        protocol: ProtocolKind,
        workload: WorkloadSpec,
    ) -> Self {
        SimConfig {
            seed,
            nodes,
            topology,
            mesh_degree: default_degree(),
            sync_interval: default_interval(),
            ops_per_replica: default_ops(),
            delay: DelayRange::default(),
            duplication: 0.0,
            protocol,
            workload,
            trace: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if self.nodes == 0 {
            return bad("nodes must be positive".into());
        }
        if self.sync_interval == 0 {
            return bad("sync_interval must be positive".into());
        }
        if self.delay.min < 1 || self.delay.max < self.delay.min {
            return bad(format!(
                "delay range [{}, {}] needs 1 <= min <= max",
                self.delay.min, self.delay.max
            ));
        }
        if !(0.0..1.0).contains(&self.duplication) {
            return bad(format!("duplication {} outside [0, 1)", self.duplication));
        }
        match &self.workload {
            WorkloadSpec::Gmap { percent, keys } if !(0.0..=100.0).contains(percent) || *keys == 0 => {
                return bad("gmap needs 0 <= percent <= 100 and keys > 0".into());
            }
            WorkloadSpec::Retwis { users, zipf, .. } if *users < 2 || !(*zipf >= 0.0 && zipf.is_finite()) => {
                return bad("retwis needs users >= 2 and a finite zipf >= 0".into());
            }
            _ => {}
        }
        self.build_topology()?;
        Ok(())
    }

    pub fn build_topology(&self) -> Result<Topology, ConfigError> {
        Ok(match self.topology {
            TopologyKind::Mesh => Topology::mesh(self.nodes, self.mesh_degree)?,
            TopologyKind::Tree => Topology::tree(self.nodes)?,
            TopologyKind::Custom => {
                return Err(ConfigError::Invalid(
                    "custom topologies are only available to scripted runs".into(),
                ))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_defaults() {
        let c: SimConfig = serde_json::from_str(
            r#"{"seed":1,"nodes":15,"topology":"mesh","protocol":"delta-bp-rr",
                "workload":{"kind":"gset"}}"#,
        )
        .unwrap();
        assert_eq!(c.ops_per_replica, 100);
        assert_eq!(c.delay, DelayRange { min: 1, max: 1 });
        c.validate().unwrap();
    }

    #[test]
    fn unknown_fields_rejected() {
        let r: Result<SimConfig, _> = serde_json::from_str(
            r#"{"seed":1,"nodes":15,"topology":"mesh","protocol":"delta-bp-rr",
                "workload":{"kind":"gset"},"colour":"red"}"#,
        );
        assert!(r.is_err());
        let r: Result<WorkloadSpec, _> =
            serde_json::from_str(r#"{"kind":"gmap","percent":10,"extra":1}"#);
        assert!(r.is_err());
    }

    #[test]
    fn invalid_values() {
        let mut c = SimConfig::new(0, 15, TopologyKind::Tree, ProtocolKind::DeltaBp, WorkloadSpec::Gset);
        c.validate().unwrap();
        c.duplication = 1.0;
        assert!(c.validate().is_err());
        c.duplication = 0.0;
        c.delay = DelayRange { min: 0, max: 2 };
        assert!(c.validate().is_err());
        c.delay = DelayRange::default();
        c.nodes = 14;
        assert!(matches!(c.validate(), Err(ConfigError::Topology(_))));
    }
}
