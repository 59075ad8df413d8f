//! Replays the scripted GSet traces and checks them against golden output.

use anyhow::Result;
use clap::ValueEnum;
use crdtsync::protocols::ProtocolKind;
use crdtsync::simnet::script::{four_replica_trace, two_replica_trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    /// Two replicas, three synchronization steps.
    Fig4,
    /// Four replicas with a cycle, four synchronization steps.
    Fig5,
}

impl Scenario {
    fn variants(self) -> &'static [ProtocolKind] {
        match self {
            Scenario::Fig4 => &[ProtocolKind::DeltaClassic, ProtocolKind::DeltaBp],
            Scenario::Fig5 => &[
                ProtocolKind::DeltaClassic,
                ProtocolKind::DeltaBp,
                ProtocolKind::DeltaRr,
                ProtocolKind::DeltaBpRr,
            ],
        }
    }

    pub fn golden(self) -> &'static str {
        match self {
            Scenario::Fig4 => include_str!("../golden/fig4.txt"),
            Scenario::Fig5 => include_str!("../golden/fig5.txt"),
        }
    }

    /// One `[protocol]` header per variant followed by its messages.
    pub fn replay(self) -> Result<String> {
        let mut out = String::new();
        for &kind in self.variants() {
            let script = match self {
                Scenario::Fig4 => two_replica_trace(kind)?,
                Scenario::Fig5 => four_replica_trace(kind)?,
            };
            out.push_str(&format!("[{kind}]\n"));
            for m in script.sent() {
                out.push_str(&format!("{m}\n"));
            }
        }
        Ok(out)
    }
}

/// Line diff in `-expected` / `+actual` form; empty when equal.
pub fn diff(expected: &str, actual: &str) -> String {
    let want: Vec<&str> = expected.lines().collect();
    let got: Vec<&str> = actual.lines().collect();
    let mut out = String::new();
    for i in 0..want.len().max(got.len()) {
        match (want.get(i), got.get(i)) {
            (Some(w), Some(g)) if w == g => {}
            (w, g) => {
                if let Some(w) = w {
                    out.push_str(&format!("-{w}\n"));
                }
                if let Some(g) = g {
                    out.push_str(&format!("+{g}\n"));
                }
            }
        }
    }
    out
}
