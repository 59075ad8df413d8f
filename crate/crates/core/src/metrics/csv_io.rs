use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{RunMetrics, SERIES};

/// Version tag written in the first column of every row.
pub const CSV_SCHEMA: &str = "crdtsync-v1";

#[derive(Serialize)]
struct LongRow<'a> {
    schema: &'a str,
    protocol: &'a str,
    topology: &'a str,
    workload: &'a str,
    seed: u64,
    node: usize,
    series: &'a str,
    tick: String,
    value: u64,
}

/// Long-format per-run CSV: one row per (node, series, period) plus a
/// `total` row per (node, series). A run without samples writes the header
/// only.
pub fn emit_csv<W: Write>(m: &RunMetrics, out: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record([
        "schema", "protocol", "topology", "workload", "seed", "node", "series", "tick", "value",
    ])?;
    for (node, samples) in m.per_node.iter().enumerate() {
        if samples.is_empty() {
            continue;
        }
        let total = m.node_total(node).values();
        for (k, series) in SERIES.iter().enumerate() {
            let row = |tick: String, value: u64| LongRow {
                schema: CSV_SCHEMA,
                protocol: &m.protocol,
                topology: &m.topology,
                workload: &m.workload,
                seed: m.seed,
                node,
                series,
                tick,
                value,
            };
            for (p, s) in samples.iter().enumerate() {
                w.serialize(row(p.to_string(), s.values()[k]))?;
            }
            w.serialize(row("total".into(), total[k]))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One line per run in the combined summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub schema: String,
    pub protocol: String,
    pub topology: String,
    pub workload: String,
    pub nodes: usize,
    pub seed: u64,
    pub converged: bool,
    pub convergence_tick: Option<u64>,
    pub periods: usize,
    pub entries: u64,
    pub bytes: u64,
    pub sync_meta: u64,
    pub key_meta: u64,
    pub messages: u64,
    pub mean_memory: f64,
    pub visits: u64,
    pub trace_hash: String,
    pub state_digest: String,
}

impl From<&RunMetrics> for SummaryRow {
    fn from(m: &RunMetrics) -> Self {
        let t = m.total();
        SummaryRow {
            schema: CSV_SCHEMA.into(),
            protocol: m.protocol.clone(),
            topology: m.topology.clone(),
            workload: m.workload.clone(),
            nodes: m.nodes,
            seed: m.seed,
            converged: m.converged,
            convergence_tick: m.convergence_tick,
            periods: m.periods(),
            entries: t.entries_sent,
            bytes: t.bytes_sent,
            sync_meta: t.sync_meta,
            key_meta: t.key_meta,
            messages: t.messages,
            mean_memory: m.mean_memory(),
            visits: t.visits,
            trace_hash: m.trace_hash.clone(),
            state_digest: m.state_digest.clone(),
        }
    }
}

pub fn emit_summary_csv<W: Write>(rows: &[SummaryRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn parse_summary_csv<R: Read>(input: R) -> Result<Vec<SummaryRow>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub topology: String,
    pub workload: String,
    pub nodes: usize,
    pub seed: u64,
    pub baseline: String,
    pub other: String,
    /// `baseline.entries / other.entries`.
    pub entries_ratio: f64,
    /// Same ratio over entries plus metadata.
    pub total_ratio: f64,
    pub visits_ratio: f64,
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        if a == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        a as f64 / b as f64
    }
}

/// Pairs runs of `baseline` and `other` that share topology, workload, size
/// and seed.
pub fn compare(rows: &[SummaryRow], baseline: &str, other: &str) -> Vec<Comparison> {
    let mut out = Vec::new();
    for b in rows.iter().filter(|r| r.protocol == baseline) {
        let matching = rows.iter().find(|r| {
            r.protocol == other
                && r.topology == b.topology
                && r.workload == b.workload
                && r.nodes == b.nodes
                && r.seed == b.seed
        });
        if let Some(o) = matching {
            out.push(Comparison {
                topology: b.topology.clone(),
                workload: b.workload.clone(),
                nodes: b.nodes,
                seed: b.seed,
                baseline: baseline.into(),
                other: other.into(),
                entries_ratio: ratio(b.entries, o.entries),
                total_ratio: ratio(
                    b.entries + b.sync_meta + b.key_meta,
                    o.entries + o.sync_meta + o.key_meta,
                ),
                visits_ratio: ratio(b.visits, o.visits),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::Sample;

    fn run(protocol: &str, entries: u64) -> RunMetrics {
        let s = Sample {
            entries_sent: entries,
            memory_state: 3,
            ..Sample::default()
        };
        RunMetrics {
            protocol: protocol.into(),
            topology: "mesh".into(),
            workload: "gset".into(),
            nodes: 1,
            seed: 4,
            per_node: vec![vec![s]],
            converged: true,
            convergence_tick: Some(7),
            ..RunMetrics::default()
        }
    }

    #[test]
    fn empty_run_is_header_only() {
        let mut buf = Vec::new();
        emit_csv(&RunMetrics::default(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "schema,protocol,topology,workload,seed,node,series,tick,value\n");
    }

    #[test]
    fn long_rows() {
        let mut buf = Vec::new();
        emit_csv(&run("state-based", 10), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + SERIES.len() * 2);
        assert!(text.contains("crdtsync-v1,state-based,mesh,gset,4,0,entries_sent,total,10"));
    }

    #[test]
    fn summary_roundtrip_and_compare() {
        let rows: Vec<SummaryRow> =
            [run("state-based", 10), run("delta-bp-rr", 4)].iter().map(Into::into).collect();
        let mut buf = Vec::new();
        emit_summary_csv(&rows, &mut buf).unwrap();
        let back = parse_summary_csv(buf.as_slice()).unwrap();
        assert_eq!(back, rows);
        let c = compare(&rows, "state-based", "delta-bp-rr");
        assert_eq!(c.len(), 1);
        assert!((c[0].entries_ratio - 2.5).abs() < 1e-12);
    }
}
