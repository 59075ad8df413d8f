//! Executes an experiment matrix and writes its outputs.
//!
//! Layout under `<out>/<name>/`:
//!
//! - `<cell>.csv`: long-format samples of one run
//! - `<cell>.trace`: event trace, when the spec asks for it
//! - `summary.csv`: one row per cell, in matrix order
//! - `run.json`: sidecar with the spec echo, RNG name, timing and failures
//!
//! Data files depend only on the spec; anything that varies between
//! invocations (wall-clock time) goes in the sidecar.

use std::fs;
use std::io::BufWriter;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use crdtsync::metrics::{emit_csv, emit_summary_csv, RunMetrics, SummaryRow};
use crdtsync::simnet::{run as simulate, SimError, RNG_NAME};
use rayon::prelude::*;
use serde::Serialize;

use crate::spec::{cell_name, ExperimentSpec};

#[derive(Serialize)]
struct Sidecar<'a> {
    crdtsync_version: &'static str,
    rng: &'static str,
    cells: usize,
    not_converged: Vec<String>,
    elapsed_ms: u128,
    spec: &'a ExperimentSpec,
}

pub fn run(spec: &ExperimentSpec, out: &Path, jobs: Option<usize>) -> Result<ExitCode> {
    let dir = out.join(&spec.name);
    fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let cells = spec.cells();
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .context("cannot start worker threads")?;
    let results: Vec<(String, Result<RunMetrics, SimError>)> = pool.install(|| {
        cells
            .par_iter()
            .map(|c| (cell_name(c), simulate(c)))
            .collect()
    });

    let mut rows = Vec::new();
    let mut not_converged = Vec::new();
    for (name, result) in results {
        let metrics = match result {
            Ok(m) => m,
            Err(SimError::NotConverged { metrics, .. }) => {
                eprintln!("{name}: did not converge");
                not_converged.push(name.clone());
                *metrics
            }
            // Cells were validated up front, so this is a protocol fault.
            Err(e) => return Err(e).with_context(|| format!("cell {name} failed")),
        };
        let path = dir.join(format!("{name}.csv"));
        let file = fs::File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
        emit_csv(&metrics, BufWriter::new(file))?;
        if let Some(trace) = &metrics.trace {
            let mut text = trace.join("\n");
            text.push('\n');
            fs::write(dir.join(format!("{name}.trace")), text)?;
        }
        rows.push(SummaryRow::from(&metrics));
    }

    let summary = fs::File::create(dir.join("summary.csv"))?;
    emit_summary_csv(&rows, BufWriter::new(summary))?;
    let sidecar = Sidecar {
        crdtsync_version: env!("CARGO_PKG_VERSION"),
        rng: RNG_NAME,
        cells: cells.len(),
        not_converged: not_converged.clone(),
        elapsed_ms: start.elapsed().as_millis(),
        spec,
    };
    fs::write(dir.join("run.json"), serde_json::to_string_pretty(&sidecar)?)?;

    println!(
        "{}: {} cells, {} not converged, results in {}",
        spec.name,
        cells.len(),
        not_converged.len(),
        dir.display()
    );
    Ok(if not_converged.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
