//! Benchmark JSON lines.
//!
//! One object per line with the keys `bench`, `n` or `bytes`, `precision`,
//! `backend`, `elapsed_s`, `flops`, one rate key (`gigaflops`, `mb_per_s` or
//! `updates_per_s`), `residual` and `skipped`, plus a few kind-specific
//! extras. With timing disabled every time-derived field is `null`, which
//! makes output byte-stable for a fixed seed.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::backend::Backend;
use crate::bench::{BandwidthRecord, CopyTier, FdtdBenchRecord, SolveBenchRecord, SpeedupRecord};
use crate::error::{Error, Result};
use crate::real::Precision;

#[derive(Debug, Clone, PartialEq)]
pub enum BenchRecord {
    Bandwidth(BandwidthRecord),
    Linsolve(SolveBenchRecord),
    Fdtd(FdtdBenchRecord),
}

#[derive(Serialize)]
struct BandwidthLine {
    bench: &'static str,
    bytes: u64,
    tier: CopyTier,
    /// Raw bytes; no floating-point width applies.
    precision: Option<Precision>,
    backend: Backend,
    repeats: u64,
    elapsed_s: Option<f64>,
    flops: Option<f64>,
    mb_per_s: Option<f64>,
    residual: Option<f64>,
    skipped: Option<String>,
}

#[derive(Serialize)]
struct LinsolveLine {
    bench: &'static str,
    n: usize,
    precision: Precision,
    backend: Backend,
    elapsed_s: Option<f64>,
    flops: Option<f64>,
    gigaflops: Option<f64>,
    residual: Option<f64>,
    skipped: Option<String>,
}

#[derive(Serialize)]
struct FdtdLine {
    bench: &'static str,
    n: usize,
    dims: usize,
    steps: u64,
    precision: Precision,
    backend: Backend,
    elapsed_s: Option<f64>,
    flops: Option<f64>,
    updates_per_s: Option<f64>,
    residual: Option<f64>,
    skipped: Option<String>,
    digest: String,
}

impl BenchRecord {
    pub fn to_json_line(&self, timing: bool) -> String {
        let t = |v: f64| timing.then_some(v);
        let line = match self {
            BenchRecord::Bandwidth(r) => serde_json::to_string(&BandwidthLine {
                bench: "bandwidth",
                bytes: r.bytes,
                tier: r.tier,
                precision: None,
                backend: Backend::Serial,
                repeats: r.repeats,
                elapsed_s: t(r.elapsed_s),
                flops: None,
                mb_per_s: t(r.mb_per_s),
                residual: None,
                skipped: None,
            }),
            BenchRecord::Linsolve(r) => serde_json::to_string(&LinsolveLine {
                bench: "linsolve",
                n: r.n,
                precision: r.precision,
                backend: r.backend,
                elapsed_s: r.elapsed_s.and_then(t),
                flops: r.flops,
                gigaflops: r.gigaflops.and_then(t),
                residual: r.residual,
                skipped: r.skipped.as_ref().map(ToString::to_string),
            }),
            BenchRecord::Fdtd(r) => serde_json::to_string(&FdtdLine {
                bench: "fdtd",
                n: r.cells,
                dims: r.dims,
                steps: r.steps,
                precision: r.precision,
                backend: r.backend,
                elapsed_s: t(r.elapsed_s),
                flops: None,
                updates_per_s: t(r.updates_per_s),
                residual: None,
                skipped: None,
                digest: format!("{:016x}", r.digest),
            }),
        };
        line.expect("bench records serialize")
    }
}

pub fn write_bench_json<W: Write>(records: &[BenchRecord], timing: bool, mut out: W) -> std::io::Result<()> {
    for r in records {
        writeln!(out, "{}", r.to_json_line(timing))?;
    }
    out.flush()
}

pub fn emit_bench_json(records: &[BenchRecord], timing: bool, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_bench_json(records, timing, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn read_bench_json_lines<R: BufRead>(input: R) -> Result<Vec<serde_json::Value>> {
    input
        .lines()
        .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()))
        .map(|l| {
            let l = l.map_err(|e| Error::Parse {
                format: "json",
                message: e.to_string(),
            })?;
            serde_json::from_str(&l).map_err(|e| Error::Parse {
                format: "json",
                message: e.to_string(),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct SpeedupEntry {
    backend: Backend,
    serial_rate: Option<f64>,
    parallel_rate: Option<f64>,
    speedup: Option<f64>,
}

/// Speedups keyed by `"<bench>/<n>/<precision>"`, one entry per parallel backend.
pub fn speedup_document(speedups: &[SpeedupRecord], timing: bool) -> String {
    let t = |v: f64| timing.then_some(v);
    let mut doc: BTreeMap<String, Vec<SpeedupEntry>> = BTreeMap::new();
    for s in speedups {
        doc.entry(format!("{}/{}/{}", s.bench, s.n, s.precision))
            .or_default()
            .push(SpeedupEntry {
                backend: s.backend,
                serial_rate: t(s.serial_rate),
                parallel_rate: t(s.parallel_rate),
                speedup: t(s.speedup),
            });
    }
    serde_json::to_string_pretty(&doc).expect("speedup document serializes")
}

/// Three-column table: tier, transfer size in bytes, MB/s.
pub fn bandwidth_summary(records: &[BandwidthRecord]) -> String {
    let mut s = String::from("Copy bandwidth (single address space; tiers stand in for host/device paths)\n");
    s.push_str("Tier  Transfer Size (Bytes)  Bandwidth(MB/s)\n");
    for r in records {
        s.push_str(&format!("{}  {}  {:.1}\n", r.tier, r.bytes, r.mb_per_s));
    }
    s
}
