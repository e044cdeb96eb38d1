use serde::Serialize;

use crate::backend::Backend;
use crate::bench::fdtd::FdtdBenchRecord;
use crate::bench::linsolve::SolveBenchRecord;
use crate::error::{Error, Result};
use crate::real::Precision;

/// Parallel rate over serial rate for the same workload. Rates are
/// gigaflops for `linsolve` and cell-updates per second for `fdtd`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeedupRecord {
    pub bench: &'static str,
    pub n: usize,
    pub precision: Precision,
    pub backend: Backend,
    pub serial_rate: f64,
    pub parallel_rate: f64,
    pub speedup: f64,
}

fn ratio(
    bench: &'static str,
    n: usize,
    precision: Precision,
    backend: Backend,
    parallel_rate: f64,
    serial_rate: f64,
) -> Result<SpeedupRecord> {
    if !(parallel_rate > 0.0) || !(serial_rate > 0.0) {
        return Err(Error::NonPositiveInput("throughput"));
    }
    Ok(SpeedupRecord {
        bench,
        n,
        precision,
        backend,
        serial_rate,
        parallel_rate,
        speedup: parallel_rate / serial_rate,
    })
}

pub fn compute_speedup(parallel: &SolveBenchRecord, serial: &SolveBenchRecord) -> Result<SpeedupRecord> {
    if parallel.n != serial.n || parallel.precision != serial.precision {
        return Err(Error::MismatchedPair(format!(
            "parallel is n={} {}, serial is n={} {}",
            parallel.n, parallel.precision, serial.n, serial.precision
        )));
    }
    let (Some(p), Some(s)) = (parallel.gigaflops, serial.gigaflops) else {
        return Err(Error::MismatchedPair("one side of the pair was skipped".into()));
    };
    ratio("linsolve", parallel.n, parallel.precision, parallel.backend, p, s)
}

pub fn compute_fdtd_speedup(parallel: &FdtdBenchRecord, serial: &FdtdBenchRecord) -> Result<SpeedupRecord> {
    if parallel.cells != serial.cells || parallel.steps != serial.steps || parallel.precision != serial.precision {
        return Err(Error::MismatchedPair(format!(
            "parallel is {} cells x {} steps {}, serial is {} cells x {} steps {}",
            parallel.cells, parallel.steps, parallel.precision, serial.cells, serial.steps, serial.precision
        )));
    }
    ratio(
        "fdtd",
        parallel.cells,
        parallel.precision,
        parallel.backend,
        parallel.updates_per_s,
        serial.updates_per_s,
    )
}

/// Pairs each non-skipped parallel record with the serial record of the
/// same size and precision.
pub fn speedups_for(records: &[SolveBenchRecord]) -> Vec<SpeedupRecord> {
    records
        .iter()
        .filter(|r| !r.backend.is_serial())
        .filter_map(|p| {
            let s = records
                .iter()
                .find(|s| s.backend.is_serial() && s.n == p.n && s.precision == p.precision)?;
            compute_speedup(p, s).ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(n: usize, precision: Precision, backend: Backend, gflops: f64) -> SolveBenchRecord {
        SolveBenchRecord {
            n,
            precision,
            backend,
            elapsed_s: Some(1.0),
            flops: Some(gflops * 1e9),
            gigaflops: Some(gflops),
            residual: Some(0.0),
            skipped: None,
        }
    }

    #[test]
    fn ratio_of_gigaflops() {
        let par = Backend::parallel(4).unwrap();
        let s = compute_speedup(&rec(1024, Precision::Double, par, 15.0), &rec(1024, Precision::Double, Backend::Serial, 10.0))
            .unwrap();
        assert_eq!(s.speedup, 1.5);
        assert_eq!(s.speedup, s.parallel_rate / s.serial_rate);
        let s = compute_speedup(&rec(64, Precision::Single, par, 3.0), &rec(64, Precision::Single, Backend::Serial, 3.0))
            .unwrap();
        assert_eq!(s.speedup, 1.0);
    }

    #[test]
    fn mismatched_pairs() {
        let par = Backend::parallel(2).unwrap();
        assert!(matches!(
            compute_speedup(&rec(1024, Precision::Double, par, 1.0), &rec(2048, Precision::Double, Backend::Serial, 1.0)),
            Err(Error::MismatchedPair(_))
        ));
        assert!(matches!(
            compute_speedup(&rec(64, Precision::Single, par, 1.0), &rec(64, Precision::Double, Backend::Serial, 1.0)),
            Err(Error::MismatchedPair(_))
        ));
    }

    #[test]
    fn pairs_by_size_and_precision() {
        let par = Backend::parallel(2).unwrap();
        let recs = vec![
            rec(64, Precision::Double, Backend::Serial, 2.0),
            rec(64, Precision::Double, par, 3.0),
            rec(128, Precision::Double, Backend::Serial, 4.0),
            rec(128, Precision::Double, par, 2.0),
        ];
        let s = speedups_for(&recs);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].speedup, 1.5);
        assert_eq!(s[1].speedup, 0.5);
    }
}
