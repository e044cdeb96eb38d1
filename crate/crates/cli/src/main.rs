mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use serde_json::json;
use yeebench::bench::{
    measure_copy_bandwidth, run_fdtd_bench, run_linsolve_bench, speedups_for, SpeedupRecord,
};
use yeebench::engine::{Simulation, SnapshotSeries};
use yeebench::material::{EPSILON_0, MU_0};
use yeebench::report::{bandwidth_summary, write_bench_json, write_snapshot_csv, speedup_document, BenchRecord};
use yeebench::{Error, FieldState, MaterialGrid, Precision, Real, Units};

use args::{parse_args, CliConfig, Format, OutputSpec, ParseOutcome, SimulateCmd, UsageError};

const EXIT_RUNTIME: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let config = match parse_args(std::env::args_os()) {
        Ok(ParseOutcome::Run(c)) => c,
        Ok(ParseOutcome::Info(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(UsageError(msg)) => {
            eprintln!("{}", msg.trim_end());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match execute(config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::UnstableCourant { .. } | Error::InvalidConfig(_) => EXIT_USAGE,
                _ => EXIT_RUNTIME,
            };
            ExitCode::from(code)
        }
    }
}

fn execute(config: CliConfig) -> yeebench::Result<()> {
    match config {
        CliConfig::Simulate(cmd) => match cmd.config.precision {
            Precision::Single => simulate::<f32>(&cmd),
            Precision::Double => simulate::<f64>(&cmd),
        },
        CliConfig::BenchBandwidth(cmd) => {
            let mut records = Vec::new();
            for &bytes in &cmd.bytes {
                for &tier in &cmd.tiers {
                    records.push(measure_copy_bandwidth(bytes, cmd.repeats, tier)?);
                }
            }
            let summary = bandwidth_summary(&records);
            let lines: Vec<BenchRecord> = records.into_iter().map(BenchRecord::Bandwidth).collect();
            write_records(&lines, cmd.timing, &cmd.output)?;
            if cmd.timing {
                status(&summary);
            }
            Ok(())
        }
        CliConfig::BenchLinsolve(cmd) => {
            let records = run_linsolve_bench(&cmd.sweep)?;
            for r in &records {
                if let Some(reason) = &r.skipped {
                    eprintln!("skipped n={} {}: {reason}", r.n, r.precision);
                }
            }
            let speedups = speedups_for(&records);
            let lines: Vec<BenchRecord> = records.into_iter().map(BenchRecord::Linsolve).collect();
            write_records(&lines, cmd.timing, &cmd.output)?;
            write_speedups(&speedups, cmd.timing, cmd.speedup_output.as_deref())
        }
        CliConfig::BenchFdtd(cmd) => {
            let (records, speedups) = run_fdtd_bench(&cmd.configs, &cmd.backends, &cmd.policy)?;
            let lines: Vec<BenchRecord> = records.into_iter().map(BenchRecord::Fdtd).collect();
            write_records(&lines, cmd.timing, &cmd.output)?;
            write_speedups(&speedups, cmd.timing, cmd.speedup_output.as_deref())
        }
    }
}

fn status(text: &str) {
    eprint!("{text}");
}

fn open_output(path: &Path) -> yeebench::Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufWriter::new(io::stdout().lock())));
    }
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Box::new(BufWriter::new(file)))
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_records(records: &[BenchRecord], timing: bool, path: &Path) -> yeebench::Result<()> {
    let mut out = open_output(path)?;
    write_bench_json(records, timing, &mut out).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}

fn write_speedups(speedups: &[SpeedupRecord], timing: bool, path: Option<&Path>) -> yeebench::Result<()> {
    let Some(path) = path else { return Ok(()) };
    let mut out = open_output(path)?;
    writeln!(out, "{}", speedup_document(speedups, timing)).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}

fn materials<T: Real>(cmd: &SimulateCmd) -> yeebench::Result<MaterialGrid<T>> {
    let (eps, mu) = match cmd.config.units {
        Units::Normalized => (1.0, 1.0),
        Units::Physical => (EPSILON_0, MU_0),
    };
    MaterialGrid::uniform(
        cmd.config.extent,
        T::from_f64_lossy(eps),
        T::from_f64_lossy(mu),
        T::from_f64_lossy(cmd.sigma),
        T::from_f64_lossy(cmd.sigma_star),
    )
}

fn simulate<T: Real>(cmd: &SimulateCmd) -> yeebench::Result<()> {
    let mats = materials::<T>(cmd)?;
    let series = Simulation::new(cmd.config.clone(), &mats, cmd.backend)?.run()?;
    let OutputSpec { path, format } = &cmd.output;
    let mut out = open_output(path)?;
    match format {
        Format::Csv => write_snapshot_csv(&series, &mut out)?,
        Format::Json => write_snapshot_json(&series, &mut out).map_err(io_err(path))?,
    }
    out.flush().map_err(io_err(path))
}

fn widen<T: Real>(a: &[T]) -> Vec<f64> {
    a.iter().map(|v| v.widen()).collect()
}

/// One JSON object per snapshot, arrays keyed by component name.
fn write_snapshot_json<T: Real, W: Write>(series: &SnapshotSeries<T>, mut out: W) -> io::Result<()> {
    for state in &series.entries {
        let line = match state {
            FieldState::One(f) => json!({
                "step": f.step,
                "Ez": widen(&f.ez),
                "Hy": widen(&f.hy),
            }),
            FieldState::Three(f) => json!({
                "step": f.step,
                "shape": f.shape(),
                "Ex": widen(&f.ex),
                "Ey": widen(&f.ey),
                "Ez": widen(&f.ez),
                "Hx": widen(&f.hx),
                "Hy": widen(&f.hy),
                "Hz": widen(&f.hz),
            }),
        };
        writeln!(out, "{line}")?;
    }
    Ok(())
}
