use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use yeebench::bench::{available_memory_bytes, CopyTier, TimingPolicy};
use yeebench::{Backend, GridIndex, Precision, SimulationConfig, SourceMode, SourceShape, Units};

/// Overrides the worker count of a bare `parallel` backend.
pub const WORKERS_ENV: &str = "YEEBENCH_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "yeebench", version, about = "FDTD field solver and CPU benchmark harness")]
struct Cli {
    /// Seed for every random input.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// 1D Ez/Hy simulation with a sinusoidal source.
    Simulate(Simulate1dArgs),
    /// 3D Yee-grid simulation.
    Simulate3d(Simulate3dArgs),
    /// Memory copy bandwidth.
    BenchBandwidth(BandwidthArgs),
    /// Dense A\b solve gigaflops across sizes, precisions and backends.
    BenchLinsolve(LinsolveArgs),
    /// FDTD cell-update throughput per backend.
    BenchFdtd(FdtdArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrecisionArg {
    Single,
    Double,
    Both,
}

impl PrecisionArg {
    fn expand(self) -> Vec<Precision> {
        match self {
            PrecisionArg::Single => vec![Precision::Single],
            PrecisionArg::Double => vec![Precision::Double],
            PrecisionArg::Both => vec![Precision::Single, Precision::Double],
        }
    }

    fn single(self) -> Result<Precision, String> {
        match self {
            PrecisionArg::Single => Ok(Precision::Single),
            PrecisionArg::Double => Ok(Precision::Double),
            PrecisionArg::Both => Err("--precision both is only valid for benchmarks".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UnitsArg {
    Normalized,
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TierArg {
    Fresh,
    Warm,
    Both,
}

#[derive(Debug, Args)]
struct FieldArgs {
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long, default_value_t = 20.0)]
    n_lambda: f64,
    #[arg(long, default_value_t = 1)]
    tstart: u64,
    /// Last step the source is applied (default: never switched off).
    #[arg(long)]
    tstop: Option<u64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    amplitude: f64,
    /// Add the source to Ez instead of overwriting it.
    #[arg(long)]
    soft_source: bool,
    /// Uniform electric conductivity.
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    /// Uniform magnetic loss.
    #[arg(long, default_value_t = 0.0)]
    sigma_star: f64,
    /// Steps between snapshots; 0 writes only the final state.
    #[arg(long, default_value_t = 0)]
    snapshot_every: u64,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t = UnitsArg::Normalized)]
    units: UnitsArg,
    /// serial, parallel, or parallel:<workers>.
    #[arg(long, default_value = "serial")]
    backend: String,
    /// Output file; `-` for stdout.
    #[arg(short, long, default_value = "-")]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct Simulate1dArgs {
    #[arg(long, default_value_t = 200)]
    xdim: usize,
    #[arg(long, default_value_t = 350)]
    steps: u64,
    #[arg(long, default_value_t = 1.0)]
    courant: f64,
    /// Source cell (default: xdim / 2).
    #[arg(long)]
    source: Option<usize>,
    #[command(flatten)]
    common: FieldArgs,
}

#[derive(Debug, Args)]
struct Simulate3dArgs {
    #[arg(long, default_value_t = 32)]
    nx: usize,
    #[arg(long, default_value_t = 32)]
    ny: usize,
    #[arg(long, default_value_t = 32)]
    nz: usize,
    #[arg(long, default_value_t = 50)]
    steps: u64,
    #[arg(long, default_value_t = 0.5)]
    courant: f64,
    /// Source cell as i,j,k (default: grid center).
    #[arg(long, value_delimiter = ',')]
    source: Option<Vec<usize>>,
    /// Drive the whole x = i plane instead of a single cell.
    #[arg(long)]
    plane_source: bool,
    #[command(flatten)]
    common: FieldArgs,
}

#[derive(Debug, Args)]
struct TimingArgs {
    #[arg(long, default_value_t = 3)]
    min_repeats: usize,
    #[arg(long, default_value_t = 200)]
    min_window_ms: u64,
    /// Write null for every timing-derived field (byte-stable output).
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Args)]
struct BandwidthArgs {
    #[arg(long, value_delimiter = ',', default_value = "33554432")]
    bytes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    #[arg(long, value_enum, default_value_t = TierArg::Both)]
    tier: TierArg,
    #[arg(long)]
    no_timing: bool,
    #[arg(short, long, default_value = "-")]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct LinsolveArgs {
    #[arg(long, value_delimiter = ',', default_value = "1024,2048,3072,4096")]
    sizes: Vec<usize>,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Both)]
    precision: PrecisionArg,
    #[arg(long, value_delimiter = ',', default_value = "serial,parallel")]
    backends: Vec<String>,
    /// Memory cap for one benchmark point (default: available memory).
    #[arg(long)]
    mem_cap_mib: Option<u64>,
    #[command(flatten)]
    timing: TimingArgs,
    #[arg(short, long, default_value = "-")]
    output: PathBuf,
    #[arg(long)]
    speedup_output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FdtdArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    dims: u8,
    /// Cells for 1D, cube edge for 3D.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 100)]
    steps: u64,
    #[arg(long)]
    courant: Option<f64>,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    precision: PrecisionArg,
    #[arg(long, value_delimiter = ',', default_value = "serial,parallel")]
    backends: Vec<String>,
    #[command(flatten)]
    timing: TimingArgs,
    #[arg(short, long, default_value = "-")]
    output: PathBuf,
    #[arg(long)]
    speedup_output: Option<PathBuf>,
}

/// Where simulation output goes and how it is encoded.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: Format,
}

#[derive(Debug, Clone)]
pub struct SimulateCmd {
    pub config: SimulationConfig,
    pub sigma: f64,
    pub sigma_star: f64,
    pub backend: Backend,
    pub output: OutputSpec,
}

#[derive(Debug, Clone)]
pub struct BandwidthCmd {
    pub bytes: Vec<usize>,
    pub repeats: usize,
    pub tiers: Vec<CopyTier>,
    pub timing: bool,
    pub output: PathBuf,
}

#[derive(Debug, Clone)]
pub struct LinsolveCmd {
    pub sweep: yeebench::bench::LinsolveSweep,
    pub timing: bool,
    pub output: PathBuf,
    pub speedup_output: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct FdtdCmd {
    pub configs: Vec<SimulationConfig>,
    pub backends: Vec<Backend>,
    pub policy: TimingPolicy,
    pub timing: bool,
    pub output: PathBuf,
    pub speedup_output: Option<PathBuf>,
}

/// A fully validated command line.
#[derive(Debug, Clone)]
pub enum CliConfig {
    Simulate(SimulateCmd),
    BenchBandwidth(BandwidthCmd),
    BenchLinsolve(LinsolveCmd),
    BenchFdtd(FdtdCmd),
}

#[derive(Debug)]
pub enum ParseOutcome {
    Run(CliConfig),
    /// `--help` / `--version`: print and exit 0.
    Info(String),
}

/// A rejected command line; always exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

pub fn parse_backend(s: &str) -> Result<Backend, String> {
    if s == "parallel" {
        if let Ok(v) = std::env::var(WORKERS_ENV) {
            let k: usize = v
                .parse()
                .map_err(|_| format!("{WORKERS_ENV}={v} is not a worker count"))?;
            return Backend::parallel(k).map_err(|e| e.to_string());
        }
    }
    s.parse()
}

fn backends(list: &[String]) -> Result<Vec<Backend>, String> {
    list.iter().map(|s| parse_backend(s)).collect()
}

fn timing_policy(t: &TimingArgs) -> Result<TimingPolicy, String> {
    if t.min_repeats < 3 {
        return Err(format!("--min-repeats must be at least 3, got {}", t.min_repeats));
    }
    Ok(TimingPolicy {
        min_repeats: t.min_repeats,
        min_window: Duration::from_millis(t.min_window_ms),
        ..TimingPolicy::default()
    })
}

fn field_config(mut config: SimulationConfig, common: &FieldArgs) -> Result<SimulateCmd, String> {
    config.delta = common.delta;
    config.source.n_lambda = common.n_lambda;
    config.source.tstart = common.tstart;
    config.source.tstop = common.tstop;
    config.source.amplitude = common.amplitude;
    if common.soft_source {
        config.source.mode = SourceMode::Soft;
    }
    config.snapshot_every = common.snapshot_every;
    config.precision = common.precision.single()?;
    config.units = match common.units {
        UnitsArg::Normalized => Units::Normalized,
        UnitsArg::Physical => Units::Physical,
    };
    config.validate().map_err(|e| e.to_string())?;
    for (name, v) in [("--sigma", common.sigma), ("--sigma-star", common.sigma_star)] {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(format!("{name} must be a non-negative number, got {v}"));
        }
    }
    Ok(SimulateCmd {
        config,
        sigma: common.sigma,
        sigma_star: common.sigma_star,
        backend: parse_backend(&common.backend)?,
        output: OutputSpec {
            path: common.output.clone(),
            format: common.format,
        },
    })
}

fn build(cli: Cli) -> Result<CliConfig, String> {
    let seed = cli.seed;
    Ok(match cli.command {
        Command::Simulate(a) => {
            let mut c = SimulationConfig::one_d(a.xdim, a.steps);
            c.courant = a.courant;
            c.source.location = GridIndex::One(a.source.unwrap_or(a.xdim / 2));
            CliConfig::Simulate(field_config(c, &a.common)?)
        }
        Command::Simulate3d(a) => {
            let mut c = SimulationConfig::three_d([a.nx, a.ny, a.nz], a.steps);
            c.courant = a.courant;
            if let Some(s) = a.source {
                if s.len() != 3 {
                    return Err(format!("--source needs i,j,k, got {} values", s.len()));
                }
                c.source.location = GridIndex::Three([s[0], s[1], s[2]]);
            }
            if a.plane_source {
                c.source.shape = SourceShape::PlaneX;
            }
            CliConfig::Simulate(field_config(c, &a.common)?)
        }
        Command::BenchBandwidth(a) => {
            if a.repeats < 3 {
                return Err(format!("--repeats must be at least 3, got {}", a.repeats));
            }
            if let Some(b) = a.bytes.iter().find(|&&b| b < 4096) {
                return Err(format!("--bytes {b} is below the 4096-byte minimum"));
            }
            CliConfig::BenchBandwidth(BandwidthCmd {
                bytes: a.bytes,
                repeats: a.repeats,
                tiers: match a.tier {
                    TierArg::Fresh => vec![CopyTier::Fresh],
                    TierArg::Warm => vec![CopyTier::Warm],
                    TierArg::Both => vec![CopyTier::Fresh, CopyTier::Warm],
                },
                timing: !a.no_timing,
                output: a.output,
            })
        }
        Command::BenchLinsolve(a) => {
            if let Some(n) = a.sizes.iter().find(|&&n| n < 2) {
                return Err(format!("--sizes entry {n} is below 2"));
            }
            let sweep = yeebench::bench::LinsolveSweep {
                sizes: a.sizes,
                precisions: a.precision.expand(),
                backends: backends(&a.backends)?,
                seed,
                memory_cap_bytes: a
                    .mem_cap_mib
                    .map_or_else(available_memory_bytes, |m| m.saturating_mul(1 << 20)),
                timing: timing_policy(&a.timing)?,
            };
            CliConfig::BenchLinsolve(LinsolveCmd {
                sweep,
                timing: !a.timing.no_timing,
                output: a.output,
                speedup_output: a.speedup_output,
            })
        }
        Command::BenchFdtd(a) => {
            if a.dims == 2 {
                return Err("--dims must be 1 or 3".into());
            }
            let precisions = a.precision.expand();
            let sizes = a
                .sizes
                .unwrap_or_else(|| vec![if a.dims == 1 { 1_000_000 } else { 64 }]);
            let mut configs = Vec::new();
            for &n in &sizes {
                for &p in &precisions {
                    let mut c = if a.dims == 1 {
                        SimulationConfig::one_d(n, a.steps)
                    } else {
                        SimulationConfig::three_d([n; 3], a.steps)
                    };
                    if let Some(s) = a.courant {
                        c.courant = s;
                    }
                    c.precision = p;
                    c.validate().map_err(|e| e.to_string())?;
                    configs.push(c);
                }
            }
            CliConfig::BenchFdtd(FdtdCmd {
                configs,
                backends: backends(&a.backends)?,
                policy: timing_policy(&a.timing)?,
                timing: !a.timing.no_timing,
                output: a.output,
                speedup_output: a.speedup_output,
            })
        }
    })
}

pub fn parse_args<I, S>(argv: I) -> Result<ParseOutcome, UsageError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return Err(UsageError(e.render().to_string())),
        Err(e) => return Ok(ParseOutcome::Info(e.render().to_string())),
    };
    build(cli).map(ParseOutcome::Run).map_err(UsageError)
}
