//! File formats: snapshot CSV, benchmark JSON lines, speedup summary.

pub mod csv;
pub mod json;

pub use self::csv::{emit_snapshot_csv, format_g17, read_snapshot_csv, write_snapshot_csv};
pub use self::json::{
    bandwidth_summary, emit_bench_json, read_bench_json_lines, speedup_document, write_bench_json, BenchRecord,
};
