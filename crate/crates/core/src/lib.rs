//! Precision-generic FDTD electromagnetic solver with interchangeable serial
//! and data-parallel execution backends, plus the benchmark harness used to
//! compare them (copy bandwidth, dense LU solve gigaflops, FDTD throughput).
//!
//! The solver advances Maxwell's curl equations
//!
//! ```text
//! dH/dt = -(1/mu)  [curl E + sigma* H]
//! dE/dt =  (1/eps) [curl H - sigma  E]
//! ```
//!
//! on a staggered Yee grid with the leapfrog scheme. Everything numeric is
//! written once over [`Real`] and instantiated at `f32` and `f64`.

pub mod backend;
pub mod bench;
pub mod config;
pub mod diff;
pub mod engine;
pub mod error;
pub mod field;
pub mod material;
pub mod real;
pub mod report;

pub use backend::{backend_report, execute_stencil, Backend, Executor, KernelPlan};
pub use config::{
    validate_stability, Extent, GridIndex, SimulationConfig, SourceMode, SourceShape, SourceSpec,
    Units,
};
pub use diff::central_difference;
pub use error::{Error, Result};
pub use field::{Fields1d, Fields3d, FieldState};
pub use material::{make_vacuum_materials, MaterialGrid};
pub use real::{Precision, Real};
