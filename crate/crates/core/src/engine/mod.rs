//! Leapfrog FDTD engine.
//!
//! One step is: source injection, H half-step, E half-step. Internally all
//! indices are 0-based; the classic 1-based listing `for i=1:xdim-1` for Hy
//! maps to `0..xdim-1` here and `for i=2:xdim` for Ez maps to `1..xdim`.

mod coeff;
mod energy;
mod kernels1d;
mod kernels3d;
mod run;
mod source;

pub use coeff::Coefficients;
pub use energy::staggered_energy_1d;
pub use kernels1d::{update_e_1d, update_h_1d, Engine1d};
pub use kernels3d::{update_e_3d, update_h_3d, Engine3d};
pub use run::{run, step_1d, Simulation, SnapshotSeries};
pub use source::{inject_source, source_value};
