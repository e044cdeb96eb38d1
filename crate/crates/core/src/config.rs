//! Run configuration and the CFL stability check.
//!
//! Time is configured through the Courant number `S = c * dt / delta` rather
//! than `dt` directly, so a config can only describe a stable run once
//! [`validate_stability`] has accepted it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Precision;

/// Speed of light in vacuum, m/s.
pub const C0: f64 = 299_792_458.0;

/// Relative slack applied at the stability boundary.
const STABILITY_RTOL: f64 = 1e-12;

/// Smallest extent per axis; kernels read one neighbor on each side.
pub const MIN_EXTENT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// c = 1 and material constants of 1 for vacuum.
    Normalized,
    /// SI constants.
    Physical,
}

impl Units {
    pub fn speed_of_light(self) -> f64 {
        match self {
            Units::Normalized => 1.0,
            Units::Physical => C0,
        }
    }
}

/// Cell counts per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extent {
    One(usize),
    Three([usize; 3]),
}

impl Extent {
    pub fn dims(self) -> usize {
        match self {
            Extent::One(_) => 1,
            Extent::Three(_) => 3,
        }
    }

    pub fn cells(self) -> usize {
        match self {
            Extent::One(n) => n,
            Extent::Three([nx, ny, nz]) => nx * ny * nz,
        }
    }

    pub fn validate(self) -> Result<()> {
        let axes: &[usize] = match &self {
            Extent::One(n) => std::slice::from_ref(n),
            Extent::Three(a) => a,
        };
        for (axis, &n) in axes.iter().enumerate() {
            if n < MIN_EXTENT {
                return Err(Error::InvalidConfig(format!(
                    "extent along axis {axis} is {n}, need at least {MIN_EXTENT}"
                )));
            }
        }
        Ok(())
    }
}

/// Source position: a cell index in 1D, an `(i, j, k)` triple in 3D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridIndex {
    One(usize),
    Three([usize; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceMode {
    /// Overwrites the field sample.
    #[default]
    Hard,
    /// Adds to the field sample.
    Soft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceShape {
    #[default]
    Point,
    /// 3D only: every `Ez(i0, j, k)` on the plane `i = i0`.
    PlaneX,
}

/// Sinusoidal excitation of `Ez`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceSpec {
    pub location: GridIndex,
    /// Wavelength in cells.
    pub n_lambda: f64,
    /// First step at which the source is applied.
    pub tstart: u64,
    /// Last step at which the source is applied; `None` keeps it on.
    pub tstop: Option<u64>,
    pub amplitude: f64,
    pub mode: SourceMode,
    pub shape: SourceShape,
}

impl SourceSpec {
    /// Point hard source with unit amplitude, `tstart = 1`, `N_lambda = 20`.
    pub fn at(location: GridIndex) -> Self {
        SourceSpec {
            location,
            n_lambda: 20.0,
            tstart: 1,
            tstop: None,
            amplitude: 1.0,
            mode: SourceMode::Hard,
            shape: SourceShape::Point,
        }
    }

    pub fn is_active(&self, n: u64) -> bool {
        n >= self.tstart && self.tstop.map_or(true, |stop| n <= stop)
    }

    fn validate(&self, extent: Extent) -> Result<()> {
        // NaN fails both comparisons.
        if !(self.n_lambda > 2.0) {
            return Err(Error::InvalidConfig(format!(
                "n_lambda must exceed 2 cells per wavelength, got {}",
                self.n_lambda
            )));
        }
        if !self.amplitude.is_finite() {
            return Err(Error::InvalidConfig("source amplitude must be finite".into()));
        }
        let interior = |idx: usize, n: usize| idx >= 1 && idx + 1 < n;
        match (self.location, extent) {
            (GridIndex::One(i), Extent::One(n)) => {
                if self.shape != SourceShape::Point {
                    return Err(Error::InvalidConfig("plane sources need a 3D grid".into()));
                }
                if !interior(i, n) {
                    return Err(Error::InvalidConfig(format!(
                        "source at {i} is not inside the interior 1..={} ",
                        n - 2
                    )));
                }
            }
            (GridIndex::Three([i, j, k]), Extent::Three([nx, ny, nz])) => {
                let inside = match self.shape {
                    SourceShape::Point => interior(i, nx) && interior(j, ny) && interior(k, nz),
                    SourceShape::PlaneX => interior(i, nx) && j < ny && k < nz,
                };
                if !inside {
                    return Err(Error::InvalidConfig(format!(
                        "source at ({i}, {j}, {k}) is not inside the {nx}x{ny}x{nz} interior"
                    )));
                }
            }
            _ => {
                return Err(Error::InvalidConfig(
                    "source location dimensionality does not match the grid".into(),
                ))
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub extent: Extent,
    /// Space step; meters in physical units.
    pub delta: f64,
    pub courant: f64,
    pub time_tot: u64,
    pub source: SourceSpec,
    pub precision: Precision,
    /// Steps between snapshots; 0 keeps only the final state.
    pub snapshot_every: u64,
    pub units: Units,
}

impl SimulationConfig {
    /// 1D defaults: `S = 1`, source at `xdim / 2`, normalized units, double.
    pub fn one_d(xdim: usize, time_tot: u64) -> Self {
        SimulationConfig {
            extent: Extent::One(xdim),
            delta: 1.0,
            courant: 1.0,
            time_tot,
            source: SourceSpec::at(GridIndex::One(xdim / 2)),
            precision: Precision::Double,
            snapshot_every: 0,
            units: Units::Normalized,
        }
    }

    /// 3D defaults: `S = 0.5`, source at the grid center.
    pub fn three_d(extent: [usize; 3], time_tot: u64) -> Self {
        let [nx, ny, nz] = extent;
        SimulationConfig {
            extent: Extent::Three(extent),
            delta: 1.0,
            courant: 0.5,
            time_tot,
            source: SourceSpec::at(GridIndex::Three([nx / 2, ny / 2, nz / 2])),
            precision: Precision::Double,
            snapshot_every: 0,
            units: Units::Normalized,
        }
    }

    pub fn dims(&self) -> usize {
        self.extent.dims()
    }

    /// `dt = S * delta / c`.
    pub fn deltat(&self) -> f64 {
        self.courant * self.delta / self.units.speed_of_light()
    }

    /// Structural checks plus [`validate_stability`].
    pub fn validate(&self) -> Result<()> {
        self.extent.validate()?;
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "delta must be positive and finite, got {}",
                self.delta
            )));
        }
        if !(self.courant > 0.0) || !self.courant.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "courant number must be positive, got {}",
                self.courant
            )));
        }
        if self.time_tot == 0 {
            return Err(Error::InvalidConfig("time_tot must be at least 1".into()));
        }
        self.source.validate(self.extent)?;
        validate_stability(self)
    }
}

/// Largest stable Courant number for a `dims`-dimensional Yee scheme, `1/sqrt(dims)`.
pub fn stability_bound(dims: usize) -> f64 {
    1.0 / (dims as f64).sqrt()
}

/// Rejects Courant numbers above the CFL bound (1 in 1D, 1/sqrt(3) in 3D).
pub fn validate_stability(config: &SimulationConfig) -> Result<()> {
    let bound = stability_bound(config.dims());
    if config.courant <= bound * (1.0 + STABILITY_RTOL) {
        Ok(())
    } else {
        Err(Error::UnstableCourant {
            given: config.courant,
            bound,
        })
    }
}
