use crate::backend::{Backend, Executor};
use crate::config::SimulationConfig;
use crate::engine::coeff::Coefficients;
use crate::engine::kernels1d::Engine1d;
use crate::engine::kernels3d::Engine3d;
use crate::engine::source::inject_source;
use crate::error::{Error, Result};
use crate::field::{FieldState, Fields1d};
use crate::material::MaterialGrid;
use crate::real::Real;

/// Field states recorded during a run, in step order, plus the config that
/// produced them. Entries are deep copies.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotSeries<T> {
    pub entries: Vec<FieldState<T>>,
    pub config: SimulationConfig,
}

impl<T: Real> SnapshotSeries<T> {
    pub fn steps(&self) -> Vec<u64> {
        self.entries.iter().map(FieldState::step).collect()
    }

    pub fn last(&self) -> Option<&FieldState<T>> {
        self.entries.last()
    }

    pub fn bitwise_eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.step() == b.step() && a.bitwise_eq(b))
    }
}

#[derive(Debug)]
enum Stepper<T> {
    One(Engine1d<T>),
    Three(Engine3d<T>),
}

/// A configured run that can be advanced one leapfrog cycle at a time.
#[derive(Debug)]
pub struct Simulation<T> {
    config: SimulationConfig,
    exec: Executor,
    stepper: Stepper<T>,
    fields: FieldState<T>,
    deltat: T,
}

impl<T: Real> Simulation<T> {
    pub fn new(config: SimulationConfig, materials: &MaterialGrid<T>, backend: Backend) -> Result<Self> {
        Self::with_executor(config, materials, Executor::new(backend)?)
    }

    pub fn with_executor(config: SimulationConfig, materials: &MaterialGrid<T>, exec: Executor) -> Result<Self> {
        config.validate()?;
        if config.precision != T::PRECISION {
            return Err(Error::PrecisionMismatch {
                requested: config.precision,
                engine: T::PRECISION,
            });
        }
        let coeff = Coefficients::new(&config, materials)?;
        let fields = FieldState::zeros(config.extent)?;
        let stepper = match &fields {
            FieldState::One(_) => Stepper::One(Engine1d::new(coeff)),
            FieldState::Three(f) => Stepper::Three(Engine3d::new(f.shape(), coeff)?),
        };
        Ok(Simulation {
            deltat: T::from_f64_lossy(config.deltat()),
            config,
            exec,
            stepper,
            fields,
        })
    }

    /// Replaces the current state, e.g. with initial conditions.
    pub fn set_fields(&mut self, fields: FieldState<T>) -> Result<()> {
        if fields.extent() != self.config.extent {
            return Err(Error::ShapeMismatch {
                expected: self.config.extent.cells(),
                found: fields.extent().cells(),
            });
        }
        self.fields = fields;
        Ok(())
    }

    pub fn fields(&self) -> &FieldState<T> {
        &self.fields
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.config
    }

    pub fn deltat(&self) -> T {
        self.deltat
    }

    /// One cycle: source, H half-step, E half-step.
    pub fn step(&mut self) -> Result<()> {
        let n = self.fields.step() + 1;
        inject_source(&mut self.fields, &self.config.source, n, self.deltat);
        match (&mut self.stepper, &mut self.fields) {
            (Stepper::One(eng), FieldState::One(f)) => {
                eng.update_h(&self.exec, f)?;
                eng.update_e(&self.exec, f)?;
                f.step = n;
            }
            (Stepper::Three(eng), FieldState::Three(f)) => {
                eng.update_h(&self.exec, f)?;
                eng.update_e(&self.exec, f)?;
                f.step = n;
            }
            _ => unreachable!("stepper and fields are built from the same extent"),
        }
        Ok(())
    }

    /// Runs `steps` cycles without recording snapshots.
    pub fn advance(&mut self, steps: u64) -> Result<()> {
        for _ in 0..steps {
            self.step()?;
        }
        Ok(())
    }

    /// Steps until `time_tot`, recording every `snapshot_every` steps and
    /// always the final step.
    pub fn run(mut self) -> Result<SnapshotSeries<T>> {
        let every = self.config.snapshot_every;
        let mut entries = Vec::new();
        while self.fields.step() < self.config.time_tot {
            self.step()?;
            let n = self.fields.step();
            if n == self.config.time_tot || (every > 0 && n % every == 0) {
                entries.push(self.fields.clone());
            }
        }
        Ok(SnapshotSeries {
            entries,
            config: self.config,
        })
    }
}

pub fn run<T: Real>(
    config: &SimulationConfig,
    materials: &MaterialGrid<T>,
    backend: Backend,
) -> Result<SnapshotSeries<T>> {
    Simulation::new(config.clone(), materials, backend)?.run()
}

/// One serial 1D cycle from `fields` at step `n`, returning the new state.
pub fn step_1d<T: Real>(
    fields: &Fields1d<T>,
    materials: &MaterialGrid<T>,
    config: &SimulationConfig,
    n: u64,
) -> Result<Fields1d<T>> {
    config.validate()?;
    let exec = Executor::serial();
    let mut eng = Engine1d::new(Coefficients::new(config, materials)?);
    let mut state = FieldState::One(fields.clone());
    inject_source(&mut state, &config.source, n, T::from_f64_lossy(config.deltat()));
    let FieldState::One(mut f) = state else { unreachable!() };
    eng.update_h(&exec, &mut f)?;
    eng.update_e(&exec, &mut f)?;
    f.step = n;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Extent, Units};
    use crate::engine::source::source_value;
    use crate::material::make_vacuum_materials;

    fn vac(n: usize) -> MaterialGrid<f64> {
        make_vacuum_materials(Extent::One(n), Units::Normalized).unwrap()
    }

    #[test]
    fn single_step_zero_amplitude() {
        let mut c = SimulationConfig::one_d(10, 1);
        c.source.amplitude = 0.0;
        let s = run(&c, &vac(10), Backend::Serial).unwrap();
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.entries[0].step(), 1);
        assert_eq!(s.entries[0].max_abs(), 0.0);
    }

    #[test]
    fn first_step_writes_sin_zero() {
        let c = SimulationConfig::one_d(10, 1);
        let f = step_1d(&Fields1d::zeros(10).unwrap(), &vac(10), &c, c.source.tstart).unwrap();
        assert!(f.ez.iter().chain(&f.hy).all(|&v| v == 0.0));
    }

    #[test]
    fn one_step_from_rest_at_quarter_period() {
        // S = 1 vacuum: source writes 1 at loc, H picks up +-1 either side, then E
        // propagates: Ez[loc-1] = 1 (from Hy[loc-1] - Hy[loc-2] = 1 - 0),
        // Ez[loc] = 1 + (-1 - 1) = -1, Ez[loc+1] = 0 + (0 - (-1)) = 1.
        let c = SimulationConfig::one_d(10, 10);
        let loc = 5;
        let f = step_1d(&Fields1d::zeros(10).unwrap(), &vac(10), &c, c.source.tstart + 5).unwrap();
        let v = source_value(&c.source, 6, 1.0);
        assert_eq!(v, 1.0);
        let mut hy = vec![0.0; 10];
        hy[loc - 1] = 1.0;
        hy[loc] = -1.0;
        let mut ez = vec![0.0; 10];
        ez[loc - 1] = 1.0;
        ez[loc] = -1.0;
        ez[loc + 1] = 1.0;
        assert_eq!(f.hy, hy);
        assert_eq!(f.ez, ez);
        assert_eq!(f.step, 6);
    }

    #[test]
    fn snapshot_cadence() {
        let mut c = SimulationConfig::one_d(16, 10);
        c.snapshot_every = 3;
        let s = run(&c, &vac(16), Backend::Serial).unwrap();
        assert_eq!(s.steps(), vec![3, 6, 9, 10]);
        c.snapshot_every = 5;
        let s = run(&c, &vac(16), Backend::Serial).unwrap();
        assert_eq!(s.steps(), vec![5, 10]);
        c.snapshot_every = 0;
        assert_eq!(run(&c, &vac(16), Backend::Serial).unwrap().steps(), vec![10]);
    }

    #[test]
    fn snapshots_are_deep_copies() {
        let mut c = SimulationConfig::one_d(32, 20);
        c.snapshot_every = 1;
        let s = run(&c, &vac(32), Backend::Serial).unwrap();
        // Early snapshots differ from later ones, so they were not aliased.
        assert!(!s.entries[4].bitwise_eq(&s.entries[19]));
        let mut short = c.clone();
        short.time_tot = 5;
        let t = run(&short, &vac(32), Backend::Serial).unwrap();
        assert!(t.entries[4].bitwise_eq(&s.entries[4]));
    }

    #[test]
    fn rejects_precision_and_shape_mismatch() {
        let c = SimulationConfig::one_d(10, 1);
        let m32 = make_vacuum_materials::<f32>(Extent::One(10), Units::Normalized).unwrap();
        assert!(matches!(
            Simulation::new(c.clone(), &m32, Backend::Serial),
            Err(Error::PrecisionMismatch { .. })
        ));
        assert!(Simulation::new(c.clone(), &vac(11), Backend::Serial).is_err());
        let mut bad = c;
        bad.courant = 1.5;
        assert!(matches!(
            Simulation::new(bad, &vac(10), Backend::Serial),
            Err(Error::UnstableCourant { .. })
        ));
    }
}
