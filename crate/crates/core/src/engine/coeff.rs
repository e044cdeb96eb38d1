use crate::config::SimulationConfig;
use crate::error::{Error, Result};
use crate::material::MaterialGrid;
use crate::real::Real;

/// Per-cell update multipliers.
///
/// ```text
/// H <- cha * H + chb * (difference of E)
/// E <- cea * E + ceb * (difference of H)
/// ```
///
/// Loss terms are averaged across the half step:
/// `cea = (1 - s dt / 2 eps) / (1 + s dt / 2 eps)`,
/// `ceb = (dt / (delta eps)) / (1 + s dt / 2 eps)`, and likewise for H with
/// `sigma*` and `mu`. With no loss `cea = cha = 1` and `ceb`, `chb` reduce
/// bit-for-bit to `dt / (delta eps)` and `dt / (delta mu)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients<T> {
    pub cea: Vec<T>,
    pub ceb: Vec<T>,
    pub cha: Vec<T>,
    pub chb: Vec<T>,
}

impl<T: Real> Coefficients<T> {
    pub fn new(config: &SimulationConfig, materials: &MaterialGrid<T>) -> Result<Self> {
        if materials.extent() != config.extent {
            return Err(Error::ShapeMismatch {
                expected: config.extent.cells(),
                found: materials.extent().cells(),
            });
        }
        let dt = T::from_f64_lossy(config.deltat());
        let delta = T::from_f64_lossy(config.delta);
        Ok(Self::from_parts(dt, delta, materials))
    }

    pub fn from_parts(dt: T, delta: T, materials: &MaterialGrid<T>) -> Self {
        let one = T::one();
        let two = one + one;
        let pair = |m: T, s: T| {
            let loss = s * dt / (two * m);
            ((one - loss) / (one + loss), (dt / (delta * m)) / (one + loss))
        };
        let (cea, ceb) = materials
            .epsilon()
            .iter()
            .zip(materials.sigma())
            .map(|(&e, &s)| pair(e, s))
            .unzip();
        let (cha, chb) = materials
            .mu()
            .iter()
            .zip(materials.sigma_star())
            .map(|(&m, &s)| pair(m, s))
            .unzip();
        Coefficients { cea, ceb, cha, chb }
    }

    pub fn len(&self) -> usize {
        self.cea.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cea.is_empty()
    }
}
