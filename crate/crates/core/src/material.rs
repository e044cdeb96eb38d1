use crate::config::{Extent, Units};
use crate::error::{try_zeroed, Error, Result};
use crate::real::Real;

/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Vacuum permeability, H/m.
pub const MU_0: f64 = 1.256_637_062_12e-6;

/// Per-cell `eps`, `mu`, `sigma` and `sigma*`.
///
/// Arrays are flat with the same layout as the field arrays (row-major
/// `(i, j, k)` in 3D). `eps > 0`, `mu > 0`, `sigma >= 0`, `sigma* >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialGrid<T> {
    extent: Extent,
    epsilon: Vec<T>,
    mu: Vec<T>,
    sigma: Vec<T>,
    sigma_star: Vec<T>,
}

impl<T: Real> MaterialGrid<T> {
    pub fn uniform(extent: Extent, epsilon: T, mu: T, sigma: T, sigma_star: T) -> Result<Self> {
        extent.validate()?;
        let n = extent.cells();
        let fill = |v: T| -> Result<Vec<T>> {
            let mut buf = try_zeroed(n)?;
            buf.fill(v);
            Ok(buf)
        };
        Self::from_arrays(extent, fill(epsilon)?, fill(mu)?, fill(sigma)?, fill(sigma_star)?)
    }

    pub fn from_arrays(
        extent: Extent,
        epsilon: Vec<T>,
        mu: Vec<T>,
        sigma: Vec<T>,
        sigma_star: Vec<T>,
    ) -> Result<Self> {
        let n = extent.cells();
        for arr in [&epsilon, &mu, &sigma, &sigma_star] {
            if arr.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: n,
                    found: arr.len(),
                });
            }
        }
        let zero = T::zero();
        for cell in 0..n {
            if !(epsilon[cell] > zero) || !epsilon[cell].is_finite() {
                return Err(Error::InvalidMaterial { cell, what: "epsilon must be positive" });
            }
            if !(mu[cell] > zero) || !mu[cell].is_finite() {
                return Err(Error::InvalidMaterial { cell, what: "mu must be positive" });
            }
            if !(sigma[cell] >= zero) || !sigma[cell].is_finite() {
                return Err(Error::InvalidMaterial { cell, what: "sigma must be non-negative" });
            }
            if !(sigma_star[cell] >= zero) || !sigma_star[cell].is_finite() {
                return Err(Error::InvalidMaterial {
                    cell,
                    what: "sigma_star must be non-negative",
                });
            }
        }
        Ok(MaterialGrid {
            extent,
            epsilon,
            mu,
            sigma,
            sigma_star,
        })
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn epsilon(&self) -> &[T] {
        &self.epsilon
    }

    pub fn mu(&self) -> &[T] {
        &self.mu
    }

    pub fn sigma(&self) -> &[T] {
        &self.sigma
    }

    pub fn sigma_star(&self) -> &[T] {
        &self.sigma_star
    }
}

/// Lossless vacuum: `eps0`/`mu0` (or 1 in normalized units), no conductivity.
pub fn make_vacuum_materials<T: Real>(extent: Extent, units: Units) -> Result<MaterialGrid<T>> {
    let (eps, mu) = match units {
        Units::Normalized => (T::one(), T::one()),
        Units::Physical => (T::from_f64_lossy(EPSILON_0), T::from_f64_lossy(MU_0)),
    };
    MaterialGrid::uniform(extent, eps, mu, T::zero(), T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::C0;

    #[test]
    fn normalized_vacuum() {
        let m = make_vacuum_materials::<f64>(Extent::One(8), Units::Normalized).unwrap();
        assert!(m.epsilon().iter().all(|&v| v == 1.0));
        assert!(m.mu().iter().all(|&v| v == 1.0));
        assert!(m.sigma().iter().all(|&v| v == 0.0));
        assert!(m.sigma_star().iter().all(|&v| v == 0.0));
        assert_eq!(m.epsilon().len(), 8);
    }

    #[test]
    fn physical_vacuum_reproduces_c() {
        let m = make_vacuum_materials::<f64>(Extent::One(8), Units::Physical).unwrap();
        assert!((m.epsilon()[0] - 8.854e-12).abs() < 1e-15);
        assert!((m.mu()[0] - 1.2566e-6).abs() < 1e-10);
        let c = 1.0 / (m.mu()[0] * m.epsilon()[0]).sqrt();
        assert!((c - C0).abs() / C0 < 1e-9);
    }

    #[test]
    fn three_d_fill() {
        let m = make_vacuum_materials::<f32>(Extent::Three([4, 4, 4]), Units::Normalized).unwrap();
        for arr in [m.epsilon(), m.mu(), m.sigma(), m.sigma_star()] {
            assert_eq!(arr.len(), 64);
        }
        assert!(m.mu().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn rejects_bad_values() {
        let e = Extent::One(4);
        let ok = vec![1.0f64; 4];
        let mut neg = ok.clone();
        neg[2] = -0.5;
        assert!(matches!(
            MaterialGrid::from_arrays(e, neg.clone(), ok.clone(), vec![0.0; 4], vec![0.0; 4]),
            Err(Error::InvalidMaterial { cell: 2, .. })
        ));
        assert!(MaterialGrid::from_arrays(e, ok.clone(), ok.clone(), neg, vec![0.0; 4]).is_err());
        assert!(matches!(
            MaterialGrid::from_arrays(e, ok.clone(), vec![1.0; 3], vec![0.0; 4], vec![0.0; 4]),
            Err(Error::ShapeMismatch { expected: 4, found: 3 })
        ));
    }
}
