//! Field sample storage on the Yee grid.
//!
//! All arrays have one sample per cell. In 3D the samples of cell `(i, j, k)`
//! sit at the usual staggered positions:
//!
//! ```text
//! Ex(i+1/2, j, k)      Hx(i, j+1/2, k+1/2)
//! Ey(i, j+1/2, k)      Hy(i+1/2, j, k+1/2)
//! Ez(i, j, k+1/2)      Hz(i+1/2, j+1/2, k)
//! ```
//!
//! and the flat index is `(i * ny + j) * nz + k`.

use crate::config::Extent;
use crate::error::{try_zeroed, Error, Result};
use crate::real::Real;

/// `Ez` and `Hy` along x. `hy[i]` sits half a cell to the right of `ez[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Fields1d<T> {
    pub ez: Vec<T>,
    pub hy: Vec<T>,
    pub step: u64,
}

impl<T: Real> Fields1d<T> {
    pub fn zeros(xdim: usize) -> Result<Self> {
        Ok(Fields1d {
            ez: try_zeroed(xdim)?,
            hy: try_zeroed(xdim)?,
            step: 0,
        })
    }

    pub fn from_arrays(ez: Vec<T>, hy: Vec<T>) -> Result<Self> {
        if ez.len() != hy.len() {
            return Err(Error::ShapeMismatch {
                expected: ez.len(),
                found: hy.len(),
            });
        }
        Ok(Fields1d { ez, hy, step: 0 })
    }

    pub fn len(&self) -> usize {
        self.ez.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ez.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fields3d<T> {
    shape: [usize; 3],
    pub ex: Vec<T>,
    pub ey: Vec<T>,
    pub ez: Vec<T>,
    pub hx: Vec<T>,
    pub hy: Vec<T>,
    pub hz: Vec<T>,
    pub step: u64,
}

impl<T: Real> Fields3d<T> {
    pub fn zeros(shape: [usize; 3]) -> Result<Self> {
        let n = shape.iter().product();
        Ok(Fields3d {
            shape,
            ex: try_zeroed(n)?,
            ey: try_zeroed(n)?,
            ez: try_zeroed(n)?,
            hx: try_zeroed(n)?,
            hy: try_zeroed(n)?,
            hz: try_zeroed(n)?,
            step: 0,
        })
    }

    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.shape[1] + j) * self.shape[2] + k
    }

    pub fn components(&self) -> [&[T]; 6] {
        [&self.ex, &self.ey, &self.ez, &self.hx, &self.hy, &self.hz]
    }
}

/// Snapshot of either dimensionality.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldState<T> {
    One(Fields1d<T>),
    Three(Fields3d<T>),
}

impl<T: Real> FieldState<T> {
    pub fn zeros(extent: Extent) -> Result<Self> {
        Ok(match extent {
            Extent::One(n) => FieldState::One(Fields1d::zeros(n)?),
            Extent::Three(shape) => FieldState::Three(Fields3d::zeros(shape)?),
        })
    }

    pub fn extent(&self) -> Extent {
        match self {
            FieldState::One(f) => Extent::One(f.len()),
            FieldState::Three(f) => Extent::Three(f.shape()),
        }
    }

    pub fn step(&self) -> u64 {
        match self {
            FieldState::One(f) => f.step,
            FieldState::Three(f) => f.step,
        }
    }

    pub fn arrays(&self) -> Vec<&[T]> {
        match self {
            FieldState::One(f) => vec![&f.ez, &f.hy],
            FieldState::Three(f) => f.components().to_vec(),
        }
    }

    pub fn all_finite(&self) -> bool {
        self.arrays().iter().all(|a| a.iter().all(|v| v.is_finite()))
    }

    pub fn max_abs(&self) -> T {
        self.arrays()
            .iter()
            .flat_map(|a| a.iter())
            .fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// True when every sample has identical IEEE bits.
    pub fn bitwise_eq(&self, other: &Self) -> bool {
        let (a, b) = (self.arrays(), other.arrays());
        self.extent() == other.extent()
            && a.iter()
                .zip(&b)
                .all(|(x, y)| x.iter().zip(y.iter()).all(|(p, q)| p.bits() == q.bits()))
    }

    /// FNV-1a over the raw bits of every sample, component by component.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for arr in self.arrays() {
            for v in arr {
                for byte in v.bits().to_le_bytes() {
                    h ^= byte as u64;
                    h = h.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
        h
    }

    pub fn as_1d(&self) -> Option<&Fields1d<T>> {
        match self {
            FieldState::One(f) => Some(f),
            FieldState::Three(_) => None,
        }
    }

    pub fn as_3d(&self) -> Option<&Fields3d<T>> {
        match self {
            FieldState::Three(f) => Some(f),
            FieldState::One(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_state_is_zero() {
        let s = FieldState::<f64>::zeros(Extent::Three([3, 4, 5])).unwrap();
        assert_eq!(s.arrays().len(), 6);
        assert!(s.arrays().iter().all(|a| a.len() == 60 && a.iter().all(|&v| v == 0.0)));
        assert_eq!(s.step(), 0);
        let s = FieldState::<f32>::zeros(Extent::One(7)).unwrap();
        assert_eq!(s.max_abs(), 0.0);
    }

    #[test]
    fn flat_index_is_row_major() {
        let f = Fields3d::<f64>::zeros([2, 3, 4]).unwrap();
        assert_eq!(f.idx(0, 0, 1), 1);
        assert_eq!(f.idx(0, 1, 0), 4);
        assert_eq!(f.idx(1, 0, 0), 12);
        assert_eq!(f.idx(1, 2, 3), 23);
    }

    #[test]
    fn bitwise_eq_distinguishes_signed_zero() {
        let a = FieldState::One(Fields1d::from_arrays(vec![0.0f64; 3], vec![0.0; 3]).unwrap());
        let b = FieldState::One(Fields1d::from_arrays(vec![-0.0f64, 0.0, 0.0], vec![0.0; 3]).unwrap());
        assert!(a.bitwise_eq(&a.clone()));
        assert!(!a.bitwise_eq(&b));
        assert!(Fields1d::from_arrays(vec![0.0f64; 3], vec![0.0; 2]).is_err());
    }
}
