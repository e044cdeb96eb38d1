use crate::backend::{execute_stencil, Executor};
use crate::engine::coeff::Coefficients;
use crate::error::{Error, Result};
use crate::field::Fields3d;
use crate::real::Real;

/// 3D half-step kernels.
///
/// H uses forward differences of E, E uses backward differences of H:
///
/// ```text
/// Hx <- cha Hx + chb [(Ey[k+1] - Ey) - (Ez[j+1] - Ez)]
/// Hy <- cha Hy + chb [(Ez[i+1] - Ez) - (Ex[k+1] - Ex)]
/// Hz <- cha Hz + chb [(Ex[j+1] - Ex) - (Ey[i+1] - Ey)]
/// Ex <- cea Ex + ceb [(Hz - Hz[j-1]) - (Hy - Hy[k-1])]
/// Ey <- cea Ey + ceb [(Hx - Hx[k-1]) - (Hz - Hz[i-1])]
/// Ez <- cea Ez + ceb [(Hy - Hy[i-1]) - (Hx - Hx[j-1])]
/// ```
///
/// A sample whose stencil would leave the grid is frozen.
#[derive(Debug)]
pub struct Engine3d<T> {
    shape: [usize; 3],
    coeff: Coefficients<T>,
    scratch: Vec<T>,
}

#[derive(Clone, Copy)]
struct Layout {
    sx: usize,
    sy: usize,
}

impl Layout {
    fn new(shape: [usize; 3]) -> Self {
        Layout {
            sx: shape[1] * shape[2],
            sy: shape[2],
        }
    }

    #[inline]
    fn ijk(self, idx: usize) -> (usize, usize, usize) {
        let i = idx / self.sx;
        let rem = idx - i * self.sx;
        let j = rem / self.sy;
        (i, j, rem - j * self.sy)
    }
}

impl<T: Real> Engine3d<T> {
    pub fn new(shape: [usize; 3], coeff: Coefficients<T>) -> Result<Self> {
        let n: usize = shape.iter().product();
        if coeff.len() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: coeff.len(),
            });
        }
        Ok(Engine3d {
            shape,
            coeff,
            scratch: vec![T::zero(); n],
        })
    }

    fn check(&self, fields: &Fields3d<T>) -> Result<()> {
        if fields.shape() != self.shape {
            return Err(Error::ShapeMismatch {
                expected: self.coeff.len(),
                found: fields.shape().iter().product(),
            });
        }
        Ok(())
    }

    pub fn update_h(&mut self, exec: &Executor, f: &mut Fields3d<T>) -> Result<()> {
        self.check(f)?;
        let lay = Layout::new(self.shape);
        let [nx, ny, nz] = self.shape;
        let (sx, sy) = (lay.sx, lay.sy);
        let plan = exec.plan(0..self.coeff.len());
        let Coefficients { cha, chb, .. } = &self.coeff;

        {
            let (ey, ez, hx) = (&f.ey, &f.ez, &f.hx);
            execute_stencil(exec, hx, &mut self.scratch, &plan, |c| {
                let (_, j, k) = lay.ijk(c);
                if j + 1 < ny && k + 1 < nz {
                    cha[c] * hx[c] + chb[c] * ((ey[c + 1] - ey[c]) - (ez[c + sy] - ez[c]))
                } else {
                    hx[c]
                }
            })?;
        }
        std::mem::swap(&mut f.hx, &mut self.scratch);

        {
            let (ex, ez, hy) = (&f.ex, &f.ez, &f.hy);
            execute_stencil(exec, hy, &mut self.scratch, &plan, |c| {
                let (i, _, k) = lay.ijk(c);
                if i + 1 < nx && k + 1 < nz {
                    cha[c] * hy[c] + chb[c] * ((ez[c + sx] - ez[c]) - (ex[c + 1] - ex[c]))
                } else {
                    hy[c]
                }
            })?;
        }
        std::mem::swap(&mut f.hy, &mut self.scratch);

        {
            let (ex, ey, hz) = (&f.ex, &f.ey, &f.hz);
            execute_stencil(exec, hz, &mut self.scratch, &plan, |c| {
                let (i, j, _) = lay.ijk(c);
                if i + 1 < nx && j + 1 < ny {
                    cha[c] * hz[c] + chb[c] * ((ex[c + sy] - ex[c]) - (ey[c + sx] - ey[c]))
                } else {
                    hz[c]
                }
            })?;
        }
        std::mem::swap(&mut f.hz, &mut self.scratch);
        Ok(())
    }

    pub fn update_e(&mut self, exec: &Executor, f: &mut Fields3d<T>) -> Result<()> {
        self.check(f)?;
        let lay = Layout::new(self.shape);
        let (sx, sy) = (lay.sx, lay.sy);
        let plan = exec.plan(0..self.coeff.len());
        let Coefficients { cea, ceb, .. } = &self.coeff;

        {
            let (hy, hz, ex) = (&f.hy, &f.hz, &f.ex);
            execute_stencil(exec, ex, &mut self.scratch, &plan, |c| {
                let (_, j, k) = lay.ijk(c);
                if j >= 1 && k >= 1 {
                    cea[c] * ex[c] + ceb[c] * ((hz[c] - hz[c - sy]) - (hy[c] - hy[c - 1]))
                } else {
                    ex[c]
                }
            })?;
        }
        std::mem::swap(&mut f.ex, &mut self.scratch);

        {
            let (hx, hz, ey) = (&f.hx, &f.hz, &f.ey);
            execute_stencil(exec, ey, &mut self.scratch, &plan, |c| {
                let (i, _, k) = lay.ijk(c);
                if i >= 1 && k >= 1 {
                    cea[c] * ey[c] + ceb[c] * ((hx[c] - hx[c - 1]) - (hz[c] - hz[c - sx]))
                } else {
                    ey[c]
                }
            })?;
        }
        std::mem::swap(&mut f.ey, &mut self.scratch);

        {
            let (hx, hy, ez) = (&f.hx, &f.hy, &f.ez);
            execute_stencil(exec, ez, &mut self.scratch, &plan, |c| {
                let (i, j, _) = lay.ijk(c);
                if i >= 1 && j >= 1 {
                    cea[c] * ez[c] + ceb[c] * ((hy[c] - hy[c - sx]) - (hx[c] - hx[c - sy]))
                } else {
                    ez[c]
                }
            })?;
        }
        std::mem::swap(&mut f.ez, &mut self.scratch);
        Ok(())
    }
}

/// Serial H half-step returning a new state.
pub fn update_h_3d<T: Real>(fields: &Fields3d<T>, coeff: &Coefficients<T>) -> Result<Fields3d<T>> {
    let mut out = fields.clone();
    Engine3d::new(fields.shape(), coeff.clone())?.update_h(&Executor::serial(), &mut out)?;
    Ok(out)
}

/// Serial E half-step returning a new state.
pub fn update_e_3d<T: Real>(fields: &Fields3d<T>, coeff: &Coefficients<T>) -> Result<Fields3d<T>> {
    let mut out = fields.clone();
    Engine3d::new(fields.shape(), coeff.clone())?.update_e(&Executor::serial(), &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Extent;
    use crate::material::MaterialGrid;

    fn vacuum(shape: [usize; 3], s: f64) -> Coefficients<f64> {
        let m = MaterialGrid::uniform(Extent::Three(shape), 1.0, 1.0, 0.0, 0.0).unwrap();
        Coefficients::from_parts(s, 1.0, &m)
    }

    #[test]
    fn zero_stays_zero() {
        let f = Fields3d::<f64>::zeros([4, 5, 6]).unwrap();
        let c = vacuum([4, 5, 6], 0.5);
        let g = update_e_3d(&update_h_3d(&f, &c).unwrap(), &c).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn single_ez_spike_touches_four_h_samples() {
        let s = 0.5;
        let mut f = Fields3d::<f64>::zeros([5, 5, 5]).unwrap();
        let c = f.idx(2, 2, 2);
        f.ez[c] = 1.0;
        let g = update_h_3d(&f, &vacuum([5, 5, 5], s)).unwrap();

        let mut nonzero = Vec::new();
        for (name, arr) in [("hx", &g.hx), ("hy", &g.hy), ("hz", &g.hz)] {
            for (idx, &v) in arr.iter().enumerate() {
                if v != 0.0 {
                    nonzero.push((name, idx, v));
                }
            }
        }
        assert_eq!(nonzero.len(), 4, "{nonzero:?}");
        assert_eq!(g.hx[f.idx(2, 1, 2)], -s);
        assert_eq!(g.hx[f.idx(2, 2, 2)], s);
        assert_eq!(g.hy[f.idx(1, 2, 2)], s);
        assert_eq!(g.hy[f.idx(2, 2, 2)], -s);
        assert!(g.hz.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn uniform_ez_leaves_h_unchanged() {
        let mut f = Fields3d::<f64>::zeros([4, 4, 4]).unwrap();
        f.ez.fill(2.5);
        f.hy.fill(-0.25);
        let g = update_h_3d(&f, &vacuum([4, 4, 4], 0.5)).unwrap();
        assert_eq!(g.hx, f.hx);
        assert_eq!(g.hy, f.hy);
        assert_eq!(g.hz, f.hz);
    }

    #[test]
    fn e_frozen_faces() {
        // Random-ish H everywhere; E on the i=0 / j=0 / k=0 faces that lack a
        // backward neighbor must not move.
        let shape = [4, 4, 4];
        let mut f = Fields3d::<f64>::zeros(shape).unwrap();
        for (n, v) in f.hx.iter_mut().enumerate() {
            *v = (n as f64 * 0.37).sin();
        }
        for (n, v) in f.hy.iter_mut().enumerate() {
            *v = (n as f64 * 0.91).cos();
        }
        for (n, v) in f.hz.iter_mut().enumerate() {
            *v = (n as f64 * 1.3).sin();
        }
        let g = update_e_3d(&f, &vacuum(shape, 0.5)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let c = f.idx(i, j, k);
                    if j == 0 || k == 0 {
                        assert_eq!(g.ex[c], 0.0);
                    }
                    if i == 0 || k == 0 {
                        assert_eq!(g.ey[c], 0.0);
                    }
                    if i == 0 || j == 0 {
                        assert_eq!(g.ez[c], 0.0);
                    }
                }
            }
        }
    }
}
