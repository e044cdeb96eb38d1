use crate::backend::{execute_stencil, Executor};
use crate::engine::coeff::Coefficients;
use crate::error::{Error, Result};
use crate::field::Fields1d;
use crate::real::Real;

/// 1D half-step kernels with a reusable next-generation buffer.
#[derive(Debug)]
pub struct Engine1d<T> {
    coeff: Coefficients<T>,
    scratch: Vec<T>,
}

impl<T: Real> Engine1d<T> {
    pub fn new(coeff: Coefficients<T>) -> Self {
        Engine1d {
            scratch: vec![T::zero(); coeff.len()],
            coeff,
        }
    }

    pub fn coefficients(&self) -> &Coefficients<T> {
        &self.coeff
    }

    fn check(&self, fields: &Fields1d<T>) -> Result<()> {
        if fields.len() != self.coeff.len() {
            return Err(Error::ShapeMismatch {
                expected: self.coeff.len(),
                found: fields.len(),
            });
        }
        Ok(())
    }

    /// `Hy[i] <- cha Hy[i] + chb (Ez[i+1] - Ez[i])` for `i in 0..xdim-1`.
    /// The last `Hy` sample has no right neighbor and stays frozen.
    pub fn update_h(&mut self, exec: &Executor, fields: &mut Fields1d<T>) -> Result<()> {
        self.check(fields)?;
        let n = fields.len();
        let (ez, hy) = (&fields.ez, &fields.hy);
        let Coefficients { cha, chb, .. } = &self.coeff;
        let plan = exec.plan(0..n.saturating_sub(1));
        execute_stencil(exec, hy, &mut self.scratch, &plan, |i| {
            cha[i] * hy[i] + chb[i] * (ez[i + 1] - ez[i])
        })?;
        std::mem::swap(&mut fields.hy, &mut self.scratch);
        Ok(())
    }

    /// `Ez[i] <- cea Ez[i] + ceb (Hy[i] - Hy[i-1])` for `i in 1..xdim`.
    /// `Ez[0]` has no left neighbor and stays frozen.
    pub fn update_e(&mut self, exec: &Executor, fields: &mut Fields1d<T>) -> Result<()> {
        self.check(fields)?;
        let n = fields.len();
        let (ez, hy) = (&fields.ez, &fields.hy);
        let Coefficients { cea, ceb, .. } = &self.coeff;
        let plan = exec.plan(1.min(n)..n);
        execute_stencil(exec, ez, &mut self.scratch, &plan, |i| {
            cea[i] * ez[i] + ceb[i] * (hy[i] - hy[i - 1])
        })?;
        std::mem::swap(&mut fields.ez, &mut self.scratch);
        Ok(())
    }
}

/// Serial H half-step returning a new state.
pub fn update_h_1d<T: Real>(fields: &Fields1d<T>, coeff: &Coefficients<T>) -> Result<Fields1d<T>> {
    let mut out = fields.clone();
    Engine1d::new(coeff.clone()).update_h(&Executor::serial(), &mut out)?;
    Ok(out)
}

/// Serial E half-step returning a new state.
pub fn update_e_1d<T: Real>(fields: &Fields1d<T>, coeff: &Coefficients<T>) -> Result<Fields1d<T>> {
    let mut out = fields.clone();
    Engine1d::new(coeff.clone()).update_e(&Executor::serial(), &mut out)?;
    Ok(out)
}
