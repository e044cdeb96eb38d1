//! Independent reference implementations used by the property and
//! acceptance tests. Nothing here calls into the engine.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Hard sinusoidal source value, evaluated left to right in f64.
pub fn source(amplitude: f64, n_lambda: f64, n: u64, tstart: u64, deltat: f64) -> f64 {
    amplitude * (2.0 * PI * (1.0 / n_lambda) * ((n as f64) - (tstart as f64)) * deltat).sin()
}

/// One lossless 1D cycle, transcribed literally with 1-based indices:
///
/// ```text
/// Ez(src) = source
/// for i = 1 : xdim-1   Hy(i) = Hy(i) + ch(i) * (Ez(i+1) - Ez(i))
/// for i = 2 : xdim     Ez(i) = Ez(i) + ce(i) * (Hy(i) - Hy(i-1))
/// ```
pub fn literal_cycle_1d(ez: &mut [f64], hy: &mut [f64], ch: &[f64], ce: &[f64], src: usize, value: f64) {
    let xdim = ez.len();
    // 1-based views.
    let at = |i: usize| i - 1;
    ez[src] = value;
    let mut i = 1;
    while i <= xdim - 1 {
        hy[at(i)] = hy[at(i)] + ch[at(i)] * (ez[at(i + 1)] - ez[at(i)]);
        i += 1;
    }
    let mut i = 2;
    while i <= xdim {
        ez[at(i)] = ez[at(i)] + ce[at(i)] * (hy[at(i)] - hy[at(i - 1)]);
        i += 1;
    }
}

/// Field component of the 3D Yee cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comp {
    Ex,
    Ey,
    Ez,
    Hx,
    Hy,
    Hz,
}

/// Marks which 3D samples may differ from a y/z-uniform extrusion of a 1D
/// run driven by a full `x = i0` plane source.
///
/// Wall-frozen `Hy` and `Ez` samples are tainted, since the extrusion
/// expects them to carry the 1D profile. The other components are zero in
/// the extrusion, which is also what a frozen sample holds. Each half-step,
/// an updated sample is tainted when any input it reads is.
/// Walls in x match the 1D grid and are not a source of taint.
pub struct UniformityTaint {
    shape: [usize; 3],
    source_i: usize,
    t: [Vec<bool>; 6],
}

impl UniformityTaint {
    pub fn new(shape: [usize; 3], source_i: usize) -> Self {
        let n = shape.iter().product();
        let mut s = UniformityTaint {
            shape,
            source_i,
            t: std::array::from_fn(|_| vec![false; n]),
        };
        s.mark_walls(&[Comp::Hy, Comp::Ez]);
        s
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.shape[1] + j) * self.shape[2] + k
    }

    fn slot(c: Comp) -> usize {
        c as usize
    }

    pub fn tainted(&self, c: Comp, i: usize, j: usize, k: usize) -> bool {
        self.t[Self::slot(c)][self.idx(i, j, k)]
    }

    /// True when the sample stays fixed because a y or z neighbor is missing.
    fn wall_frozen(&self, c: Comp, j: usize, k: usize) -> bool {
        let [_, ny, nz] = self.shape;
        match c {
            Comp::Hx => j + 1 >= ny || k + 1 >= nz,
            Comp::Hy => k + 1 >= nz,
            Comp::Hz => j + 1 >= ny,
            Comp::Ex => j == 0 || k == 0,
            Comp::Ey => k == 0,
            Comp::Ez => j == 0,
        }
    }

    fn mark_walls(&mut self, comps: &[Comp]) {
        let [nx, ny, nz] = self.shape;
        for &c in comps {
            for i in 0..nx {
                for j in 0..ny {
                    for k in 0..nz {
                        if self.wall_frozen(c, j, k) {
                            let id = self.idx(i, j, k);
                            self.t[Self::slot(c)][id] = true;
                        }
                    }
                }
            }
        }
    }

    /// Inputs of an update as (component, di, dj, dk) offsets.
    fn stencil(c: Comp) -> &'static [(Comp, isize, isize, isize)] {
        use Comp::*;
        match c {
            Hx => &[(Hx, 0, 0, 0), (Ey, 0, 0, 1), (Ey, 0, 0, 0), (Ez, 0, 1, 0), (Ez, 0, 0, 0)],
            Hy => &[(Hy, 0, 0, 0), (Ez, 1, 0, 0), (Ez, 0, 0, 0), (Ex, 0, 0, 1), (Ex, 0, 0, 0)],
            Hz => &[(Hz, 0, 0, 0), (Ex, 0, 1, 0), (Ex, 0, 0, 0), (Ey, 1, 0, 0), (Ey, 0, 0, 0)],
            Ex => &[(Ex, 0, 0, 0), (Hz, 0, 0, 0), (Hz, 0, -1, 0), (Hy, 0, 0, 0), (Hy, 0, 0, -1)],
            Ey => &[(Ey, 0, 0, 0), (Hx, 0, 0, 0), (Hx, 0, 0, -1), (Hz, 0, 0, 0), (Hz, -1, 0, 0)],
            Ez => &[(Ez, 0, 0, 0), (Hy, 0, 0, 0), (Hy, -1, 0, 0), (Hx, 0, 0, 0), (Hx, 0, -1, 0)],
        }
    }

    fn half_step(&mut self, comps: [Comp; 3]) {
        let [nx, ny, nz] = self.shape;
        let old = self.t.clone();
        for c in comps {
            for i in 0..nx {
                for j in 0..ny {
                    for k in 0..nz {
                        let id = self.idx(i, j, k);
                        if self.wall_frozen(c, j, k) {
                            continue;
                        }
                        let mut any = false;
                        for &(src, di, dj, dk) in Self::stencil(c) {
                            let (a, b, d) = (i as isize + di, j as isize + dj, k as isize + dk);
                            // Off-grid in x means the sample is frozen, same as in 1D.
                            if a < 0 || a >= nx as isize {
                                continue;
                            }
                            let nid = self.idx(a as usize, b as usize, d as usize);
                            any |= old[Self::slot(src)][nid];
                        }
                        self.t[Self::slot(c)][id] = any;
                    }
                }
            }
        }
    }

    /// Source write, H half-step, E half-step.
    pub fn cycle(&mut self) {
        let [_, ny, nz] = self.shape;
        for j in 0..ny {
            for k in 0..nz {
                let id = self.idx(self.source_i, j, k);
                self.t[Self::slot(Comp::Ez)][id] = false;
            }
        }
        self.half_step([Comp::Hx, Comp::Hy, Comp::Hz]);
        self.half_step([Comp::Ex, Comp::Ey, Comp::Ez]);
        // Frozen Ez on the wall keeps the source value, which the 1D run
        // overwrites; stay conservative.
        self.mark_walls(&[Comp::Ez]);
    }
}
