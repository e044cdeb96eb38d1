use crate::config::{GridIndex, SourceMode, SourceShape, SourceSpec};
use crate::field::FieldState;
use crate::real::Real;

/// `amplitude * sin(2 pi (1/N_lambda) (n - tstart) dt)`, evaluated left to
/// right in `T`.
pub fn source_value<T: Real>(source: &SourceSpec, n: u64, deltat: T) -> T {
    let two_pi = T::PI() + T::PI();
    let inv_lambda = T::one() / T::from_f64_lossy(source.n_lambda);
    let elapsed = T::from_f64_lossy(n as f64 - source.tstart as f64);
    T::from_f64_lossy(source.amplitude) * (two_pi * inv_lambda * elapsed * deltat).sin()
}

/// Applies the source for step `n` to `Ez`. Outside `[tstart, tstop]` the
/// fields are left alone.
pub fn inject_source<T: Real>(fields: &mut FieldState<T>, source: &SourceSpec, n: u64, deltat: T) {
    if !source.is_active(n) {
        return;
    }
    let value = source_value(source, n, deltat);
    let apply = |cell: &mut T| match source.mode {
        SourceMode::Hard => *cell = value,
        SourceMode::Soft => *cell = *cell + value,
    };
    match (fields, source.location) {
        (FieldState::One(f), GridIndex::One(i)) => apply(&mut f.ez[i]),
        (FieldState::Three(f), GridIndex::Three([i, j, k])) => match source.shape {
            SourceShape::Point => {
                let idx = f.idx(i, j, k);
                apply(&mut f.ez[idx]);
            }
            SourceShape::PlaneX => {
                let [_, ny, nz] = f.shape();
                let start = f.idx(i, 0, 0);
                f.ez[start..start + ny * nz].iter_mut().for_each(apply);
            }
        },
        _ => panic!("source dimensionality does not match the field state"),
    }
}
