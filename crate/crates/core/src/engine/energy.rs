use crate::field::Fields1d;
use crate::material::MaterialGrid;
use crate::real::Real;

/// Discrete 1D field energy straddling one H half-step:
/// `sum(eps Ez^2) + sum(mu Hy_before * Hy_after)`, where `before` and
/// `after` are consecutive states and no source wrote in between.
///
/// The product of the two H generations makes this the quantity the Yee
/// scheme conserves exactly when lossless; with `sigma > 0` it decreases
/// step over step. Accumulated in `f64` since it is a diagnostic.
pub fn staggered_energy_1d<T: Real>(
    materials: &MaterialGrid<T>,
    before: &Fields1d<T>,
    after: &Fields1d<T>,
) -> f64 {
    let electric: f64 = materials
        .epsilon()
        .iter()
        .zip(&before.ez)
        .map(|(&e, &ez)| e.widen() * ez.widen() * ez.widen())
        .sum();
    let magnetic: f64 = materials
        .mu()
        .iter()
        .zip(before.hy.iter().zip(&after.hy))
        .map(|(&m, (&h0, &h1))| m.widen() * h0.widen() * h1.widen())
        .sum();
    electric + magnetic
}
