/// Centered difference `(f(x0 + delta/2) - f(x0 - delta/2)) / delta`.
///
/// Second-order accurate; exact for polynomials up to degree two.
pub fn central_difference<F>(f: F, x0: f64, delta: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    debug_assert!(delta > 0.0, "delta must be positive");
    let half = 0.5 * delta;
    (f(x0 + half) - f(x0 - half)) / delta
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_on_quadratic() {
        // Exact in exact arithmetic; only the rounding of 1.05^2 and 0.95^2 remains.
        assert!((central_difference(|x| x * x, 1.0, 0.1) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn constant_has_zero_slope() {
        assert_eq!(central_difference(|_| 7.5, -3.0, 0.25), 0.0);
    }

    #[test]
    fn cubic_truncation_error() {
        // (1.1^3 - 0.9^3) / 0.2 = (1.331 - 0.729) / 0.2
        let d = central_difference(|x| x * x * x, 1.0, 0.2);
        assert!((d - 3.01).abs() < 1e-12, "{d}");
    }

    /// Least-squares slope of log|err| against log(delta).
    fn order_of(f: impl Fn(f64) -> f64 + Copy, df: f64, x0: f64) -> f64 {
        let deltas = [0.1f64, 0.05, 0.025, 0.0125];
        let pts: Vec<(f64, f64)> = deltas
            .iter()
            .map(|&d| (d.ln(), (central_difference(f, x0, d) - df).abs().ln()))
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    }

    #[test]
    fn second_order_on_exp_and_sin() {
        assert!((order_of(f64::exp, 0.5f64.exp(), 0.5) - 2.0).abs() < 0.1);
        assert!((order_of(f64::sin, 1.0f64.cos(), 1.0) - 2.0).abs() < 0.1);
    }

    proptest! {
        #[test]
        fn linear_in_f(a in -10.0f64..10.0, b in -10.0f64..10.0, x0 in -3.0f64..3.0, d in 1e-3f64..0.5) {
            let f = |x: f64| x.sin();
            let g = |x: f64| x * x * x - x;
            let lhs = central_difference(|x| a * f(x) + b * g(x), x0, d);
            let rhs = a * central_difference(f, x0, d) + b * central_difference(g, x0, d);
            // Rounding in the numerator scales with |f| / delta, not with the derivative.
            let mag = |h: &dyn Fn(f64) -> f64| h(x0 + d / 2.0).abs().max(h(x0 - d / 2.0).abs());
            let scale = ((a.abs() * mag(&f) + b.abs() * mag(&g)) / d).max(1.0);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
        }
    }
}
