use std::hint::black_box;
use std::time::{Duration, Instant};

/// How long to keep measuring a single benchmark point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingPolicy {
    pub min_repeats: usize,
    pub min_window: Duration,
    pub max_repeats: usize,
}

impl Default for TimingPolicy {
    fn default() -> Self {
        TimingPolicy {
            min_repeats: 3,
            min_window: Duration::from_millis(200),
            max_repeats: 100_000,
        }
    }
}

impl TimingPolicy {
    /// Exactly `n` repeats, no window.
    pub fn repeats(n: usize) -> Self {
        TimingPolicy {
            min_repeats: n,
            min_window: Duration::ZERO,
            max_repeats: n,
        }
    }
}

/// Times `work(setup())` until the policy is satisfied. Only `work` is
/// inside the timed region. Returns per-call seconds and the last output.
pub fn measure<S, R>(
    policy: &TimingPolicy,
    mut setup: impl FnMut() -> S,
    mut work: impl FnMut(S) -> R,
) -> (Vec<f64>, R) {
    let mut samples = Vec::new();
    let mut total = Duration::ZERO;
    loop {
        let input = setup();
        let start = Instant::now();
        let out = black_box(work(black_box(input)));
        let took = start.elapsed();
        total += took;
        samples.push(took.as_secs_f64());
        let enough = samples.len() >= policy.min_repeats && total >= policy.min_window;
        if enough || samples.len() >= policy.max_repeats.max(policy.min_repeats) {
            return (samples, out);
        }
    }
}

/// Median; the mean of the two middle values for even lengths.
pub fn median(samples: &[f64]) -> f64 {
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_odd_even() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
        assert!(median(&[]).is_nan());
    }

    #[test]
    fn fills_window_with_tiny_work() {
        let policy = TimingPolicy {
            min_repeats: 3,
            min_window: Duration::from_millis(5),
            max_repeats: 1_000_000,
        };
        let (samples, _) = measure(&policy, || 1u64, |x| x + 1);
        assert!(samples.len() >= 3);
        let total: f64 = samples.iter().sum();
        assert!(total >= 0.005 || samples.len() == 1_000_000);
    }

    #[test]
    fn fixed_repeats() {
        let (samples, out) = measure(&TimingPolicy::repeats(4), || 2, |x| x * 2);
        assert_eq!(samples.len(), 4);
        assert_eq!(out, 4);
    }
}
