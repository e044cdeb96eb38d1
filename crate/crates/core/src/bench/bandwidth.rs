//! Memory-copy bandwidth.
//!
//! A single address space has no host/device split, so two tiers stand in
//! for the classic transfer directions: `fresh` allocates the destination on
//! every repeat (first-touch page faults play the role of paged transfers)
//! and `warm` copies between buffers that were already touched.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::bench::timing::median;
use crate::error::{Error, Result};

/// Bytes per MB in reported figures.
pub const MIB: f64 = 1_048_576.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CopyTier {
    Fresh,
    Warm,
}

impl CopyTier {
    pub fn as_str(self) -> &'static str {
        match self {
            CopyTier::Fresh => "fresh",
            CopyTier::Warm => "warm",
        }
    }
}

impl fmt::Display for CopyTier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CopyTier {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fresh" | "fresh-allocation" => Ok(CopyTier::Fresh),
            "warm" | "warm-buffer" => Ok(CopyTier::Warm),
            other => Err(format!("unknown tier '{other}' (expected fresh or warm)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandwidthRecord {
    pub tier: CopyTier,
    pub bytes: u64,
    pub repeats: u64,
    /// Median per-copy time times `repeats`.
    pub elapsed_s: f64,
    pub mb_per_s: f64,
    pub min_copy_s: f64,
    pub max_copy_s: f64,
}

/// `(bytes * repeats / 2^20) / elapsed_s`.
pub fn compute_bandwidth(bytes: u64, elapsed_s: f64, repeats: u64) -> Result<f64> {
    if bytes == 0 {
        return Err(Error::NonPositiveInput("bytes"));
    }
    if repeats == 0 {
        return Err(Error::NonPositiveInput("repeats"));
    }
    if !(elapsed_s > 0.0) || !elapsed_s.is_finite() {
        return Err(Error::NonPositiveInput("elapsed_s"));
    }
    Ok((bytes as f64 * repeats as f64 / MIB) / elapsed_s)
}

fn alloc_filled(bytes: usize, fill: u8) -> Result<Vec<u8>> {
    let mut v = Vec::new();
    v.try_reserve_exact(bytes)
        .map_err(|_| Error::AllocationFailure { bytes })?;
    v.resize(bytes, fill);
    Ok(v)
}

pub fn measure_copy_bandwidth(bytes: usize, repeats: usize, tier: CopyTier) -> Result<BandwidthRecord> {
    if bytes < 4096 {
        return Err(Error::InvalidConfig(format!("transfer size {bytes} is below 4096 bytes")));
    }
    if repeats < 3 {
        return Err(Error::InsufficientSamples { got: repeats, need: 3 });
    }
    let src: Vec<u8> = (0..bytes).map(|i| (i % 251) as u8).collect();
    let mut samples = Vec::with_capacity(repeats);
    match tier {
        CopyTier::Warm => {
            let mut dst = alloc_filled(bytes, 0)?;
            // One untimed pass so both buffers are resident.
            dst.copy_from_slice(&src);
            for _ in 0..repeats {
                let start = Instant::now();
                dst.copy_from_slice(black_box(&src));
                black_box(&mut dst);
                samples.push(start.elapsed().as_secs_f64());
            }
        }
        CopyTier::Fresh => {
            for _ in 0..repeats {
                let start = Instant::now();
                let mut dst = Vec::new();
                dst.try_reserve_exact(bytes)
                    .map_err(|_| Error::AllocationFailure { bytes })?;
                dst.extend_from_slice(black_box(&src));
                black_box(&dst);
                samples.push(start.elapsed().as_secs_f64());
                drop(dst);
            }
        }
    }
    let per_copy = median(&samples).max(f64::MIN_POSITIVE);
    let elapsed_s = per_copy * repeats as f64;
    let (bytes, repeats) = (bytes as u64, repeats as u64);
    Ok(BandwidthRecord {
        tier,
        bytes,
        repeats,
        elapsed_s,
        mb_per_s: compute_bandwidth(bytes, elapsed_s, repeats)?,
        min_copy_s: samples.iter().copied().fold(f64::INFINITY, f64::min),
        max_copy_s: samples.iter().copied().fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_mib_per_second() {
        assert_eq!(compute_bandwidth(1 << 20, 1.0, 1).unwrap(), 1.0);
    }

    #[test]
    fn inverted_reference_transfer() {
        let mbs = compute_bandwidth(33_554_432, 0.021432, 1).unwrap();
        assert!((mbs - 1493.1).abs() < 0.1, "{mbs}");
    }

    #[test]
    fn scale_cancels() {
        let a = compute_bandwidth(12_345, 0.75, 7).unwrap();
        let b = compute_bandwidth(24_690, 1.5, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(compute_bandwidth(0, 1.0, 1).is_err());
        assert!(compute_bandwidth(1, 0.0, 1).is_err());
        assert!(compute_bandwidth(1, 1.0, 0).is_err());
        assert!(compute_bandwidth(1, f64::NAN, 1).is_err());
    }

    #[test]
    fn measured_record_is_self_consistent() {
        for tier in [CopyTier::Fresh, CopyTier::Warm] {
            let r = measure_copy_bandwidth(1 << 20, 5, tier).unwrap();
            assert!(r.mb_per_s > 0.0 && r.mb_per_s.is_finite());
            let again = compute_bandwidth(r.bytes, r.elapsed_s, r.repeats).unwrap();
            assert_eq!(again.to_bits(), r.mb_per_s.to_bits());
            assert!(r.min_copy_s <= r.max_copy_s);
        }
    }

    #[test]
    fn rejects_tiny_or_few() {
        assert!(measure_copy_bandwidth(1024, 5, CopyTier::Warm).is_err());
        assert!(matches!(
            measure_copy_bandwidth(1 << 16, 2, CopyTier::Warm),
            Err(Error::InsufficientSamples { .. })
        ));
    }
}
