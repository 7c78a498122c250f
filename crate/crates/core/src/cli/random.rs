//! Seeded sampling of configurations.
//!
//! The generator is SplitMix64, bit for bit:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15            (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB      (wrapping)
//! output z ^ (z >> 31)
//! ```
//!
//! `mix(seed, i)` is output number `i` (from 0) of the generator started at
//! `seed`, computed directly. Each trial of a suite samples from a generator
//! started at `mix(plan_seed, trial)`.
//!
//! Uniform integers below `n` take the next output `x` and accept it when
//! `x < 2^64 - (2^64 mod n)`, returning `x mod n`. Prime field coordinates are
//! uniform residues; rational coordinates are integers in `[-10^4, 10^4]`.

use itertools::Itertools;

use crate::field::{FieldDescriptor, FieldKind, Scalar};
use crate::geom::{Map3, Point1, Point2};
use crate::phi::{classify, PlaneConfig, StratumClass};

use super::CliError;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
pub const MAX_RETRIES: usize = 10_000;
pub const RATIONAL_BOUND: i64 = 10_000;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`, `n > 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        let zone = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % n;
            }
        }
    }

    pub fn scalar(&mut self, field: &FieldDescriptor) -> Scalar {
        match field.base().kind() {
            FieldKind::PrimeField(p) => field.from_bigint(&self.below(p).into()),
            _ => {
                let span = (2 * RATIONAL_BOUND + 1) as u64;
                field.from_i64(self.below(span) as i64 - RATIONAL_BOUND)
            }
        }
    }

    pub fn nonzero_scalar(&mut self, field: &FieldDescriptor) -> Scalar {
        loop {
            let s = self.scalar(field);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn point2(&mut self, field: &FieldDescriptor) -> Point2 {
        loop {
            if let Ok(p) = Point2::new([self.scalar(field), self.scalar(field), self.scalar(field)]) {
                return p;
            }
        }
    }

    pub fn point1(&mut self, field: &FieldDescriptor) -> Point1 {
        loop {
            if let Ok(p) = Point1::new([self.scalar(field), self.scalar(field)]) {
                return p;
            }
        }
    }

    pub fn projectivity(&mut self, field: &FieldDescriptor) -> Map3 {
        loop {
            let m = std::array::from_fn(|_| std::array::from_fn(|_| self.scalar(field)));
            if let Ok(g) = Map3::new(m) {
                return g;
            }
        }
    }

    /// A uniform permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            v.swap(i, j);
        }
        v
    }
}

/// Output `index` of the generator started at `seed`.
pub fn mix(seed: u64, index: u64) -> u64 {
    SplitMix64::new(seed.wrapping_add(index.wrapping_mul(GAMMA))).next_u64()
}

/// Rejection-samples six points until they classify as generic.
pub fn random_generic_config(seed: u64, field: &FieldDescriptor) -> Result<PlaneConfig, CliError> {
    sample_generic(&mut SplitMix64::new(seed), field)
}

pub fn sample_generic(rng: &mut SplitMix64, field: &FieldDescriptor) -> Result<PlaneConfig, CliError> {
    for _ in 0..MAX_RETRIES {
        let pts: [Point2; 6] = std::array::from_fn(|_| rng.point2(field));
        if let Ok(cfg) = PlaneConfig::new(pts) {
            if classify(&cfg) == StratumClass::GenericSmooth {
                return Ok(cfg);
            }
        }
    }
    Err(CliError::ExhaustedRetries(MAX_RETRIES))
}

/// A configuration with `m6` on the line through `m_i, m_j` and otherwise
/// generic; the pair is drawn uniformly.
pub fn sample_collinear(rng: &mut SplitMix64, field: &FieldDescriptor) -> Result<PlaneConfig, CliError> {
    let pairs: Vec<(usize, usize)> = (1..=5).tuple_combinations().collect();
    for _ in 0..MAX_RETRIES {
        let (i, j) = pairs[rng.below(pairs.len() as u64) as usize];
        let mut pts: Vec<Point2> = (0..5).map(|_| rng.point2(field)).collect();
        let t = rng.nonzero_scalar(field);
        let (a, b) = (pts[i - 1].coords().clone(), pts[j - 1].coords().clone());
        let Ok(m6) = Point2::new(std::array::from_fn(|k| &a[k] + &(&t * &b[k]))) else {
            continue;
        };
        pts.push(m6);
        if let Ok(cfg) = PlaneConfig::new(pts.try_into().expect("six points")) {
            if classify(&cfg) == StratumClass::CollinearThrough6([i, j]) {
                return Ok(cfg);
            }
        }
    }
    Err(CliError::ExhaustedRetries(MAX_RETRIES))
}
