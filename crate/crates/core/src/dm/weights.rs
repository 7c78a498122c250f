use std::fmt;
use std::str::FromStr;

use super::DmError;

/// Positive integer weights on `n >= 3` points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Result<Self, DmError> {
        if weights.len() < 3 {
            return Err(DmError::InvalidWeights(format!("need at least 3 weights, got {}", weights.len())));
        }
        if weights.contains(&0) {
            return Err(DmError::InvalidWeights("weights must be positive".into()));
        }
        Ok(WeightVector(weights))
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Descending order.
    pub fn sorted(&self) -> WeightVector {
        let mut w = self.0.clone();
        w.sort_unstable_by(|a, b| b.cmp(a));
        WeightVector(w)
    }

    /// Dimension `n - 3` of the moduli space of `n` weighted points.
    pub fn ball_dimension(&self) -> usize {
        self.0.len() - 3
    }
}

/// Formats runs as `w^k`, e.g. `3,2^3,1^3`.
pub fn format_weights(weights: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < weights.len() {
        let w = weights[i];
        let run = weights[i..].iter().take_while(|&&x| x == w).count();
        parts.push(if run == 1 { w.to_string() } else { format!("{w}^{run}") });
        i += run;
    }
    parts.join(",")
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_weights(&self.0))
    }
}

/// Accepts `2^5,1^2` as well as `2,2,2,2,2,1,1`.
impl FromStr for WeightVector {
    type Err = DmError;

    fn from_str(s: &str) -> Result<Self, DmError> {
        let bad = |m: &str| DmError::InvalidWeights(format!("{s:?}: {m}"));
        let mut weights = Vec::new();
        for part in s.split(',').map(str::trim) {
            if part.is_empty() {
                return Err(bad("empty entry"));
            }
            let (w, k) = match part.split_once('^') {
                Some((w, k)) => (w.trim(), k.trim().parse::<usize>().map_err(|_| bad("bad exponent"))?),
                None => (part, 1),
            };
            let w: u32 = w.parse().map_err(|_| bad("bad weight"))?;
            weights.extend(std::iter::repeat_n(w, k));
        }
        WeightVector::new(weights)
    }
}
