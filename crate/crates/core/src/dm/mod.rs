//! Weighted points on the projective line.

mod weights;

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::field::FieldError;
use crate::geom::{unify_points1, GeomError, Map2, Point1};

pub use weights::{format_weights, WeightVector};

#[derive(Debug, Error)]
pub enum DmError {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("{points} points but {weights} weights")]
    LengthMismatch { points: usize, weights: usize },
    #[error("invalid symmetry blocks: {0}")]
    InvalidBlocks(String),
    #[error("configuration has fewer than 3 distinct points")]
    TooFewDistinctPoints,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl From<FieldError> for DmError {
    fn from(e: FieldError) -> Self {
        DmError::Geom(e.into())
    }
}

pub type Result<T, E = DmError> = std::result::Result<T, E>;

/// Weighted points on the line; coincidences allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P1Config {
    points: Vec<Point1>,
    weights: WeightVector,
}

impl P1Config {
    pub fn new(points: Vec<Point1>, weights: WeightVector) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(DmError::LengthMismatch { points: points.len(), weights: weights.len() });
        }
        let points = unify_points1(&points)?;
        Ok(P1Config { points, weights })
    }

    pub fn points(&self) -> &[Point1] {
        &self.points
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Applies `g` to every point.
    pub fn map(&self, g: &Map2) -> Result<P1Config> {
        let points = self.points.iter().map(|p| g.apply(p)).collect::<Result<Vec<_>, _>>()?;
        P1Config::new(points, self.weights.clone())
    }

    /// The configuration with `a_i` moved to slot `sigma[i]`.
    pub fn permute(&self, sigma: &[usize]) -> P1Config {
        let mut points = self.points.clone();
        let mut weights = self.weights.weights().to_vec();
        for (i, &s) in sigma.iter().enumerate() {
            points[s] = self.points[i].clone();
            weights[s] = self.weights.weights()[i];
        }
        P1Config { points, weights: WeightVector::new(weights).expect("permuted weights stay valid") }
    }

    fn frame_indices(&self) -> Result<[usize; 3]> {
        frame_indices(&self.points)
    }
}

/// Indices of the first three pairwise distinct points.
fn frame_indices(points: &[Point1]) -> Result<[usize; 3]> {
    let mut found: Vec<usize> = Vec::with_capacity(3);
    for (i, p) in points.iter().enumerate() {
        if found.iter().all(|&j| points[j] != *p) {
            found.push(i);
            if found.len() == 3 {
                return Ok([found[0], found[1], found[2]]);
            }
        }
    }
    Err(DmError::TooFewDistinctPoints)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::StrictlySemistable => "strictly-semistable",
            Stability::Unstable => "unstable",
        }
    }
}

/// Coincidence partition and merged weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub partition: Vec<Vec<usize>>,
    /// One weight per class, descending. May have fewer than 3 entries.
    pub merged: Vec<u32>,
}

fn coincidence_classes(points: &[Point1]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        match classes.iter_mut().find(|c| points[c[0]] == *p) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

pub fn collision_stratum(cfg: &P1Config) -> Stratum {
    let partition = coincidence_classes(&cfg.points);
    let w = cfg.weights.weights();
    let mut merged: Vec<u32> = partition.iter().map(|c| c.iter().map(|&i| w[i]).sum()).collect();
    merged.sort_unstable_by(|a, b| b.cmp(a));
    Stratum { partition, merged }
}

pub fn stability(cfg: &P1Config) -> Stability {
    let total = cfg.weights.total();
    let heaviest = collision_stratum(cfg).merged[0];
    match (2 * heaviest).cmp(&total) {
        std::cmp::Ordering::Less => Stability::Stable,
        std::cmp::Ordering::Equal => Stability::StrictlySemistable,
        std::cmp::Ordering::Greater => Stability::Unstable,
    }
}

pub fn ball_dimension(mu: &WeightVector) -> usize {
    mu.ball_dimension()
}

/// Merged weight vectors of length `m` reachable by stable collisions.
///
/// A state is the sorted multiset of class weights built so far; each
/// weight either joins an existing class or opens a new one.
pub fn descendants(mu: &WeightVector, m: usize) -> BTreeSet<WeightVector> {
    let total = mu.total();
    let n = mu.len();
    let mut out = BTreeSet::new();
    if m < 3 || m > n {
        return out;
    }
    let mut states: BTreeSet<Vec<u32>> = BTreeSet::from([Vec::new()]);
    for &w in mu.sorted().weights() {
        let mut next = BTreeSet::new();
        for s in &states {
            if s.len() < m {
                let mut t = s.clone();
                t.push(w);
                t.sort_unstable_by(|a, b| b.cmp(a));
                next.insert(t);
            }
            for k in 0..s.len() {
                if k > 0 && s[k] == s[k - 1] {
                    continue;
                }
                if 2 * (s[k] + w) < total {
                    let mut t = s.clone();
                    t[k] += w;
                    t.sort_unstable_by(|a, b| b.cmp(a));
                    next.insert(t);
                }
            }
        }
        states = next;
    }
    for s in states {
        if s.len() == m && s.iter().all(|&c| 2 * c < total) {
            out.insert(WeightVector::new(s).expect("m >= 3 positive weights"));
        }
    }
    out
}

/// Permutations within blocks of equal weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    pub fn new(blocks: Vec<Vec<usize>>, mu: &WeightVector) -> Result<Self> {
        let n = mu.len();
        let mut seen = vec![false; n];
        for b in &blocks {
            for &i in b {
                if i >= n || seen[i] {
                    return Err(DmError::InvalidBlocks(format!("index {i} out of range or repeated")));
                }
                seen[i] = true;
                if mu.weights()[i] != mu.weights()[b[0]] {
                    return Err(DmError::InvalidBlocks(format!("block {b:?} mixes weights")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(DmError::InvalidBlocks("blocks do not cover every index".into()));
        }
        Ok(SymmetryGroup { n, blocks })
    }

    pub fn trivial(n: usize) -> Self {
        SymmetryGroup { n, blocks: (0..n).map(|i| vec![i]).collect() }
    }

    /// All permutations of equal-weight indices.
    pub fn full(mu: &WeightVector) -> Self {
        let w = mu.weights();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..w.len() {
            match blocks.iter_mut().find(|b| w[b[0]] == w[i]) {
                Some(b) => b.push(i),
                None => blocks.push(vec![i]),
            }
        }
        SymmetryGroup { n: w.len(), blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn order(&self) -> usize {
        self.blocks.iter().map(|b| (1..=b.len()).product::<usize>()).product()
    }

    /// Every element as an index map `i -> sigma[i]`, identity first.
    pub fn elements(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>())
            .multi_cartesian_product()
            .map(|images| {
                let mut sigma = vec![0; self.n];
                for (b, img) in self.blocks.iter().zip(&images) {
                    for (&i, &j) in b.iter().zip(img) {
                        sigma[i] = j;
                    }
                }
                sigma
            })
            .collect()
    }
}

/// Whether some `sigma` in the group and Möbius `g` give `g(a_i) = b_sigma(i)`.
pub fn moduli_equal(a: &P1Config, b: &P1Config, group: &SymmetryGroup) -> Result<bool> {
    let frame = a.frame_indices()?;
    b.frame_indices()?;
    if a.len() != b.len() {
        return Ok(false);
    }
    let all = unify_points1(&[a.points.clone(), b.points.clone()].concat())?;
    let (pa, pb) = all.split_at(a.len());
    let src = frame.map(|i| pa[i].clone());
    for sigma in group.elements() {
        if (0..a.len()).any(|i| a.weights.weights()[i] != b.weights.weights()[sigma[i]]) {
            continue;
        }
        let dst = frame.map(|i| pb[sigma[i]].clone());
        if dst[0] == dst[1] || dst[0] == dst[2] || dst[1] == dst[2] {
            continue;
        }
        let g = Map2::from_triples(&src, &dst)?;
        let mut ok = true;
        for i in 0..a.len() {
            if g.apply(&pa[i])? != pb[sigma[i]] {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Canonical coordinates with the first three distinct points at 0, 1, ∞.
fn normal_key(points: &[Point1]) -> Result<Vec<u8>> {
    let frame = frame_indices(points)?;
    let field = points[0].field().clone();
    let std = [
        Point1::finite(&field.zero()),
        Point1::finite(&field.one()),
        Point1::infinity(&field),
    ];
    let g = Map2::from_triples(&frame.map(|i| points[i].clone()), &std)?;
    let mut key = Vec::new();
    for p in points {
        let q = g.apply(p)?;
        let q = q.to_base().unwrap_or(q);
        key.extend(q.canonical_key());
        key.push(0xff);
    }
    Ok(key)
}

/// Orbit-minimal canonical key; equal moduli points give equal bytes.
pub fn fingerprint(cfg: &P1Config, group: &SymmetryGroup) -> Result<Vec<u8>> {
    cfg.frame_indices()?;
    let mut best: Option<Vec<u8>> = None;
    for sigma in group.elements() {
        let moved = cfg.permute(&sigma);
        let mut key: Vec<u8> = moved.weights.weights().iter().flat_map(|w| w.to_be_bytes()).collect();
        key.extend(normal_key(&moved.points)?);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    Ok(best.expect("group has the identity"))
}
