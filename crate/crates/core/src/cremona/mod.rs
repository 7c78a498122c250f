//! Quadratic Cremona transformations and their action on six-point
//! configurations.

mod form;

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::geom::{collinear, unify_points, GeomError, Map3, Point2};
use crate::phi::{classify, PhiError, PlaneConfig, StratumClass};

pub use form::{std_cremona_form_image, TernaryForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CremonaError {
    #[error("point is a vertex of the coordinate triangle")]
    IndeterminatePoint,
    #[error("base points {0} are collinear")]
    CollinearBase(LabelTriple),
    #[error("no admissible fourth frame point for base {0}")]
    DegenerateFourthPoint(LabelTriple),
    #[error("point m{label} coincides with a base point of {base}")]
    PointAtBase { label: usize, base: LabelTriple },
    #[error("configuration is not generic: {0}")]
    NotGeneric(String),
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("token {index}: {source}")]
    Token { index: usize, source: Box<CremonaError> },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub type Result<T, E = CremonaError> = std::result::Result<T, E>;

/// `[x, y, z] -> [yz, xz, xy]`.
pub fn std_cremona_eval(p: &Point2) -> Result<Point2> {
    let [x, y, z] = p.coords();
    let zeros = p.coords().iter().filter(|c| c.is_zero()).count();
    if zeros >= 2 {
        return Err(CremonaError::IndeterminatePoint);
    }
    Ok(Point2::new([y * z, x * z, x * y])?)
}

/// Three distinct labels from `1..=6`, stored ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelTriple([usize; 3]);

impl LabelTriple {
    pub fn new(labels: [usize; 3]) -> Result<Self> {
        let mut l = labels;
        l.sort_unstable();
        if l[0] < 1 || l[2] > 6 || l[0] == l[1] || l[1] == l[2] {
            return Err(CremonaError::InvalidLabels(format!("{labels:?}")));
        }
        Ok(LabelTriple(l))
    }

    pub fn labels(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, label: usize) -> bool {
        self.0.contains(&label)
    }
}

impl fmt::Display for LabelTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{{{a},{b},{c}}}")
    }
}

/// Based Cremona transformation at the labels of `base`.
///
/// Base points stay in place. The frame sends the base points (ascending
/// label) and the lowest non-base point off every base line to the standard
/// frame; a non-base point on a base line goes to the opposite base point.
pub fn based_cremona(points: &[Point2; 6], base: LabelTriple) -> Result<[Point2; 6]> {
    let pts: [Point2; 6] = unify_points(points)?.try_into().expect("six points");
    let [a, b, c] = base.0.map(|l| l - 1);
    if collinear(&pts[a], &pts[b], &pts[c])? {
        return Err(CremonaError::CollinearBase(base));
    }
    let non_base: Vec<usize> = (0..6).filter(|i| !base.contains(i + 1)).collect();
    let mut fourth = None;
    for &i in &non_base {
        let mut off = true;
        for (u, v) in [a, b, c].into_iter().tuple_combinations() {
            if collinear(&pts[i], &pts[u], &pts[v])? {
                off = false;
                break;
            }
        }
        if off {
            fourth = Some(i);
            break;
        }
    }
    let fourth = fourth.ok_or(CremonaError::DegenerateFourthPoint(base))?;
    let frame = Map3::from_standard_frame(&[pts[a].clone(), pts[b].clone(), pts[c].clone(), pts[fourth].clone()])?;
    let to_std = frame.inverse();
    let mut out = pts.clone();
    for &i in &non_base {
        let q = to_std.apply(&pts[i])?;
        let image = std_cremona_eval(&q).map_err(|_| CremonaError::PointAtBase { label: i + 1, base })?;
        out[i] = frame.apply(&image)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CremonaToken {
    /// `psi(a,b,c)`: the based Cremona at the triple, followed by exchanging
    /// the labels of its two smallest members.
    BasedCremona(LabelTriple),
    Projectivity(Box<Map3>),
}

impl CremonaToken {
    pub fn psi(a: usize, b: usize, c: usize) -> Result<Self> {
        Ok(CremonaToken::BasedCremona(LabelTriple::new([a, b, c])?))
    }

    pub fn apply(&self, points: &[Point2; 6]) -> Result<[Point2; 6]> {
        match self {
            CremonaToken::BasedCremona(t) => {
                let mut out = based_cremona(points, *t)?;
                let [a, b, _] = t.0;
                out.swap(a - 1, b - 1);
                Ok(out)
            }
            CremonaToken::Projectivity(g) => {
                let v: Vec<Point2> = points.iter().map(|p| g.apply(p)).collect::<Result<_, _>>()?;
                Ok(v.try_into().expect("six points"))
            }
        }
    }
}

impl fmt::Display for CremonaToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CremonaToken::BasedCremona(t) => {
                let [a, b, c] = t.0;
                write!(f, "psi({a},{b},{c})")
            }
            CremonaToken::Projectivity(g) => write!(f, "{g:?}"),
        }
    }
}

/// Tokens in written order; the rightmost acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CremonaWord {
    pub tokens: Vec<CremonaToken>,
}

impl CremonaWord {
    pub fn new(tokens: Vec<CremonaToken>) -> Self {
        CremonaWord { tokens }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }
}

impl fmt::Display for CremonaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "id");
        }
        write!(f, "{}", self.tokens.iter().join("*"))
    }
}

/// Parses `psi(3,4,6)*psi(1,2,6)`; `id` or the empty string is the empty word.
impl FromStr for CremonaWord {
    type Err = CremonaError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(CremonaWord::default());
        }
        let bad = || CremonaError::Parse(s.to_string());
        let mut tokens = Vec::new();
        for part in s.split('*').map(str::trim) {
            let inner = part.strip_prefix("psi(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            let labels: Vec<usize> =
                inner.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
            let labels: [usize; 3] = labels.try_into().map_err(|_| bad())?;
            tokens.push(CremonaToken::BasedCremona(LabelTriple::new(labels)?));
        }
        Ok(CremonaWord { tokens })
    }
}

/// Applies the word right to left. Errors carry the token's written index.
pub fn apply_word(points: &[Point2; 6], word: &CremonaWord) -> Result<[Point2; 6]> {
    let mut cur = points.clone();
    for (index, token) in word.tokens.iter().enumerate().rev() {
        cur = token.apply(&cur).map_err(|e| CremonaError::Token { index, source: Box::new(e) })?;
    }
    Ok(cur)
}

/// A subset of `{1..5}` as a bit mask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SwapSet(u8);

impl SwapSet {
    pub const FULL: SwapSet = SwapSet(0b11111);

    pub fn new(labels: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = 0u8;
        for l in labels {
            if !(1..=5).contains(&l) {
                return Err(CremonaError::InvalidLabels(format!("swap label {l} outside 1..5")));
            }
            mask |= 1 << (l - 1);
        }
        Ok(SwapSet(mask))
    }

    pub fn from_mask(mask: u8) -> Self {
        SwapSet(mask & 0b11111)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn contains(self, label: usize) -> bool {
        (1..=5).contains(&label) && self.0 & (1 << (label - 1)) != 0
    }

    pub fn labels(self) -> Vec<usize> {
        (1..=5).filter(|&l| self.contains(l)).collect()
    }

    pub fn complement(self) -> Self {
        SwapSet(!self.0 & 0b11111)
    }

    pub fn symmetric_difference(self, other: SwapSet) -> Self {
        SwapSet(self.0 ^ other.0)
    }

    /// All 32 subsets, by mask.
    pub fn all() -> impl Iterator<Item = SwapSet> {
        (0u8..32).map(SwapSet)
    }
}

impl fmt::Display for SwapSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().iter().join(","))
    }
}

/// Accepts `1,2,3`, `{1,2,3}` and `{}`.
impl FromStr for SwapSet {
    type Err = CremonaError;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if inner.is_empty() {
            return Ok(SwapSet(0));
        }
        let labels: Vec<usize> =
            inner.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| CremonaError::Parse(s.into()))?;
        SwapSet::new(labels)
    }
}

/// Replaces `m_i` for `i` in `s` by the second intersection of the line
/// `m_i m_6` with the conic through `m1..m5`.
pub fn geometric_swap(cfg: &PlaneConfig, s: SwapSet) -> Result<PlaneConfig> {
    match classify(cfg) {
        StratumClass::GenericSmooth => {}
        other => return Err(CremonaError::NotGeneric(format!("{other:?}"))),
    }
    let q = cfg.conic().map_err(phi_err)?;
    let pts = cfg.points();
    let mut out = pts.clone();
    for l in s.labels() {
        out[l - 1] = q.second_intersection(&pts[l - 1], &pts[5])?;
    }
    PlaneConfig::new(out).map_err(phi_err)
}

fn phi_err(e: PhiError) -> CremonaError {
    match e {
        PhiError::Geom(g) => CremonaError::Geom(g),
        other => CremonaError::NotGeneric(other.to_string()),
    }
}

/// Generators `psi(i,j,6)`, `i < j <= 5`, in lexicographic order, with the
/// swap set each one realizes.
fn generators() -> Vec<((usize, usize), SwapSet)> {
    (1..=5)
        .tuple_combinations()
        .map(|(i, j)| ((i, j), SwapSet::new([i, j]).expect("labels in range").complement()))
        .collect()
}

/// A word in the `psi(i,j,6)` realizing `s` up to the diagonal swap.
///
/// Generator subsets are tried by increasing size, lexicographically; the
/// first whose swap sets sum to `s` or its complement wins. Tokens are
/// written in reverse order of application.
pub fn swap_word(s: SwapSet) -> CremonaWord {
    let gens = generators();
    for size in 0..=gens.len() {
        for combo in gens.iter().combinations(size) {
            let sum = combo.iter().fold(SwapSet::default(), |acc, (_, t)| acc.symmetric_difference(*t));
            if sum == s || sum == s.complement() {
                let tokens = combo
                    .iter()
                    .rev()
                    .map(|((i, j), _)| CremonaToken::psi(*i, *j, 6).expect("valid labels"))
                    .collect();
                return CremonaWord::new(tokens);
            }
        }
    }
    unreachable!("generator swap sets span the quotient by the diagonal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use crate::phi::moduli_equal_plane;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn p(c: [i64; 3]) -> Point2 {
        Point2::from_ints(&q(), c).unwrap()
    }

    fn veronese(xs: [i64; 5], m6: [i64; 3]) -> PlaneConfig {
        let mut pts: Vec<Point2> = xs.iter().map(|x| p([1, *x, x * x])).collect();
        pts.push(p(m6));
        PlaneConfig::new(pts.try_into().unwrap()).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(std_cremona_eval(&p([1, 2, 3])).unwrap(), p([6, 3, 2]));
        assert_eq!(std_cremona_eval(&p([1, 1, 0])).unwrap(), p([0, 0, 1]));
        let x = p([2, 3, 5]);
        assert_eq!(std_cremona_eval(&std_cremona_eval(&x).unwrap()).unwrap(), x);
        assert!(matches!(std_cremona_eval(&p([0, 1, 0])), Err(CremonaError::IndeterminatePoint)));
    }

    #[test]
    fn based_at_standard_frame() {
        let pts = [p([1, 0, 0]), p([0, 1, 0]), p([0, 0, 1]), p([1, 1, 1]), p([1, 2, 3]), p([1, 1, 0])];
        let base = LabelTriple::new([1, 2, 3]).unwrap();
        let out = based_cremona(&pts, base).unwrap();
        assert_eq!(out[..4], pts[..4]);
        assert_eq!(out[4], p([6, 3, 2]));
        assert_eq!(out[5], p([0, 0, 1]));
        let flat = [p([1, 0, 0]), p([0, 1, 0]), p([1, 1, 0]), p([1, 1, 1]), p([1, 2, 3]), p([5, 1, 7])];
        assert!(matches!(based_cremona(&flat, base), Err(CremonaError::CollinearBase(_))));
        // every non-base point sits on a base line
        let edges = [p([1, 0, 0]), p([0, 1, 0]), p([0, 0, 1]), p([1, 1, 0]), p([0, 1, 1]), p([1, 0, 1])];
        assert!(matches!(based_cremona(&edges, base), Err(CremonaError::DegenerateFourthPoint(_))));
    }

    #[test]
    fn based_preserves_conic_through_two_base_points() {
        // y^2 = xz through m1, m2 but not m6, with the frame point m3 on it
        let pts = [p([1, 0, 0]), p([0, 0, 1]), p([1, 1, 1]), p([1, 2, 4]), p([1, 3, 9]), p([0, 1, 0])];
        let out = based_cremona(&pts, LabelTriple::new([1, 2, 6]).unwrap()).unwrap();
        let v = crate::geom::Conic::veronese(&q());
        for x in &out[..5] {
            assert!(v.contains(x).unwrap());
        }
        assert_eq!(out[3], Point2::new([q().from_i64(4), q().from_i64(2), q().one()]).unwrap());
    }

    #[test]
    fn word_text() {
        let w: CremonaWord = "psi(3,4,6)*psi(1,2,6)".parse().unwrap();
        assert_eq!(w.to_string(), "psi(3,4,6)*psi(1,2,6)");
        assert!("psi(1,1,6)".parse::<CremonaWord>().is_err());
        assert!("phi(1,2,6)".parse::<CremonaWord>().is_err());
        assert_eq!("id".parse::<CremonaWord>().unwrap(), CremonaWord::default());
    }

    #[test]
    fn swap_word_examples() {
        let s = |l: &[usize]| SwapSet::new(l.iter().copied()).unwrap();
        assert_eq!(swap_word(s(&[3, 4, 5])).to_string(), "psi(1,2,6)");
        assert_eq!(swap_word(s(&[1, 2, 3, 4])).to_string(), "psi(3,4,6)*psi(1,2,6)");
        assert!(swap_word(SwapSet::FULL).is_empty());
        assert!(swap_word(SwapSet::default()).is_empty());
    }

    #[test]
    fn geometric_swap_examples() {
        let cfg = veronese([1, 2, 3, 4, 5], [0, 1, 0]);
        let one = geometric_swap(&cfg, SwapSet::new([1]).unwrap()).unwrap();
        assert_eq!(one.points()[0], p([1, -1, 1]));
        assert_eq!(one.points()[1..], cfg.points()[1..]);
        assert_eq!(geometric_swap(&cfg, SwapSet::default()).unwrap(), cfg);
        let all = geometric_swap(&cfg, SwapSet::FULL).unwrap();
        let flip = Map3::from_ints(&q(), [[1, 0, 0], [0, -1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(cfg.map(&flip).unwrap(), all);
    }

    #[test]
    fn words_match_swaps_on_one_config() {
        let cfg = PlaneConfig::new([p([3, -7, 2]), p([1, 4, -5]), p([-2, 9, 11]), p([6, 1, 8]), p([5, -3, -4]), p([2, 13, -1])])
            .unwrap();
        assert_eq!(classify(&cfg), StratumClass::GenericSmooth);
        for s in SwapSet::all() {
            let lhs = PlaneConfig::new(apply_word(cfg.points(), &swap_word(s)).unwrap()).unwrap();
            let rhs = geometric_swap(&cfg, s).unwrap();
            assert!(moduli_equal_plane(&lhs, &rhs).unwrap(), "S = {s}");
        }
    }

    #[test]
    fn word_errors_carry_index() {
        let pts = [p([1, 0, 0]), p([0, 1, 0]), p([1, 1, 0]), p([1, 1, 1]), p([1, 1, 2]), p([5, 1, 7])];
        let w: CremonaWord = "psi(1,2,6)*psi(3,4,5)".parse().unwrap();
        match apply_word(&pts, &w) {
            Err(CremonaError::Token { index: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
