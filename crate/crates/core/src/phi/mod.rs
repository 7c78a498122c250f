//! From six points in the plane to seven weighted points on the line.

mod plane;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cremona::{based_cremona, geometric_swap, CremonaError, LabelTriple, SwapSet};
use crate::dm::{collision_stratum, DmError, P1Config, SymmetryGroup, WeightVector};
use crate::field::{FieldDescriptor, FieldError, FieldKind};
use crate::geom::{
    project_from, sorted_pair, unify_points, unify_points1, Conic, GeomError, Map2, Point1, Point2,
};

pub use plane::{
    classify, collinear_triples, moduli_equal_plane, plane_fingerprint, PlaneConfig, StratumClass,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error("configuration is outside the domain: {0}")]
    NotInDomain(String),
    #[error("configuration is not on a smooth conic")]
    NotOnConic,
    #[error("configuration is not generic: {0}")]
    NotGeneric(String),
    #[error("no four points in general position")]
    NoFrame,
    #[error("cannot lift over {field}: {reason}")]
    UnliftableOverField { field: String, reason: String },
    #[error("coincidences outside the stratum: {0}")]
    NotInStratum(String),
    #[error("wrong stratum: {0}")]
    WrongStratum(String),
    #[error("wrong degeneracy: {0}")]
    WrongDegeneracy(String),
    #[error(transparent)]
    Cremona(Box<CremonaError>),
    #[error("{0}")]
    Dm(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl From<FieldError> for PhiError {
    fn from(e: FieldError) -> Self {
        PhiError::Geom(e.into())
    }
}

impl From<CremonaError> for PhiError {
    fn from(e: CremonaError) -> Self {
        PhiError::Cremona(Box::new(e))
    }
}

impl From<DmError> for PhiError {
    fn from(e: DmError) -> Self {
        match e {
            DmError::Geom(g) => PhiError::Geom(g),
            other => PhiError::Dm(other.to_string()),
        }
    }
}

pub type Result<T, E = PhiError> = std::result::Result<T, E>;

/// Five weight-2 points in label order and the unordered weight-1 pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P1Output {
    pub ordered: [Point1; 5],
    /// Sorted by canonical key.
    pub pair: [Point1; 2],
    pub field: FieldDescriptor,
}

impl P1Output {
    pub fn new(ordered: [Point1; 5], pair: [Point1; 2]) -> Result<Self> {
        let all = unify_points1(&[ordered.to_vec(), pair.to_vec()].concat())?;
        let field = all[0].field().clone();
        let [a, b] = pair;
        let pair = sorted_pair(a.embed(&field)?, b.embed(&field)?, Point1::canonical_key);
        Ok(P1Output { ordered, pair, field })
    }

    pub fn weights() -> WeightVector {
        WeightVector::new(vec![2, 2, 2, 2, 2, 1, 1]).expect("valid weights")
    }

    /// Ordered points then the pair, weights `2^5,1^2`.
    pub fn to_p1_config(&self) -> Result<P1Config> {
        let pts = [self.ordered.to_vec(), self.pair.to_vec()].concat();
        Ok(P1Config::new(pts, Self::weights())?)
    }

    /// The two pair slots may be exchanged.
    pub fn pair_symmetry() -> SymmetryGroup {
        SymmetryGroup::new(vec![vec![0], vec![1], vec![2], vec![3], vec![4], vec![5, 6]], &Self::weights())
            .expect("pair block has equal weights")
    }
}

/// Projections from `m6` of `m1..m5` and of the two tangency points.
pub fn phi67(cfg: &PlaneConfig) -> Result<P1Output> {
    match classify(cfg) {
        StratumClass::GenericSmooth | StratumClass::CollinearThrough6(_) => {}
        other => return Err(PhiError::NotInDomain(format!("{other:?}"))),
    }
    let q = cfg.conic()?;
    let pts = cfg.points();
    let m6 = &pts[5];
    let [t1, t2] = q.tangent_points(m6)?;
    let ordered: Vec<Point1> = pts[..5].iter().map(|p| project_from(m6, p)).collect::<Result<_, _>>()?;
    P1Output::new(ordered.try_into().expect("five points"), [project_from(m6, &t1)?, project_from(m6, &t2)?])
}

/// The irreducible conic through the distinct members of `points`, if all
/// lie on one.
fn conic_through_all(points: &[Point2; 6]) -> Result<Conic> {
    let mut distinct: Vec<Point2> = Vec::new();
    for p in points {
        if !distinct.contains(p) {
            distinct.push(p.clone());
        }
    }
    if distinct.len() < 5 {
        return Err(PhiError::NotOnConic);
    }
    let five: [Point2; 5] = distinct[..5].to_vec().try_into().expect("five points");
    let q = match Conic::through_five(&five) {
        Ok(q) => q,
        Err(GeomError::NotIrreducible(_) | GeomError::NotUnique) => return Err(PhiError::NotOnConic),
        Err(e) => return Err(e.into()),
    };
    for p in &distinct[5..] {
        if !q.contains(p)? {
            return Err(PhiError::NotOnConic);
        }
    }
    Ok(q)
}

/// Projection from `m6` along the conic through all six points; points equal
/// to `m6` go to the tangent direction. Coincident inputs are allowed.
pub fn phi67_on_conic_points(points: &[Point2; 6]) -> Result<P1Config> {
    let pts: [Point2; 6] = unify_points(points)?.try_into().expect("six points");
    let q = conic_through_all(&pts)?;
    let m6 = &pts[5];
    let tangent = q.tangent_line_at(m6)?;
    let other = tangent.spanning_points().into_iter().find(|p| p != m6).expect("a line has two points");
    let direction = project_from(m6, &other)?;
    let mut out = Vec::with_capacity(6);
    for p in &pts {
        out.push(if p == m6 { direction.clone() } else { project_from(m6, p)? });
    }
    Ok(P1Config::new(out, WeightVector::new(vec![2; 6]).expect("valid weights"))?)
}

pub fn phi67_on_conic(cfg: &PlaneConfig) -> Result<P1Config> {
    if classify(cfg) != StratumClass::OnConic {
        return Err(PhiError::NotOnConic);
    }
    phi67_on_conic_points(cfg.points())
}

/// Swap images of `cfg`, one representative per projective class, each with
/// the first swap set (by mask) producing it.
pub fn fiber_orbit(cfg: &PlaneConfig) -> Result<Vec<(SwapSet, PlaneConfig)>> {
    if classify(cfg) != StratumClass::GenericSmooth {
        return Err(PhiError::NotGeneric(format!("{:?}", classify(cfg))));
    }
    let mut seen: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut reps: Vec<(SwapSet, PlaneConfig)> = Vec::new();
    for s in SwapSet::all() {
        let image = geometric_swap(cfg, s)?;
        let key = plane_fingerprint(&image)?;
        match seen.get(&key) {
            Some(&k) => debug_assert!(moduli_equal_plane(&reps[k].1, &image)?),
            None => {
                seen.insert(key, reps.len());
                reps.push((s, image));
            }
        }
    }
    Ok(reps)
}

/// A configuration `m_i = [1, s_i, s_i^2]`, `m6 = [0,1,0]` whose image is
/// projectively equal to `out`.
///
/// The Möbius normalization sends the pair to `0, ∞` and the first ordered
/// point outside the pair to 1; `s_i` is a square root of the normalized
/// value. Over the rationals every value must be a square; over a prime
/// field the canonical quadratic extension may be used.
pub fn lift(out: &P1Output) -> Result<PlaneConfig> {
    let all = unify_points1(&[out.ordered.to_vec(), out.pair.to_vec()].concat())?;
    let (ordered, pair) = all.split_at(5);
    if pair[0] == pair[1] {
        return Err(PhiError::NotInStratum("pair points coincide".into()));
    }
    for i in 0..5 {
        for j in 0..i {
            if ordered[i] == ordered[j] {
                return Err(PhiError::NotInStratum(format!("ordered points {} and {} coincide", j + 1, i + 1)));
            }
        }
    }
    let unit = ordered.iter().find(|p| !pair.contains(p)).expect("at most two ordered points meet the pair");
    let field = all[0].field().clone();
    let std = [Point1::finite(&field.zero()), Point1::infinity(&field), Point1::finite(&field.one())];
    let g = Map2::from_triples(&[pair[0].clone(), pair[1].clone(), unit.clone()], &std)?;
    let unliftable = |reason: String| PhiError::UnliftableOverField { field: field.to_string(), reason };
    let mut points = Vec::with_capacity(6);
    for (i, p) in ordered.iter().enumerate() {
        let image = g.apply(p)?;
        let Some(lambda) = image.affine() else {
            points.push(Point2::new([field.zero(), field.zero(), field.one()])?);
            continue;
        };
        let root = if matches!(field.kind(), FieldKind::Rationals) && !lambda.is_square() {
            return Err(unliftable(format!("{lambda} (point {}) is not a square", i + 1)));
        } else {
            lambda.sqrt().map_err(|e| unliftable(format!("point {}: {e}", i + 1)))?
        };
        let lambda = lambda.embed(root.field())?;
        points.push(Point2::new([root.field().one(), root, lambda])?);
    }
    points.push(Point2::new([field.zero(), field.one(), field.zero()])?);
    PlaneConfig::new(points.try_into().expect("six points"))
}

/// Based Cremona at the three labels off the collinear triple.
pub fn collinear_to_conic(cfg: &PlaneConfig) -> Result<PlaneConfig> {
    let [i, j] = match classify(cfg) {
        StratumClass::CollinearThrough6(pair) => pair,
        other => return Err(PhiError::WrongStratum(format!("{other:?}"))),
    };
    let base = complement_triple(i, j);
    PlaneConfig::new(based_cremona(cfg.points(), base)?)
}

fn complement_triple(i: usize, j: usize) -> LabelTriple {
    let rest: Vec<usize> = (1..=5).filter(|&l| l != i && l != j).collect();
    LabelTriple::new(rest.try_into().expect("three labels")).expect("distinct labels")
}

/// Outcome of the weight-4 limit check for a configuration with `m_i, m_j,
/// m6` collinear and `m_k` (one of `i, j`) on a line through two base points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitReport {
    pub pair: [usize; 2],
    pub moved: usize,
    pub opposite_vertex: usize,
    /// Coincidence classes of the transformed points, by label.
    pub classes: Vec<Vec<usize>>,
    pub doubled_contains_opposite: bool,
    pub all_on_conic: bool,
    pub merged: Vec<u32>,
}

impl LimitReport {
    pub fn ok(&self) -> bool {
        self.classes.len() == 5 && self.doubled_contains_opposite && self.all_on_conic && self.merged == [4, 2, 2, 2, 2]
    }
}

#[allow(non_snake_case)]
pub fn degenerate_limit_check_I(points: &[Point2; 6]) -> Result<LimitReport> {
    let pts: [Point2; 6] = unify_points(points)?.try_into().expect("six points");
    let cfg = PlaneConfig::new(pts.clone())?;
    let triples = collinear_triples(cfg.points())?;
    let wrong = |m: &str| PhiError::WrongDegeneracy(format!("{m}; collinear triples {triples:?}"));
    let through6: Vec<&[usize; 3]> = triples.iter().filter(|t| t[2] == 6).collect();
    let [&[i, j, _]] = through6.as_slice() else {
        return Err(wrong("need exactly one collinear triple through m6"));
    };
    let base = complement_triple(i, j);
    let others: Vec<&[usize; 3]> = triples.iter().filter(|t| t[2] != 6).collect();
    let [other] = others.as_slice() else {
        return Err(wrong("need exactly one further collinear triple"));
    };
    let moved = match (other.contains(&i), other.contains(&j)) {
        (true, false) => i,
        (false, true) => j,
        _ => return Err(wrong("further triple must contain exactly one of the pair")),
    };
    let on_base: Vec<usize> = other.iter().copied().filter(|l| base.contains(*l)).collect();
    if on_base.len() != 2 {
        return Err(wrong("further triple must contain two base points"));
    }
    let opposite_vertex =
        base.labels().into_iter().find(|l| !on_base.contains(l)).expect("base has a third label");

    let image = based_cremona(&pts, base)?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, p) in image.iter().enumerate() {
        match classes.iter_mut().find(|c| image[c[0] - 1] == *p) {
            Some(c) => c.push(k + 1),
            None => classes.push(vec![k + 1]),
        }
    }
    let doubled_contains_opposite =
        classes.iter().any(|c| c.len() == 2 && c.contains(&opposite_vertex) && c.contains(&moved));
    let (all_on_conic, merged) = match phi67_on_conic_points(&image) {
        Ok(line_cfg) => (true, collision_stratum(&line_cfg).merged),
        Err(PhiError::NotOnConic) => (false, Vec::new()),
        Err(e) => return Err(e),
    };
    Ok(LimitReport { pair: [i, j], moved, opposite_vertex, classes, doubled_contains_opposite, all_on_conic, merged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dm::{moduli_equal, stability, Stability};

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn p(c: [i64; 3]) -> Point2 {
        Point2::from_ints(&q(), c).unwrap()
    }

    fn z(v: i64) -> Point1 {
        Point1::finite(&q().from_i64(v))
    }

    fn veronese(xs: [i64; 5], m6: [i64; 3]) -> PlaneConfig {
        let mut pts: Vec<Point2> = xs.iter().map(|x| p([1, *x, x * x])).collect();
        pts.push(p(m6));
        PlaneConfig::new(pts.try_into().unwrap()).unwrap()
    }

    #[test]
    fn phi_of_veronese() {
        let out = phi67(&veronese([1, 2, 3, 4, 5], [0, 1, 0])).unwrap();
        assert_eq!(out.ordered, [1, 4, 9, 16, 25].map(z));
        assert_eq!(out.pair, [z(0), Point1::infinity(&q())]);
    }

    #[test]
    fn phi_constant_on_swaps_and_equivariant() {
        let cfg = veronese([1, 2, 3, 4, 5], [2, 1, 7]);
        let out = phi67(&cfg).unwrap();
        for s in SwapSet::all() {
            assert_eq!(phi67(&geometric_swap(&cfg, s).unwrap()).unwrap(), out);
        }
        let sigma = [2, 0, 1, 4, 3, 5];
        let moved = phi67(&cfg.permute(&sigma)).unwrap();
        for i in 0..5 {
            assert_eq!(moved.ordered[sigma[i]], out.ordered[i]);
        }
        assert_eq!(moved.pair, out.pair);
    }

    #[test]
    fn phi_domain() {
        assert!(matches!(phi67(&veronese([1, 2, 3, 4, 5], [1, 6, 36])), Err(PhiError::NotInDomain(_))));
        let collinear = veronese([1, 2, 5, -3, 7], [1, 3, 7]);
        let out = phi67(&collinear).unwrap();
        assert_eq!(out.ordered[0], out.ordered[1]);
        assert_eq!(collision_stratum(&out.to_p1_config().unwrap()).merged, vec![4, 2, 2, 2, 1, 1]);
    }

    #[test]
    fn on_conic_projection() {
        let cfg = veronese([1, 2, 3, 4, 5], [1, 0, 0]);
        let line = phi67_on_conic(&cfg).unwrap();
        let want: Vec<Point1> = [1, 2, 3, 4, 5, 0].into_iter().map(z).collect();
        assert_eq!(line.points(), want.as_slice());
        assert_eq!(stability(&line), Stability::Stable);
        assert!(matches!(phi67_on_conic(&veronese([1, 2, 3, 4, 5], [0, 1, 0])), Err(PhiError::NotOnConic)));
    }

    #[test]
    fn fiber_sizes() {
        assert_eq!(fiber_orbit(&veronese([1, 2, 3, 4, 5], [0, 1, 0])).unwrap().len(), 16);
        // m6 = [0,1,0] touches y^2 = xz at [1,0,0], so m1 = [1,0,0] is a tangency point
        assert_eq!(fiber_orbit(&veronese([0, 2, 3, 4, 5], [0, 1, 0])).unwrap().len(), 8);
    }

    #[test]
    fn lift_examples() {
        let out = P1Output::new([1, 4, 9, 16, 25].map(z), [z(0), Point1::infinity(&q())]).unwrap();
        assert_eq!(lift(&out).unwrap(), veronese([1, 2, 3, 4, 5], [0, 1, 0]));
        let other = P1Output::new([3, 7, -2, 11, 5].map(z), [z(1), z(-4)]).unwrap();
        match lift(&other) {
            Err(PhiError::UnliftableOverField { .. }) => {}
            Ok(cfg) => {
                let back = phi67(&cfg).unwrap().to_p1_config().unwrap();
                assert!(moduli_equal(&back, &other.to_p1_config().unwrap(), &P1Output::pair_symmetry()).unwrap());
            }
            Err(e) => panic!("{e}"),
        }
        let bad = P1Output::new([1, 2, 9, 16, 25].map(z), [z(0), Point1::infinity(&q())]).unwrap();
        assert!(matches!(lift(&bad), Err(PhiError::UnliftableOverField { .. })));
    }

    #[test]
    fn lift_round_trip_over_prime_field() {
        let f = FieldDescriptor::prime(101).unwrap();
        let zf = |v: i64| Point1::finite(&f.from_i64(v));
        let out = P1Output::new([3, 7, 12, 50, 77].map(zf), [zf(5), zf(9)]).unwrap();
        let cfg = lift(&out).unwrap();
        let back = phi67(&cfg).unwrap().to_p1_config().unwrap();
        assert!(moduli_equal(&back, &out.to_p1_config().unwrap(), &P1Output::pair_symmetry()).unwrap());
    }

    #[test]
    fn collinear_stratum_goes_to_conic() {
        let cfg = veronese([1, 2, 5, -3, 7], [1, 3, 7]);
        let out = collinear_to_conic(&cfg).unwrap();
        assert_eq!(classify(&out), StratumClass::OnConic);
        assert_eq!(out.points()[2..5], cfg.points()[2..5]);
    }

    #[test]
    fn weight_four_limit() {
        let pts = [p([1, 1, 0]), p([1, 2, 3]), p([1, 0, 0]), p([0, 1, 0]), p([0, 0, 1]), p([2, 3, 3])];
        let r = degenerate_limit_check_I(&pts).unwrap();
        assert_eq!((r.pair, r.moved, r.opposite_vertex), ([1, 2], 1, 5));
        assert!(r.ok(), "{r:?}");
        let generic = veronese([1, 2, 5, -3, 7], [1, 3, 7]);
        assert!(matches!(degenerate_limit_check_I(generic.points()), Err(PhiError::WrongDegeneracy(_))));
    }
}
