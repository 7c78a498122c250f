use std::fmt;

use itertools::Itertools;

use crate::geom::{collinear, unify_points, Conic, GeomError, Map3, Point2};

use super::{PhiError, Result};

/// Six labeled, pairwise distinct points of the plane in one field.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneConfig {
    points: [Point2; 6],
}

impl PlaneConfig {
    pub fn new(points: [Point2; 6]) -> Result<Self> {
        let pts = unify_points(&points)?;
        for (i, j) in (0..6).tuple_combinations() {
            if pts[i] == pts[j] {
                return Err(PhiError::Geom(GeomError::CoincidentPoints));
            }
        }
        Ok(PlaneConfig { points: pts.try_into().expect("six points") })
    }

    pub fn points(&self) -> &[Point2; 6] {
        &self.points
    }

    /// Point with label `1..=6`.
    pub fn label(&self, l: usize) -> &Point2 {
        &self.points[l - 1]
    }

    pub fn field(&self) -> &crate::field::FieldDescriptor {
        self.points[0].field()
    }

    pub fn map(&self, g: &Map3) -> Result<PlaneConfig> {
        let pts: Vec<Point2> = self.points.iter().map(|p| g.apply(p)).collect::<Result<_, _>>()?;
        PlaneConfig::new(pts.try_into().expect("six points"))
    }

    /// `m_i` moved to slot `sigma[i]`; `sigma` permutes `0..6`.
    pub fn permute(&self, sigma: &[usize; 6]) -> PlaneConfig {
        let mut pts = self.points.clone();
        for (i, &s) in sigma.iter().enumerate() {
            pts[s] = self.points[i].clone();
        }
        PlaneConfig { points: pts }
    }

    /// The conic through `m1..m5`, if unique.
    pub fn conic(&self) -> Result<Conic> {
        Ok(Conic::through_five_any(self.points[..5].try_into().expect("five points"))?)
    }
}

impl fmt::Debug for PlaneConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.points.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StratumClass {
    GenericSmooth,
    OnConic,
    /// Labels `i < j <= 5` with `m_i, m_j, m_6` collinear.
    CollinearThrough6([usize; 2]),
    Excluded(String),
}

impl StratumClass {
    pub fn name(&self) -> &'static str {
        match self {
            StratumClass::GenericSmooth => "GenericSmooth",
            StratumClass::OnConic => "OnConic",
            StratumClass::CollinearThrough6(_) => "CollinearThrough6",
            StratumClass::Excluded(_) => "Excluded",
        }
    }
}

/// Label triples (1-based) of collinear points.
pub fn collinear_triples(points: &[Point2; 6]) -> Result<Vec<[usize; 3]>> {
    let mut out = Vec::new();
    for (i, j, k) in (0..6).tuple_combinations() {
        if collinear(&points[i], &points[j], &points[k])? {
            out.push([i + 1, j + 1, k + 1]);
        }
    }
    Ok(out)
}

pub fn classify(cfg: &PlaneConfig) -> StratumClass {
    classify_inner(cfg).unwrap_or_else(|e| StratumClass::Excluded(e.to_string()))
}

fn classify_inner(cfg: &PlaneConfig) -> Result<StratumClass> {
    let triples = collinear_triples(&cfg.points)?;
    let conic = cfg.conic();
    match triples.as_slice() {
        [] => {
            let q = conic?;
            if !q.is_irreducible() {
                return Ok(StratumClass::Excluded("conic through m1..m5 is degenerate".into()));
            }
            if q.contains(&cfg.points[5])? {
                Ok(StratumClass::OnConic)
            } else {
                Ok(StratumClass::GenericSmooth)
            }
        }
        [[i, j, 6]] => match conic {
            Ok(q) if q.is_irreducible() => Ok(StratumClass::CollinearThrough6([*i, *j])),
            _ => Ok(StratumClass::Excluded("conic through m1..m5 is degenerate".into())),
        },
        [[a, b, c]] => Ok(StratumClass::Excluded(format!("m{a}, m{b}, m{c} are collinear"))),
        many => {
            let list = many.iter().map(|[a, b, c]| format!("{{{a},{b},{c}}}")).join(", ");
            Ok(StratumClass::Excluded(format!("several collinear triples: {list}")))
        }
    }
}

/// The first label quadruple (lexicographic) in general position.
fn first_frame(points: &[Point2; 6]) -> Result<Option<[usize; 4]>> {
    for (a, b, c, d) in (0..6).tuple_combinations() {
        let f = [a, b, c, d];
        let mut general = true;
        for (x, y, z) in f.iter().tuple_combinations() {
            if collinear(&points[*x], &points[*y], &points[*z])? {
                general = false;
                break;
            }
        }
        if general {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn frame_points(points: &[Point2; 6], f: [usize; 4]) -> [Point2; 4] {
    f.map(|i| points[i].clone())
}

/// Whether a projectivity sends `a` to `b` label by label.
pub fn moduli_equal_plane(a: &PlaneConfig, b: &PlaneConfig) -> Result<bool> {
    let fa = first_frame(&a.points)?.ok_or(PhiError::NoFrame)?;
    let fb = first_frame(&b.points)?.ok_or(PhiError::NoFrame)?;
    if fa != fb {
        return Ok(false);
    }
    let g = Map3::from_frames(&frame_points(&a.points, fa), &frame_points(&b.points, fb))?;
    for (p, q) in a.points.iter().zip(&b.points) {
        if g.apply(p)? != *q {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinates after sending the first general-position frame to the
/// standard frame. Equal exactly when `moduli_equal_plane` holds.
pub fn plane_fingerprint(cfg: &PlaneConfig) -> Result<Vec<u8>> {
    let f = first_frame(&cfg.points)?.ok_or(PhiError::NoFrame)?;
    let g = Map3::from_standard_frame(&frame_points(&cfg.points, f))?.inverse();
    let mut key: Vec<u8> = f.iter().map(|&i| i as u8).collect();
    for p in &cfg.points {
        let q = g.apply(p)?;
        let q = q.to_base().unwrap_or(q);
        key.extend(q.canonical_key());
        key.push(0xff);
    }
    Ok(key)
}
