use std::fmt;

use crate::field::{FieldDescriptor, Scalar};

use super::conic::Conic;
use super::linalg::{self, adjugate3, det3, from_columns3, mat_mul3, mat_vec3, scale3, transpose3, Mat3};
use super::point::{normalize, unify_points, unify_points1, Line, Point1, Point2};
use super::{GeomError, Result};

fn flatten<const N: usize, const M: usize>(m: &[[Scalar; N]; N]) -> [Scalar; M] {
    let v: Vec<Scalar> = m.iter().flat_map(|r| r.iter().cloned()).collect();
    v.try_into().expect("N*N entries")
}

fn unflatten<const N: usize, const M: usize>(v: [Scalar; M]) -> [[Scalar; N]; N] {
    let v: Vec<Scalar> = v.into();
    std::array::from_fn(|i| std::array::from_fn(|j| v[i * N + j].clone()))
}

/// An element of `PGL_3`, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Map3(Mat3);

impl Map3 {
    pub fn new(m: Mat3) -> Result<Map3> {
        let m: Mat3 = unflatten(normalize::<9>(flatten(&m)).map_err(|_| GeomError::SingularMatrix)?);
        if det3(&m).is_zero() {
            return Err(GeomError::SingularMatrix);
        }
        Ok(Map3(m))
    }

    pub fn from_ints(field: &FieldDescriptor, m: [[i64; 3]; 3]) -> Result<Map3> {
        Map3::new(m.map(|r| r.map(|x| field.from_i64(x))))
    }

    pub fn identity(field: &FieldDescriptor) -> Map3 {
        Map3::from_ints(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).expect("invertible")
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.0[0][0].field()
    }

    pub fn embed(&self, target: &FieldDescriptor) -> Result<Map3> {
        if self.field() == target {
            return Ok(self.clone());
        }
        let mut m = self.0.clone();
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = x.embed(target)?;
            }
        }
        Ok(Map3(m))
    }

    pub fn apply(&self, p: &Point2) -> Result<Point2> {
        let field = self.field().join(p.field())?;
        let m = self.embed(&field)?;
        let p = p.embed(&field)?;
        Point2::new(mat_vec3(&m.0, p.vec()))
    }

    /// Image of a line: `M^{-T} l`.
    pub fn apply_line(&self, l: &Line) -> Result<Line> {
        let field = self.field().join(l.field())?;
        let m = self.embed(&field)?;
        let l = l.embed(&field)?;
        Line::new(mat_vec3(&transpose3(&adjugate3(&m.0)), l.vec()))
    }

    /// Image of a conic: `M^{-T} G M^{-1}`.
    pub fn apply_conic(&self, c: &Conic) -> Result<Conic> {
        let field = self.field().join(c.field())?;
        let m = self.embed(&field)?;
        let c = c.embed(&field)?;
        let inv = adjugate3(&m.0);
        Conic::from_gram(&mat_mul3(&transpose3(&inv), &mat_mul3(c.gram(), &inv)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Map3) -> Result<Map3> {
        let field = self.field().join(other.field())?;
        Map3::new(mat_mul3(&self.embed(&field)?.0, &other.embed(&field)?.0))
    }

    pub fn inverse(&self) -> Map3 {
        Map3::new(adjugate3(&self.0)).expect("adjugate of an invertible matrix")
    }

    /// The map sending `e1, e2, e3, [1,1,1]` to the four given points, which
    /// must be in general position.
    pub fn from_standard_frame(frame: &[Point2; 4]) -> Result<Map3> {
        let pts = unify_points(frame)?;
        let basis = from_columns3([pts[0].vec(), pts[1].vec(), pts[2].vec()]);
        let det = det3(&basis);
        if det.is_zero() {
            return Err(GeomError::DegenerateFrame);
        }
        // basis * lambda = p4, by Cramer via the adjugate
        let lambda = mat_vec3(&adjugate3(&basis), pts[3].vec());
        if lambda.iter().any(Scalar::is_zero) {
            return Err(GeomError::DegenerateFrame);
        }
        let cols = [scale3(pts[0].vec(), &lambda[0]), scale3(pts[1].vec(), &lambda[1]), scale3(pts[2].vec(), &lambda[2])];
        Map3::new(from_columns3([&cols[0], &cols[1], &cols[2]]))
    }

    /// The unique projectivity sending `src[i]` to `dst[i]`.
    pub fn from_frames(src: &[Point2; 4], dst: &[Point2; 4]) -> Result<Map3> {
        let a = Map3::from_standard_frame(src)?;
        let b = Map3::from_standard_frame(dst)?;
        b.compose(&a.inverse())
    }
}

impl fmt::Debug for Map3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Map3[")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}, {}, {}", r[0], r[1], r[2])?;
        }
        write!(f, "]")
    }
}

/// An element of `PGL_2` acting on `[u : v]` column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Map2([[Scalar; 2]; 2]);

fn det2(m: &[[Scalar; 2]; 2]) -> Scalar {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

impl Map2 {
    pub fn new(m: [[Scalar; 2]; 2]) -> Result<Map2> {
        let m: [[Scalar; 2]; 2] = unflatten(normalize::<4>(flatten(&m)).map_err(|_| GeomError::SingularMatrix)?);
        if det2(&m).is_zero() {
            return Err(GeomError::SingularMatrix);
        }
        Ok(Map2(m))
    }

    /// The Möbius map `z -> (a z + b) / (c z + d)` on affine values.
    pub fn mobius(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Result<Map2> {
        // on [u : v] with z = v/u: (u, v) -> (c v + d u, a v + b u)
        Map2::new([[d.clone(), c.clone()], [b.clone(), a.clone()]])
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.0[0][0].field()
    }

    pub fn matrix(&self) -> &[[Scalar; 2]; 2] {
        &self.0
    }

    pub fn embed(&self, target: &FieldDescriptor) -> Result<Map2> {
        let mut m = self.0.clone();
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = x.embed(target)?;
            }
        }
        Ok(Map2(m))
    }

    pub fn apply(&self, p: &Point1) -> Result<Point1> {
        let field = self.field().join(p.field())?;
        let m = self.embed(&field)?;
        let p = p.embed(&field)?;
        let [u, v] = p.coords();
        Point1::new([&(&m.0[0][0] * u) + &(&m.0[0][1] * v), &(&m.0[1][0] * u) + &(&m.0[1][1] * v)])
    }

    pub fn compose(&self, other: &Map2) -> Result<Map2> {
        let field = self.field().join(other.field())?;
        let a = self.embed(&field)?.0;
        let b = other.embed(&field)?.0;
        Map2::new(std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]))))
    }

    pub fn inverse(&self) -> Map2 {
        let m = &self.0;
        Map2::new([[m[1][1].clone(), -&m[0][1]], [-&m[1][0], m[0][0].clone()]]).expect("invertible")
    }

    /// The map sending `0, ∞, 1` (that is `[1:0], [0:1], [1:1]`) to the given
    /// pairwise-distinct points.
    fn from_standard_triple(t: &[Point1; 3]) -> Result<Map2> {
        let pts = unify_points1(t)?;
        let (p, q, r) = (pts[0].coords(), pts[1].coords(), pts[2].coords());
        let basis = [[p[0].clone(), q[0].clone()], [p[1].clone(), q[1].clone()]];
        let det = det2(&basis);
        if det.is_zero() {
            return Err(GeomError::DegenerateTriple);
        }
        // basis * (l0, l1) = r
        let l0 = &(&q[1] * &r[0]) - &(&q[0] * &r[1]);
        let l1 = &(&p[0] * &r[1]) - &(&p[1] * &r[0]);
        if l0.is_zero() || l1.is_zero() {
            return Err(GeomError::DegenerateTriple);
        }
        Map2::new([[&p[0] * &l0, &q[0] * &l1], [&p[1] * &l0, &q[1] * &l1]])
    }

    /// The unique Möbius map sending `src[i]` to `dst[i]`.
    pub fn from_triples(src: &[Point1; 3], dst: &[Point1; 3]) -> Result<Map2> {
        let a = Map2::from_standard_triple(src)?;
        let b = Map2::from_standard_triple(dst)?;
        b.compose(&a.inverse())
    }
}

impl fmt::Debug for Map2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "Map2[{}, {}; {}, {}]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// Cross-ratio value: the image of the fourth point under the Möbius map
/// sending the first three to `0, 1, ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossRatio {
    Finite(Scalar),
    Infinity,
}

fn bracket(p: &Point1, q: &Point1) -> Scalar {
    let (a, b) = (p.coords(), q.coords());
    &(&a[0] * &b[1]) - &(&a[1] * &b[0])
}

pub fn cross_ratio(a: &Point1, b: &Point1, c: &Point1, d: &Point1) -> Result<CrossRatio> {
    let pts = unify_points1(&[a.clone(), b.clone(), c.clone(), d.clone()])?;
    let [a, b, c, d] = [&pts[0], &pts[1], &pts[2], &pts[3]];
    if a == b || b == c || a == c {
        return Err(GeomError::DegenerateTriple);
    }
    let num = &bracket(d, a) * &bracket(b, c);
    let den = &bracket(d, c) * &bracket(b, a);
    if den.is_zero() {
        return Ok(CrossRatio::Infinity);
    }
    Ok(CrossRatio::Finite(num.try_div(&den)?))
}

/// Projection from `center`: `p -> [l1(p) : l2(p)]` where, with `k` the
/// index of the center's first nonzero coordinate (normalized to 1), the
/// forms are `x_j - c_j x_k` for the two indices `j != k` in increasing
/// order. The center `[0,1,0]` gives the pencil basis `(x, z)`.
pub fn project_from(center: &Point2, p: &Point2) -> Result<Point1> {
    let pts = unify_points(&[center.clone(), p.clone()])?;
    let (c, p) = (pts[0].coords(), pts[1].coords());
    let k = c.iter().position(|x| !x.is_zero()).expect("nonzero point");
    let mut forms = (0..3).filter(|&j| j != k).map(|j| &p[j] - &(&c[j] * &p[k]));
    let (l1, l2) = (forms.next().expect("two forms"), forms.next().expect("two forms"));
    Point1::new([l1, l2]).map_err(|_| GeomError::CenterEqualsPoint)
}

/// Rank of a set of points viewed as vectors.
pub fn span_rank(points: &[Point2]) -> Result<usize> {
    let pts = unify_points(points)?;
    let field = pts.first().map(|p| p.field().clone()).unwrap_or_else(FieldDescriptor::rationals);
    let rows: Vec<Vec<Scalar>> = pts.iter().map(|p| p.coords().to_vec()).collect();
    Ok(linalg::rank(&rows, 3, &field))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn p(c: [i64; 3]) -> Point2 {
        Point2::from_ints(&q(), c).unwrap()
    }

    fn z(n: i64, d: i64) -> Point1 {
        Point1::finite(&q().from_ratio(n, d).unwrap())
    }

    #[test]
    fn projection_examples() {
        let c = p([0, 1, 0]);
        assert_eq!(project_from(&c, &p([1, 3, 9])).unwrap(), z(9, 1));
        assert_eq!(project_from(&c, &p([1, 0, 0])).unwrap(), z(0, 1));
        assert_eq!(project_from(&c, &p([0, 0, 1])).unwrap(), Point1::infinity(&q()));
        assert!(matches!(project_from(&c, &c), Err(GeomError::CenterEqualsPoint)));
    }

    #[test]
    fn cross_ratio_convention() {
        let inf = Point1::infinity(&q());
        let lambda = q().from_ratio(7, 3).unwrap();
        let cr = cross_ratio(&z(0, 1), &z(1, 1), &inf, &Point1::finite(&lambda)).unwrap();
        assert_eq!(cr, CrossRatio::Finite(lambda));
        let cr = cross_ratio(&z(0, 1), &z(1, 1), &inf, &z(1, 2)).unwrap();
        assert_eq!(cr, CrossRatio::Finite(q().from_ratio(1, 2).unwrap()));
        assert_eq!(cross_ratio(&z(0, 1), &z(1, 1), &inf, &inf).unwrap(), CrossRatio::Infinity);
        assert!(cross_ratio(&z(0, 1), &z(0, 1), &inf, &inf).is_err());
    }

    #[test]
    fn cross_ratio_is_mobius_invariant() {
        let f = q();
        let g = Map2::mobius(&f.from_i64(2), &f.from_i64(1), &f.from_i64(1), &f.from_i64(3)).unwrap();
        let pts = [z(0, 1), z(1, 1), z(5, 1), z(-2, 7)];
        let moved: Vec<Point1> = pts.iter().map(|x| g.apply(x).unwrap()).collect();
        // z -> (2z+1)/(z+3) sends 1 to 3/4
        assert_eq!(moved[1], z(3, 4));
        assert_eq!(
            cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap(),
            cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3]).unwrap()
        );
    }

    #[test]
    fn frame_maps() {
        let f = q();
        let std = Point2::standard_frame(&f);
        let id = Map3::from_frames(&std, &std).unwrap();
        assert_eq!(id, Map3::identity(&f));
        let perm = [std[1].clone(), std[2].clone(), std[0].clone(), std[3].clone()];
        let m = Map3::from_frames(&std, &perm).unwrap();
        assert_eq!(m, Map3::from_ints(&f, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]).unwrap());
        let src = [p([1, 2, 3]), p([-1, 0, 4]), p([2, 2, -5]), p([7, 1, 1])];
        let dst = [p([0, 1, 1]), p([3, -2, 1]), p([1, 1, 9]), p([4, 4, -1])];
        let m = Map3::from_frames(&src, &dst).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            assert_eq!(&m.apply(s).unwrap(), d);
        }
        let bad = [p([1, 0, 0]), p([0, 1, 0]), p([1, 1, 0]), p([0, 0, 1])];
        assert!(matches!(Map3::from_frames(&bad, &dst), Err(GeomError::DegenerateFrame)));
    }

    #[test]
    fn conic_and_line_transport() {
        let f = q();
        let m = Map3::from_ints(&f, [[2, 1, 0], [0, 1, -1], [1, 0, 3]]).unwrap();
        let c = Conic::veronese(&f);
        let img = m.apply_conic(&c).unwrap();
        let pt = p([1, 3, 9]);
        assert!(img.contains(&m.apply(&pt).unwrap()).unwrap());
        let l = Line::through(&p([1, 0, 2]), &p([0, 1, 5])).unwrap();
        let ml = m.apply_line(&l).unwrap();
        assert!(ml.contains(&m.apply(&p([1, 0, 2])).unwrap()).unwrap());
        assert_eq!(m.compose(&m.inverse()).unwrap(), Map3::identity(&f));
    }

    #[test]
    fn triple_maps() {
        let inf = Point1::infinity(&q());
        let src = [z(1, 1), z(2, 1), z(3, 1)];
        let dst = [z(0, 1), inf.clone(), z(5, 2)];
        let g = Map2::from_triples(&src, &dst).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            assert_eq!(&g.apply(s).unwrap(), d);
        }
    }
}
