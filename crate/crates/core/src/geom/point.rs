use std::fmt;

use crate::field::{FieldDescriptor, Scalar};

use super::linalg::{cross3, det_cols3, dot3, Vec3};
use super::{GeomError, Result};

/// Scales `v` so its first nonzero entry is 1, after moving every entry into
/// a common field.
pub(crate) fn normalize<const N: usize>(v: [Scalar; N]) -> Result<[Scalar; N]> {
    let field = FieldDescriptor::join_all(v.iter().map(Scalar::field))?;
    let v: [Scalar; N] = {
        let mut out = Vec::with_capacity(N);
        for s in v {
            out.push(s.embed(&field)?);
        }
        out.try_into().expect("length preserved")
    };
    let lead = v.iter().find(|s| !s.is_zero()).ok_or(GeomError::ZeroVector)?;
    if lead.is_one() {
        return Ok(v);
    }
    let inv = lead.inv()?;
    Ok(std::array::from_fn(|i| &v[i] * &inv))
}

fn embed_all<const N: usize>(v: &[Scalar; N], target: &FieldDescriptor) -> Result<[Scalar; N]> {
    let mut out = Vec::with_capacity(N);
    for s in v {
        out.push(s.embed(target)?);
    }
    Ok(out.try_into().expect("length preserved"))
}

fn key_of(v: &[Scalar]) -> Vec<u8> {
    v.iter().flat_map(Scalar::canonical_key).collect()
}

macro_rules! projective_type {
    ($(#[$doc:meta])* $name:ident, $n:literal) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name([Scalar; $n]);

        impl $name {
            /// Normalizes to canonical scale; fails on the zero vector.
            pub fn new(coords: [Scalar; $n]) -> Result<Self> {
                Ok($name(normalize(coords)?))
            }

            pub fn from_ints(field: &FieldDescriptor, coords: [i64; $n]) -> Result<Self> {
                Self::new(coords.map(|c| field.from_i64(c)))
            }

            pub fn coords(&self) -> &[Scalar; $n] {
                &self.0
            }

            pub fn field(&self) -> &FieldDescriptor {
                self.0[0].field()
            }

            pub fn embed(&self, target: &FieldDescriptor) -> Result<Self> {
                Ok($name(embed_all(&self.0, target)?))
            }

            /// Coordinate-wise conjugation (identity over a base field).
            pub fn conjugate(&self) -> Self {
                $name(self.0.clone().map(|c| c.conjugate()))
            }

            /// True when every coordinate lies in the base field.
            pub fn is_base(&self) -> bool {
                self.0.iter().all(Scalar::is_base)
            }

            /// The same point with coordinates in the base field, if possible.
            pub fn to_base(&self) -> Option<Self> {
                if !self.is_base() {
                    return None;
                }
                self.embed(self.field().base()).ok()
            }

            pub fn canonical_key(&self) -> Vec<u8> {
                key_of(&self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, " : ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", stringify!($name), self)
            }
        }
    };
}

projective_type!(
    /// A point of the projective plane, first nonzero coordinate equal to 1.
    Point2,
    3
);
projective_type!(
    /// A line of the projective plane in dual coordinates.
    Line,
    3
);
projective_type!(
    /// A point of the projective line `[u : v]`; the affine value is `v/u`,
    /// with `[0 : 1]` at infinity.
    Point1,
    2
);

impl Point2 {
    pub(crate) fn vec(&self) -> &Vec3 {
        &self.0
    }

    /// Coordinate vertices `e1, e2, e3` and the unit point `[1,1,1]`.
    pub fn standard_frame(field: &FieldDescriptor) -> [Point2; 4] {
        let z = field.zero();
        let o = field.one();
        [
            Point2([o.clone(), z.clone(), z.clone()]),
            Point2([z.clone(), o.clone(), z.clone()]),
            Point2([z.clone(), z, o.clone()]),
            Point2([o.clone(), o.clone(), o]),
        ]
    }
}

impl Line {
    pub(crate) fn vec(&self) -> &Vec3 {
        &self.0
    }

    /// The line joining two distinct points.
    pub fn through(p: &Point2, q: &Point2) -> Result<Line> {
        let (p, q) = unify2(p, q)?;
        Line::new(cross3(p.vec(), q.vec())).map_err(|_| GeomError::CoincidentPoints)
    }

    pub fn contains(&self, p: &Point2) -> Result<bool> {
        let field = self.field().join(p.field())?;
        let l = self.embed(&field)?;
        let p = p.embed(&field)?;
        Ok(dot3(l.vec(), p.vec()).is_zero())
    }

    /// Intersection point of two distinct lines.
    pub fn meet(&self, other: &Line) -> Result<Point2> {
        let field = self.field().join(other.field())?;
        let a = self.embed(&field)?;
        let b = other.embed(&field)?;
        Point2::new(cross3(a.vec(), b.vec())).map_err(|_| GeomError::CoincidentLines)
    }

    /// Two distinct points spanning the line: its meets with the coordinate
    /// lines `x = 0, y = 0, z = 0`, first two distinct in that order.
    pub fn spanning_points(&self) -> [Point2; 2] {
        let field = self.field().clone();
        let frame = Point2::standard_frame(&field);
        let mut found: Vec<Point2> = Vec::with_capacity(2);
        for e in &frame[..3] {
            // e read as a line: the coordinate line through the other two vertices
            if let Ok(p) = Point2::new(cross3(self.vec(), e.vec())) {
                if found.iter().all(|q| *q != p) {
                    found.push(p);
                }
            }
            if found.len() == 2 {
                break;
            }
        }
        let [a, b]: [Point2; 2] = found.try_into().expect("a line meets the coordinate triangle twice");
        [a, b]
    }
}

impl Point1 {
    /// `[1 : z]`.
    pub fn finite(z: &Scalar) -> Point1 {
        Point1([z.field().one(), z.clone()])
    }

    /// `[0 : 1]`.
    pub fn infinity(field: &FieldDescriptor) -> Point1 {
        Point1([field.zero(), field.one()])
    }

    /// The affine value `v/u`, or `None` at infinity.
    pub fn affine(&self) -> Option<&Scalar> {
        self.0[0].is_one().then_some(&self.0[1])
    }

    pub fn is_infinity(&self) -> bool {
        self.0[0].is_zero()
    }
}

/// Moves two points into their common field.
pub(crate) fn unify2(p: &Point2, q: &Point2) -> Result<(Point2, Point2)> {
    let field = p.field().join(q.field())?;
    Ok((p.embed(&field)?, q.embed(&field)?))
}

/// Moves a list of points into one common field.
pub fn unify_points(points: &[Point2]) -> Result<Vec<Point2>> {
    let field = FieldDescriptor::join_all(points.iter().map(Point2::field))?;
    points.iter().map(|p| p.embed(&field)).collect()
}

pub fn unify_points1(points: &[Point1]) -> Result<Vec<Point1>> {
    let field = FieldDescriptor::join_all(points.iter().map(Point1::field))?;
    points.iter().map(|p| p.embed(&field)).collect()
}

/// Whether three points lie on one line.
pub fn collinear(p: &Point2, q: &Point2, r: &Point2) -> Result<bool> {
    let pts = unify_points(&[p.clone(), q.clone(), r.clone()])?;
    Ok(det_cols3(pts[0].vec(), pts[1].vec(), pts[2].vec()).is_zero())
}

/// Sorts a pair by canonical key.
pub fn sorted_pair<T: Clone>(a: T, b: T, key: impl Fn(&T) -> Vec<u8>) -> [T; 2] {
    if key(&a) <= key(&b) {
        [a, b]
    } else {
        [b, a]
    }
}
