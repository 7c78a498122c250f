use std::fmt;

use crate::field::{FieldDescriptor, Scalar};

use super::linalg::{self, dot3, mat_vec3, Mat3, Vec3};
use super::point::{normalize, sorted_pair, unify_points, Line, Point2};
use super::{GeomError, Result};

/// A plane conic `a x^2 + b y^2 + c z^2 + d xy + e xz + f yz = 0`.
///
/// Stored with its coefficient vector `(a, b, c, d, e, f)` scaled so the first
/// nonzero entry is 1, together with the symmetric Gram matrix and its rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Conic {
    coeffs: [Scalar; 6],
    gram: Mat3,
    rank: u8,
}

fn monomials(p: &Vec3) -> [Scalar; 6] {
    let [x, y, z] = p;
    [x * x, y * y, z * z, x * y, x * z, y * z]
}

impl Conic {
    pub fn from_coefficients(coeffs: [Scalar; 6]) -> Result<Conic> {
        let coeffs = normalize(coeffs).map_err(|e| match e {
            GeomError::ZeroVector => GeomError::ZeroForm,
            other => other,
        })?;
        let field = coeffs[0].field().clone();
        let half = field.from_ratio(1, 2)?;
        let [a, b, c, d, e, f] = &coeffs;
        let (hd, he, hf) = (d * &half, e * &half, f * &half);
        let gram: Mat3 = [
            [a.clone(), hd.clone(), he.clone()],
            [hd, b.clone(), hf.clone()],
            [he, hf, c.clone()],
        ];
        let rows: Vec<Vec<Scalar>> = gram.iter().map(|r| r.to_vec()).collect();
        let rank = linalg::rank(&rows, 3, &field) as u8;
        Ok(Conic { coeffs, gram, rank })
    }

    pub fn from_ints(field: &FieldDescriptor, coeffs: [i64; 6]) -> Result<Conic> {
        Conic::from_coefficients(coeffs.map(|c| field.from_i64(c)))
    }

    /// From a symmetric matrix.
    pub fn from_gram(g: &Mat3) -> Result<Conic> {
        for i in 0..3 {
            for j in 0..i {
                if g[i][j] != g[j][i] {
                    return Err(GeomError::NotSymmetric);
                }
            }
        }
        let two = g[0][0].field().from_i64(2);
        Conic::from_coefficients([
            g[0][0].clone(),
            g[1][1].clone(),
            g[2][2].clone(),
            &two * &g[0][1],
            &two * &g[0][2],
            &two * &g[1][2],
        ])
    }

    /// `y^2 - xz`.
    pub fn veronese(field: &FieldDescriptor) -> Conic {
        Conic::from_ints(field, [0, 1, 0, 0, -1, 0]).expect("nonzero form")
    }

    pub fn coefficients(&self) -> &[Scalar; 6] {
        &self.coeffs
    }

    pub fn gram(&self) -> &Mat3 {
        &self.gram
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn is_irreducible(&self) -> bool {
        self.rank == 3
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.coeffs[0].field()
    }

    pub fn embed(&self, target: &FieldDescriptor) -> Result<Conic> {
        if self.field() == target {
            return Ok(self.clone());
        }
        let mut coeffs = Vec::with_capacity(6);
        for c in &self.coeffs {
            coeffs.push(c.embed(target)?);
        }
        Conic::from_coefficients(coeffs.try_into().expect("six coefficients"))
    }

    /// Brings the conic and a point into a common field.
    fn with_point(&self, p: &Point2) -> Result<(Conic, Point2)> {
        let field = self.field().join(p.field())?;
        Ok((self.embed(&field)?, p.embed(&field)?))
    }

    /// The quadratic form at `p` (canonical scale); zero iff `p` is on the conic.
    pub fn evaluate(&self, p: &Point2) -> Result<Scalar> {
        let (c, p) = self.with_point(p)?;
        let m = monomials(p.vec());
        Ok(c.coeffs.iter().zip(&m).fold(p.field().zero(), |acc, (a, b)| &acc + &(a * b)))
    }

    pub fn contains(&self, p: &Point2) -> Result<bool> {
        Ok(self.evaluate(p)?.is_zero())
    }

    /// The symmetric bilinear form `p^T G q`.
    pub fn bilinear(&self, p: &Point2, q: &Point2) -> Result<Scalar> {
        let pts = unify_points(&[p.clone(), q.clone()])?;
        let (c, p) = self.with_point(&pts[0])?;
        let q = pts[1].embed(p.field())?;
        Ok(dot3(p.vec(), &mat_vec3(&c.gram, q.vec())))
    }

    fn require_irreducible(&self) -> Result<()> {
        if self.is_irreducible() {
            Ok(())
        } else {
            Err(GeomError::DegenerateConic)
        }
    }

    /// The polar line `G p`; the tangent line when `p` is on the conic.
    pub fn polar_line(&self, p: &Point2) -> Result<Line> {
        self.require_irreducible()?;
        let (c, p) = self.with_point(p)?;
        Line::new(mat_vec3(&c.gram, p.vec()))
    }

    pub fn tangent_line_at(&self, a: &Point2) -> Result<Line> {
        self.require_irreducible()?;
        if !self.contains(a)? {
            return Err(GeomError::PointNotOnConic);
        }
        self.polar_line(a)
    }

    /// The two points where tangent lines through the exterior point `p` touch
    /// the conic, sorted by canonical key. When the tangency discriminant is a
    /// non-square they live in a quadratic extension and are conjugate.
    pub fn tangent_points(&self, p: &Point2) -> Result<[Point2; 2]> {
        self.require_irreducible()?;
        if self.contains(p)? {
            return Err(GeomError::PointOnConic);
        }
        let polar = self.polar_line(p)?;
        let [u, v] = polar.spanning_points();
        let (c, u) = self.with_point(&u)?;
        let v = v.embed(u.field())?;
        let a = c.bilinear(&u, &u)?;
        let b = c.bilinear(&u, &v)?;
        let d = c.bilinear(&v, &v)?;
        // roots [s : t] of a s^2 + 2 b s t + d t^2 on s u + t v
        let combine = |s: &Scalar, t: &Scalar, u: &Point2, v: &Point2| -> Result<Point2> {
            Point2::new(std::array::from_fn(|i| &(s * &u.vec()[i]) + &(t * &v.vec()[i])))
        };
        let (p1, p2) = if a.is_zero() {
            let two_b = &b + &b;
            (u.clone(), combine(&-&d, &two_b, &u, &v)?)
        } else {
            let disc = &(&b * &b) - &(&a * &d);
            let root = disc.sqrt()?;
            let field = root.field().clone();
            let (a, b) = (a.embed(&field)?, b.embed(&field)?);
            let (u, v) = (u.embed(&field)?, v.embed(&field)?);
            let inv_a = a.inv()?;
            let one = field.one();
            let s1 = &(&-&b + &root) * &inv_a;
            let s2 = &(&-&b - &root) * &inv_a;
            (combine(&s1, &one, &u, &v)?, combine(&s2, &one, &u, &v)?)
        };
        Ok(sorted_pair(p1, p2, Point2::canonical_key))
    }

    /// The other intersection of the line through `a` (on the conic) and `m`
    /// (off it). Equals `a` exactly when that line is tangent at `a`. Stays in
    /// the field of the inputs.
    pub fn second_intersection(&self, a: &Point2, m: &Point2) -> Result<Point2> {
        if !self.contains(a)? {
            return Err(GeomError::PointNotOnConic);
        }
        let cm = self.evaluate(m)?;
        if cm.is_zero() {
            return Err(GeomError::PointOnConic);
        }
        let pts = unify_points(&[a.clone(), m.clone()])?;
        let (c, a) = self.with_point(&pts[0])?;
        let m = pts[1].embed(a.field())?;
        let cm = cm.embed(a.field())?;
        let bam = c.bilinear(&a, &m)?;
        let two_b = &bam + &bam;
        Point2::new(std::array::from_fn(|i| &(&cm * &a.vec()[i]) - &(&two_b * &m.vec()[i])))
    }

    /// The unique conic through five distinct points, which must be
    /// irreducible.
    pub fn through_five(points: &[Point2; 5]) -> Result<Conic> {
        let c = Conic::through_five_any(points)?;
        if c.is_irreducible() {
            Ok(c)
        } else {
            Err(GeomError::NotIrreducible(Box::new(c)))
        }
    }

    /// The unique conic through five distinct points, of any rank.
    pub fn through_five_any(points: &[Point2; 5]) -> Result<Conic> {
        let pts = unify_points(points)?;
        for i in 0..5 {
            for j in 0..i {
                if pts[i] == pts[j] {
                    return Err(GeomError::CoincidentPoints);
                }
            }
        }
        let field = pts[0].field().clone();
        let rows: Vec<Vec<Scalar>> = pts.iter().map(|p| monomials(p.vec()).to_vec()).collect();
        let ns = linalg::null_space(&rows, 6, &field);
        if ns.len() != 1 {
            return Err(GeomError::NotUnique);
        }
        let coeffs: [Scalar; 6] = ns.into_iter().next().expect("one vector").try_into().expect("six entries");
        Conic::from_coefficients(coeffs)
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 6] = ["x^2", "y^2", "z^2", "xy", "xz", "yz"];
        let mut first = true;
        for (c, n) in self.coeffs.iter().zip(NAMES) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c}){n}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Conic[{self}]")
    }
}
