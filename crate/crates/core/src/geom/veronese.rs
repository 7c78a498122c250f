use super::conic::Conic;
use super::maps::Map3;
use super::point::{unify_points, Point2};
use super::{GeomError, Result};

/// Moves a six-point configuration to the normal form where the conic
/// through the first five is `y^2 = xz` and the sixth point is `[0,1,0]`.
///
/// The map sends `(t1, m6, t2, m1)` to `(e1, e2, e3, [1,1,1])`, where `t1, t2`
/// are the tangency points from `m6` in canonical-key order. Afterwards each
/// `m_i` (i <= 5) is `[1, x_i, x_i^2]` or `[0, 0, 1]`, and `x_1 = 1`.
/// Coordinates move into the tangency field when it is an extension.
pub fn veronese_normalize(points: &[Point2; 6]) -> Result<(Map3, [Point2; 6])> {
    let five: [Point2; 5] = std::array::from_fn(|i| points[i].clone());
    let conic = Conic::through_five(&five)?;
    let [t1, t2] = conic.tangent_points(&points[5])?;
    let mut all = unify_points(&[t1, t2, points[5].clone(), points[0].clone()])?;
    let field = all[0].field().clone();
    let m1 = all.pop().expect("m1");
    let m6 = all.pop().expect("m6");
    let t2 = all.pop().expect("t2");
    let t1 = all.pop().expect("t1");
    let map = Map3::from_frames(&[t1, m6, t2, m1], &Point2::standard_frame(&field))
        .map_err(|_| GeomError::DegenerateFrame)?;
    let mut out = Vec::with_capacity(6);
    for p in points {
        out.push(map.apply(p)?);
    }
    Ok((map, out.try_into().expect("six points")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn p(c: [i64; 3]) -> Point2 {
        Point2::from_ints(&FieldDescriptor::rationals(), c).unwrap()
    }

    fn check_normal_form(out: &[Point2; 6]) {
        let field = out[0].field().clone();
        let v = Conic::veronese(&field);
        for m in &out[..5] {
            assert!(v.contains(m).unwrap(), "{m:?} off the Veronese conic");
        }
        assert_eq!(out[5], Point2::from_ints(&field, [0, 1, 0]).unwrap());
        assert_eq!(out[0], Point2::from_ints(&field, [1, 1, 1]).unwrap());
    }

    #[test]
    fn normalized_configuration_is_fixed() {
        let cfg = [p([1, 1, 1]), p([1, 2, 4]), p([1, 3, 9]), p([1, 4, 16]), p([1, 5, 25]), p([0, 1, 0])];
        let (map, out) = veronese_normalize(&cfg).unwrap();
        assert_eq!(map, Map3::identity(&FieldDescriptor::rationals()));
        assert_eq!(out, cfg);
    }

    #[test]
    fn rational_tangency_stays_rational() {
        // image of the normal form under an integral map
        let m = Map3::from_ints(&FieldDescriptor::rationals(), [[2, 1, 0], [1, -1, 3], [0, 2, 1]]).unwrap();
        let base = [p([1, 1, 1]), p([1, 2, 4]), p([1, -3, 9]), p([1, 4, 16]), p([1, 7, 49]), p([0, 1, 0])];
        let cfg: [Point2; 6] = std::array::from_fn(|i| m.apply(&base[i]).unwrap());
        let (_, out) = veronese_normalize(&cfg).unwrap();
        assert!(!out[0].field().is_extension());
        check_normal_form(&out);
    }

    #[test]
    fn irrational_tangency_moves_to_extension() {
        let cfg = [p([1, 0, 0]), p([0, 1, 0]), p([0, 0, 1]), p([1, 1, 1]), p([1, 2, 3]), p([3, -1, 5])];
        let (_, out) = veronese_normalize(&cfg).unwrap();
        check_normal_form(&out);
    }
}
