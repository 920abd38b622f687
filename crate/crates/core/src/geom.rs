//! Exact planar geometry over arbitrary-precision rationals.
//!
//! Every predicate here is exact: no floating point enters a decision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A point of the plane with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Q,
    pub y: Q,
}

impl RationalPoint {
    pub fn new(x: Q, y: Q) -> Self {
        RationalPoint { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        RationalPoint::new(q(x), q(y))
    }

    pub fn frac(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        RationalPoint::new(qf(xn, xd), qf(yn, yd))
    }

    pub fn sub(&self, o: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, s: &Q) -> RationalPoint {
        RationalPoint::new(&self.x * s, &self.y * s)
    }

    /// `self + t * (to - self)`.
    pub fn lerp(&self, to: &RationalPoint, t: &Q) -> RationalPoint {
        self.add(&to.sub(self).scale(t))
    }

    pub fn dist2(&self, o: &RationalPoint) -> Q {
        let d = self.sub(o);
        dot(&d, &d)
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn cross(a: &RationalPoint, b: &RationalPoint) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &RationalPoint, b: &RationalPoint) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the turn a -> b -> c (`Greater` = counterclockwise).
pub fn orient(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Ordering {
    cross(&b.sub(a), &c.sub(a)).cmp(&Q::zero())
}

/// Outcome of intersecting two closed segments `ab` and `cd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentHit {
    Disjoint,
    /// Transverse intersection in the open interior of both segments.
    Proper { point: RationalPoint, t: Q, u: Q },
    /// They meet, but at an endpoint of at least one segment.
    Touch(RationalPoint),
    /// Collinear with a common sub-segment or point.
    Overlap,
}

pub fn intersect_segments(
    a: &RationalPoint,
    b: &RationalPoint,
    c: &RationalPoint,
    d: &RationalPoint,
) -> SegmentHit {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = cross(&r, &s);
    let ca = c.sub(a);
    if denom.is_zero() {
        if !cross(&ca, &r).is_zero() {
            return SegmentHit::Disjoint;
        }
        // Collinear: compare projections on r.
        let rr = dot(&r, &r);
        let t0 = dot(&ca, &r) / &rr;
        let t1 = dot(&d.sub(a), &r) / &rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        if hi < Q::zero() || lo > Q::one() {
            return SegmentHit::Disjoint;
        }
        return SegmentHit::Overlap;
    }
    let t = cross(&ca, &s) / &denom;
    let u = cross(&ca, &r) / &denom;
    let zero = Q::zero();
    let one = Q::one();
    if t < zero || t > one || u < zero || u > one {
        return SegmentHit::Disjoint;
    }
    let point = a.lerp(b, &t);
    if t.is_zero() || t == one || u.is_zero() || u == one {
        return SegmentHit::Touch(point);
    }
    SegmentHit::Proper { point, t, u }
}

/// Closed segments share at least one point.
pub fn segments_meet(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint, d: &RationalPoint) -> bool {
    !matches!(intersect_segments(a, b, c, d), SegmentHit::Disjoint)
}

/// `p` lies on the segment `ab` strictly between its endpoints.
pub fn on_open_segment(p: &RationalPoint, a: &RationalPoint, b: &RationalPoint) -> bool {
    if orient(a, b, p) != Ordering::Equal {
        return false;
    }
    let t = segment_param(p, a, b);
    t > Q::zero() && t < Q::one()
}

/// Parameter of the projection of `p` onto the line through `a`, `b`.
pub fn segment_param(p: &RationalPoint, a: &RationalPoint, b: &RationalPoint) -> Q {
    let r = b.sub(a);
    dot(&p.sub(a), &r) / dot(&r, &r)
}

pub fn dist2_point_segment(p: &RationalPoint, a: &RationalPoint, b: &RationalPoint) -> Q {
    let r = b.sub(a);
    let rr = dot(&r, &r);
    if rr.is_zero() {
        return p.dist2(a);
    }
    let mut t = dot(&p.sub(a), &r) / rr;
    if t < Q::zero() {
        t = Q::zero();
    } else if t > Q::one() {
        t = Q::one();
    }
    p.dist2(&a.lerp(b, &t))
}

/// Squared distance between closed segments (zero when they meet).
pub fn dist2_segments(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint, d: &RationalPoint) -> Q {
    if segments_meet(a, b, c, d) {
        return Q::zero();
    }
    [
        dist2_point_segment(a, c, d),
        dist2_point_segment(b, c, d),
        dist2_point_segment(c, a, b),
        dist2_point_segment(d, a, b),
    ]
    .into_iter()
    .min()
    .unwrap()
}

/// Closed point-in-convex-polygon test; the polygon may be degenerate
/// (a segment or a point), given as its vertex list.
pub fn point_in_convex(p: &RationalPoint, poly: &[RationalPoint]) -> bool {
    let n = poly.len();
    if n == 1 {
        return *p == poly[0];
    }
    // Degenerate polygon: all vertices collinear.
    let degenerate = (2..n).all(|k| orient(&poly[0], &poly[1], &poly[k]) == Ordering::Equal);
    if degenerate {
        return (0..n).any(|i| {
            (0..n).any(|j| i != j && (p == &poly[i] || on_open_segment(p, &poly[i], &poly[j])))
        });
    }
    let mut sign = Ordering::Equal;
    for i in 0..n {
        let o = orient(&poly[i], &poly[(i + 1) % n], p);
        if o == Ordering::Equal {
            continue;
        }
        if sign == Ordering::Equal {
            sign = o;
        } else if sign != o {
            return false;
        }
    }
    true
}

/// Strict interior test for a non-degenerate convex polygon.
pub fn point_strictly_in_convex(p: &RationalPoint, poly: &[RationalPoint]) -> bool {
    let n = poly.len();
    let mut sign = Ordering::Equal;
    for i in 0..n {
        let o = orient(&poly[i], &poly[(i + 1) % n], p);
        if o == Ordering::Equal {
            return false;
        }
        if sign == Ordering::Equal {
            sign = o;
        } else if sign != o {
            return false;
        }
    }
    true
}

/// Do two closed convex polygons (possibly degenerate) share a point?
pub fn convex_meet(a: &[RationalPoint], b: &[RationalPoint]) -> bool {
    let edges = |p: &[RationalPoint]| -> Vec<(RationalPoint, RationalPoint)> {
        let n = p.len();
        (0..n).map(|i| (p[i].clone(), p[(i + 1) % n].clone())).collect()
    };
    for (p0, p1) in edges(a) {
        for (q0, q1) in edges(b) {
            if segments_meet(&p0, &p1, &q0, &q1) {
                return true;
            }
        }
    }
    a.iter().any(|p| point_in_convex(p, b)) || b.iter().any(|p| point_in_convex(p, a))
}

/// Closed point-in-polygon (even-odd) for simple polygons; boundary counts as inside.
pub fn point_in_polygon(p: &RationalPoint, poly: &[RationalPoint]) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if p == a || on_open_segment(p, a, b) {
            return true;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Largest dyadic rational `r <= sqrt(v)` with 48 bits of relative precision,
/// exact whenever `v` is the square of a rational.
pub fn sqrt_floor(v: &Q) -> Q {
    if !v.is_positive() {
        return Q::zero();
    }
    let n = v.numer();
    let d = v.denom();
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        return Q::new(rn, rd);
    }
    // floor(sqrt(v * 4^k)) / 2^k
    let bits = 48u64 + d.bits().div_ceil(2) + 1;
    let shift = BigInt::one() << (2 * bits);
    let scaled = (n * shift) / d;
    let root = scaled.sqrt();
    Q::new(root, BigInt::one() << bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proper_crossing() {
        let hit = intersect_segments(
            &RationalPoint::int(0, 0),
            &RationalPoint::int(2, 2),
            &RationalPoint::int(0, 2),
            &RationalPoint::int(2, 0),
        );
        match hit {
            SegmentHit::Proper { point, .. } => assert_eq!(point, RationalPoint::int(1, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn touching_and_overlap() {
        let a = RationalPoint::int(0, 0);
        let b = RationalPoint::int(2, 0);
        assert!(matches!(
            intersect_segments(&a, &b, &RationalPoint::int(1, 0), &RationalPoint::int(1, 3)),
            SegmentHit::Touch(_)
        ));
        assert_eq!(
            intersect_segments(&a, &b, &RationalPoint::int(1, 0), &RationalPoint::int(3, 0)),
            SegmentHit::Overlap
        );
        assert_eq!(
            intersect_segments(&a, &b, &RationalPoint::int(0, 1), &RationalPoint::int(3, 1)),
            SegmentHit::Disjoint
        );
    }

    #[test]
    fn convex_overlap_handles_degenerate() {
        let tri = vec![RationalPoint::int(0, 0), RationalPoint::int(4, 0), RationalPoint::int(4, 4)];
        let seg = vec![RationalPoint::int(3, 1), RationalPoint::int(3, 2)];
        assert!(convex_meet(&tri, &seg));
        let far = vec![RationalPoint::int(10, 1), RationalPoint::int(10, 2)];
        assert!(!convex_meet(&tri, &far));
    }

    #[test]
    fn sqrt_floor_exact_and_bounded() {
        assert_eq!(sqrt_floor(&qf(9, 4)), qf(3, 2));
        let r = sqrt_floor(&q(2));
        assert!(&r * &r <= q(2));
        let err = q(2) - &r * &r;
        assert!(err < qf(1, 1 << 40));
    }
}
