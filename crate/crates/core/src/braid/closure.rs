//! Fixed closure geometry.
//!
//! Strand positions sit at x = 1..n. With H = max(|w|, 1), letter t occupies
//! the band H - t - 1 <= y <= H - t and its two strands run diagonally across
//! it. The closure arc of bottom position j leaves (j, 0), dips to
//! (j + 1/3, -1), rises straight up to (j + 1/3, H + 1) over everything in its
//! way and comes back down to the top endpoint (j, H). The vertical rises are
//! the only ascending segments.

use std::cmp::Ordering;

use num_traits::Zero;

use super::BraidWord;
use crate::diagram::{build_diagram, LinkDiagram, SegId};
use crate::geom::{orient, q, qf, RationalPoint, Q};

pub fn closure(w: &BraidWord) -> LinkDiagram {
    closure_with_cycles(w).0
}

/// The closure and, per component, the top positions it passes through
/// (in traversal order, starting from the smallest).
pub(crate) fn closure_with_cycles(w: &BraidWord) -> (LinkDiagram, Vec<Vec<usize>>) {
    let height = w.len().max(1) as i64;
    let cycles = w.permutation().cycles();
    let third = qf(1, 3);
    let mut comps = Vec::with_capacity(cycles.len());
    for cyc in &cycles {
        let mut pts = Vec::new();
        for &top in cyc {
            let mut pos = top;
            pts.push(RationalPoint::int(pos as i64, height));
            for (t, &k) in w.letters().iter().enumerate() {
                let i = k.unsigned_abs() as usize;
                if pos == i {
                    pos = i + 1;
                } else if pos == i + 1 {
                    pos = i;
                }
                pts.push(RationalPoint::int(pos as i64, height - t as i64 - 1));
            }
            if w.is_empty() {
                pts.push(RationalPoint::int(pos as i64, 0));
            }
            let x = q(pos as i64) + &third;
            pts.push(RationalPoint::new(x.clone(), q(-1)));
            pts.push(RationalPoint::new(x, q(height + 1)));
        }
        comps.push(drop_straight_vertices(pts));
    }
    let letters = w.letters().to_vec();
    let h = q(height);
    let lookup = comps.clone();
    let d = build_diagram(comps, |a, b, p| {
        let dir = |s: SegId| {
            let poly = &lookup[s.component];
            poly[(s.segment + 1) % poly.len()].sub(&poly[s.segment])
        };
        let (da, db) = (dir(a), dir(b));
        let rises = |v: &RationalPoint| v.x.is_zero() && v.y > Q::zero();
        if rises(&da) {
            return Ok(a);
        }
        if rises(&db) {
            return Ok(b);
        }
        // Box crossing: the strand moving left is over for a positive letter.
        let level = (&h - &p.y).floor().to_integer();
        let t: usize = level.try_into().expect("crossing inside the box");
        let positive = letters[t] > 0;
        let a_left = da.x < Q::zero();
        Ok(if a_left == positive { a } else { b })
    })
    .expect("closure geometry is regular");
    (d, cycles)
}

/// Removes vertices lying in the interior of the segment joining their neighbours.
fn drop_straight_vertices(mut pts: Vec<RationalPoint>) -> Vec<RationalPoint> {
    let mut k = 0;
    while k < pts.len() && pts.len() > 3 {
        let m = pts.len();
        let (a, b, c) = (&pts[(k + m - 1) % m], &pts[k], &pts[(k + 1) % m]);
        if orient(a, b, c) == Ordering::Equal {
            pts.remove(k);
            k = k.saturating_sub(1);
        } else {
            k += 1;
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn identity_closure_is_unlink() {
        let d = closure(&BraidWord::identity(3));
        assert_eq!(d.component_count(), 3);
        assert!(d.crossings().is_empty());
        assert_eq!(
            d.components()[0],
            vec![
                RationalPoint::int(1, 1),
                RationalPoint::int(1, 0),
                RationalPoint::frac(4, 3, -1, 1),
                RationalPoint::frac(4, 3, 2, 1),
            ]
        );
    }

    #[test]
    fn crossings_and_writhe() {
        // Each letter is one box crossing; the rise over its band adds two more.
        let d = closure(&w(2, &[1, 1, 1]));
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossings().len(), 9);
        assert_eq!(d.writhe(), 3);
        let d = closure(&w(3, &[1, -2, 1, -2]));
        assert_eq!(d.component_count(), w(3, &[1, -2, 1, -2]).permutation().cycle_count());
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn only_rises_ascend() {
        let d = closure(&w(3, &[2, -1, 2]));
        let ups: Vec<_> = d
            .segment_ids()
            .filter(|&s| {
                let v = d.direction(s);
                v.y > Q::zero()
            })
            .collect();
        assert_eq!(ups.len(), 3);
        assert!(ups.iter().all(|&s| d.direction(s).x.is_zero()));
    }
}
