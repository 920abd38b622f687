//! Local planar moves: curls (R1), fingers (R2) and triple-point slides (R3),
//! with every orientation/over-under variant addressed by the move's fields.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::{rebuild_from, LinkDiagram, SegId};
use crate::error::{Error, Result};
use crate::geom::{self, cross, dot, q, qf, RationalPoint, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ReidemeisterMove {
    /// Insert a curl into `segment` on the given side of its direction.
    R1Add { segment: SegId, side: Side, first_pass_over: bool },
    /// Remove a curl: the `count` vertices starting at `vertex` form a loop
    /// closed by exactly one self-crossing.
    R1Remove { component: usize, vertex: usize, count: usize },
    /// Push a finger of `finger` across `target`.
    R2Add { finger: SegId, target: SegId, over: bool },
    /// Retract a finger: the `count` vertices starting at `vertex` bound a
    /// bigon with one other strand.
    R2Remove { component: usize, vertex: usize, count: usize },
    /// Slide `segment`, which passes over (or under) two strands, across their crossing.
    R3 { segment: SegId },
}

pub fn apply_reidemeister(d: &LinkDiagram, mv: &ReidemeisterMove) -> Result<LinkDiagram> {
    match *mv {
        ReidemeisterMove::R1Add { segment, side, first_pass_over } => r1_add(d, segment, side, first_pass_over),
        ReidemeisterMove::R1Remove { component, vertex, count } => remove_path(d, component, vertex, count, 1),
        ReidemeisterMove::R2Add { finger, target, over } => r2_add(d, finger, target, over),
        ReidemeisterMove::R2Remove { component, vertex, count } => remove_path(d, component, vertex, count, 2),
        ReidemeisterMove::R3 { segment } => r3(d, segment),
    }
}

fn check_segment(d: &LinkDiagram, s: SegId) -> Result<()> {
    if d.contains_segment(s) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(format!("segment {s:?}")))
    }
}

/// Polygons with `insert` placed after vertex `s.segment` of its component.
fn with_inserted(d: &LinkDiagram, s: SegId, insert: &[RationalPoint]) -> Vec<Vec<RationalPoint>> {
    let mut comps = d.components().to_vec();
    let poly = &mut comps[s.component];
    for (k, p) in insert.iter().enumerate() {
        poly.insert(s.segment + 1 + k, p.clone());
    }
    comps
}

/// Segment-id map for an insertion of `k` vertices after vertex `s.segment`:
/// the first and last new segments continue the old one, the middle ones are new.
fn insertion_origin(s: SegId, k: usize) -> impl Fn(SegId) -> Option<SegId> {
    move |t: SegId| {
        if t.component != s.component || t.segment <= s.segment {
            Some(t)
        } else if t.segment < s.segment + k {
            None
        } else if t.segment == s.segment + k {
            Some(s)
        } else {
            Some(SegId::new(t.component, t.segment - k))
        }
    }
}

fn shifted(s: SegId, at: SegId, k: usize) -> SegId {
    if s.component == at.component && s.segment > at.segment {
        SegId::new(s.component, s.segment + k)
    } else {
        s
    }
}

fn foreign_vertex_inside(
    comps: &[Vec<RationalPoint>],
    region: &[RationalPoint],
    skip: &dyn Fn(usize, usize) -> bool,
) -> bool {
    comps.iter().enumerate().any(|(c, poly)| {
        poly.iter()
            .enumerate()
            .any(|(k, v)| !skip(c, k) && geom::point_in_polygon(v, region))
    })
}

fn r1_add(d: &LinkDiagram, s: SegId, side: Side, first_pass_over: bool) -> Result<LinkDiagram> {
    check_segment(d, s)?;
    let (a, b) = d.endpoints(s);
    let (a, b) = (a.clone(), b.clone());
    let u = b.sub(&a);
    let mut n = RationalPoint::new(-u.y.clone(), u.x.clone());
    if side == Side::Right {
        n = n.scale(&q(-1));
    }
    // Curl in local (u, n) coordinates; segments 0 and 3 of it cross.
    let shape = [(-2, 0), (1, 1), (0, 2), (-1, 1), (2, 0)];
    for t in [qf(1, 2), qf(1, 3), qf(2, 3), qf(1, 5), qf(4, 5)] {
        let mut h = qf(1, 16);
        for _ in 0..24 {
            let base = a.lerp(&b, &t);
            let pts: Vec<RationalPoint> = shape
                .iter()
                .map(|&(x, y)| base.add(&u.scale(&(&h * q(x)))).add(&n.scale(&(&h * q(y)))))
                .collect();
            h /= q(2);
            let comps = with_inserted(d, s, &pts);
            let first = SegId::new(s.component, s.segment + 1);
            let second = SegId::new(s.component, s.segment + 4);
            let origin = insertion_origin(s, 5);
            let built = rebuild_from(d, comps.clone(), &origin, |x, y, _| {
                let key = super::pair_key(x, y);
                if key == (first, second) {
                    Ok(if first_pass_over { first } else { second })
                } else {
                    Err(Error::ObstructedDisc(format!("curl meets {x:?}/{y:?}")))
                }
            });
            let Ok(out) = built else { continue };
            if out.crossings().len() != d.crossings().len() + 1 {
                continue;
            }
            let x = out.crossing_between(first, second).unwrap().point.clone();
            let loop_region = vec![x, pts[1].clone(), pts[2].clone(), pts[3].clone()];
            let lo = s.segment + 1;
            let skip = |c: usize, k: usize| c == s.component && k >= lo && k < lo + 5;
            if foreign_vertex_inside(&comps, &loop_region, &skip) {
                continue;
            }
            return Ok(out);
        }
    }
    Err(Error::ObstructedDisc(format!("no room for a curl on {s:?}")))
}

fn r2_add(d: &LinkDiagram, finger: SegId, target: SegId, over: bool) -> Result<LinkDiagram> {
    check_segment(d, finger)?;
    check_segment(d, target)?;
    if finger == target || d.adjacent(finger, target) {
        return Err(Error::PatternMismatch("finger and target must be distinct, non-adjacent".into()));
    }
    let (a, b) = d.endpoints(finger);
    let (c, e) = d.endpoints(target);
    let da = b.sub(a);
    let dc = e.sub(c);
    for (ta, tc) in [(qf(1, 2), qf(1, 2)), (qf(1, 3), qf(1, 2)), (qf(2, 3), qf(1, 2)), (qf(1, 2), qf(1, 3)), (qf(1, 2), qf(2, 3))] {
        let base = a.lerp(b, &ta);
        let goal = c.lerp(e, &tc);
        let v = goal.sub(&base);
        if cross(&da, &v).is_zero() || cross(&dc, &v).is_zero() {
            continue;
        }
        let mut h = qf(1, 8);
        for _ in 0..24 {
            let b1 = base.add(&da.scale(&-h.clone()));
            let b2 = base.add(&da.scale(&h));
            let tip = goal.add(&v.scale(&h));
            let mut t1 = tip.add(&dc.scale(&-h.clone()));
            let mut t2 = tip.add(&dc.scale(&h));
            if geom::segments_meet(&b1, &t1, &t2, &b2) {
                std::mem::swap(&mut t1, &mut t2);
            }
            h /= q(2);
            let pts = vec![b1.clone(), t1.clone(), t2.clone(), b2.clone()];
            let comps = with_inserted(d, finger, &pts);
            let tgt = shifted(target, finger, 4);
            let side1 = SegId::new(finger.component, finger.segment + 1);
            let side2 = SegId::new(finger.component, finger.segment + 3);
            let origin = insertion_origin(finger, 4);
            let built = rebuild_from(d, comps.clone(), &origin, |x, y, _| {
                let k = super::pair_key(x, y);
                if k == super::pair_key(side1, tgt) || k == super::pair_key(side2, tgt) {
                    let f = if x == tgt { y } else { x };
                    Ok(if over { f } else { tgt })
                } else {
                    Err(Error::ObstructedDisc(format!("finger meets {x:?}/{y:?}")))
                }
            });
            let Ok(out) = built else { continue };
            if out.crossings().len() != d.crossings().len() + 2 {
                continue;
            }
            let lo = finger.segment + 1;
            let skip = |cc: usize, k: usize| cc == finger.component && k >= lo && k < lo + 4;
            if foreign_vertex_inside(&comps, &pts, &skip) {
                continue;
            }
            return Ok(out);
        }
    }
    Err(Error::ObstructedDisc(format!("no room for a finger from {finger:?} to {target:?}")))
}

/// Deletes a run of vertices, straightening the path; `removed` crossings
/// (1 for a curl, 2 for a bigon) must disappear and nothing else may change.
fn remove_path(d: &LinkDiagram, component: usize, vertex: usize, count: usize, removed: usize) -> Result<LinkDiagram> {
    if component >= d.component_count() {
        return Err(Error::IndexOutOfRange(format!("component {component}")));
    }
    let m = d.segment_count(component);
    if count == 0 || vertex >= m || m < count + 3 {
        return Err(Error::IndexOutOfRange(format!("vertex run {vertex}+{count} of component {component}")));
    }
    let poly = &d.components()[component];
    let prev = (vertex + m - 1) % m;
    let next = (vertex + count) % m;
    // Old segments along the deleted path: prev, prev+1, ..., prev+count.
    let path: Vec<SegId> = (0..=count).map(|k| SegId::new(component, (prev + k) % m)).collect();
    let on_path = |s: SegId| path.contains(&s);
    let path_crossings: Vec<_> = d
        .crossings()
        .iter()
        .filter(|c| on_path(c.over) || on_path(c.under))
        .collect();

    let gone: Vec<_> = match removed {
        1 => path_crossings
            .iter()
            .filter(|c| on_path(c.over) && on_path(c.under))
            .copied()
            .collect(),
        _ => {
            let internal = path_crossings.iter().any(|c| on_path(c.over) && on_path(c.under));
            if internal {
                return Err(Error::PatternMismatch("finger crosses itself".into()));
            }
            // The bigon: two crossings with a common over/under role.
            let cand: Vec<_> = path_crossings
                .iter()
                .filter(|c| {
                    let (a, b) = (poly[prev].clone(), poly[next].clone());
                    !geom::on_open_segment(&c.point, &a, &b)
                })
                .copied()
                .collect();
            cand
        }
    };
    if gone.len() != removed {
        return Err(Error::PatternMismatch(format!(
            "expected {removed} crossing(s) to remove, found {}",
            gone.len()
        )));
    }
    if removed == 2 {
        let role = |c: &crate::diagram::CrossingRecord| on_path(c.over);
        if role(gone[0]) != role(gone[1]) {
            return Err(Error::PatternMismatch("bigon strands alternate over/under".into()));
        }
        let o0 = gone[0].other(if on_path(gone[0].over) { gone[0].over } else { gone[0].under });
        let o1 = gone[1].other(if on_path(gone[1].over) { gone[1].over } else { gone[1].under });
        if o0.component != o1.component {
            return Err(Error::PatternMismatch("bigon sides belong to different strands".into()));
        }
    }
    let kept: Vec<_> = path_crossings.iter().filter(|c| !gone.contains(c)).copied().collect();

    let mut comps = d.components().to_vec();
    let mut region: Vec<RationalPoint> = (0..=count + 1).map(|k| poly[(prev + k) % m].clone()).collect();
    if removed == 1 {
        // The curl itself: crossing point plus the vertices between its passes.
        let x = &gone[0];
        let (s1, s2) = if (x.over.segment + m - prev) % m <= (x.under.segment + m - prev) % m {
            (x.over, x.under)
        } else {
            (x.under, x.over)
        };
        region = vec![x.point.clone()];
        let mut k = (s1.segment + 1) % m;
        while k != (s2.segment + 1) % m {
            region.push(poly[k].clone());
            k = (k + 1) % m;
        }
    }
    let mut removed_idx: Vec<usize> = (0..count).map(|k| (vertex + k) % m).collect();
    removed_idx.sort_unstable_by(|a, b| b.cmp(a));
    for k in &removed_idx {
        comps[component].remove(*k);
    }
    // Index of the straightened segment in the new polygon.
    let new_prev = prev - removed_idx.iter().filter(|&&k| k < prev).count();
    let merged = SegId::new(component, new_prev);
    let mm = m - count;
    let old_of = |t: SegId| -> Option<SegId> {
        if t.component != component {
            return Some(t);
        }
        if t == merged {
            return None;
        }
        // Walk forward from the merged segment.
        let steps = (t.segment + mm - new_prev) % mm;
        Some(SegId::new(component, (next + steps - 1) % m))
    };
    let out = rebuild_from(d, comps.clone(), &old_of, |x, y, p| {
        let other = if x == merged { y } else { x };
        let other_old = old_of(other).unwrap_or(other);
        match kept.iter().find(|c| &c.point == p && c.involves(other_old)) {
            Some(c) => Ok(if c.over == other_old { other } else { merged }),
            None => Err(Error::ObstructedDisc("straightened path meets new strands".into())),
        }
    })?;
    if out.crossings().len() + removed != d.crossings().len() {
        return Err(Error::ObstructedDisc("crossing count changed unexpectedly".into()));
    }
    let allowed: BTreeSet<RationalPoint> = region.iter().cloned().collect();
    let inside = d.components().iter().enumerate().any(|(c, pl)| {
        pl.iter().enumerate().any(|(k, v)| {
            let in_path = c == component && (0..count).any(|j| (vertex + j) % m == k);
            !in_path && !allowed.contains(v) && region.len() >= 3 && geom::point_in_polygon(v, &region) && {
                // Vertices of the bigon's other side may sit inside it.
                removed == 1 || !gone.iter().any(|g| g.over.component == c || g.under.component == c)
            }
        })
    });
    if inside {
        return Err(Error::ObstructedDisc("move region is not empty".into()));
    }
    Ok(out)
}

fn r3(d: &LinkDiagram, s: SegId) -> Result<LinkDiagram> {
    check_segment(d, s)?;
    let on_s: Vec<_> = d.crossings().iter().filter(|c| c.involves(s)).collect();
    if on_s.len() != 2 {
        return Err(Error::PatternMismatch(format!("segment {s:?} must carry exactly two crossings")));
    }
    let s_over = on_s[0].over == s;
    if (on_s[1].over == s) != s_over {
        return Err(Error::PatternMismatch("moving strand must pass over both or under both".into()));
    }
    let e = on_s[0].other(s);
    let f = on_s[1].other(s);
    let Some(x) = d.crossing_between(e, f) else {
        return Err(Error::PatternMismatch("the other two strands do not cross".into()));
    };
    let xpt = x.point.clone();
    let (a, b) = d.endpoints(s);
    let (a, b) = (a.clone(), b.clone());
    let dir = b.sub(&a);
    let nrm = RationalPoint::new(-dir.y.clone(), dir.x.clone());
    let len2 = dot(&dir, &dir);
    let kx = cross(&dir, &xpt.sub(&a)) / &len2;
    let tx = dot(&dir, &xpt.sub(&a)) / &len2;
    if kx.is_zero() {
        return Err(Error::PatternMismatch("crossing lies on the moving segment".into()));
    }
    // Intersection parameters of lines e, f with a parallel line at offset k.
    let line_param = |seg: SegId, k: &Q| -> Option<Q> {
        let (p0, p1) = d.endpoints(seg);
        let r = p1.sub(p0);
        let base = a.add(&nrm.scale(k));
        let den = cross(&dir, &r);
        if den.is_zero() {
            return None;
        }
        // base + t dir = p0 + u r  =>  t = cross(p0 - base, r) / cross(dir, r)
        Some(cross(&p0.sub(&base), &r) / den)
    };
    for mu in [qf(1, 2), qf(1, 4), qf(1, 8), qf(1, 16), qf(1, 64)] {
        let k = &kx * (Q::one() + &mu);
        let (Some(te), Some(tf)) = (line_param(e, &k), line_param(f, &k)) else { continue };
        let lo = [te.clone(), tf.clone(), tx.clone()].into_iter().min().unwrap();
        let hi = [te, tf, tx.clone()].into_iter().max().unwrap();
        let span = &hi - &lo;
        let t1 = &lo - &span * &mu;
        let t2 = &hi + &span * &mu;
        if !t1.is_positive() || t2 >= Q::one() {
            continue;
        }
        let p1 = a.add(&dir.scale(&t1)).add(&nrm.scale(&k));
        let p2 = a.add(&dir.scale(&t2)).add(&nrm.scale(&k));
        let comps = with_inserted(d, s, &[p1.clone(), p2.clone()]);
        let (ne, nf) = (shifted(e, s, 2), shifted(f, s, 2));
        let mid = SegId::new(s.component, s.segment + 1);
        let origin = |t: SegId| -> Option<SegId> {
            if t.component == s.component && (t.segment == s.segment || t.segment == s.segment + 2) {
                return None;
            }
            insertion_origin(s, 2)(t)
        };
        let built = rebuild_from(d, comps.clone(), &origin, |p, r, _| {
            let other = if p == mid { r } else if r == mid { p } else {
                return Err(Error::ObstructedDisc("slide path meets other strands".into()));
            };
            if other == ne || other == nf {
                Ok(if s_over { mid } else { other })
            } else {
                Err(Error::ObstructedDisc("slide path meets other strands".into()))
            }
        });
        let Ok(out) = built else { continue };
        if out.crossings().len() != d.crossings().len() {
            continue;
        }
        let region = vec![a.clone(), p1.clone(), p2.clone(), b.clone()];
        let lo_v = s.segment + 1;
        let skip = |c: usize, kk: usize| c == s.component && kk >= s.segment && kk <= lo_v + 2;
        if foreign_vertex_inside(&comps, &region, &skip) {
            continue;
        }
        let stray = d
            .crossings()
            .iter()
            .any(|c| c.point != xpt && !c.involves(s) && geom::point_in_polygon(&c.point, &region));
        if stray {
            continue;
        }
        return Ok(out);
    }
    Err(Error::ObstructedDisc(format!("no clear triangle for sliding {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::int(x, y)
    }

    fn square() -> LinkDiagram {
        LinkDiagram::new(vec![vec![p(0, 0), p(8, 1), p(9, 9), p(1, 8)]], &[]).unwrap()
    }

    #[test]
    fn curl_adds_one_crossing_and_is_removable() {
        let d = square();
        for side in [Side::Left, Side::Right] {
            for over in [true, false] {
                let k = apply_reidemeister(
                    &d,
                    &ReidemeisterMove::R1Add { segment: SegId::new(0, 1), side, first_pass_over: over },
                )
                .unwrap();
                assert_eq!(k.crossings().len(), 1);
                let back =
                    apply_reidemeister(&k, &ReidemeisterMove::R1Remove { component: 0, vertex: 2, count: 5 })
                        .unwrap();
                assert_eq!(back, d);
            }
        }
    }

    #[test]
    fn finger_round_trip_is_exact() {
        let d = LinkDiagram::new(
            vec![vec![p(0, 0), p(4, 1), p(1, 5)], vec![p(10, 0), p(12, 6), p(7, 3)]],
            &[],
        )
        .unwrap();
        let f = apply_reidemeister(
            &d,
            &ReidemeisterMove::R2Add { finger: SegId::new(0, 0), target: SegId::new(1, 2), over: true },
        )
        .unwrap();
        assert_eq!(f.crossings().len(), 2);
        assert!(f.crossings().iter().all(|c| c.over.component == 0));
        let back = apply_reidemeister(&f, &ReidemeisterMove::R2Remove { component: 0, vertex: 1, count: 4 }).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn obstructed_and_mismatch() {
        let d = square();
        assert!(matches!(
            apply_reidemeister(&d, &ReidemeisterMove::R3 { segment: SegId::new(0, 0) }),
            Err(Error::PatternMismatch(_))
        ));
        assert!(matches!(
            apply_reidemeister(&d, &ReidemeisterMove::R1Remove { component: 0, vertex: 1, count: 1 }),
            Err(Error::PatternMismatch(_)) | Err(Error::IndexOutOfRange(_))
        ));
    }
}
