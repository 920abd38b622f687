//! Up-arcs, their labels and sliding triangles; subdivision into a labelled
//! diagram satisfying the triangle condition.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::diagram::{rebuild_from, validate_generic, LinkDiagram, SegId};
use crate::error::{Error, Result};
use crate::geom::{self, cross, dot, qf, RationalPoint, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Over,
    Under,
    Unlabelled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpArc {
    pub segment: SegId,
    pub label: Label,
    /// Carries no crossing.
    pub free: bool,
}

/// Right triangle below an up-arc QP with corner R = (P.x, Q.y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlidingTriangle {
    pub up_arc: SegId,
    pub bottom: RationalPoint,
    pub corner: RationalPoint,
    pub top: RationalPoint,
    pub label: Label,
}

impl SlidingTriangle {
    pub fn of(d: &LinkDiagram, arc: &UpArc) -> Self {
        let (q, p) = d.endpoints(arc.segment);
        SlidingTriangle {
            up_arc: arc.segment,
            bottom: q.clone(),
            corner: RationalPoint::new(p.x.clone(), q.y.clone()),
            top: p.clone(),
            label: arc.label,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.bottom.x == self.top.x
    }

    /// Vertex list; two points when the up-arc is vertical.
    pub fn vertices(&self) -> Vec<RationalPoint> {
        if self.is_degenerate() {
            vec![self.bottom.clone(), self.top.clone()]
        } else {
            vec![self.bottom.clone(), self.corner.clone(), self.top.clone()]
        }
    }

    pub fn adjacent(&self, o: &SlidingTriangle) -> bool {
        self.bottom == o.bottom || self.bottom == o.top || self.top == o.bottom || self.top == o.top
    }

    pub fn meets(&self, o: &SlidingTriangle) -> bool {
        let (ax0, ax1) = minmax(&self.bottom.x, &self.top.x);
        let (bx0, bx1) = minmax(&o.bottom.x, &o.top.x);
        if ax1 < bx0 || bx1 < ax0 || self.top.y < o.bottom.y || o.top.y < self.bottom.y {
            return false;
        }
        geom::convex_meet(&self.vertices(), &o.vertices())
    }
}

fn minmax<'a>(a: &'a Q, b: &'a Q) -> (&'a Q, &'a Q) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Non-adjacent pairs of triangles with the same label that meet.
pub fn triangle_violations(ts: &[SlidingTriangle]) -> Vec<(SegId, SegId)> {
    let mut out = Vec::new();
    for i in 0..ts.len() {
        for j in (i + 1)..ts.len() {
            let (a, b) = (&ts[i], &ts[j]);
            if a.label == b.label && a.label != Label::Unlabelled && !a.adjacent(b) && a.meets(b) {
                out.push((a.up_arc, b.up_arc));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDiagram {
    pub diagram: LinkDiagram,
    pub up_arcs: Vec<UpArc>,
    pub triangles: Vec<SlidingTriangle>,
    /// For each segment of `diagram`, the segment of the unprepared diagram it lies on.
    pub source: Vec<Vec<SegId>>,
}

impl LabeledDiagram {
    /// Segments of the prepared diagram lying on the given original segment.
    pub fn pieces_of(&self, original: SegId) -> Vec<SegId> {
        self.source
            .iter()
            .enumerate()
            .flat_map(|(c, v)| v.iter().enumerate().filter(move |(_, &o)| o == original).map(move |(s, _)| SegId::new(c, s)))
            .collect()
    }

    /// Same geometry with one free up-arc relabelled; fails if the triangle
    /// condition breaks.
    pub fn relabel(&self, arc: SegId, label: Label) -> Result<LabeledDiagram> {
        let k = self
            .up_arcs
            .iter()
            .position(|a| a.segment == arc)
            .ok_or_else(|| Error::IndexOutOfRange(format!("{arc:?} is not an up-arc")))?;
        if !self.up_arcs[k].free {
            return Err(Error::LabelConflict(arc));
        }
        let mut out = self.clone();
        out.up_arcs[k].label = label;
        out.triangles[k].label = label;
        let v = triangle_violations(&out.triangles);
        if !v.is_empty() {
            return Err(Error::NotGeneric(format!("triangle condition fails for {:?}", v[0])));
        }
        Ok(out)
    }
}

/// The triangle condition on a labelled diagram, with its violations.
pub fn check_triangle_condition(ld: &LabeledDiagram) -> (bool, Vec<(SegId, SegId)>) {
    let v = triangle_violations(&ld.triangles);
    (v.is_empty(), v)
}

/// Segments whose oriented direction points upward.
pub fn find_up_arcs(d: &LinkDiagram) -> Result<Vec<SegId>> {
    let mut out = Vec::new();
    for s in d.segment_ids() {
        let (a, b) = d.endpoints(s);
        if a.y == b.y {
            return Err(Error::NotGeneric(format!("horizontal segment {s:?}")));
        }
        if b.y > a.y {
            out.push(s);
        }
    }
    Ok(out)
}

/// ε² with r = d/4, where d is the least distance between crossings.
///
/// s is taken over pairs of non-adjacent segments: their distance when they
/// are disjoint, and the lower bound r·sinθ when they cross at angle θ.
/// Without crossings ε is half the shortest segment.
pub fn subdivision_epsilon_squared(d: &LinkDiagram) -> Q {
    let segs: Vec<SegId> = d.segment_ids().collect();
    let shortest = segs
        .iter()
        .map(|&s| {
            let (a, b) = d.endpoints(s);
            a.dist2(b)
        })
        .min()
        .unwrap_or_else(Q::zero);
    let cs = d.crossings();
    if cs.is_empty() {
        return shortest / Q::from_integer(4.into());
    }
    let r2 = if cs.len() >= 2 {
        let mut best: Option<Q> = None;
        for i in 0..cs.len() {
            for j in (i + 1)..cs.len() {
                let v = cs[i].point.dist2(&cs[j].point);
                if best.as_ref().is_none_or(|b| &v < b) {
                    best = Some(v);
                }
            }
        }
        best.unwrap() / Q::from_integer(16.into())
    } else {
        // A lone crossing: measure to the nearest vertex instead.
        let x = &cs[0].point;
        let near = d.components().iter().flatten().map(|v| v.dist2(x)).min().unwrap();
        near / Q::from_integer(16.into())
    };
    let mut s2: Option<Q> = None;
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (a, b) = (segs[i], segs[j]);
            if d.adjacent(a, b) {
                continue;
            }
            let v = match d.crossing_between(a, b) {
                Some(_) => {
                    let (u, w) = (d.direction(a), d.direction(b));
                    let c = cross(&u, &w);
                    &r2 * &c * &c / (dot(&u, &u) * dot(&w, &w))
                }
                None => {
                    let (p0, p1) = d.endpoints(a);
                    let (q0, q1) = d.endpoints(b);
                    geom::dist2_segments(p0, p1, q0, q1)
                }
            };
            if s2.as_ref().is_none_or(|b| &v < b) {
                s2 = Some(v);
            }
        }
    }
    let m = match s2 {
        Some(s2) if s2 < r2 => s2,
        _ => r2,
    };
    m / Q::from_integer(4.into())
}

/// ε itself (exact when ε² is a rational square, else a lower bound).
pub fn subdivision_epsilon(d: &LinkDiagram) -> Q {
    geom::sqrt_floor(&subdivision_epsilon_squared(d))
}

/// Subdivision fractions tried in order: 1/2, 1/3, 2/3, 1/4, 3/4, ...
fn fractions() -> impl Iterator<Item = Q> {
    (2..64i64).flat_map(|m| (1..m).map(move |k| qf(k, m))).filter(|f| {
        let (n, d) = (f.numer().clone(), f.denom().clone());
        // Skip non-reduced repeats such as 2/4.
        num_integer::Integer::gcd(&n, &d) == 1.into()
    })
}

/// Working state of `prepare`: the diagram and each segment's source.
struct Work {
    d: LinkDiagram,
    source: Vec<Vec<SegId>>,
}

impl Work {
    fn forbidden_x(&self) -> BTreeSet<Q> {
        let mut xs: BTreeSet<Q> = self.d.components().iter().flatten().map(|v| v.x.clone()).collect();
        xs.extend(self.d.crossings().iter().map(|c| c.point.x.clone()));
        xs
    }

    /// Inserts a new vertex inside `seg` between parameters `lo` and `hi`,
    /// at an x-coordinate shared by no vertex or crossing.
    fn split(&mut self, seg: SegId, lo: &Q, hi: &Q) -> Result<()> {
        let (a, b) = self.d.endpoints(seg);
        let (a, b) = (a.clone(), b.clone());
        let bad = self.forbidden_x();
        let vertical = a.x == b.x;
        for f in fractions() {
            let t = lo + (hi - lo) * &f;
            let mut p = a.lerp(&b, &t);
            if vertical {
                // Tilt: step sideways off the vertical line.
                let len = (&b.y - &a.y).abs();
                p.x += &len * &f * qf(1, 64);
            }
            if bad.contains(&p.x) {
                continue;
            }
            if let Ok(next) = self.insert(seg, p) {
                *self = next;
                return Ok(());
            }
        }
        Err(Error::InvariantViolation(format!("no admissible subdividing point on {seg:?}")))
    }

    fn insert(&self, seg: SegId, p: RationalPoint) -> Result<Work> {
        let mut comps = self.d.components().to_vec();
        comps[seg.component].insert(seg.segment + 1, p);
        let origin = |s: SegId| -> Option<SegId> {
            if s.component != seg.component || s.segment <= seg.segment {
                Some(s)
            } else {
                Some(SegId::new(s.component, s.segment - 1))
            }
        };
        let next = rebuild_from(&self.d, comps, &origin, |a, b, _| Err(Error::MissingAssignment(a, b)))?;
        if next.crossings().len() != self.d.crossings().len() {
            return Err(Error::InvariantViolation("subdivision changed the crossings".into()));
        }
        let mut source = self.source.clone();
        let o = source[seg.component][seg.segment];
        source[seg.component].insert(seg.segment + 1, o);
        Ok(Work { d: next, source })
    }
}

/// Crossing roles along a segment: `(param, is_over)` in order.
fn roles(d: &LinkDiagram, s: SegId) -> Vec<(Q, bool)> {
    d.crossings_on(s).into_iter().map(|(_, t, over)| (t, over)).collect()
}

fn up_arcs_with_forced_labels(d: &LinkDiagram) -> Result<Vec<UpArc>> {
    let mut arcs = Vec::new();
    for s in find_up_arcs(d)? {
        let r = roles(d, s);
        let label = match r.first() {
            None => Label::Unlabelled,
            Some(&(_, over)) => {
                if r.iter().any(|&(_, o)| o != over) {
                    return Err(Error::LabelConflict(s));
                }
                if over {
                    Label::Over
                } else {
                    Label::Under
                }
            }
        };
        arcs.push(UpArc { segment: s, label, free: r.is_empty() });
    }
    Ok(arcs)
}

const MAX_ROUNDS: usize = 400;

/// Subdivides and labels a generic diagram so that the triangle condition holds.
///
/// Ascending segments are cut only where their crossings change role, and
/// further only where two triangles of one type would otherwise meet. Free
/// up-arcs are 'over' unless they meet an 'over' triangle.
pub fn prepare(d: &LinkDiagram) -> Result<LabeledDiagram> {
    find_up_arcs(d)?;
    let report = validate_generic(d, None);
    if !report.is_generic {
        return Err(Error::NotGeneric(report.to_json()));
    }
    let source = d.components().iter().enumerate().map(|(c, p)| (0..p.len()).map(|s| SegId::new(c, s)).collect()).collect();
    let mut w = Work { d: d.clone(), source };

    // Cut ascending segments between crossings of different roles.
    'split: loop {
        for s in find_up_arcs(&w.d)? {
            let r = roles(&w.d, s);
            if let Some(k) = (1..r.len()).find(|&k| r[k].1 != r[k - 1].1) {
                let (lo, hi) = (r[k - 1].0.clone(), r[k].0.clone());
                w.split(s, &lo, &hi)?;
                continue 'split;
            }
        }
        break;
    }

    for _ in 0..MAX_ROUNDS {
        let mut arcs = up_arcs_with_forced_labels(&w.d)?;
        let mut tris: Vec<SlidingTriangle> = arcs.iter().map(|a| SlidingTriangle::of(&w.d, a)).collect();
        let mut split_free = None;
        for k in 0..arcs.len() {
            if !arcs[k].free {
                continue;
            }
            let meets = |label: Label| {
                tris.iter()
                    .enumerate()
                    .any(|(j, t)| j != k && t.label == label && !t.adjacent(&tris[k]) && t.meets(&tris[k]))
            };
            let (over, under) = (meets(Label::Over), meets(Label::Under));
            if over && under && split_free.is_none() {
                split_free = Some(arcs[k].segment);
            }
            let label = if over && !under { Label::Under } else { Label::Over };
            arcs[k].label = label;
            tris[k].label = label;
        }
        if let Some(s) = split_free {
            w.split(s, &Q::zero(), &qf(1, 1))?;
            continue;
        }
        let v = triangle_violations(&tris);
        let Some(&(a, b)) = v.first() else {
            let ld = LabeledDiagram { diagram: w.d, up_arcs: arcs, triangles: tris, source: w.source };
            let rep = validate_generic(&ld.diagram, Some(&ld.triangles));
            if !rep.is_generic {
                return Err(Error::NotGeneric(rep.to_json()));
            }
            return Ok(ld);
        };
        // Halve the longer of the two (never a vertical one if avoidable).
        let len = |s: SegId| {
            let (p, q) = w.d.endpoints(s);
            p.dist2(q)
        };
        let vertical = |s: SegId| w.d.direction(s).x.is_zero();
        let pick = match (vertical(a), vertical(b)) {
            (true, false) => b,
            (false, true) => a,
            _ if len(a) >= len(b) => a,
            _ => b,
        };
        w.split(pick, &Q::zero(), &qf(1, 1))?;
    }
    Err(Error::InvariantViolation("triangle condition not reached by subdivision".into()))
}
