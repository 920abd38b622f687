//! Oriented PL link diagrams with exact rational vertices and explicit
//! over/under crossing records.

mod format;
mod generic;
pub mod reidemeister;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, cross, orient, RationalPoint, SegmentHit, Q};

pub use generic::{perturb_to_generic, perturbation_bound, validate_generic, GenericityReport};
pub use reidemeister::{apply_reidemeister, ReidemeisterMove, Side};

/// Segment `segment` of polygon `component`; it joins vertex `segment` to
/// vertex `segment + 1` (cyclically).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SegId {
    pub component: usize,
    pub segment: usize,
}

impl SegId {
    pub fn new(component: usize, segment: usize) -> Self {
        SegId { component, segment }
    }
}

impl fmt::Debug for SegId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.component, self.segment)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossingRecord {
    pub over: SegId,
    pub under: SegId,
    pub point: RationalPoint,
    /// +1 when (over direction, under direction) is a positively oriented frame.
    pub sign: i8,
}

impl CrossingRecord {
    pub fn involves(&self, s: SegId) -> bool {
        self.over == s || self.under == s
    }

    pub fn other(&self, s: SegId) -> SegId {
        if self.over == s {
            self.under
        } else {
            self.over
        }
    }
}

/// Over-choices keyed by the unordered segment pair (smaller id first).
pub type OverAssignments = BTreeMap<(SegId, SegId), SegId>;

pub fn pair_key(a: SegId, b: SegId) -> (SegId, SegId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Oriented closed polygons plus the complete list of their crossings.
///
/// Values are immutable; every operation returns a new diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    components: Vec<Vec<RationalPoint>>,
    crossings: Vec<CrossingRecord>,
}

impl LinkDiagram {
    /// Builds a diagram from polygons and `(over, under)` segment pairs.
    pub fn new(components: Vec<Vec<RationalPoint>>, over_under: &[(SegId, SegId)]) -> Result<Self> {
        let mut assign = OverAssignments::new();
        for &(o, u) in over_under {
            assign.insert(pair_key(o, u), o);
        }
        recompute_crossings(components, &assign)
    }

    /// The empty diagram.
    pub fn empty() -> Self {
        LinkDiagram { components: vec![], crossings: vec![] }
    }

    pub fn components(&self) -> &[Vec<RationalPoint>] {
        &self.components
    }

    pub fn crossings(&self) -> &[CrossingRecord] {
        &self.crossings
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn segment_count(&self, component: usize) -> usize {
        self.components[component].len()
    }

    pub fn segment_ids(&self) -> impl Iterator<Item = SegId> + '_ {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, poly)| (0..poly.len()).map(move |s| SegId::new(c, s)))
    }

    pub fn contains_segment(&self, s: SegId) -> bool {
        s.component < self.components.len() && s.segment < self.components[s.component].len()
    }

    /// Start and end vertex of a segment, following orientation.
    pub fn endpoints(&self, s: SegId) -> (&RationalPoint, &RationalPoint) {
        let poly = &self.components[s.component];
        (&poly[s.segment], &poly[(s.segment + 1) % poly.len()])
    }

    pub fn direction(&self, s: SegId) -> RationalPoint {
        let (a, b) = self.endpoints(s);
        b.sub(a)
    }

    /// Segments sharing a vertex along the same polygon.
    pub fn adjacent(&self, a: SegId, b: SegId) -> bool {
        if a.component != b.component || a == b {
            return false;
        }
        let m = self.components[a.component].len();
        (a.segment + 1) % m == b.segment || (b.segment + 1) % m == a.segment
    }

    pub fn next_segment(&self, s: SegId) -> SegId {
        SegId::new(s.component, (s.segment + 1) % self.components[s.component].len())
    }

    pub fn prev_segment(&self, s: SegId) -> SegId {
        let m = self.components[s.component].len();
        SegId::new(s.component, (s.segment + m - 1) % m)
    }

    /// Crossings on a segment ordered along its orientation, as
    /// `(crossing index, parameter, is_over)`.
    pub fn crossings_on(&self, s: SegId) -> Vec<(usize, Q, bool)> {
        let (a, b) = self.endpoints(s);
        let mut out: Vec<(usize, Q, bool)> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(_, c)| c.involves(s))
            .map(|(i, c)| (i, geom::segment_param(&c.point, a, b), c.over == s))
            .collect();
        out.sort_by(|x, y| x.1.cmp(&y.1));
        out
    }

    pub fn crossing_between(&self, a: SegId, b: SegId) -> Option<&CrossingRecord> {
        self.crossings
            .iter()
            .find(|c| (c.over == a && c.under == b) || (c.over == b && c.under == a))
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Over-choices of the current crossings.
    pub fn assignments(&self) -> OverAssignments {
        self.crossings
            .iter()
            .map(|c| (pair_key(c.over, c.under), c.over))
            .collect()
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| CrossingRecord {
                over: c.under,
                under: c.over,
                point: c.point.clone(),
                sign: -c.sign,
            })
            .collect();
        LinkDiagram::sorted(self.components.clone(), crossings)
    }

    /// All coordinates multiplied by a positive factor.
    pub fn scaled(&self, k: &Q) -> LinkDiagram {
        assert!(k.is_positive());
        let components = self
            .components
            .iter()
            .map(|p| p.iter().map(|v| v.scale(k)).collect())
            .collect();
        let crossings = self
            .crossings
            .iter()
            .map(|c| CrossingRecord { point: c.point.scale(k), ..c.clone() })
            .collect();
        LinkDiagram::sorted(components, crossings)
    }

    /// Disjoint union, the second diagram's components appended.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> Result<LinkDiagram> {
        let base = self.components.len();
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        let mut assign = self.assignments();
        for c in &other.crossings {
            let o = SegId::new(c.over.component + base, c.over.segment);
            let u = SegId::new(c.under.component + base, c.under.segment);
            assign.insert(pair_key(o, u), o);
        }
        recompute_crossings(comps, &assign)
    }

    fn sorted(components: Vec<Vec<RationalPoint>>, mut crossings: Vec<CrossingRecord>) -> Self {
        crossings.sort_by_key(|a| (a.over, a.under));
        LinkDiagram { components, crossings }
    }
}

pub(crate) fn crossing_sign(over_dir: &RationalPoint, under_dir: &RationalPoint) -> i8 {
    match cross(over_dir, under_dir).cmp(&Q::zero()) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// Populates the crossing list of bare polygons from `over_assignments`.
pub fn recompute_crossings(
    components: Vec<Vec<RationalPoint>>,
    over_assignments: &OverAssignments,
) -> Result<LinkDiagram> {
    build_diagram(components, |a, b, _| {
        over_assignments
            .get(&pair_key(a, b))
            .copied()
            .ok_or(Error::MissingAssignment(a, b))
    })
}

struct SegBox<'a> {
    id: SegId,
    a: &'a RationalPoint,
    b: &'a RationalPoint,
    xmin: &'a Q,
    xmax: &'a Q,
    ymin: &'a Q,
    ymax: &'a Q,
}

/// Exact intersection of every segment pair; `decide` picks the over segment.
pub(crate) fn build_diagram<F>(components: Vec<Vec<RationalPoint>>, mut decide: F) -> Result<LinkDiagram>
where
    F: FnMut(SegId, SegId, &RationalPoint) -> Result<SegId>,
{
    for (ci, poly) in components.iter().enumerate() {
        if poly.len() < 3 {
            return Err(Error::InvalidDiagram(format!("component {ci} has fewer than 3 vertices")));
        }
        let m = poly.len();
        for k in 0..m {
            let (a, b, c) = (&poly[k], &poly[(k + 1) % m], &poly[(k + 2) % m]);
            if a == b {
                return Err(Error::InvalidDiagram(format!("component {ci} repeats vertex {k}")));
            }
            // A segment folding back onto its predecessor overlaps it.
            if orient(a, b, c) == Ordering::Equal && geom::dot(&b.sub(a), &c.sub(b)).is_negative() {
                return Err(Error::NonRegularProjection(format!(
                    "component {ci} folds back at vertex {}",
                    (k + 1) % m
                )));
            }
        }
    }
    let mut boxes = Vec::new();
    for (ci, poly) in components.iter().enumerate() {
        let m = poly.len();
        for s in 0..m {
            let a = &poly[s];
            let b = &poly[(s + 1) % m];
            let (xmin, xmax) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
            let (ymin, ymax) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
            boxes.push(SegBox { id: SegId::new(ci, s), a, b, xmin, xmax, ymin, ymax });
        }
    }
    let adjacent = |p: SegId, q: SegId| -> bool {
        if p.component != q.component {
            return false;
        }
        let m = components[p.component].len();
        (p.segment + 1) % m == q.segment || (q.segment + 1) % m == p.segment
    };
    let mut crossings = Vec::new();
    for i in 0..boxes.len() {
        for j in (i + 1)..boxes.len() {
            let (p, r) = (&boxes[i], &boxes[j]);
            if p.xmax < r.xmin || r.xmax < p.xmin || p.ymax < r.ymin || r.ymax < p.ymin {
                continue;
            }
            let hit = geom::intersect_segments(p.a, p.b, r.a, r.b);
            if adjacent(p.id, r.id) {
                // Shared vertex only; fold-backs were rejected above.
                continue;
            }
            match hit {
                SegmentHit::Disjoint => {}
                SegmentHit::Proper { point, .. } => {
                    let over = decide(p.id, r.id, &point)?;
                    if over != p.id && over != r.id {
                        return Err(Error::InvalidDiagram(format!(
                            "over choice {over:?} not among {:?}, {:?}",
                            p.id, r.id
                        )));
                    }
                    let under = if over == p.id { r.id } else { p.id };
                    let (ob, oe) = if over == p.id { (p.a, p.b) } else { (r.a, r.b) };
                    let (ub, ue) = if under == p.id { (p.a, p.b) } else { (r.a, r.b) };
                    let sign = crossing_sign(&oe.sub(ob), &ue.sub(ub));
                    crossings.push(CrossingRecord { over, under, point, sign });
                }
                SegmentHit::Touch(pt) => {
                    return Err(Error::NonRegularProjection(format!(
                        "segments {:?} and {:?} touch at {pt}",
                        p.id, r.id
                    )))
                }
                SegmentHit::Overlap => {
                    return Err(Error::NonRegularProjection(format!(
                        "segments {:?} and {:?} overlap",
                        p.id, r.id
                    )))
                }
            }
        }
    }
    let mut pts: Vec<&RationalPoint> = crossings.iter().map(|c| &c.point).collect();
    pts.sort();
    if pts.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NonRegularProjection("three segments meet at a point".into()));
    }
    Ok(LinkDiagram::sorted(components, crossings))
}

/// Rebuilds crossings for new polygons whose segments descend from old
/// segments (`origin`); crossings between descendants of an old crossing pair
/// inherit its over/under choice, everything else goes to `fresh`.
pub(crate) fn rebuild_from<F>(
    old: &LinkDiagram,
    components: Vec<Vec<RationalPoint>>,
    origin: &dyn Fn(SegId) -> Option<SegId>,
    mut fresh: F,
) -> Result<LinkDiagram>
where
    F: FnMut(SegId, SegId, &RationalPoint) -> Result<SegId>,
{
    let assign = old.assignments();
    build_diagram(components, |a, b, p| {
        if let (Some(oa), Some(ob)) = (origin(a), origin(b)) {
            if let Some(&o) = assign.get(&pair_key(oa, ob)) {
                return Ok(if o == oa { a } else { b });
            }
        }
        fresh(a, b, p)
    })
}

/// Inserts `p` as a new vertex inside segment `seg`.
pub fn subdivide_arc(d: &LinkDiagram, seg: SegId, p: &RationalPoint) -> Result<LinkDiagram> {
    if !d.contains_segment(seg) {
        return Err(Error::IndexOutOfRange(format!("segment {seg:?}")));
    }
    let (a, b) = d.endpoints(seg);
    if !geom::on_open_segment(p, a, b) {
        return Err(Error::PointNotOnSegment(seg));
    }
    if d.crossings.iter().any(|c| c.involves(seg) && &c.point == p) {
        return Err(Error::PointOnCrossing(seg));
    }
    let mut comps = d.components.clone();
    comps[seg.component].insert(seg.segment + 1, p.clone());
    let origin = |s: SegId| -> Option<SegId> {
        if s.component != seg.component || s.segment <= seg.segment {
            Some(s)
        } else {
            Some(SegId::new(s.component, s.segment - 1))
        }
    };
    rebuild_from(d, comps, &origin, |a, b, _| Err(Error::MissingAssignment(a, b)))
}

/// Deletes a vertex whose two segments are collinear (inverse of subdivision).
pub fn remove_vertex(d: &LinkDiagram, component: usize, vertex: usize) -> Result<LinkDiagram> {
    if component >= d.components.len() || vertex >= d.components[component].len() {
        return Err(Error::IndexOutOfRange(format!("vertex {vertex} of component {component}")));
    }
    let poly = &d.components[component];
    let m = poly.len();
    if m <= 3 {
        return Err(Error::PatternMismatch("component would have fewer than 3 vertices".into()));
    }
    let prev = &poly[(vertex + m - 1) % m];
    let next = &poly[(vertex + 1) % m];
    if !geom::on_open_segment(&poly[vertex], prev, next) {
        return Err(Error::PatternMismatch(format!("vertex {vertex} is not a straight vertex")));
    }
    let mut comps = d.components.clone();
    comps[component].remove(vertex);
    // The curve is unchanged, so every intersection sits at an old crossing point.
    let old_candidates = |s: SegId| -> Vec<SegId> {
        if s.component != component {
            return vec![s];
        }
        let v: Vec<usize> = (0..m).filter(|&k| k != vertex).collect();
        // New segment k starts at the k-th surviving vertex.
        let start = v[s.segment];
        if (start + 1) % m == vertex {
            vec![SegId::new(component, start), SegId::new(component, vertex)]
        } else {
            vec![SegId::new(component, start)]
        }
    };
    build_diagram(comps, |a, b, p| {
        let c = d
            .crossings
            .iter()
            .find(|c| &c.point == p)
            .ok_or(Error::MissingAssignment(a, b))?;
        Ok(if old_candidates(a).contains(&c.over) { a } else { b })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::qf;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::int(x, y)
    }

    #[test]
    fn disjoint_triangles_have_no_crossings() {
        let d = LinkDiagram::new(
            vec![vec![p(0, 0), p(2, 1), p(0, 3)], vec![p(10, 0), p(12, 1), p(10, 3)]],
            &[],
        )
        .unwrap();
        assert!(d.crossings().is_empty());
    }

    #[test]
    fn square_spiral_crosses_once() {
        // A closed polygon whose first and fourth segments cross once.
        let poly = vec![p(0, 0), p(4, 1), p(3, 4), p(1, -2), p(-1, 3)];
        let probe = build_diagram(vec![poly.clone()], |a, _, _| Ok(a));
        let n = probe.unwrap().crossings().len();
        // Independent count: brute force over non-adjacent segment pairs.
        let m = poly.len();
        let mut count = 0;
        for i in 0..m {
            for j in (i + 2)..m {
                if (j + 1) % m == i {
                    continue;
                }
                if let SegmentHit::Proper { .. } =
                    geom::intersect_segments(&poly[i], &poly[(i + 1) % m], &poly[j], &poly[(j + 1) % m])
                {
                    count += 1;
                }
            }
        }
        assert_eq!(n, count);
        let d = LinkDiagram::new(vec![poly], &[(SegId::new(0, 0), SegId::new(0, 2))]);
        assert!(d.is_ok() || matches!(d, Err(Error::MissingAssignment(..))));
    }

    #[test]
    fn one_crossing_figure() {
        // Figure-eight shaped curl: segment 0 crosses segment 3.
        let poly = vec![p(-2, 0), p(1, 1), p(0, 2), p(-1, 1), p(2, 0), p(0, -3)];
        let d = LinkDiagram::new(vec![poly], &[(SegId::new(0, 0), SegId::new(0, 3))]).unwrap();
        assert_eq!(d.crossings().len(), 1);
        let c = &d.crossings()[0];
        assert_eq!(c.point, RationalPoint::new(qf(0, 1), qf(2, 3)));
        assert_eq!(c.over, SegId::new(0, 0));
    }

    #[test]
    fn three_segments_through_a_point() {
        let comps = vec![
            vec![p(-2, -2), p(2, 2), p(3, -5)],
            vec![p(-2, 2), p(2, -2), p(-5, -6)],
            vec![p(0, -3), p(0, 3), p(-4, 3)],
        ];
        let r = build_diagram(comps, |a, _, _| Ok(a));
        assert!(matches!(r, Err(Error::NonRegularProjection(_))), "{r:?}");
    }

    #[test]
    fn missing_assignment_reported() {
        let poly = vec![p(-2, 0), p(1, 1), p(0, 2), p(-1, 1), p(2, 0), p(0, -3)];
        assert!(matches!(LinkDiagram::new(vec![poly], &[]), Err(Error::MissingAssignment(..))));
    }

    #[test]
    fn subdivide_and_remove_round_trip() {
        let poly = vec![p(-2, 0), p(1, 1), p(0, 2), p(-1, 1), p(2, 0), p(0, -3)];
        let d = LinkDiagram::new(vec![poly], &[(SegId::new(0, 0), SegId::new(0, 3))]).unwrap();
        let s = SegId::new(0, 4);
        let (a, b) = d.endpoints(s);
        let mid = a.lerp(b, &qf(1, 2));
        let d2 = subdivide_arc(&d, s, &mid).unwrap();
        assert_eq!(d2.segment_count(0), 7);
        assert_eq!(d2.crossings().len(), 1);
        let back = remove_vertex(&d2, 0, 5).unwrap();
        assert_eq!(back, d);
        // Subdividing the crossed segment splits its crossing onto one piece.
        let s0 = SegId::new(0, 0);
        let (a, b) = d.endpoints(s0);
        let q1 = a.lerp(b, &qf(1, 4));
        let d3 = subdivide_arc(&d, s0, &q1).unwrap();
        assert_eq!(d3.crossings()[0].over, SegId::new(0, 1));
        assert_eq!(d3.crossings()[0].under, SegId::new(0, 4));
        assert_eq!(remove_vertex(&d3, 0, 1).unwrap(), d);
    }

    #[test]
    fn subdivide_errors() {
        let poly = vec![p(-2, 0), p(1, 1), p(0, 2), p(-1, 1), p(2, 0), p(0, -3)];
        let d = LinkDiagram::new(vec![poly], &[(SegId::new(0, 0), SegId::new(0, 3))]).unwrap();
        assert_eq!(
            subdivide_arc(&d, SegId::new(0, 0), &p(5, 5)),
            Err(Error::PointNotOnSegment(SegId::new(0, 0)))
        );
        let cp = d.crossings()[0].point.clone();
        assert_eq!(subdivide_arc(&d, SegId::new(0, 0), &cp), Err(Error::PointOnCrossing(SegId::new(0, 0))));
    }
}
