//! Genericity with respect to the height function, and perturbation into it.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde_json::json;

use super::{format::format_rational, rebuild_from, LinkDiagram, SegId};
use crate::braiding::{subdivision_epsilon_squared, triangle_violations, SlidingTriangle};
use crate::error::{Error, Result};
use crate::geom::{self, qf, sqrt_floor, RationalPoint, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub horizontal_arcs: Vec<SegId>,
    /// Pairs of points sharing an x-coordinate: disjoint subdividing points,
    /// or an up-arc top vertex and a vertex/crossing on its vertical line.
    pub vertical_alignments: Vec<(RationalPoint, RationalPoint)>,
    pub triangle_violations: Vec<(SegId, SegId)>,
    pub is_generic: bool,
}

impl GenericityReport {
    pub fn violation_count(&self) -> usize {
        self.horizontal_arcs.len() + self.vertical_alignments.len() + self.triangle_violations.len()
    }

    pub fn to_json(&self) -> String {
        let pt = |p: &RationalPoint| json!({"x": format_rational(&p.x), "y": format_rational(&p.y)});
        let v = json!({
            "horizontal_arcs": self.horizontal_arcs.iter().map(|s| [s.component, s.segment]).collect::<Vec<_>>(),
            "vertical_alignments": self.vertical_alignments.iter().map(|(a, b)| [pt(a), pt(b)]).collect::<Vec<_>>(),
            "triangle_violations": self.triangle_violations.iter()
                .map(|(a, b)| [[a.component, a.segment], [b.component, b.segment]]).collect::<Vec<_>>(),
            "is_generic": self.is_generic,
        });
        v.to_string()
    }
}

/// Checks the three genericity conditions. Without `triangles`, the up-arcs
/// are taken to be all ascending segments and condition 3 is not checked.
pub fn validate_generic(d: &LinkDiagram, triangles: Option<&[SlidingTriangle]>) -> GenericityReport {
    let horizontal_arcs: Vec<SegId> = d
        .segment_ids()
        .filter(|&s| {
            let (a, b) = d.endpoints(s);
            a.y == b.y
        })
        .collect();
    let up_arcs: Vec<SegId> = match triangles {
        Some(ts) => ts.iter().map(|t| t.up_arc).collect(),
        None => d
            .segment_ids()
            .filter(|&s| {
                let (a, b) = d.endpoints(s);
                b.y > a.y
            })
            .collect(),
    };

    // Points that share an edge are exempt from alignment.
    let share_edge = |p: &RationalPoint, q: &RationalPoint| -> bool {
        d.segment_ids().any(|s| {
            let (a, b) = d.endpoints(s);
            (a == p && b == q) || (a == q && b == p)
        })
    };

    let mut alignments = BTreeSet::new();
    let mut subdividing: BTreeSet<RationalPoint> = BTreeSet::new();
    for &s in &up_arcs {
        let (a, b) = d.endpoints(s);
        subdividing.insert(a.clone());
        subdividing.insert(b.clone());
    }
    let mut by_x: BTreeMap<&Q, Vec<&RationalPoint>> = BTreeMap::new();
    for p in &subdividing {
        by_x.entry(&p.x).or_default().push(p);
    }
    for pts in by_x.values() {
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if !share_edge(pts[i], pts[j]) {
                    alignments.insert((pts[i].clone(), pts[j].clone()));
                }
            }
        }
    }
    // The vertical line through a top vertex carries the new braid strands.
    for &s in &up_arcs {
        let (_, top) = d.endpoints(s);
        for poly in d.components() {
            for v in poly {
                if v != top && v.x == top.x && !share_edge(v, top) {
                    let pair = if v < top { (v.clone(), top.clone()) } else { (top.clone(), v.clone()) };
                    alignments.insert(pair);
                }
            }
        }
        for c in d.crossings() {
            if !c.involves(s) && c.point.x == top.x {
                alignments.insert((top.clone(), c.point.clone()));
            }
        }
    }

    let triangle_violations = match triangles {
        Some(ts) => triangle_violations(ts),
        None => vec![],
    };
    let vertical_alignments: Vec<_> = alignments.into_iter().collect();
    let is_generic =
        horizontal_arcs.is_empty() && vertical_alignments.is_empty() && triangle_violations.is_empty();
    GenericityReport { horizontal_arcs, vertical_alignments, triangle_violations, is_generic }
}

/// Squared perturbation bound: a quarter of the minimum of the squared
/// feature separation and the squared subdivision epsilon.
pub fn perturbation_bound_squared(d: &LinkDiagram) -> Q {
    let mut best = subdivision_epsilon_squared(d);
    let segs: Vec<SegId> = d.segment_ids().collect();
    for &s in &segs {
        let (a, b) = d.endpoints(s);
        for poly in d.components() {
            for v in poly {
                if v == a || v == b {
                    continue;
                }
                let dd = geom::dist2_point_segment(v, a, b);
                if dd.is_positive() && dd < best {
                    best = dd;
                }
            }
        }
        for c in d.crossings() {
            if c.involves(s) {
                continue;
            }
            let dd = geom::dist2_point_segment(&c.point, a, b);
            if dd.is_positive() && dd < best {
                best = dd;
            }
        }
    }
    best / Q::from_integer(4.into())
}

/// Perturbation bound δ (a rational lower bound of the exact value).
pub fn perturbation_bound(d: &LinkDiagram) -> Q {
    sqrt_floor(&perturbation_bound_squared(d))
}

fn moved(d: &LinkDiagram, component: usize, vertex: usize, to: RationalPoint) -> Result<LinkDiagram> {
    let mut comps = d.components().to_vec();
    comps[component][vertex] = to;
    let out = rebuild_from(d, comps, &|s| Some(s), |a, b, _| Err(Error::MissingAssignment(a, b)))?;
    let same = out.crossings().len() == d.crossings().len()
        && out
            .crossings()
            .iter()
            .zip(d.crossings())
            .all(|(x, y)| x.over == y.over && x.under == y.under && x.sign == y.sign);
    if !same {
        return Err(Error::PerturbationFailed("crossing structure changed".into()));
    }
    Ok(out)
}

fn vertex_at(d: &LinkDiagram, p: &RationalPoint) -> Option<(usize, usize)> {
    d.components()
        .iter()
        .enumerate()
        .find_map(|(c, poly)| poly.iter().position(|v| v == p).map(|k| (c, k)))
}

/// Moves vertices by less than δ until horizontal arcs and vertical
/// alignments are gone, keeping the crossing structure.
pub fn perturb_to_generic(d: &LinkDiagram) -> Result<LinkDiagram> {
    let mut report = validate_generic(d, None);
    if report.is_generic {
        return Ok(d.clone());
    }
    let delta = perturbation_bound(d);
    if delta.is_zero() {
        return Err(Error::PerturbationFailed("zero perturbation bound".into()));
    }
    // Total |dx| + |dy| spent per vertex, kept below δ.
    let mut spent: BTreeMap<(usize, usize), Q> = BTreeMap::new();
    let mut cur = d.clone();
    let fractions: Vec<Q> = (0..12).map(|k| qf(1, 3 + 2 * k) / Q::from_integer((1i64 << k).into())).collect();
    let mut rounds = 0;
    while !report.is_generic {
        rounds += 1;
        if rounds > 4 * (d.segment_ids().count() + 8) {
            return Err(Error::PerturbationFailed("too many rounds".into()));
        }
        // Candidate vertices and move directions for the first violation.
        let mut candidates: Vec<((usize, usize), bool)> = Vec::new();
        if let Some(&s) = report.horizontal_arcs.first() {
            let m = cur.segment_count(s.component);
            candidates.push(((s.component, (s.segment + 1) % m), false));
            candidates.push(((s.component, s.segment), false));
        } else if let Some((p, r)) = report.vertical_alignments.first() {
            for pt in [r, p] {
                if let Some(v) = vertex_at(&cur, pt) {
                    candidates.push((v, true));
                }
            }
        }
        let before = report.violation_count();
        let mut progressed = false;
        'search: for &((c, k), horizontal_shift) in &candidates {
            let used = spent.get(&(c, k)).cloned().unwrap_or_else(Q::zero);
            for f in &fractions {
                let step = &delta * f;
                if &used + &step >= delta {
                    continue;
                }
                for sgn in [1i64, -1] {
                    let off = &step * Q::from_integer(sgn.into());
                    let v = &cur.components()[c][k];
                    let to = if horizontal_shift {
                        RationalPoint::new(&v.x + &off, v.y.clone())
                    } else {
                        RationalPoint::new(v.x.clone(), &v.y + &off)
                    };
                    let Ok(next) = moved(&cur, c, k, to) else { continue };
                    let r = validate_generic(&next, None);
                    if r.violation_count() < before {
                        spent.insert((c, k), &used + &step);
                        cur = next;
                        report = r;
                        progressed = true;
                        break 'search;
                    }
                }
            }
        }
        if !progressed {
            return Err(Error::PerturbationFailed(format!(
                "cannot resolve violation within δ = {}",
                format_rational(&delta)
            )));
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::int(x, y)
    }

    #[test]
    fn horizontal_segment_reported_and_tilted() {
        // Square with a horizontal bottom edge, oriented counterclockwise.
        let d = LinkDiagram::new(vec![vec![p(0, 0), p(4, 0), p(5, 4), p(-1, 5)]], &[]).unwrap();
        let r = validate_generic(&d, None);
        assert!(!r.is_generic);
        assert_eq!(r.horizontal_arcs, vec![SegId::new(0, 0)]);
        let g = perturb_to_generic(&d).unwrap();
        assert!(validate_generic(&g, None).is_generic);
        let delta = perturbation_bound(&d);
        for (a, b) in d.components()[0].iter().zip(&g.components()[0]) {
            let dd = a.dist2(b);
            assert!(dd < &delta * &delta);
        }
    }

    #[test]
    fn aligned_subdividing_points() {
        // Two components whose up-arc endpoints share x = 0.
        let d = LinkDiagram::new(
            vec![vec![p(0, 0), p(3, 1), p(0, 2)], vec![p(10, 5), p(0, 7), p(11, 9)]],
            &[],
        )
        .unwrap();
        let r = validate_generic(&d, None);
        assert!(!r.vertical_alignments.is_empty());
        let g = perturb_to_generic(&d).unwrap();
        assert!(validate_generic(&g, None).is_generic);
    }

    #[test]
    fn generic_diagram_is_a_fixed_point() {
        let d = LinkDiagram::new(vec![vec![p(0, 0), p(3, 1), p(1, 4)]], &[]).unwrap();
        assert!(validate_generic(&d, None).is_generic);
        assert_eq!(perturb_to_generic(&d).unwrap(), d);
    }
}
