//! Simultaneous elimination of up-arcs and the downward sweep into a word.
//!
//! Each up-arc QP becomes a leg from Q to R' = (P.x, Q.y - η) plus two
//! vertical strands at x = P.x, one from the top of the picture down to P and
//! one from R' to the bottom. Layers decide the new crossings: verticals are
//! above (over) or below (under) everything, legs likewise but inside the
//! verticals, and original arcs keep their crossing records.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::labeled::{Label, LabeledDiagram};
use crate::braid::BraidWord;
use crate::diagram::{crossing_sign, pair_key, LinkDiagram, SegId};
use crate::error::{Error, Result};
use crate::geom::{self, q, RationalPoint, SegmentHit, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Orig(SegId),
    Leg(Label),
    Vertical(Label),
}

impl Kind {
    fn layer(&self) -> i32 {
        let sign = |l: &Label| if *l == Label::Under { -1 } else { 1 };
        match self {
            Kind::Orig(_) => 0,
            Kind::Leg(l) => 2 * sign(l),
            Kind::Vertical(l) => 3 * sign(l),
        }
    }
}

#[derive(Clone, Debug)]
struct Piece {
    a: RationalPoint,
    b: RationalPoint,
    kind: Kind,
    strand: usize,
}

/// Which output strands carry fixed segments (top positions, 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandMap {
    pub fixed_positions: BTreeSet<usize>,
    /// For every top position, the up-arc whose top vertex starts that strand.
    pub start_arc: Vec<SegId>,
}

pub fn braid_diagram(ld: &LabeledDiagram) -> Result<BraidWord> {
    let order: Vec<usize> = (0..ld.up_arcs.len()).collect();
    Ok(braid_core(ld, &order, &BTreeSet::new())?.0)
}

/// As [`braid_diagram`], building the eliminations in the given order of up-arcs.
pub fn braid_diagram_in_order(ld: &LabeledDiagram, order: &[usize]) -> Result<BraidWord> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..ld.up_arcs.len()).collect::<Vec<_>>() {
        return Err(Error::IndexOutOfRange("order is not a permutation of the up-arcs".into()));
    }
    Ok(braid_core(ld, order, &BTreeSet::new())?.0)
}

/// Braids while keeping a descending braided portion in place; reports which
/// output strands run through it.
pub fn braid_relative(ld: &LabeledDiagram, fixed: &BTreeSet<SegId>) -> Result<(BraidWord, StrandMap)> {
    for &s in fixed {
        if !ld.diagram.contains_segment(s) {
            return Err(Error::FixedPortionNotBraided(format!("no segment {s:?}")));
        }
        let v = ld.diagram.direction(s);
        if v.y >= Q::zero() {
            return Err(Error::FixedPortionNotBraided(format!("segment {s:?} is not descending")));
        }
    }
    let order: Vec<usize> = (0..ld.up_arcs.len()).collect();
    let (w, map) = braid_core(ld, &order, fixed)?;
    let perm = w.permutation();
    if map.fixed_positions.iter().any(|&p| !map.fixed_positions.contains(&perm.apply(p))) {
        return Err(Error::FixedPortionNotBraided("fixed strands do not close up among themselves".into()));
    }
    Ok((w, map))
}

/// η: a quarter of the least vertical gap between Q and any other feature
/// below it, and less than the up-arc's own rise.
fn leg_drop(d: &LinkDiagram, q0: &RationalPoint, p0: &RationalPoint) -> Q {
    let mut gap = &p0.y - &q0.y;
    let feats = d.components().iter().flatten().chain(d.crossings().iter().map(|c| &c.point));
    for v in feats {
        let g = &q0.y - &v.y;
        if g > Q::zero() && g < gap {
            gap = g;
        }
    }
    gap / q(4)
}

fn braid_core(ld: &LabeledDiagram, order: &[usize], fixed: &BTreeSet<SegId>) -> Result<(BraidWord, StrandMap)> {
    let d = &ld.diagram;
    let k = ld.up_arcs.len();
    if k == 0 {
        return Err(Error::InvariantViolation("diagram has no up-arcs".into()));
    }
    let arc_index: BTreeMap<SegId, usize> = ld.up_arcs.iter().enumerate().map(|(i, a)| (a.segment, i)).collect();
    for s in d.segment_ids() {
        if !arc_index.contains_key(&s) && d.direction(s).y >= Q::zero() {
            return Err(Error::InvariantViolation(format!("segment {s:?} ascends but is no up-arc")));
        }
    }
    for a in &ld.up_arcs {
        if a.label == Label::Unlabelled {
            return Err(Error::InvariantViolation(format!("up-arc {:?} is unlabelled", a.segment)));
        }
    }
    let all: Vec<&RationalPoint> = d.components().iter().flatten().collect();
    let y_top = all.iter().map(|p| &p.y).max().unwrap() + Q::one();
    let y_bot = all.iter().map(|p| &p.y).min().unwrap() - Q::one();

    // One strand per up-arc, starting at its top vertex.
    let mut pieces: Vec<Piece> = Vec::new();
    let mut bottom_x: Vec<Q> = vec![Q::zero(); k];
    let mut carries_fixed = vec![false; k];
    for (strand, &ai) in order.iter().enumerate() {
        let arc = &ld.up_arcs[ai];
        let (_, p) = d.endpoints(arc.segment);
        pieces.push(Piece {
            a: RationalPoint::new(p.x.clone(), y_top.clone()),
            b: p.clone(),
            kind: Kind::Vertical(arc.label),
            strand,
        });
        let mut s = d.next_segment(arc.segment);
        let mut guard = 0;
        while !arc_index.contains_key(&s) {
            let (a, b) = d.endpoints(s);
            pieces.push(Piece { a: a.clone(), b: b.clone(), kind: Kind::Orig(s), strand });
            carries_fixed[strand] |= fixed.contains(&s);
            s = d.next_segment(s);
            guard += 1;
            if guard > d.segment_count(s.component) {
                return Err(Error::InvariantViolation("component without up-arcs".into()));
            }
        }
        let next = &ld.up_arcs[arc_index[&s]];
        let (q0, p0) = d.endpoints(next.segment);
        let foot = if q0.x == p0.x {
            q0.clone()
        } else {
            let r = RationalPoint::new(p0.x.clone(), &q0.y - leg_drop(d, q0, p0));
            pieces.push(Piece { a: q0.clone(), b: r.clone(), kind: Kind::Leg(next.label), strand });
            r
        };
        pieces.push(Piece {
            a: foot,
            b: RationalPoint::new(p0.x.clone(), y_bot.clone()),
            kind: Kind::Vertical(next.label),
            strand,
        });
        bottom_x[strand] = p0.x.clone();
    }

    // Crossings between pieces of different strands.
    let records: BTreeMap<(SegId, SegId), (SegId, i8)> =
        d.crossings().iter().map(|c| (pair_key(c.over, c.under), (c.over, c.sign))).collect();
    let bbox = |p: &Piece| {
        let (x0, x1) = if p.a.x <= p.b.x { (p.a.x.clone(), p.b.x.clone()) } else { (p.b.x.clone(), p.a.x.clone()) };
        (x0, x1, p.b.y.clone(), p.a.y.clone())
    };
    let boxes: Vec<_> = pieces.iter().map(bbox).collect();
    // (y, x, strand_a, strand_b, sign)
    let mut events: Vec<(Q, Q, usize, usize, i8)> = Vec::new();
    for i in 0..pieces.len() {
        for j in (i + 1)..pieces.len() {
            let (pi, pj) = (&pieces[i], &pieces[j]);
            if pi.strand == pj.strand {
                continue;
            }
            let (bi, bj) = (&boxes[i], &boxes[j]);
            if bi.1 < bj.0 || bj.1 < bi.0 || bi.3 < bj.2 || bj.3 < bi.2 {
                continue;
            }
            let point = match geom::intersect_segments(&pi.a, &pi.b, &pj.a, &pj.b) {
                SegmentHit::Disjoint => continue,
                SegmentHit::Proper { point, .. } => point,
                other => {
                    return Err(Error::InvariantViolation(format!(
                        "eliminated diagram is not regular: {:?} / {:?}: {other:?}",
                        pi.kind, pj.kind
                    )))
                }
            };
            let sign = match (pi.kind, pj.kind) {
                (Kind::Orig(x), Kind::Orig(y)) => {
                    let &(over, sign) = records
                        .get(&pair_key(x, y))
                        .ok_or_else(|| Error::InvariantViolation(format!("no crossing record for {x:?}/{y:?}")))?;
                    let _ = over;
                    sign
                }
                (ki, kj) => {
                    let (li, lj) = (ki.layer(), kj.layer());
                    if li == lj {
                        return Err(Error::InvariantViolation(format!("equal layers meet: {ki:?} / {kj:?}")));
                    }
                    let (o, u) = if li > lj { (pi, pj) } else { (pj, pi) };
                    crossing_sign(&o.b.sub(&o.a), &u.b.sub(&u.a))
                }
            };
            events.push((point.y, point.x, pi.strand, pj.strand, sign));
        }
    }
    events.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));

    // Top order by x of the starting top vertex.
    let top_x: Vec<Q> = order.iter().map(|&ai| d.endpoints(ld.up_arcs[ai].segment).1.x.clone()).collect();
    let mut by_x: Vec<usize> = (0..k).collect();
    by_x.sort_by(|&a, &b| top_x[a].cmp(&top_x[b]));
    if by_x.windows(2).any(|w| top_x[w[0]] == top_x[w[1]]) {
        return Err(Error::NotGeneric("two up-arc tops share an x-coordinate".into()));
    }
    let mut at = by_x.clone(); // at[pos] = strand
    let mut pos_of = vec![0usize; k];
    for (p, &s) in at.iter().enumerate() {
        pos_of[s] = p;
    }
    let mut letters = Vec::with_capacity(events.len());
    for (_, _, sa, sb, sign) in events {
        let (pa, pb) = (pos_of[sa], pos_of[sb]);
        let lo = pa.min(pb);
        if pa.abs_diff(pb) != 1 {
            return Err(Error::InvariantViolation("crossing strands are not adjacent".into()));
        }
        letters.push(sign as i32 * (lo as i32 + 1));
        at.swap(lo, lo + 1);
        pos_of[at[lo]] = lo;
        pos_of[at[lo + 1]] = lo + 1;
    }
    // Each strand must end below the top vertex it closes onto.
    for (p, &s) in at.iter().enumerate() {
        if bottom_x[s] != top_x[by_x[p]] {
            return Err(Error::InvariantViolation("bottom order differs from top order".into()));
        }
    }
    let w = BraidWord::new(k, letters)?;
    let fixed_positions = (0..k).filter(|&p| carries_fixed[by_x[p]]).map(|p| p + 1).collect();
    let start_arc = by_x.iter().map(|&s| ld.up_arcs[order[s]].segment).collect();
    Ok((w, StrandMap { fixed_positions, start_arc }))
}
