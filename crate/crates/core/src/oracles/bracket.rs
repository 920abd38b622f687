//! Kauffman bracket of a diagram: a crossing-by-crossing contraction and the
//! plain enumeration of all states it is checked against.

use std::collections::BTreeMap;

use super::LaurentPoly;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_CROSSINGS: usize = 200;

/// Edge ends at one crossing: over in/out, under in/out.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Ends {
    pub o_in: usize,
    pub o_out: usize,
    pub u_in: usize,
    pub u_out: usize,
    pub positive: bool,
}

/// Cuts every component at its crossing passages. Returns the crossing ends,
/// the number of edges and the number of components with no crossing.
fn edge_structure(d: &LinkDiagram) -> (Vec<Ends>, usize, usize) {
    let c = d.crossings().len();
    let mut ends = vec![Ends { o_in: 0, o_out: 0, u_in: 0, u_out: 0, positive: true }; c];
    for (k, x) in d.crossings().iter().enumerate() {
        ends[k].positive = x.sign > 0;
    }
    let mut next_edge = 0;
    let mut free = 0;
    for comp in 0..d.component_count() {
        let mut passages = Vec::new();
        for s in 0..d.segment_count(comp) {
            for (idx, _, over) in d.crossings_on(crate::diagram::SegId::new(comp, s)) {
                passages.push((idx, over));
            }
        }
        if passages.is_empty() {
            free += 1;
            continue;
        }
        let m = passages.len();
        // Edge base + k runs from passage k to passage k + 1.
        let base = next_edge;
        next_edge += m;
        for (k, &(idx, over)) in passages.iter().enumerate() {
            let incoming = base + (k + m - 1) % m;
            let outgoing = base + k;
            if over {
                ends[idx].o_in = incoming;
                ends[idx].o_out = outgoing;
            } else {
                ends[idx].u_in = incoming;
                ends[idx].u_out = outgoing;
            }
        }
    }
    (ends, next_edge, free)
}

/// Crossings ordered by sweeping a line down and across the picture.
fn sweeps(d: &LinkDiagram) -> Vec<Vec<usize>> {
    let pts: Vec<_> = d.crossings().iter().map(|c| &c.point).collect();
    let mut down: Vec<usize> = (0..pts.len()).collect();
    down.sort_by(|&a, &b| pts[b].y.cmp(&pts[a].y).then_with(|| pts[a].x.cmp(&pts[b].x)));
    let mut across: Vec<usize> = (0..pts.len()).collect();
    across.sort_by(|&a, &b| pts[a].x.cmp(&pts[b].x).then_with(|| pts[b].y.cmp(&pts[a].y)));
    vec![down, across]
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Loops in the state selecting B-smoothings at the set bits of `state`.
fn loops(ends: &[Ends], edges: usize, state: u64, parent: &mut Vec<usize>) -> usize {
    parent.clear();
    parent.extend(0..edges);
    let mut comps = edges;
    let mut join = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
            comps -= 1;
        }
    };
    for (k, x) in ends.iter().enumerate() {
        let b_smoothing = state >> k & 1 == 1;
        // The A-smoothing of a positive crossing joins over-in to under-out.
        if b_smoothing != x.positive {
            join(parent, x.o_in, x.u_out);
            join(parent, x.o_out, x.u_in);
        } else {
            join(parent, x.o_in, x.u_in);
            join(parent, x.o_out, x.u_out);
        }
    }
    comps
}

/// Histogram of (a - b, loops) over a range of states.
fn tally(ends: &[Ends], edges: usize, states: std::ops::Range<u64>) -> BTreeMap<(i32, usize), i64> {
    let c = ends.len() as i32;
    let mut parent = Vec::with_capacity(edges);
    let mut hist = BTreeMap::new();
    for s in states {
        let b = s.count_ones() as i32;
        let l = loops(ends, edges, s, &mut parent);
        *hist.entry((c - 2 * b, l)).or_insert(0) += 1;
    }
    hist
}

pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly> {
    kauffman_bracket_bounded(d, DEFAULT_MAX_CROSSINGS)
}

/// ⟨D⟩ = Σ A^(a-b) δ^(loops-1), with ⟨unknot⟩ = 1, summed crossing by
/// crossing over partial states (see [`super::frontier`]).
pub fn kauffman_bracket_bounded(d: &LinkDiagram, max_crossings: usize) -> Result<LaurentPoly> {
    let c = d.crossings().len();
    if c > max_crossings {
        return Err(Error::TooManyCrossings(c, max_crossings));
    }
    let (ends, edges, free) = edge_structure(d);
    Ok(super::frontier::contract(&ends, edges, free, &sweeps(d)))
}

/// Plain enumeration of all 2^c states; the reference for small diagrams.
pub fn kauffman_bracket_exhaustive(d: &LinkDiagram, max_crossings: usize) -> Result<LaurentPoly> {
    let c = d.crossings().len();
    if c > max_crossings || c > 40 {
        return Err(Error::TooManyCrossings(c, max_crossings.min(40)));
    }
    let (ends, edges, free) = edge_structure(d);
    let total = 1u64 << c;
    let hist = sum_states(&ends, edges, total);
    let mut out = LaurentPoly::zero();
    let delta = LaurentPoly::delta();
    let mut powers: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    for ((e, l), count) in hist {
        let loops = l + free;
        let p = powers.entry(loops).or_insert_with(|| delta.pow(loops as u32 - 1));
        out = out + LaurentPoly::monomial(count, e) * p.clone();
    }
    Ok(out)
}

#[cfg(feature = "parallel")]
fn sum_states(ends: &[Ends], edges: usize, total: u64) -> BTreeMap<(i32, usize), i64> {
    use rayon::prelude::*;
    const CHUNK: u64 = 1 << 12;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|k| tally(ends, edges, k * CHUNK..((k + 1) * CHUNK).min(total)))
        .reduce(BTreeMap::new, |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_insert(0) += v;
            }
            a
        })
}

#[cfg(not(feature = "parallel"))]
fn sum_states(ends: &[Ends], edges: usize, total: u64) -> BTreeMap<(i32, usize), i64> {
    tally(ends, edges, 0..total)
}

/// (-A³)^(-writhe) ⟨D⟩, invariant under all Reidemeister moves.
pub fn normalized_bracket(d: &LinkDiagram) -> Result<LaurentPoly> {
    normalized_bracket_bounded(d, DEFAULT_MAX_CROSSINGS)
}

pub fn normalized_bracket_bounded(d: &LinkDiagram, max_crossings: usize) -> Result<LaurentPoly> {
    let b = kauffman_bracket_bounded(d, max_crossings)?;
    Ok(&LaurentPoly::neg_a_cubed_pow(-d.writhe()) * &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{closure, BraidWord};
    use crate::corpus;

    fn poly(terms: &[(i64, i32)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    fn closed(n: usize, l: &[i32]) -> LinkDiagram {
        closure(&BraidWord::new(n, l.to_vec()).unwrap())
    }

    #[test]
    fn kink_and_unknot() {
        assert_eq!(kauffman_bracket(&closed(1, &[])).unwrap(), LaurentPoly::one());
        assert_eq!(kauffman_bracket(&closed(2, &[1])).unwrap(), LaurentPoly::monomial(-1, 3));
        assert_eq!(kauffman_bracket(&closed(2, &[-1])).unwrap(), LaurentPoly::monomial(-1, -3));
        assert_eq!(normalized_bracket(&closed(3, &[1, -2])).unwrap(), LaurentPoly::one());
    }

    // Jones polynomials at t = A^-4.
    #[test]
    fn hopf_and_trefoils() {
        // positive Hopf link: V = -t^(1/2) - t^(5/2)
        assert_eq!(normalized_bracket(&closed(2, &[1, 1])).unwrap(), poly(&[(-1, -2), (-1, -10)]));
        // right trefoil: V = t + t^3 - t^4
        assert_eq!(normalized_bracket(&closed(2, &[1, 1, 1])).unwrap(), poly(&[(1, -4), (1, -12), (-1, -16)]));
        assert_eq!(normalized_bracket(&closed(2, &[-1, -1, -1])).unwrap(), poly(&[(1, 4), (1, 12), (-1, 16)]));
        // two-component unlink
        assert_eq!(normalized_bracket(&closed(2, &[])).unwrap(), LaurentPoly::delta());
    }

    #[test]
    fn contraction_matches_enumeration() {
        let mut r = corpus::rng(3);
        for w in corpus::braid_corpus(9, 40, 4, 6) {
            let d = corpus::nested_closure(&w, &mut r).unwrap();
            assert_eq!(kauffman_bracket(&d).unwrap(), kauffman_bracket_exhaustive(&d, 40).unwrap(), "{w:?}");
            let c = closure(&w);
            if c.crossings().len() <= 18 {
                assert_eq!(kauffman_bracket(&c).unwrap(), kauffman_bracket_exhaustive(&c, 40).unwrap());
            }
        }
    }

    #[test]
    fn crossing_bound() {
        let d = closed(2, &[1; 5]);
        assert!(matches!(kauffman_bracket_bounded(&d, 10), Err(Error::TooManyCrossings(15, 10))));
    }
}
