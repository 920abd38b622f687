//! The bracket state sum organised crossing by crossing.
//!
//! Partial states are grouped by how the still-open edges are connected; each
//! group carries the polynomial summed over all its smoothing choices so far.

use std::collections::HashMap;

use super::bracket::Ends;
use super::LaurentPoly;

type Key = (Vec<u16>, bool);

fn slots(x: &Ends) -> [usize; 4] {
    [x.o_in, x.o_out, x.u_in, x.u_out]
}

fn uses(ends: &[Ends], edges: usize) -> Vec<u8> {
    let mut uses = vec![0u8; edges];
    for x in ends {
        for e in slots(x) {
            uses[e] += 1;
        }
    }
    uses
}

/// Open-edge count after each step of `order`, as (peak, total).
fn cost(ends: &[Ends], uses: &[u8], order: &[usize]) -> (usize, usize) {
    let mut seen = vec![0u8; uses.len()];
    let (mut open, mut peak, mut total) = (0usize, 0, 0);
    for &k in order {
        for e in slots(&ends[k]) {
            if seen[e] == 0 {
                open += 1;
            }
            seen[e] += 1;
            if seen[e] == uses[e] {
                open -= 1;
            }
        }
        peak = peak.max(open);
        total += open;
    }
    (peak, total)
}

/// Greedy order: next is the crossing sharing most edges with those taken
/// so far (lowest index on ties).
fn greedy(ends: &[Ends], edges: usize) -> Vec<usize> {
    let mut open = vec![false; edges];
    let mut done = vec![false; ends.len()];
    let mut out = Vec::with_capacity(ends.len());
    for _ in 0..ends.len() {
        let best = (0..ends.len())
            .filter(|&k| !done[k])
            .max_by_key(|&k| {
                let score = slots(&ends[k]).iter().filter(|&&e| open[e]).count();
                (score, std::cmp::Reverse(k))
            })
            .unwrap();
        done[best] = true;
        for e in slots(&ends[best]) {
            open[e] = true;
        }
        out.push(best);
    }
    out
}

/// The cheapest of the greedy order and the given candidate orders.
fn order(ends: &[Ends], edges: usize, candidates: &[Vec<usize>]) -> Vec<usize> {
    let uses = uses(ends, edges);
    let mut best = greedy(ends, edges);
    let mut best_cost = cost(ends, &uses, &best);
    for c in candidates {
        let k = cost(ends, &uses, c);
        if k < best_cost {
            best_cost = k;
            best = c.clone();
        }
    }
    best
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// `candidates` are crossing orders worth trying (sweeps of the picture, say);
/// the one keeping fewest edges open is used.
pub(crate) fn contract(ends: &[Ends], edges: usize, free: usize, candidates: &[Vec<usize>]) -> LaurentPoly {
    let delta = LaurentPoly::delta();
    if ends.is_empty() {
        return if free == 0 { LaurentPoly::one() } else { delta.pow(free as u32 - 1) };
    }
    let mut remaining = vec![0u8; edges];
    for x in ends {
        for e in slots(x) {
            remaining[e] += 1;
        }
    }
    let mut active: Vec<usize> = Vec::new();
    let mut states: HashMap<Key, LaurentPoly> = HashMap::new();
    states.insert((vec![], false), LaurentPoly::one());
    for k in order(ends, edges, candidates) {
        let x = &ends[k];
        let mut next_active = active.clone();
        for e in slots(x) {
            if !next_active.contains(&e) {
                next_active.push(e);
            }
        }
        next_active.sort_unstable();
        for e in slots(x) {
            remaining[e] -= 1;
        }
        let idx = |e: usize| next_active.binary_search(&e).unwrap();
        let kept: Vec<usize> = next_active.iter().copied().filter(|&e| remaining[e] > 0).collect();
        // Pairings of the A- and B-smoothing; the A one of a positive
        // crossing joins over-in to under-out.
        let straight = [(x.o_in, x.u_out), (x.o_out, x.u_in)];
        let turned = [(x.o_in, x.u_in), (x.o_out, x.u_out)];
        let (a_pairs, b_pairs) = if x.positive { (straight, turned) } else { (turned, straight) };

        let mut next: HashMap<Key, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for ((labels, started), poly) in &states {
            for (pairs, a_exp) in [(a_pairs, 1), (b_pairs, -1)] {
                let m = next_active.len();
                let mut parent: Vec<usize> = (0..m).collect();
                // Old connectivity: edges sharing a label.
                let mut first_of: HashMap<u16, usize> = HashMap::new();
                for (j, &e) in active.iter().enumerate() {
                    let i = idx(e);
                    match first_of.get(&labels[j]) {
                        Some(&f) => {
                            let (ri, rf) = (find(&mut parent, i), find(&mut parent, f));
                            parent[ri] = rf;
                        }
                        None => {
                            first_of.insert(labels[j], i);
                        }
                    }
                }
                for (a, b) in pairs {
                    let (ra, rb) = (find(&mut parent, idx(a)), find(&mut parent, idx(b)));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
                // Blocks with no open edge left are finished loops.
                let mut root_open = vec![false; m];
                for &e in &kept {
                    let r = find(&mut parent, idx(e));
                    root_open[r] = true;
                }
                let mut loops = 0u32;
                for i in 0..m {
                    if find(&mut parent, i) == i && !root_open[i] {
                        loops += 1;
                    }
                }
                let mut relabel: HashMap<usize, u16> = HashMap::new();
                let new_labels: Vec<u16> = kept
                    .iter()
                    .map(|&e| {
                        let r = find(&mut parent, idx(e));
                        let n = relabel.len() as u16;
                        *relabel.entry(r).or_insert(n)
                    })
                    .collect();
                let mut w = poly.shift(a_exp);
                let mut now_started = *started;
                if loops > 0 {
                    let extra = if now_started { loops } else { loops - 1 };
                    now_started = true;
                    if extra > 0 {
                        w = &w * &delta.pow(extra);
                    }
                }
                let slot = next.entry((new_labels, now_started)).or_default();
                *slot = std::mem::take(slot) + w;
            }
        }
        states = next;
        active = kept;
    }
    let total = states.into_values().fold(LaurentPoly::zero(), |acc, p| acc + p);
    &total * &delta.pow(free as u32)
}
