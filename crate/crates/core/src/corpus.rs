//! Seeded test corpora: braid words, generic diagrams and mixed braids.
//! Everything is a function of the seed alone.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::BraidWord;
use crate::diagram::{build_diagram, perturb_to_generic, apply_reidemeister, LinkDiagram, ReidemeisterMove, SegId, Side};
use crate::error::Result;
use crate::geom::{q, qf, RationalPoint, Q};
use crate::mixed::{make_mixed, MixedBraid};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    let letters = if n < 2 {
        vec![]
    } else {
        (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n as i32);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect()
    };
    BraidWord::new(n.max(1), letters).expect("letters below n")
}

/// `count` words with 1 ≤ n ≤ max_n and 0 ≤ length ≤ max_len.
pub fn braid_corpus(seed: u64, count: usize, max_n: usize, max_len: usize) -> Vec<BraidWord> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max_n);
            let len = r.gen_range(0..=max_len);
            random_word(&mut r, n, len)
        })
        .collect()
}

/// The textbook closure: nested arcs to the right of the box, one crossing
/// per letter. Vertices get small distinct offsets, so no segment is
/// horizontal and no two vertices share an x-coordinate.
pub fn nested_closure<R: Rng>(w: &BraidWord, rng: &mut R) -> Result<LinkDiagram> {
    let n = w.strands() as i64;
    let h = w.len().max(1) as i64;
    let cycles = w.permutation().cycles();
    let mut comps: Vec<Vec<RationalPoint>> = Vec::new();
    for cyc in &cycles {
        let mut pts = Vec::new();
        for &top in cyc {
            let mut pos = top;
            pts.push((pos as i64, h));
            for (t, &k) in w.letters().iter().enumerate() {
                let i = k.unsigned_abs() as usize;
                if pos == i || pos == i + 1 {
                    pts.push((pos as i64, h - t as i64));
                    pos = if pos == i { i + 1 } else { i };
                    pts.push((pos as i64, h - t as i64 - 1));
                }
            }
            let j = pos as i64;
            let depth = n + 1 - j;
            // The outer arcs slope down so the
            // right-hand rises are the only up-arcs.
            pts.push((j, 0));
            pts.push((j, -depth));
            pts.push((n + depth, -depth - 1));
            pts.push((n + depth, h + depth + 1));
            pts.push((j, h + depth));
        }
        pts.dedup();
        if pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        comps.push(pts.into_iter().map(|(x, y)| RationalPoint::int(x, y)).collect());
    }
    // Distinct offsets: index-based part plus a random multiple of the vertex count.
    let total: i64 = comps.iter().map(|c| c.len() as i64).sum();
    let scale = 400 * total * 64;
    let mut v = 0i64;
    for c in comps.iter_mut() {
        for p in c.iter_mut() {
            v += 1;
            let rx: i64 = rng.gen_range(0..64);
            let ry: i64 = rng.gen_range(0..64);
            p.x += qf(v + total * rx, scale);
            p.y += qf(v + total * ry, scale);
        }
    }
    let letters = w.letters().to_vec();
    let hq = q(h);
    let d = build_diagram(comps.clone(), |a, b, p| {
        let dir = |s: SegId| {
            let poly = &comps[s.component];
            poly[(s.segment + 1) % poly.len()].sub(&poly[s.segment])
        };
        let t: usize = (&hq - &p.y).floor().to_integer().try_into().expect("crossing inside the box");
        let a_left = dir(a).x < Q::from_integer(0.into());
        Ok(if a_left == (letters[t] > 0) { a } else { b })
    })?;
    perturb_to_generic(&d)
}

/// Applies `count` random Reidemeister moves that succeed (R1/R2 additions
/// and R3 slides), retrying failed picks.
pub fn random_reidemeister<R: Rng>(
    d: &LinkDiagram,
    rng: &mut R,
    count: usize,
) -> (LinkDiagram, Vec<ReidemeisterMove>) {
    let mut cur = d.clone();
    let mut done = Vec::new();
    let mut attempts = 0;
    while done.len() < count && attempts < 60 * count {
        attempts += 1;
        let segs: Vec<SegId> = cur.segment_ids().collect();
        let s = *segs.choose(rng).expect("diagram has segments");
        let mv = match rng.gen_range(0..3) {
            0 => ReidemeisterMove::R1Add {
                segment: s,
                side: if rng.gen_bool(0.5) { Side::Left } else { Side::Right },
                first_pass_over: rng.gen_bool(0.5),
            },
            1 => ReidemeisterMove::R2Add { finger: s, target: *segs.choose(rng).unwrap(), over: rng.gen_bool(0.5) },
            _ => ReidemeisterMove::R3 { segment: s },
        };
        if let Ok(next) = apply_reidemeister(&cur, &mv) {
            cur = next;
            done.push(mv);
        }
    }
    (cur, done)
}

/// Generic diagrams: nested closures of words with n ≤ 5 and at most
/// `max_crossings` letters.
pub fn diagram_corpus(seed: u64, count: usize, max_crossings: usize) -> Vec<LinkDiagram> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = r.gen_range(1..=5);
        let len = r.gen_range(0..=max_crossings);
        let w = random_word(&mut r, n, len);
        if let Ok(d) = nested_closure(&w, &mut r) {
            out.push(d);
        }
    }
    out
}

/// A random mixed braid: B on at most `max_fixed` strands with at most
/// `max_fixed_len` letters, spread among up to `max_moving` moving strands
/// that never cross two fixed strands.
pub fn random_mixed<R: Rng>(rng: &mut R, max_fixed: usize, max_fixed_len: usize, max_moving: usize) -> MixedBraid {
    let m = rng.gen_range(1..=max_fixed);
    let k = rng.gen_range(1..=max_moving);
    let n = m + k;
    let len = rng.gen_range(0..=max_fixed_len);
    let b = random_word(rng, m, len);
    let mut positions: Vec<usize> = (1..=n).collect();
    positions.shuffle(rng);
    let mut fixed_positions: Vec<usize> = positions[..m].to_vec();
    fixed_positions.sort_unstable();
    let target: Vec<bool> = (1..=n).map(|p| fixed_positions.contains(&p)).collect();
    let mut flags = target.clone();
    let mut letters = Vec::new();
    let sign = |rng: &mut R, i: usize| if rng.gen_bool(0.5) { i as i32 } else { -(i as i32) };
    for _ in 0..rng.gen_range(0..=2 * n) {
        let i = rng.gen_range(1..n);
        if flags[i - 1] && flags[i] {
            continue;
        }
        letters.push(sign(rng, i));
        flags.swap(i - 1, i);
    }
    // Walk fixed strands back to their starting positions.
    for i in 0..n {
        if flags[i] != target[i] {
            let j = (i + 1..n).find(|&j| flags[j] == target[i]).expect("same number of fixed strands");
            for p in (i..j).rev() {
                letters.push(sign(rng, p + 1));
                flags.swap(p, p + 1);
            }
        }
    }
    let moving = BraidWord::new(n, letters).expect("letters below n");
    let comps = b.permutation().cycles();
    let framings = (0..comps.len()).map(|_| rng.gen_range(-2..=2)).collect();
    make_mixed(&b, &fixed_positions, Some(comps), Some(framings), &moving).expect("construction keeps B")
}

pub fn mixed_corpus(seed: u64, count: usize) -> Vec<MixedBraid> {
    let mut r = rng(seed);
    (0..count).map(|_| random_mixed(&mut r, 3, 6, 3)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::validate_generic;

    #[test]
    fn deterministic() {
        assert_eq!(braid_corpus(7, 20, 6, 12), braid_corpus(7, 20, 6, 12));
        assert_eq!(mixed_corpus(3, 5), mixed_corpus(3, 5));
        assert_eq!(diagram_corpus(1, 3, 8), diagram_corpus(1, 3, 8));
    }

    #[test]
    fn nested_closure_has_one_crossing_per_letter() {
        let mut r = rng(0);
        for w in braid_corpus(11, 30, 5, 10) {
            let d = nested_closure(&w, &mut r).unwrap();
            assert_eq!(d.crossings().len(), w.len());
            assert_eq!(d.writhe(), w.exponent_sum());
            assert_eq!(d.component_count(), w.permutation().cycle_count());
            assert!(validate_generic(&d, None).is_generic);
        }
    }

    #[test]
    fn mixed_corpus_is_valid() {
        for mb in mixed_corpus(5, 30) {
            assert!(mb.fixed().len() <= 3);
            assert!(mb.fixed_extraction().len() <= 6);
        }
    }
}
