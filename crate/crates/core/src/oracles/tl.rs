//! Bracket of a braid closure through the Temperley–Lieb expansion
//! σ_i = A + A⁻¹ e_i, σ_i⁻¹ = A⁻¹ + A e_i, closed by the Markov trace.

use std::collections::BTreeMap;

use super::LaurentPoly;
use crate::braid::BraidWord;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_STRANDS: usize = 10;

/// Planar matching of n top points (0..n) and n bottom points (n..2n):
/// `m[p]` is the partner of point p.
type Matching = Vec<u8>;

fn identity(n: usize) -> Matching {
    (0..2 * n).map(|p| ((p + n) % (2 * n)) as u8).collect()
}

fn generator(n: usize, i: usize) -> Matching {
    let mut m = identity(n);
    let (a, b) = (i - 1, i);
    m[a] = b as u8;
    m[b] = a as u8;
    m[n + a] = (n + b) as u8;
    m[n + b] = (n + a) as u8;
    m
}

/// `top` stacked above `bottom`; returns the product and the number of closed loops.
fn compose(top: &Matching, bottom: &Matching, n: usize) -> (Matching, u32) {
    let mut out = vec![0u8; 2 * n];
    // Middle points k (bottom of `top` = top of `bottom`) visited?
    let mut seen = vec![false; n];
    // Walk from an outer point to its partner; `in_top` names the current layer.
    let walk = |start: usize, mut in_top: bool, seen: &mut Vec<bool>| -> usize {
        let mut p = start;
        loop {
            let q = if in_top { top[p] as usize } else { bottom[p] as usize };
            if in_top {
                if q < n {
                    return q;
                }
                let k = q - n;
                seen[k] = true;
                in_top = false;
                p = k;
            } else {
                if q >= n {
                    return q;
                }
                seen[q] = true;
                in_top = true;
                p = q + n;
            }
        }
    };
    for s in 0..n {
        let e = walk(s, true, &mut seen);
        out[s] = e as u8;
        out[e] = s as u8;
    }
    for s in n..2 * n {
        let e = walk(s, false, &mut seen);
        out[s] = e as u8;
        out[e] = s as u8;
    }
    // Remaining middle points lie on closed loops.
    let mut loops = 0;
    for k in 0..n {
        if seen[k] {
            continue;
        }
        loops += 1;
        let mut p = k;
        loop {
            seen[p] = true;
            let q = bottom[p] as usize; // top layer of `bottom`: stays in middle
            seen[q] = true;
            let r = top[q + n] as usize - n;
            if r == k {
                break;
            }
            p = r;
        }
    }
    (out, loops)
}

/// Loops formed by joining top point k to bottom point k.
fn trace_loops(m: &Matching, n: usize) -> u32 {
    let mut seen = vec![false; 2 * n];
    let mut loops = 0;
    for s in 0..2 * n {
        if seen[s] {
            continue;
        }
        loops += 1;
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            let q = m[p] as usize;
            seen[q] = true;
            p = (q + n) % (2 * n);
        }
    }
    loops
}

pub fn bracket_from_braid(w: &BraidWord) -> Result<LaurentPoly> {
    bracket_from_braid_bounded(w, DEFAULT_MAX_STRANDS)
}

pub fn bracket_from_braid_bounded(w: &BraidWord, max_strands: usize) -> Result<LaurentPoly> {
    let n = w.strands();
    if n > max_strands || n > 120 {
        return Err(Error::TooManyStrands(n, max_strands.min(120)));
    }
    let delta = LaurentPoly::delta();
    let mut elems: BTreeMap<Matching, LaurentPoly> = BTreeMap::new();
    elems.insert(identity(n), LaurentPoly::one());
    for &k in w.letters() {
        let i = k.unsigned_abs() as usize;
        let (id_exp, e_exp) = if k > 0 { (1, -1) } else { (-1, 1) };
        let g = generator(n, i);
        let mut next: BTreeMap<Matching, LaurentPoly> = BTreeMap::new();
        for (m, p) in elems {
            let (me, loops) = compose(&m, &g, n);
            let mut pe = p.shift(e_exp);
            if loops > 0 {
                pe = &pe * &delta.pow(loops);
            }
            let slot = next.entry(me).or_default();
            *slot = std::mem::take(slot) + pe;
            let slot = next.entry(m).or_default();
            *slot = std::mem::take(slot) + p.shift(id_exp);
        }
        next.retain(|_, p| !p.is_zero());
        elems = next;
    }
    let mut out = LaurentPoly::zero();
    for (m, p) in elems {
        let loops = trace_loops(&m, n);
        out = out + &p * &delta.pow(loops - 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(bracket_from_braid(&BraidWord::identity(2)).unwrap(), LaurentPoly::delta());
        assert_eq!(bracket_from_braid(&w(2, &[1])).unwrap(), LaurentPoly::monomial(-1, 3));
        assert_eq!(bracket_from_braid(&w(2, &[-1])).unwrap(), LaurentPoly::monomial(-1, -3));
        assert_eq!(bracket_from_braid(&w(2, &[1, -1])).unwrap(), LaurentPoly::delta());
    }

    #[test]
    fn matching_algebra() {
        let n = 3;
        let e1 = generator(n, 1);
        let (sq, loops) = compose(&e1, &e1, n);
        assert_eq!(sq, e1);
        assert_eq!(loops, 1);
        let e2 = generator(n, 2);
        // e1 e2 e1 = e1
        let (x, l1) = compose(&e1, &e2, n);
        let (y, l2) = compose(&x, &e1, n);
        assert_eq!((y, l1 + l2), (e1.clone(), 0));
        assert_eq!(compose(&identity(n), &e2, n), (e2, 0));
        assert_eq!(trace_loops(&identity(n), n), 3);
        assert_eq!(trace_loops(&e1, n), 2);
    }

    #[test]
    fn strand_bound() {
        assert_eq!(bracket_from_braid(&BraidWord::identity(11)), Err(Error::TooManyStrands(11, 10)));
    }
}
