//! Mixed braids: a braid with a pointwise fixed sub-braid B (a surgery
//! description or the complement of a link) plus moving strands.

mod format;
mod moves;

use std::collections::BTreeSet;

use crate::braid::{closure_with_cycles, BraidWord};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

pub use moves::{braid_band_move, l_move_moving, predicted_linking_delta, BandMove};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedBraid {
    word: BraidWord,
    fixed: BTreeSet<usize>,
    components: Vec<Vec<usize>>,
    framings: Vec<i64>,
}

/// What a closure component of a mixed braid is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentTag {
    /// Closure of surgery component `c` of the fixed part.
    Fixed(usize),
    Moving,
}

impl MixedBraid {
    /// Checks the mixed-braid invariants. `components` lists top positions of
    /// fixed strands; each list must be a union of permutation cycles.
    pub fn new(
        word: BraidWord,
        fixed: BTreeSet<usize>,
        components: Vec<Vec<usize>>,
        framings: Vec<i64>,
    ) -> Result<MixedBraid> {
        let n = word.strands();
        let bad = |m: String| Err(Error::FixedPartCorrupted(m));
        if fixed.iter().any(|&p| p == 0 || p > n) {
            return bad(format!("fixed positions {fixed:?} outside 1..{n}"));
        }
        let perm = word.permutation();
        if fixed.iter().any(|&p| !fixed.contains(&perm.apply(p))) {
            return bad("a fixed strand ends at a moving position".into());
        }
        let mut seen = BTreeSet::new();
        for c in &components {
            if c.is_empty() {
                return bad("empty surgery component".into());
            }
            for &p in c {
                if !fixed.contains(&p) || !seen.insert(p) {
                    return bad(format!("components do not partition the fixed strands at {p}"));
                }
            }
            if c.iter().any(|&p| !c.contains(&perm.apply(p))) {
                return bad(format!("component {c:?} is not a union of closure cycles"));
            }
        }
        if seen != fixed {
            return bad("components do not cover the fixed strands".into());
        }
        if framings.len() != components.len() {
            return bad(format!("{} framings for {} components", framings.len(), components.len()));
        }
        Ok(MixedBraid { word, fixed, components, framings })
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn fixed(&self) -> &BTreeSet<usize> {
        &self.fixed
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn moving_count(&self) -> usize {
        self.word.strands() - self.fixed.len()
    }

    /// Index, in [`mixed_closure`] order, of the closure component through top position `top`.
    pub fn closure_component(&self, top: usize) -> usize {
        self.word.permutation().cycles().iter().position(|c| c.contains(&top)).expect("top position in range")
    }

    /// The fixed sub-braid: letters between two fixed strands, renumbered
    /// among the fixed strands.
    pub fn fixed_extraction(&self) -> BraidWord {
        extract(&self.word, &self.fixed)
    }
}

/// Restricts `w` to the strands starting at `keep`, dropping every other strand.
pub fn extract(w: &BraidWord, keep: &BTreeSet<usize>) -> BraidWord {
    let mut kept: Vec<bool> = (1..=w.strands()).map(|p| keep.contains(&p)).collect();
    let mut letters = Vec::new();
    for &k in w.letters() {
        let i = k.unsigned_abs() as usize - 1;
        if kept[i] && kept[i + 1] {
            let rank = kept[..i].iter().filter(|&&b| b).count() as i32;
            letters.push(k.signum() * (rank + 1));
        }
        kept.swap(i, i + 1);
    }
    BraidWord::new(keep.len().max(1), letters).expect("ranks stay below the kept strand count")
}

/// Places B on the strands `fixed_positions` (increasing, one per strand of
/// B) of an `n`-strand braid and appends `moving`. Each letter of B is
/// realised by carrying its left strand over the moving strands in between,
/// crossing, and carrying the other strand back. `components` and `framings`
/// refer to strands of B; `None` takes the cycles of B with framing 0.
pub fn make_mixed(
    b: &BraidWord,
    fixed_positions: &[usize],
    components: Option<Vec<Vec<usize>>>,
    framings: Option<Vec<i64>>,
    moving: &BraidWord,
) -> Result<MixedBraid> {
    let n = moving.strands();
    let m = b.strands();
    let corrupt = |s: String| Error::FixedPartCorrupted(s);
    if fixed_positions.len() != m
        || fixed_positions.windows(2).any(|w| w[0] >= w[1])
        || fixed_positions.iter().any(|&p| p == 0 || p > n)
    {
        return Err(corrupt(format!("fixed positions {fixed_positions:?} for {m} strands among {n}")));
    }
    let mut letters = Vec::new();
    for &k in b.letters() {
        let j = k.unsigned_abs() as usize;
        let (a, c) = (fixed_positions[j - 1] as i32, fixed_positions[j] as i32);
        letters.extend((a..c - 1).map(|x| -x));
        letters.push(k.signum() * (c - 1));
        letters.extend((a..c - 1).rev());
    }
    letters.extend_from_slice(moving.letters());
    let word = BraidWord::new(n, letters)?;
    let components = components.unwrap_or_else(|| b.permutation().cycles());
    let framings = framings.unwrap_or_else(|| vec![0; components.len()]);
    let mut comps = Vec::with_capacity(components.len());
    for c in components {
        let mut out = Vec::with_capacity(c.len());
        for s in c {
            if s == 0 || s > m {
                return Err(corrupt(format!("component strand {s} of a {m}-strand braid")));
            }
            out.push(fixed_positions[s - 1]);
        }
        comps.push(out);
    }
    let mb = MixedBraid::new(word, fixed_positions.iter().copied().collect(), comps, framings)?;
    if &mb.fixed_extraction() != b {
        return Err(corrupt("the moving word crosses two fixed strands".into()));
    }
    Ok(mb)
}

/// closure of the word, one tag per diagram component.
pub fn mixed_closure(mb: &MixedBraid) -> (LinkDiagram, Vec<ComponentTag>) {
    let (d, cycles) = closure_with_cycles(&mb.word);
    let tags = cycles
        .iter()
        .map(|cyc| match mb.components.iter().position(|c| c.contains(&cyc[0])) {
            Some(c) => ComponentTag::Fixed(c),
            None => ComponentTag::Moving,
        })
        .collect();
    (d, tags)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn solid_torus() {
        let mb = make_mixed(&BraidWord::identity(1), &[1], None, None, &w(2, &[1, 1])).unwrap();
        assert_eq!(mb.fixed(), &set(&[1]));
        assert_eq!(mb.fixed_extraction(), BraidWord::identity(1));
        let (d, tags) = mixed_closure(&mb);
        assert_eq!(d.component_count(), 2);
        assert_eq!(tags, vec![ComponentTag::Fixed(0), ComponentTag::Moving]);
    }

    #[test]
    fn empty_moving_part_is_b() {
        let b = w(3, &[1, -2, 1]);
        let mb = make_mixed(&b, &[1, 2, 3], None, None, &BraidWord::identity(3)).unwrap();
        assert_eq!(mb.word(), &b);
        let (_, tags) = mixed_closure(&mb);
        assert!(tags.iter().all(|t| matches!(t, ComponentTag::Fixed(_))));
    }

    #[test]
    fn interleaved_embedding_extracts_b() {
        let b = w(3, &[1, -2, 1, 2]);
        let mb = make_mixed(&b, &[1, 3, 6], None, None, &w(6, &[4, -4, 2, 2])).unwrap();
        assert_eq!(mb.fixed_extraction(), b);
        let (d, tags) = mixed_closure(&mb);
        assert_eq!(tags.len(), d.component_count());
        assert_eq!(tags.len(), mb.word().permutation().cycle_count());
    }

    #[test]
    fn corrupted_fixed_part() {
        let r = make_mixed(&BraidWord::identity(1), &[1], None, None, &w(2, &[1]));
        assert!(matches!(r, Err(Error::FixedPartCorrupted(_))));
        let r = make_mixed(&w(2, &[1]), &[1, 2], None, None, &w(3, &[1]));
        assert!(matches!(r, Err(Error::FixedPartCorrupted(_))));
    }
}
