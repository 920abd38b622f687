//! Moves on mixed braids that leave the fixed sub-braid alone.

use std::collections::BTreeSet;

use super::MixedBraid;
use crate::braid::{BraidWord, LMoveKind};
use crate::error::{Error, Result};

/// Swaps the labels at positions |k|, |k|+1 for every letter.
fn carry<T>(labels: &mut [T], letters: &[i32]) {
    for &k in letters {
        let i = k.unsigned_abs() as usize - 1;
        labels.swap(i, i + 1);
    }
}

/// Rebuilds the mixed structure after a word change, given for every new
/// top position the old top position it continues (`None` for new strands).
fn relabel(mb: &MixedBraid, word: BraidWord, origin: &[Option<usize>]) -> Result<MixedBraid> {
    let new_pos = |old: usize| origin.iter().position(|&o| o == Some(old)).map(|t| t + 1);
    let fixed: BTreeSet<usize> = mb.fixed.iter().filter_map(|&p| new_pos(p)).collect();
    let components = mb
        .components
        .iter()
        .map(|c| c.iter().filter_map(|&p| new_pos(p)).collect())
        .collect();
    MixedBraid::new(word, fixed, components, mb.framings.clone())
}

/// [`BraidWord::l_move`] on the whole word, allowed only when the cut strand
/// is a moving one; the new strands may cross fixed strands freely.
pub fn l_move_moving(mb: &MixedBraid, split: usize, i: usize, kind: LMoveKind, sign: i32) -> Result<MixedBraid> {
    let n = mb.word.strands();
    let word = mb.word.l_move(split, i, kind, sign)?;
    // The move cuts whatever strand sits at position n after the prefix.
    let mut at: Vec<usize> = (1..=n).collect();
    carry(&mut at, &mb.word.letters()[..split]);
    if mb.fixed.contains(&at[n - 1]) {
        return Err(Error::TouchesFixedSubbraid(format!("the L-move cuts fixed strand {}", at[n - 1])));
    }
    // Below the opening sweep the new strand sits at i, old strands j ≥ i at j + 1.
    let mut origin: Vec<Option<usize>> = (1..=n + 1)
        .map(|k| match k.cmp(&i) {
            std::cmp::Ordering::Less => Some(k),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(k - 1),
        })
        .collect();
    let sweep = &word.letters()[..n + 1 - i.min(n + 1)];
    let rev: Vec<i32> = sweep.iter().rev().copied().collect();
    carry(&mut origin, &rev);
    let out = relabel(mb, word, &origin).map_err(|e| Error::TouchesFixedSubbraid(e.to_string()))?;
    if out.fixed_extraction() != mb.fixed_extraction() {
        return Err(Error::TouchesFixedSubbraid("the fixed sub-braid changed".into()));
    }
    Ok(out)
}

/// Result of a braid band move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandMove {
    pub result: MixedBraid,
    /// Conjugating word that first brought the moving strand next to the
    /// string (empty if it was adjacent already).
    pub conjugator: BraidWord,
    /// Top position of the moved strand before and after the move.
    pub moving_before: usize,
    pub moving_after: usize,
    /// Top position of the string the band attaches to, before the move.
    pub string: usize,
    /// Change of lk(moved component, surgery component) implied by the construction.
    pub predicted_lk_delta: i64,
}

/// Framing plus the blackboard self-linking of the component: the linking
/// number of its parallel copy with it.
pub fn predicted_linking_delta(mb: &MixedBraid, component: usize) -> Result<i64> {
    let c = mb.components.get(component).ok_or(Error::UnknownComponent(component))?;
    let mut inside: Vec<bool> = (1..=mb.word.strands()).map(|p| c.contains(&p)).collect();
    let mut w = 0i64;
    for &k in mb.word.letters() {
        let i = k.unsigned_abs() as usize - 1;
        if inside[i] && inside[i + 1] {
            w += k.signum() as i64;
        }
        inside.swap(i, i + 1);
    }
    Ok(w + mb.framings[component])
}

/// The braid band move: a moving strand next to a string of the surgery
/// component is banded, with a half twist of sign `sign`, to a parallel copy
/// of the whole component. The copy carries the framing as 2p extra half
/// twists with the string it follows.
pub fn braid_band_move(mb: &MixedBraid, component: usize, sign: i32) -> Result<BandMove> {
    if component >= mb.components.len() {
        return Err(Error::UnknownComponent(component));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::IndexOutOfRange(format!("sign {sign}")));
    }
    let n = mb.word.strands();
    let strings = &mb.components[component];
    let (_, m, f) = (1..=n)
        .filter(|p| !mb.fixed.contains(p))
        .flat_map(|m| strings.iter().map(move |&f| (m.abs_diff(f), m, f)))
        .min()
        .ok_or(Error::NoAdjacentString(component))?;

    // Conjugate so the moving strand starts next to the string.
    let h: Vec<i32> = if m > f + 1 {
        ((f + 1)..m).rev().map(|j| j as i32).collect()
    } else if m + 1 < f {
        (m..f - 1).map(|j| -(j as i32)).collect()
    } else {
        vec![]
    };
    let conjugator = BraidWord::new(n, h.clone())?;
    let mut origin: Vec<Option<usize>> = (1..=n).map(Some).collect();
    // Top of the conjugate is h⁻¹; carrying through h gives each new top its old one.
    carry(&mut origin, &h);
    let moving_before = m;
    let (mb, m) = if h.is_empty() {
        (mb.clone(), m)
    } else {
        let word = mb.word.conjugate(&conjugator)?;
        (relabel(mb, word, &origin)?, if m > f { f + 1 } else { f - 1 })
    };
    debug_assert_eq!(origin[m - 1], Some(moving_before));
    let predicted_lk_delta = predicted_linking_delta(&mb, component)?;
    let strings = &mb.components[component];
    let right = m == f + 1;

    // Cable the component: each of its strands becomes a ribbon of width 2.
    let mut width: Vec<usize> = (1..=n).map(|p| if strings.contains(&p) { 2 } else { 1 }).collect();
    let start = |width: &[usize], p: usize| 1 + width[..p - 1].iter().sum::<usize>();
    let mut fixed = BTreeSet::new();
    let mut components = vec![Vec::new(); mb.components.len()];
    for p in 1..=n {
        let s = start(&width, p);
        let own = if width[p - 1] == 2 && !right { s + 1 } else { s };
        if mb.fixed.contains(&p) {
            fixed.insert(own);
            let c = mb.components.iter().position(|c| c.contains(&p)).unwrap();
            components[c].push(own);
        }
    }
    let (sf, sm) = (start(&width, f), start(&width, m));
    let mut letters = Vec::new();
    // Framing twists between the string and its copy, then the band's half twist.
    let p = mb.framings[component];
    letters.extend(std::iter::repeat_n(p.signum() as i32 * sf as i32, 2 * p.unsigned_abs() as usize));
    letters.push(sign * if right { sf as i32 + 1 } else { sm as i32 });
    for &k in mb.word.letters() {
        let j = k.unsigned_abs() as usize;
        let base = start(&width, j);
        let (a, b) = (width[j - 1], width[j]);
        for r in 0..b {
            for l in (0..a).rev() {
                letters.push(k.signum() * (base + l + r) as i32);
            }
        }
        width.swap(j - 1, j);
    }
    let total = n + strings.len();
    let word = BraidWord::new(total, letters)?;
    let moving_after = sm;
    let result = MixedBraid::new(word, fixed, components, mb.framings.clone())?;
    if result.fixed_extraction() != mb.fixed_extraction() {
        return Err(Error::InvariantViolation("band move changed the fixed sub-braid".into()));
    }
    Ok(BandMove { result, conjugator, moving_before, moving_after, string: f, predicted_lk_delta })
}
