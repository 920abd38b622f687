//! Artin braid words, their permutations, Markov/L-moves and the standard closure.
//!
//! Words are read top to bottom; letter `k` is σ_|k| with exponent sign(k),
//! acting on strand positions |k| and |k|+1 counted from the left.

mod closure;
mod format;

use std::fmt;

use crate::error::{Error, Result};

pub use closure::closure;
pub(crate) use closure::closure_with_cycles;
pub(crate) use format::parse_head;
pub use format::parse_letters;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

/// Which way the new strands of an L-move pass the rest of the braid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LMoveKind {
    Over,
    Under,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("a braid needs at least one strand".into()));
        }
        if let Some(&k) = letters.iter().find(|&&k| k == 0 || k.unsigned_abs() as usize >= n) {
            return Err(Error::IndexOutOfRange(format!("letter {k} on {n} strands")));
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord::new(n, vec![]).expect("n > 0")
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&k| k.signum() as i64).sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|k| -k).collect() }
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// Cancels adjacent σ_i σ_i⁻¹ pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &k in &self.letters {
            if out.last() == Some(&-k) {
                out.pop();
            } else {
                out.push(k);
            }
        }
        BraidWord { n: self.n, letters: out }
    }

    pub fn permutation(&self) -> Permutation {
        let mut pos_of: Vec<usize> = (1..=self.n).collect();
        // pos_of[s] = current position of the strand that started at s + 1
        let mut at: Vec<usize> = (0..self.n).collect();
        for &k in &self.letters {
            let i = k.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        for (p, &s) in at.iter().enumerate() {
            pos_of[s] = p + 1;
        }
        Permutation { images: pos_of }
    }

    /// Adds a strand at the right with no letters on it.
    pub fn with_strands(&self, n: usize) -> Result<BraidWord> {
        if n < self.n {
            return Err(Error::StrandMismatch(self.n, n));
        }
        Ok(BraidWord { n, letters: self.letters.clone() })
    }

    /// Replaces σ_j by σ_{j+1} for j ≥ i, on n + 1 strands.
    pub fn shift_up(&self, i: usize) -> Result<BraidWord> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange(format!("shift position {i} on {} strands", self.n)));
        }
        Ok(self.shift_unchecked(i))
    }

    fn shift_unchecked(&self, i: usize) -> BraidWord {
        let letters = self
            .letters
            .iter()
            .map(|&k| if k.unsigned_abs() as usize >= i { k + k.signum() } else { k })
            .collect();
        BraidWord { n: self.n + 1, letters }
    }

    /// The algebraic L-move: the prefix of length `split` and the rest are
    /// shifted at `i` and spliced with the conjugating sweeps and the new crossing.
    /// Letters σ_{i-1} are conjugated around the new strand, which the plain
    /// index shift would drop on top of position i.
    pub fn l_move(&self, split: usize, i: usize, kind: LMoveKind, sign: i32) -> Result<BraidWord> {
        if split > self.letters.len() {
            return Err(Error::IndexOutOfRange(format!("split {split} of a word of length {}", self.len())));
        }
        if i == 0 || i > self.n + 1 {
            return Err(Error::IndexOutOfRange(format!("L-move position {i} on {} strands", self.n)));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::IndexOutOfRange(format!("sign {sign}")));
        }
        let n = self.n as i32;
        let i = i as i32;
        let e = match kind {
            LMoveKind::Over => -1,
            LMoveKind::Under => 1,
        };
        // σ_j ↦ σ_{j+1} for j ≥ i; a crossing at i - 1 straddles the new
        // strand's column, which steps aside over (or under) it.
        let tilde = |part: &[i32]| -> Vec<i32> {
            let mut out = Vec::with_capacity(part.len());
            for &k in part {
                let a = k.abs();
                if a >= i {
                    out.push(k + k.signum());
                } else if a == i - 1 {
                    out.extend([-e * (i - 1), k.signum() * i, e * (i - 1)]);
                } else {
                    out.push(k);
                }
            }
            out
        };
        let a1 = tilde(&self.letters[..split]);
        let a2 = tilde(&self.letters[split..]);
        let mut out = Vec::new();
        out.extend((i..=n).map(|j| e * j));
        out.extend_from_slice(&a1);
        out.extend((i..n).map(|j| e * j));
        out.push(sign * n);
        out.extend((i..n).rev().map(|j| -e * j));
        out.extend_from_slice(&a2);
        out.extend((i..=n).rev().map(|j| -e * j));
        BraidWord::new(self.n + 1, out)
    }

    /// α ∈ B_n ↦ α σ_n^{±1} ∈ B_{n+1}.
    pub fn markov_stabilize(&self, sign: i32) -> Result<BraidWord> {
        if sign != 1 && sign != -1 {
            return Err(Error::IndexOutOfRange(format!("sign {sign}")));
        }
        let mut letters = self.letters.clone();
        letters.push(sign * self.n as i32);
        BraidWord::new(self.n + 1, letters)
    }

    /// g⁻¹ w g.
    pub fn conjugate(&self, g: &BraidWord) -> Result<BraidWord> {
        g.inverse().compose(self)?.compose(g)
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}{:?}", self.n, self.letters)
    }
}

/// Strand endpoint map: `images[p - 1]` is the bottom position of the strand
/// starting at top position `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidDiagram(format!("{images:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&p| other.apply(p)).collect() }
    }

    /// Cycles, each starting at its smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 1..=n {
            if seen[s - 1] {
                continue;
            }
            let mut cyc = vec![];
            let mut p = s;
            while !seen[p - 1] {
                seen[p - 1] = true;
                cyc.push(p);
                p = self.apply(p);
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }
}
