//! Word problem via Dehornoy's handle reduction.
//!
//! A σ_i-handle is σ_i^e v σ_i^-e where v only uses generators σ_j with j > i.
//! Reducing it deletes the two ends and rewrites each σ_{i+1}^d of v as
//! σ_{i+1}^-e σ_i^d σ_{i+1}^e. A word is trivial iff reduction ends empty.

use crate::braid::BraidWord;
use crate::error::{Error, Result};

pub const DEFAULT_HANDLE_BUDGET: u64 = 1_000_000;

pub fn words_equal_in_group(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    words_equal_with_budget(a, b, DEFAULT_HANDLE_BUDGET)
}

pub fn words_equal_with_budget(a: &BraidWord, b: &BraidWord, budget: u64) -> Result<bool> {
    let w = a.compose(&b.inverse())?;
    Ok(handle_reduce(w.letters(), budget)?.is_empty())
}

/// Reduces handles, always the one ending leftmost, until none is left.
pub fn handle_reduce(letters: &[i32], budget: u64) -> Result<Vec<i32>> {
    let mut w = letters.to_vec();
    let mut steps = 0u64;
    while let Some((start, end)) = leftmost_handle(&w) {
        steps += 1;
        if steps > budget {
            return Err(Error::EffortExceeded(budget));
        }
        let e = w[start].signum();
        let i = w[start].abs();
        let mut mid = Vec::with_capacity(end - start + 8);
        for &k in &w[start + 1..end] {
            if k.abs() == i + 1 {
                mid.extend_from_slice(&[-e * (i + 1), k.signum() * i, e * (i + 1)]);
            } else {
                mid.push(k);
            }
        }
        w.splice(start..=end, mid);
    }
    Ok(w)
}

fn leftmost_handle(w: &[i32]) -> Option<(usize, usize)> {
    for j in 1..w.len() {
        let i = w[j].abs();
        // Nearest earlier letter with index <= i.
        if let Some(s) = (0..j).rev().find(|&s| w[s].abs() <= i) {
            if w[s] == -w[j] {
                return Some((s, j));
            }
        }
    }
    None
}
