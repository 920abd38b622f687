//! Braid files: `n=<strands>` on the first line, letters on the second.

use super::BraidWord;
use crate::error::{Error, Result};

impl BraidWord {
    /// Canonical text; the word is free-reduced first.
    pub fn to_text(&self) -> String {
        let r = self.free_reduce();
        let letters: Vec<String> = r.letters.iter().map(|k| k.to_string()).collect();
        format!("n={}\n{}\n", r.n, letters.join(" "))
    }

    pub fn from_text(text: &str) -> Result<BraidWord> {
        let mut lines = text.lines();
        let (n, letters) = parse_head(&mut lines)?;
        BraidWord::new(n, letters)
    }
}

/// Reads the two braid lines, leaving the iterator after them.
pub(crate) fn parse_head<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<(usize, Vec<i32>)> {
    let head = lines.next().ok_or_else(|| Error::Parse("empty braid file".into()))?.trim();
    let n = head
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("expected n=<int>, got {head:?}")))?;
    let body = lines.next().unwrap_or("");
    let letters = parse_letters(body)?;
    Ok((n, letters))
}

/// Whitespace- or comma-separated nonzero integers.
pub fn parse_letters(s: &str) -> Result<Vec<i32>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i32>().map_err(|_| Error::Parse(format!("bad letter {t:?}"))))
        .collect()
}
