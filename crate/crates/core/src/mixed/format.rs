//! Mixed-braid files: the braid lines followed by `fixed=`, `components=`
//! and `framings=` lines. Letters are written unreduced so the fixed
//! sub-braid survives verbatim.

use std::collections::BTreeSet;

use super::MixedBraid;
use crate::braid::{parse_head, BraidWord};
use crate::error::{Error, Result};

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn numbers<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
        .collect()
}

impl MixedBraid {
    pub fn to_text(&self) -> String {
        let fixed: Vec<usize> = self.fixed.iter().copied().collect();
        let comps: Vec<String> = self.components.iter().map(|c| join(c, ",")).collect();
        format!(
            "n={}\n{}\nfixed={}\ncomponents={}\nframings={}\n",
            self.word.strands(),
            join(self.word.letters(), " "),
            join(&fixed, ","),
            comps.join(";"),
            join(&self.framings, ",")
        )
    }

    pub fn from_text(text: &str) -> Result<MixedBraid> {
        let mut lines = text.lines();
        let (n, letters) = parse_head(&mut lines)?;
        let word = BraidWord::new(n, letters)?;
        let (mut fixed, mut comps, mut framings) = (None, None, None);
        for line in lines.map(str::trim).filter(|l| !l.is_empty()) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {line:?}")))?;
            match key.trim() {
                "fixed" => fixed = Some(numbers::<usize>(value)?),
                "components" => {
                    let c: Result<Vec<Vec<usize>>> =
                        value.split(';').filter(|g| !g.trim().is_empty()).map(numbers::<usize>).collect();
                    comps = Some(c?)
                }
                "framings" => framings = Some(numbers::<i64>(value)?),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let fixed: BTreeSet<usize> = fixed.ok_or_else(|| Error::Parse("missing fixed= line".into()))?.into_iter().collect();
        let comps = comps.ok_or_else(|| Error::Parse("missing components= line".into()))?;
        let framings = framings.unwrap_or_else(|| vec![0; comps.len()]);
        MixedBraid::new(word, fixed, comps, framings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "n=3\n1 -1 2 2\nfixed=1,2\ncomponents=1;2\nframings=2,-1\n";
        let mb = MixedBraid::from_text(text).unwrap();
        assert_eq!(mb.to_text(), text);
        assert_eq!(mb.fixed_extraction().letters(), &[1, -1]);
        assert!(matches!(MixedBraid::from_text("n=2\n1\nfixed=1\ncomponents=1\n"), Err(Error::FixedPartCorrupted(_))));
        assert!(matches!(MixedBraid::from_text("n=2\n\nfixed=1\n"), Err(Error::Parse(_))));
    }
}
