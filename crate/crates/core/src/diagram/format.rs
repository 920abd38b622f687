//! JSON diagram files.
//!
//! ```text
//! {"components": [[{"x": "0/1", "y": "1/2"}, ...], ...],
//!  "crossings": [{"over": [0, 3], "under": [1, 0]}, ...]}
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{LinkDiagram, SegId};
use crate::error::{Error, Result};
use crate::geom::{RationalPoint, Q};

#[derive(Serialize, Deserialize)]
struct PointRepr {
    x: String,
    y: String,
}

#[derive(Serialize, Deserialize)]
struct CrossingRepr {
    over: [usize; 2],
    under: [usize; 2],
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    components: Vec<Vec<PointRepr>>,
    crossings: Vec<CrossingRepr>,
}

pub fn format_rational(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

impl LinkDiagram {
    /// Canonical JSON text; crossings sorted by (over, under).
    pub fn to_json(&self) -> String {
        let repr = DiagramRepr {
            components: self
                .components
                .iter()
                .map(|poly| {
                    poly.iter()
                        .map(|p| PointRepr { x: format_rational(&p.x), y: format_rational(&p.y) })
                        .collect()
                })
                .collect(),
            crossings: self
                .crossings
                .iter()
                .map(|c| CrossingRepr {
                    over: [c.over.component, c.over.segment],
                    under: [c.under.component, c.under.segment],
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&repr).expect("serializable");
        s.push('\n');
        s
    }

    /// Parses a diagram file; crossings may appear in any order.
    pub fn from_json(text: &str) -> Result<LinkDiagram> {
        let repr: DiagramRepr = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut comps = Vec::with_capacity(repr.components.len());
        for poly in &repr.components {
            let mut pts = Vec::with_capacity(poly.len());
            for p in poly {
                pts.push(RationalPoint::new(parse_rational(&p.x)?, parse_rational(&p.y)?));
            }
            comps.push(pts);
        }
        let pairs: Vec<(SegId, SegId)> = repr
            .crossings
            .iter()
            .map(|c| (SegId::new(c.over[0], c.over[1]), SegId::new(c.under[0], c.under[1])))
            .collect();
        for &(o, u) in &pairs {
            for s in [o, u] {
                if s.component >= comps.len() || s.segment >= comps[s.component].len() {
                    return Err(Error::Parse(format!("crossing references missing segment {s:?}")));
                }
            }
        }
        let d = LinkDiagram::new(comps, &pairs)?;
        if d.crossings.len() != pairs.len() {
            return Err(Error::Parse(format!(
                "file lists {} crossings but the geometry has {}",
                pairs.len(),
                d.crossings.len()
            )));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("-6/4").unwrap(), Q::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("5").unwrap(), Q::from_integer(5.into()));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&Q::new(4.into(), (-6).into())), "-2/3");
    }

    #[test]
    fn json_round_trip_and_reordering() {
        let text = r#"{"components": [[{"x":"-2","y":"0"},{"x":"1","y":"1"},{"x":"0","y":"2"},
            {"x":"-1","y":"1"},{"x":"2","y":"0"},{"x":"0","y":"-3"}]],
            "crossings": [{"over": [0, 3], "under": [0, 0]}]}"#;
        let d = LinkDiagram::from_json(text).unwrap();
        assert_eq!(d.crossings()[0].over, SegId::new(0, 3));
        let again = LinkDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(again, d);
        assert_eq!(again.to_json(), d.to_json());
    }

    #[test]
    fn extra_crossing_rejected() {
        let text = r#"{"components": [[{"x":"0","y":"0"},{"x":"2","y":"1"},{"x":"0","y":"3"}]],
            "crossings": [{"over": [0, 0], "under": [0, 1]}]}"#;
        assert!(LinkDiagram::from_json(text).is_err());
    }
}
