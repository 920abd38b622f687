//! Browser demo. Three calls: draw the closure of a braid, braid a diagram,
//! and print the normalized bracket.

use std::fmt::Write;

use num_traits::ToPrimitive;
use wasm_bindgen::prelude::*;

use plbraid::braiding::{braid_diagram, prepare};
use plbraid::diagram::{perturb_to_generic, validate_generic};
use plbraid::oracles::{normalized_bracket, normalized_bracket_from_braid};
use plbraid::{closure, BraidWord, LinkDiagram, Q};

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn word(n: usize, letters: &str) -> Result<BraidWord, String> {
    let l = plbraid::braid::parse_letters(letters).map_err(|e| e.to_string())?;
    BraidWord::new(n, l).map_err(|e| e.to_string())
}

fn f(v: &Q) -> f64 {
    v.to_f64().unwrap_or(0.0)
}

/// SVG of a diagram; under-strands get a gap at every crossing.
pub fn diagram_svg(d: &LinkDiagram) -> String {
    let pts: Vec<(f64, f64)> = d.components().iter().flatten().map(|p| (f(&p.x), f(&p.y))).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if pts.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let scale = 60.0;
    let pad = 0.5;
    let (w, h) = ((x1 - x0 + 2.0 * pad) * scale, (y1 - y0 + 2.0 * pad) * scale);
    // y grows downward in SVG.
    let tx = |x: f64| (x - x0 + pad) * scale;
    let ty = |y: f64| (y1 - y + pad) * scale;
    let mut s = String::new();
    let _ = write!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.1} {h:.1}" width="{w:.0}" height="{h:.0}">"#);
    let _ = write!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (c, comp) in d.components().iter().enumerate() {
        let color = COLORS[c % COLORS.len()];
        let path: Vec<String> = comp.iter().map(|p| format!("{:.2},{:.2}", tx(f(&p.x)), ty(f(&p.y)))).collect();
        let _ = write!(s, r#"<polygon points="{}" fill="none" stroke="{color}" stroke-width="3" stroke-linejoin="round"/>"#, path.join(" "));
    }
    // Redraw a short piece of the over-strand on a white halo.
    for x in d.crossings() {
        let (a, b) = d.endpoints(x.over);
        let (dx, dy) = (f(&b.x) - f(&a.x), f(&b.y) - f(&a.y));
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let r = 0.18_f64.min(len / 2.0);
        let (px, py) = (f(&x.point.x), f(&x.point.y));
        let (ux, uy) = (dx / len * r, dy / len * r);
        let color = COLORS[x.over.component % COLORS.len()];
        for (stroke, width) in [("white", 11), (color, 3)] {
            let _ = write!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{stroke}" stroke-width="{width}"/>"#,
                tx(px - ux),
                ty(py - uy),
                tx(px + ux),
                ty(py + uy)
            );
        }
    }
    s.push_str("</svg>");
    s
}

pub fn closure_svg_text(n: usize, letters: &str) -> Result<String, String> {
    Ok(diagram_svg(&closure(&word(n, letters)?)))
}

/// Braid text of a diagram given as JSON, perturbed first when needed.
pub fn braid_text(diagram_json: &str) -> Result<String, String> {
    let mut d = LinkDiagram::from_json(diagram_json).map_err(|e| e.to_string())?;
    if !validate_generic(&d, None).is_generic {
        d = perturb_to_generic(&d).map_err(|e| e.to_string())?;
    }
    let ld = prepare(&d).map_err(|e| e.to_string())?;
    Ok(braid_diagram(&ld).map_err(|e| e.to_string())?.to_text())
}

/// Normalized bracket of a diagram (JSON) or of a braid's closure (braid text).
pub fn bracket_text(input: &str) -> Result<String, String> {
    let p = if input.trim_start().starts_with('{') {
        normalized_bracket(&LinkDiagram::from_json(input).map_err(|e| e.to_string())?)
    } else {
        normalized_bracket_from_braid(&BraidWord::from_text(input).map_err(|e| e.to_string())?)
    };
    Ok(p.map_err(|e| e.to_string())?.to_string())
}

#[wasm_bindgen]
pub fn closure_svg(n: usize, letters: &str) -> Result<String, JsError> {
    closure_svg_text(n, letters).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn closure_json(n: usize, letters: &str) -> Result<String, JsError> {
    word(n, letters).map(|w| closure(&w).to_json()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn braid(diagram_json: &str) -> Result<String, JsError> {
    braid_text(diagram_json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bracket(input: &str) -> Result<String, JsError> {
    bracket_text(input).map_err(|e| JsError::new(&e))
}
