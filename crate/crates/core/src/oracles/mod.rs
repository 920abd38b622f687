//! Independent certificates used to check the braiding pipeline: bracket
//! polynomials (diagram and braid side), linking numbers, writhe.

mod bracket;
mod frontier;
mod linking;
mod poly;
mod tl;

pub use bracket::{
    kauffman_bracket, kauffman_bracket_bounded, kauffman_bracket_exhaustive, normalized_bracket,
    normalized_bracket_bounded, DEFAULT_MAX_CROSSINGS,
};
pub use linking::{canonical_linking, component_count, linking_matrix, writhe};
pub use poly::LaurentPoly;
pub use tl::{bracket_from_braid, bracket_from_braid_bounded, DEFAULT_MAX_STRANDS};

/// Bracket of the closure computed on the braid side, normalized by the
/// exponent sum (the closure's writhe).
pub fn normalized_bracket_from_braid(w: &crate::braid::BraidWord) -> crate::error::Result<LaurentPoly> {
    let b = bracket_from_braid(w)?;
    Ok(&LaurentPoly::neg_a_cubed_pow(-w.exponent_sum()) * &b)
}
