//! Braiding a generic diagram: label its up-arcs, then eliminate them all at once.

mod eliminate;
mod labeled;

pub use eliminate::{braid_diagram, braid_diagram_in_order, braid_relative, StrandMap};
pub use labeled::{
    check_triangle_condition, find_up_arcs, prepare, subdivision_epsilon, subdivision_epsilon_squared,
    triangle_violations, Label, LabeledDiagram, SlidingTriangle, UpArc,
};
