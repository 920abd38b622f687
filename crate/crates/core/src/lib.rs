//! Exact-rational PL link diagrams and their braiding.
//!
//! Diagrams live on rational coordinates; every geometric predicate is exact.
//! A generic diagram is turned into a braid by eliminating its up-arcs with
//! labelled L-moves ([`braiding`]). Closed braids, mixed braids and bracket
//! certificates for the round trip are in [`braid`], [`mixed`] and [`oracles`].

pub mod braid;
pub mod braiding;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod geom;
pub mod handle;
pub mod mixed;
pub mod oracles;

pub use braid::{closure, BraidWord, LMoveKind, Permutation};
pub use diagram::{LinkDiagram, SegId};
pub use error::{Error, Result};
pub use geom::{RationalPoint, Q};
