//! Temperley–Lieb diagram oracle.
//!
//! Everything here is computed by brute force from the diagram calculus:
//! matchings are stacked and their loops counted, projectors come from
//! Wenzl's recursion, and closed networks are evaluated by resolving every
//! crossing and expanding every box. The closed-form formulas elsewhere in
//! the crate are checked against these values.

mod builders;
mod element;
mod jones_wenzl;
mod matching;
mod network;
mod parse;

pub use builders::{
    bubble_lhs, bubble_rhs, tetrahedron, theta, torus_closure, trace_closure, BubbleShape,
    SpinGraph,
};
pub use element::TLElement;
pub use jones_wenzl::{jones_wenzl, jones_wenzl_with};
pub use matching::{match_mul, Matching};
pub use network::{
    bracket_closed, bracket_closed_with, ClosedNetwork, Port, Slot, Vertex, VertexKind,
};
pub use parse::parse_network;

/// Limits that keep brute-force expansion from exhausting memory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest projector color.
    pub max_color: usize,
    /// Largest number of crossings in a network.
    pub max_crossings: usize,
    /// Largest number of open endpoints while a vertex is being expanded.
    pub max_boundary: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_color: 8,
            max_crossings: 12,
            max_boundary: 24,
        }
    }
}
