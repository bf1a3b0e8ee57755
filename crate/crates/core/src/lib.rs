//! Bounded list-recoloring sequences for sparse and planar graphs.

pub mod discharge;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod recolor;
pub mod reduce;
pub mod schedule;
pub mod structure;

pub use graph::{Graph, GraphError, Vertex};
pub use recolor::{Color, Coloring, ListAssignment, RecolorSequence, Step};
