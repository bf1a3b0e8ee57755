//! Structural vocabulary: faces, short cycles, exact mad, threads and tags.

pub mod cycles;
pub mod faces;
pub mod mad;
pub mod threads;

use thiserror::Error;

use crate::graph::Vertex;

pub use cycles::{class_check_planar6, four_cycles, triangles, ClassReport};
pub use faces::{faces, DegClass, FaceStructure};
pub use mad::{mad, MadResult};
pub use threads::{
    special_faces, tag_vertices, thread_profile, SpecialFace, SpecialReading, Thread,
    ThreadProfile, VertexTag,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("graph has no rotation system")]
    MissingRotation,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("vertex {vertex} has degree {degree}, need at least 3")]
    LowDegree { vertex: Vertex, degree: usize },
}
