//! Face tracing from a rotation system and face-pattern matching.

use std::collections::HashMap;

use crate::graph::{Graph, Vertex};

use super::StructureError;

/// Faces of an embedded graph. A face is the cyclic vertex walk traced by
/// its darts; an isolated vertex bounds one face with an empty walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceStructure {
    pub faces: Vec<Vec<Vertex>>,
    /// Faces touching each vertex id, without repeats.
    pub incidence: Vec<Vec<usize>>,
    dart_face: HashMap<(Vertex, Vertex), usize>,
    isolated: Vec<(usize, Vertex)>,
}

impl FaceStructure {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn degree(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// Face containing the directed edge `u -> v`.
    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }

    /// Distinct vertices on a face, including the lone vertex of an
    /// isolated-vertex face.
    pub fn vertices_of(&self, f: usize) -> Vec<Vertex> {
        let mut vs = self.faces[f].clone();
        if vs.is_empty() {
            vs.extend(
                self.isolated
                    .iter()
                    .filter(|(g, _)| *g == f)
                    .map(|&(_, v)| v),
            );
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// The face on the other side of edge `{a, b}` from face `f`.
    pub fn across(&self, f: usize, a: Vertex, b: Vertex) -> Option<usize> {
        let x = self.face_of_dart(a, b)?;
        let y = self.face_of_dart(b, a)?;
        if x == f && y != f {
            Some(y)
        } else if y == f && x != f {
            Some(x)
        } else {
            None
        }
    }

    /// Whether a face walk visits each of its vertices once.
    pub fn is_simple(&self, f: usize) -> bool {
        let w = &self.faces[f];
        let mut s = w.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == w.len()
    }
}

/// Traces every face of `g` from its rotation system. The successor of dart
/// `u -> v` is `v -> w` where `w` follows `u` in the rotation at `v`.
pub fn faces(g: &Graph) -> Result<FaceStructure, StructureError> {
    if !g.has_rotation() {
        return Err(StructureError::MissingRotation);
    }
    let rot = |v: Vertex| g.rotation(v).unwrap_or(&[]);
    let mut dart_face = HashMap::new();
    let mut faces = Vec::new();
    let mut incidence = vec![Vec::new(); g.id_bound()];
    let mut isolated = Vec::new();
    for u in g.vertices() {
        if rot(u).is_empty() {
            let f = faces.len();
            faces.push(Vec::new());
            incidence[u].push(f);
            isolated.push((f, u));
            continue;
        }
        for &v in rot(u) {
            if dart_face.contains_key(&(u, v)) {
                continue;
            }
            let f = faces.len();
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                dart_face.insert((a, b), f);
                walk.push(a);
                if !incidence[a].contains(&f) {
                    incidence[a].push(f);
                }
                let r = rot(b);
                let i = r
                    .iter()
                    .position(|&x| x == a)
                    .expect("rotation lists every neighbor");
                let c = r[(i + 1) % r.len()];
                (a, b) = (b, c);
                if (a, b) == (u, v) {
                    break;
                }
            }
            faces.push(walk);
        }
    }
    Ok(FaceStructure {
        faces,
        incidence,
        dart_face,
        isolated,
    })
}

/// A degree constraint at one position of a face pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegClass {
    Exactly(usize),
    AtLeast(usize),
}

impl DegClass {
    pub fn admits(self, d: usize) -> bool {
        match self {
            DegClass::Exactly(x) => d == x,
            DegClass::AtLeast(x) => d >= x,
        }
    }
}

/// Pattern with exact degrees, e.g. `exact(&[3, 4, 3, 3, 4])`.
pub fn exact(degrees: &[usize]) -> Vec<DegClass> {
    degrees.iter().map(|&d| DegClass::Exactly(d)).collect()
}

/// Every labelling `v1..vk` of a simple face walk, over all rotations and
/// both directions, whose degrees match `pattern`. Forward readings come
/// before reflected ones at each starting offset.
pub fn labelings(g: &Graph, walk: &[Vertex], pattern: &[DegClass]) -> Vec<Vec<Vertex>> {
    let k = walk.len();
    if k != pattern.len() || k == 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<Vertex>> = Vec::new();
    for start in 0..k {
        for dir in [1isize, -1] {
            let lab: Vec<Vertex> = (0..k as isize)
                .map(|i| walk[((start as isize + dir * i).rem_euclid(k as isize)) as usize])
                .collect();
            if lab.iter().zip(pattern).all(|(&v, p)| p.admits(g.deg(v))) && !out.contains(&lab) {
                out.push(lab);
            }
        }
    }
    out
}

/// Whether the face walk matches the pattern up to rotation and reflection.
pub fn matches(g: &Graph, walk: &[Vertex], pattern: &[DegClass]) -> bool {
    !labelings(g, walk, pattern).is_empty()
}
