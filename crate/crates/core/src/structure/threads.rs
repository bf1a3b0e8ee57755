//! Threads through 2-vertices, thread profiles, vertex tags and special
//! 5-faces.

use crate::graph::{Graph, Vertex};

use super::faces::{exact, labelings, matches, FaceStructure};
use super::StructureError;

/// A maximal thread leaving `start` along one incident edge. `end` is the
/// first vertex of degree other than 2 reached, or `start` itself when the
/// thread closes up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thread {
    pub start: Vertex,
    pub interior: Vec<Vertex>,
    pub end: Vertex,
}

impl Thread {
    pub fn len(&self) -> usize {
        self.interior.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interior.is_empty()
    }

    /// `start, interior.., end` as one path.
    pub fn path(&self) -> Vec<Vertex> {
        let mut p = Vec::with_capacity(self.interior.len() + 2);
        p.push(self.start);
        p.extend_from_slice(&self.interior);
        p.push(self.end);
        p
    }
}

/// Follows 2-vertices from `v` through its neighbor `first`.
pub fn follow(g: &Graph, v: Vertex, first: Vertex) -> Thread {
    let mut interior = Vec::new();
    let (mut prev, mut cur) = (v, first);
    while cur != v && g.deg(cur) == 2 && interior.len() <= g.num_vertices() {
        interior.push(cur);
        let nb = g.neighbors(cur);
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        (prev, cur) = (cur, next);
    }
    Thread {
        start: v,
        interior,
        end: cur,
    }
}

/// One maximal thread per incident edge of `v`, in neighbor order.
pub fn threads_at(g: &Graph, v: Vertex) -> Vec<Thread> {
    g.neighbors(v).iter().map(|&u| follow(g, v, u)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreadProfile {
    pub vertex: Vertex,
    /// Interior counts of the incident maximal threads, largest first.
    pub counts: Vec<usize>,
    pub n2: usize,
}

impl ThreadProfile {
    /// Whether this is a `d_{a,b,..}`-vertex for the given sorted counts.
    pub fn is(&self, counts: &[usize]) -> bool {
        self.counts == counts
    }
}

pub fn thread_profile(g: &Graph, v: Vertex) -> Result<ThreadProfile, StructureError> {
    let d = g.degree(v).map_err(|_| StructureError::UnknownVertex(v))?;
    if d < 3 {
        return Err(StructureError::LowDegree {
            vertex: v,
            degree: d,
        });
    }
    let mut counts: Vec<usize> = threads_at(g, v).iter().map(Thread::len).collect();
    counts.sort_unstable_by(|a, b| b.cmp(a));
    let n2 = counts.iter().sum();
    Ok(ThreadProfile {
        vertex: v,
        counts,
        n2,
    })
}

/// Whether `v` is a vertex of degree `counts.len()` whose thread counts are
/// exactly `counts` (sorted descending).
pub fn has_profile(g: &Graph, v: Vertex, counts: &[usize]) -> bool {
    g.deg(v) == counts.len() && thread_profile(g, v).is_ok_and(|p| p.is(counts))
}

/// Far ends of the 1-threads at `v` that are 3+-vertices, with the thread's
/// interior vertex.
pub fn weak_neighbors(g: &Graph, v: Vertex) -> Vec<(Vertex, Vertex)> {
    if g.deg(v) < 3 {
        return Vec::new();
    }
    threads_at(g, v)
        .into_iter()
        .filter(|t| t.len() == 1 && t.end != v && g.deg(t.end) >= 3)
        .map(|t| (t.end, t.interior[0]))
        .collect()
}

/// A 3_{1,1,0}-vertex weak-adjacent to a 3_{1,1,1}-vertex.
pub fn is_bad(g: &Graph, v: Vertex) -> bool {
    has_profile(g, v, &[1, 1, 0])
        && weak_neighbors(g, v)
            .iter()
            .any(|&(u, _)| has_profile(g, u, &[1, 1, 1]))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexTag {
    pub vertex: Vertex,
    pub profile: Vec<usize>,
    pub bad: bool,
    pub weak: Vec<Vertex>,
    /// Interior vertices of threads ending here; a thread that closes up at
    /// this vertex contributes its interior twice.
    pub nearby: Vec<Vertex>,
    /// Special faces to which this vertex is rich.
    pub rich_in: Vec<usize>,
    /// Special faces to which this vertex is poor.
    pub poor_in: Vec<usize>,
}

/// Tags for every 3+-vertex, in id order. Special-face roles are filled in
/// when a face structure is supplied.
pub fn tag_vertices(g: &Graph, fs: Option<&FaceStructure>) -> Vec<VertexTag> {
    let specials = fs
        .map(|fs| special_faces(fs, g, SpecialReading::Printed))
        .unwrap_or_default();
    g.vertices()
        .filter(|&v| g.deg(v) >= 3)
        .map(|v| {
            let ts = threads_at(g, v);
            let mut profile: Vec<usize> = ts.iter().map(Thread::len).collect();
            profile.sort_unstable_by(|a, b| b.cmp(a));
            VertexTag {
                vertex: v,
                bad: is_bad(g, v),
                weak: weak_neighbors(g, v).into_iter().map(|(u, _)| u).collect(),
                nearby: ts.iter().flat_map(|t| t.interior.clone()).collect(),
                rich_in: specials
                    .iter()
                    .filter(|s| s.rich == v)
                    .map(|s| s.face)
                    .collect(),
                poor_in: specials
                    .iter()
                    .filter(|s| s.poor == v)
                    .map(|s| s.face)
                    .collect(),
                profile,
            }
        })
        .collect()
}

/// Which 4-face pattern across edge `v1 v2` makes a (3,4,3,3,4)-face
/// special.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialReading {
    /// Adjacent 3s and adjacent 4s, the (3,4,4,3) reading.
    Printed,
    /// Alternating degrees, the (3,4,3,4) reading.
    Alternate,
}

impl SpecialReading {
    pub fn pattern(self) -> [usize; 4] {
        match self {
            SpecialReading::Printed => [3, 4, 4, 3],
            SpecialReading::Alternate => [3, 4, 3, 4],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFace {
    pub face: usize,
    /// Labelling `v1..v5` with degrees (3,4,3,3,4).
    pub labels: [Vertex; 5],
    pub rich: Vertex,
    pub poor: Vertex,
    /// The 4-face across `v1 v2`.
    pub partner: usize,
}

/// Special 5-faces: (3,4,3,3,4)-faces whose edge `v1 v2` lies on a 4-face of
/// the chosen pattern. `v2` is poor and `v5` rich. When both labellings of a
/// face qualify, the first in walk order is used.
pub fn special_faces(fs: &FaceStructure, g: &Graph, reading: SpecialReading) -> Vec<SpecialFace> {
    let pat5 = exact(&[3, 4, 3, 3, 4]);
    let pat4 = exact(&reading.pattern());
    let mut out = Vec::new();
    for (f, walk) in fs.faces.iter().enumerate() {
        if walk.len() != 5 || !fs.is_simple(f) {
            continue;
        }
        for lab in labelings(g, walk, &pat5) {
            let Some(p) = fs.across(f, lab[0], lab[1]) else {
                continue;
            };
            if fs.degree(p) == 4 && fs.is_simple(p) && matches(g, &fs.faces[p], &pat4) {
                out.push(SpecialFace {
                    face: f,
                    labels: [lab[0], lab[1], lab[2], lab[3], lab[4]],
                    rich: lab[4],
                    poor: lab[1],
                    partner: p,
                });
                break;
            }
        }
    }
    out
}
