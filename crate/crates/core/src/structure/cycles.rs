//! Short cycles and the class check for triangle-free planar graphs whose
//! 4-cycles are pairwise vertex-disjoint.

use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex};

use super::faces::faces;

/// Cap on listed violations; counts stay exact past it.
pub const REPORT_LIMIT: usize = 10_000;

/// All triangles `a < b < c`.
pub fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for &c in g.neighbors(b) {
            if c > b && g.has_edge(a, c) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// All 4-cycles, each as `[a, b, c, d]` in cyclic order with `a` the
/// smallest vertex and `b < d`.
pub fn four_cycles(g: &Graph) -> Vec<[Vertex; 4]> {
    let mut seen = BTreeSet::new();
    for a in g.vertices() {
        let mut via: std::collections::BTreeMap<Vertex, Vec<Vertex>> = Default::default();
        for &x in g.neighbors(a) {
            for &c in g.neighbors(x).iter().filter(|&&c| c > a) {
                via.entry(c).or_default().push(x);
            }
        }
        for (c, common) in via {
            for i in 0..common.len() {
                for j in i + 1..common.len() {
                    seen.insert(canonical_square([a, common[i], c, common[j]]));
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn canonical_square(cyc: [Vertex; 4]) -> [Vertex; 4] {
    let i = (0..4).min_by_key(|&i| cyc[i]).unwrap_or(0);
    let fwd = [cyc[i], cyc[(i + 1) % 4], cyc[(i + 2) % 4], cyc[(i + 3) % 4]];
    if fwd[1] < fwd[3] {
        fwd
    } else {
        [fwd[0], fwd[3], fwd[2], fwd[1]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassReport {
    pub missing_rotation: bool,
    /// Components whose rotation system is not a plane embedding, by their
    /// smallest vertex.
    pub non_planar_components: Vec<Vertex>,
    pub triangles: Vec<[Vertex; 3]>,
    pub triangle_count: usize,
    pub intersecting_squares: Vec<([Vertex; 4], [Vertex; 4])>,
    pub intersecting_count: usize,
}

impl ClassReport {
    pub fn in_class(&self) -> bool {
        !self.missing_rotation
            && self.non_planar_components.is_empty()
            && self.triangle_count == 0
            && self.intersecting_count == 0
    }
}

/// Components whose embedding fails Euler's formula.
pub fn non_planar_components(g: &Graph) -> Option<Vec<Vertex>> {
    let fs = faces(g).ok()?;
    let mut bad = Vec::new();
    for comp in g.components() {
        let n = comp.len() as i64;
        let m = comp.iter().map(|&v| g.deg(v)).sum::<usize>() as i64 / 2;
        let mut fset: Vec<usize> = comp.iter().flat_map(|&v| fs.incidence[v].clone()).collect();
        fset.sort_unstable();
        fset.dedup();
        if n - m + fset.len() as i64 != 2 {
            bad.push(comp[0]);
        }
    }
    Some(bad)
}

/// Lists everything keeping `g` out of the planar class: a missing or
/// non-planar rotation system, triangles, and pairs of distinct 4-cycles
/// sharing a vertex.
pub fn class_check_planar6(g: &Graph) -> ClassReport {
    let mut rep = ClassReport::default();
    match non_planar_components(g) {
        None => rep.missing_rotation = true,
        Some(bad) => rep.non_planar_components = bad,
    }
    let tri = triangles(g);
    rep.triangle_count = tri.len();
    rep.triangles = tri.into_iter().take(REPORT_LIMIT).collect();
    let squares = four_cycles(g);
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            if squares[i].iter().any(|v| squares[j].contains(v)) {
                rep.intersecting_count += 1;
                if rep.intersecting_squares.len() < REPORT_LIMIT {
                    rep.intersecting_squares.push((squares[i], squares[j]));
                }
            }
        }
    }
    rep
}
