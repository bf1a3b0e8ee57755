//! List colorings, recoloring sequences, the step verifier and single-vertex
//! insertion with lookahead.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Color = u32;

/// Per-vertex color lists indexed by vertex id. Each list is sorted and free
/// of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<Color>>) -> Self {
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        ListAssignment { lists }
    }

    /// Every vertex id below `n` gets the same list.
    pub fn uniform(n: usize, colors: &[Color]) -> Self {
        Self::new(vec![colors.to_vec(); n])
    }

    pub fn id_bound(&self) -> usize {
        self.lists.len()
    }

    pub fn get(&self, v: Vertex) -> &[Color] {
        self.lists.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn size(&self, v: Vertex) -> usize {
        self.get(v).len()
    }

    pub fn allows(&self, v: Vertex, c: Color) -> bool {
        self.get(v).binary_search(&c).is_ok()
    }

    /// Smallest list size over the live vertices of `g`.
    pub fn min_size(&self, g: &Graph) -> Option<usize> {
        g.vertices().map(|v| self.size(v)).min()
    }
}

/// A partial assignment of colors to vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn new(colors: Vec<Option<Color>>) -> Self {
        Coloring { colors }
    }

    pub fn empty(n: usize) -> Self {
        Coloring {
            colors: vec![None; n],
        }
    }

    pub fn from_colors(colors: &[Color]) -> Self {
        Coloring {
            colors: colors.iter().map(|&c| Some(c)).collect(),
        }
    }

    pub fn id_bound(&self) -> usize {
        self.colors.len()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        if v >= self.colors.len() {
            self.colors.resize(v + 1, None);
        }
        self.colors[v] = Some(c);
    }

    pub fn unset(&mut self, v: Vertex) {
        if let Some(slot) = self.colors.get_mut(v) {
            *slot = None;
        }
    }

    /// Colored vertex ids with their colors, in id order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    /// Keeps only the colors of live vertices of `g`.
    pub fn restrict(&self, g: &Graph) -> Coloring {
        let mut out = Coloring::empty(self.colors.len());
        for v in g.vertices() {
            if let Some(c) = self.get(v) {
                out.set(v, c);
            }
        }
        out
    }

    /// Whether the two colorings agree on every live vertex of `g`.
    pub fn agrees_on(&self, other: &Coloring, g: &Graph) -> bool {
        g.vertices().all(|v| self.get(v) == other.get(v))
    }

    /// Checks that every live vertex of `g` is colored from its list and no
    /// edge is monochromatic.
    pub fn check_proper(&self, g: &Graph, lists: &ListAssignment) -> Result<(), Violation> {
        for v in g.vertices() {
            match self.get(v) {
                None => return Err(Violation::Uncolored(v)),
                Some(c) if !lists.allows(v, c) => return Err(Violation::OffList(v, c)),
                Some(_) => {}
            }
        }
        for (u, v) in g.edges() {
            if self.get(u) == self.get(v) {
                return Err(Violation::Monochromatic(u, v));
            }
        }
        Ok(())
    }

    pub fn is_proper(&self, g: &Graph, lists: &ListAssignment) -> bool {
        self.check_proper(g, lists).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub vertex: Vertex,
    pub color: Color,
}

impl Step {
    pub fn new(vertex: Vertex, color: Color) -> Self {
        Step { vertex, color }
    }
}

/// A start coloring plus ordered single-vertex recolorings.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RecolorSequence {
    pub start: Coloring,
    pub steps: Vec<Step>,
    pub k: Option<u32>,
}

impl RecolorSequence {
    pub fn new(start: Coloring) -> Self {
        RecolorSequence {
            start,
            steps: Vec::new(),
            k: None,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Coloring after all steps, with no validity checks.
    pub fn end(&self) -> Coloring {
        let mut c = self.start.clone();
        for s in &self.steps {
            c.set(s.vertex, s.color);
        }
        c
    }

    /// Number of steps at each vertex id below `n`.
    pub fn counts(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for s in &self.steps {
            if s.vertex >= out.len() {
                out.resize(s.vertex + 1, 0);
            }
            out[s.vertex] += 1;
        }
        out
    }

    pub fn count_of(&self, v: Vertex) -> u32 {
        self.steps.iter().filter(|s| s.vertex == v).count() as u32
    }
}

/// Why a coloring or a step is invalid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownVertex(Vertex),
    Uncolored(Vertex),
    OffList(Vertex, Color),
    Monochromatic(Vertex, Vertex),
    NoChange(Vertex),
    OverBudget { vertex: Vertex, count: u32, k: u32 },
    TargetMismatch(Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownVertex(v) => write!(f, "vertex {v} is not in the graph"),
            Violation::Uncolored(v) => write!(f, "vertex {v} has no color"),
            Violation::OffList(v, c) => write!(f, "color {c} is not in the list of vertex {v}"),
            Violation::Monochromatic(u, v) => write!(f, "edge {u}-{v} is monochromatic"),
            Violation::NoChange(v) => write!(f, "step does not change the color of vertex {v}"),
            Violation::OverBudget { vertex, count, k } => {
                write!(f, "vertex {vertex} recolored {count} times, budget {k}")
            }
            Violation::TargetMismatch(v) => {
                write!(f, "end color of vertex {v} differs from target")
            }
        }
    }
}

/// First failure found by [`verify`]. `step` is 0 for the start coloring,
/// `i` for the i-th step (1-based) and `len + 1` for the target comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstViolation {
    pub step: usize,
    pub reason: Violation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub counts: Vec<u32>,
    pub violation: Option<FirstViolation>,
    pub end: Coloring,
}

impl VerifyReport {
    pub fn max_count(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }
}

/// Replays `seq` on `g`, checking every intermediate coloring, the optional
/// per-vertex budget `k` and the optional target end coloring.
pub fn verify(
    g: &Graph,
    lists: &ListAssignment,
    seq: &RecolorSequence,
    target: Option<&Coloring>,
    k: Option<u32>,
) -> VerifyReport {
    let n = g.id_bound();
    let mut counts = vec![0u32; n];
    let mut cur = seq.start.restrict(g);
    let fail = |step, reason, counts, end| VerifyReport {
        ok: false,
        counts,
        violation: Some(FirstViolation { step, reason }),
        end,
    };
    if let Err(reason) = cur.check_proper(g, lists) {
        return fail(0, reason, counts, cur);
    }
    for (i, s) in seq.steps.iter().enumerate() {
        let v = s.vertex;
        let reason = if !g.contains(v) {
            Some(Violation::UnknownVertex(v))
        } else if cur.get(v) == Some(s.color) {
            Some(Violation::NoChange(v))
        } else if !lists.allows(v, s.color) {
            Some(Violation::OffList(v, s.color))
        } else {
            g.neighbors(v)
                .iter()
                .find(|&&u| cur.get(u) == Some(s.color))
                .map(|&u| Violation::Monochromatic(v.min(u), v.max(u)))
        };
        if let Some(reason) = reason {
            return fail(i + 1, reason, counts, cur);
        }
        cur.set(v, s.color);
        counts[v] += 1;
        if let Some(k) = k {
            if counts[v] > k {
                let reason = Violation::OverBudget {
                    vertex: v,
                    count: counts[v],
                    k,
                };
                return fail(i + 1, reason, counts, cur);
            }
        }
    }
    if let Some(t) = target {
        if let Some(v) = g.vertices().find(|&v| cur.get(v) != t.get(v)) {
            return fail(
                seq.steps.len() + 1,
                Violation::TargetMismatch(v),
                counts,
                cur,
            );
        }
    }
    VerifyReport {
        ok: true,
        counts,
        violation: None,
        end: cur,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("vertex {vertex} has {list} colors and degree {degree}: no slack")]
    NoSlack {
        vertex: Vertex,
        list: usize,
        degree: usize,
    },
    #[error("color {1} is not in the list of vertex {0}")]
    OffList(Vertex, Color),
    #[error("start color of vertex {0} clashes with neighbor {1}")]
    ImproperStart(Vertex, Vertex),
    #[error("end color of vertex {0} clashes with neighbor {1}")]
    ImproperEnd(Vertex, Vertex),
    #[error("vertex {vertex} is recolored {s} times, more than budget {k} minus 3")]
    NeighborTooBusy { vertex: Vertex, s: u32, k: u32 },
    #[error("{0:?} is not a thread of the graph")]
    NotAThread(Vec<Vertex>),
    #[error("the base sequence recolors an inserted vertex {0}")]
    TouchesInserted(Vertex),
    #[error("no extension of the base sequence respects the caps on {0:?}")]
    Infeasible(Vec<Vertex>),
}

/// `⌈t / slack⌉ + 1`, the recolor bound for a vertex with the given slack
/// whose neighbors are recolored `t` times in total.
pub fn insertion_cap(t: u32, slack: u32) -> u32 {
    t.div_ceil(slack) + 1
}

/// Inserts vertex `v` into a sequence `base` on `g - v`.
///
/// `v` moves only when a neighbor is about to take its color, and once at the
/// end if it is not yet on `beta_v`. Each forced move picks, among the colors
/// free at that moment, the one a neighbor adopts furthest in the future,
/// preferring `beta_v` and then the smallest color on ties. Forced moves are
/// therefore at least `slack = |L(v)| - d(v) - 1` neighbor steps apart, which
/// gives the bound [`insertion_cap`].
pub fn insert_vertex(
    g: &Graph,
    lists: &ListAssignment,
    v: Vertex,
    base: &RecolorSequence,
    alpha_v: Color,
    beta_v: Color,
) -> Result<RecolorSequence, ExtendError> {
    if !g.contains(v) {
        return Err(ExtendError::UnknownVertex(v));
    }
    let degree = g.deg(v);
    let list = lists.get(v);
    if list.len() < degree + 2 {
        return Err(ExtendError::NoSlack {
            vertex: v,
            list: list.len(),
            degree,
        });
    }
    for c in [alpha_v, beta_v] {
        if !lists.allows(v, c) {
            return Err(ExtendError::OffList(v, c));
        }
    }
    let nbrs = g.neighbors(v);
    if let Some(&u) = nbrs.iter().find(|&&u| base.start.get(u) == Some(alpha_v)) {
        return Err(ExtendError::ImproperStart(v, u));
    }
    if let Some(s) = base.steps.iter().find(|s| s.vertex == v) {
        return Err(ExtendError::TouchesInserted(s.vertex));
    }
    let end = base.end();
    if let Some(&u) = nbrs.iter().find(|&&u| end.get(u) == Some(beta_v)) {
        return Err(ExtendError::ImproperEnd(v, u));
    }

    // Neighbor steps of the base, as (index into base.steps, new color).
    let events: Vec<(usize, Color)> = base
        .steps
        .iter()
        .enumerate()
        .filter(|(_, s)| nbrs.binary_search(&s.vertex).is_ok())
        .map(|(i, s)| (i, s.color))
        .collect();
    let next_use = |from: usize, c: Color| -> usize {
        events[from..]
            .iter()
            .position(|&(_, x)| x == c)
            .map_or(usize::MAX, |p| from + p)
    };

    let mut nbr_colors: Vec<Option<Color>> = nbrs.iter().map(|&u| base.start.get(u)).collect();
    let mut cur = alpha_v;
    let mut start = base.start.clone();
    start.set(v, alpha_v);
    let mut out = RecolorSequence {
        start,
        steps: Vec::with_capacity(base.steps.len() + events.len() / 2 + 1),
        k: base.k,
    };
    let mut ev = 0;
    for (i, s) in base.steps.iter().enumerate() {
        if ev < events.len() && events[ev].0 == i {
            if s.color == cur {
                let best = list
                    .iter()
                    .copied()
                    .filter(|&c| c != cur && !nbr_colors.contains(&Some(c)))
                    .max_by_key(|&c| (next_use(ev + 1, c), c == beta_v, std::cmp::Reverse(c)))
                    .expect("slack guarantees a free color");
                out.steps.push(Step::new(v, best));
                cur = best;
            }
            let idx = nbrs.binary_search(&s.vertex).unwrap_or(0);
            nbr_colors[idx] = Some(s.color);
            ev += 1;
        }
        out.steps.push(*s);
    }
    if cur != beta_v {
        out.steps.push(Step::new(v, beta_v));
    }
    Ok(out)
}
