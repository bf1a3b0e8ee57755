//! Brute-force ground truth on small instances: the recoloring graph, where
//! colorings are nodes and single-vertex recolorings are edges.
//!
//! Colorings are encoded as mixed-radix integers over the live vertices in id
//! order, digit `i` being the index of the color in the list of vertex `i`.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::recolor::{verify, Color, Coloring, ListAssignment, RecolorSequence, Step, Violation};

pub const DEFAULT_STATE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{states} candidate colorings exceed the state cap {cap}")]
    StateCap { states: u128, cap: u64 },
    #[error("vertex {0} has an empty list")]
    EmptyList(Vertex),
    #[error("{which} coloring is not proper: {reason}")]
    Improper {
        which: &'static str,
        reason: Violation,
    },
}

/// The live vertices of a graph with their lists and radix weights.
#[derive(Debug, Clone)]
pub struct StateSpace {
    verts: Vec<Vertex>,
    lists: Vec<Vec<Color>>,
    place: Vec<u64>,
    /// Neighbors as positions into `verts`.
    nbrs: Vec<Vec<usize>>,
    id_bound: usize,
}

impl StateSpace {
    /// Fails when `Π |L(v)|` exceeds `cap`.
    pub fn new(g: &Graph, lists: &ListAssignment, cap: u64) -> Result<Self, OracleError> {
        let verts: Vec<Vertex> = g.vertices().collect();
        let mut pos = vec![usize::MAX; g.id_bound()];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut states: u128 = 1;
        let mut place = Vec::with_capacity(verts.len());
        for &v in &verts {
            let size = lists.size(v);
            if size == 0 {
                return Err(OracleError::EmptyList(v));
            }
            place.push(states as u64);
            states = states.saturating_mul(size as u128);
            if states > cap as u128 {
                return Err(OracleError::StateCap { states, cap });
            }
        }
        Ok(StateSpace {
            lists: verts.iter().map(|&v| lists.get(v).to_vec()).collect(),
            nbrs: verts
                .iter()
                .map(|&v| g.neighbors(v).iter().map(|&u| pos[u]).collect())
                .collect(),
            verts,
            place,
            id_bound: g.id_bound(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.verts.len()
    }

    fn digit(&self, code: u64, i: usize) -> usize {
        ((code / self.place[i]) % self.lists[i].len() as u64) as usize
    }

    fn color(&self, code: u64, i: usize) -> Color {
        self.lists[i][self.digit(code, i)]
    }

    /// `None` when some vertex is uncolored or off its list.
    pub fn encode(&self, c: &Coloring) -> Option<u64> {
        let mut code = 0;
        for (i, &v) in self.verts.iter().enumerate() {
            let d = self.lists[i].binary_search(&c.get(v)?).ok()?;
            code += d as u64 * self.place[i];
        }
        Some(code)
    }

    pub fn decode(&self, code: u64) -> Coloring {
        let mut c = Coloring::empty(self.id_bound);
        for (i, &v) in self.verts.iter().enumerate() {
            c.set(v, self.color(code, i));
        }
        c
    }

    /// Single-vertex recolorings of a proper coloring that stay proper, as
    /// `(position, new code)`.
    fn moves(&self, code: u64) -> impl Iterator<Item = (usize, u64)> + '_ {
        (0..self.verts.len()).flat_map(move |i| {
            let d = self.digit(code, i);
            let base = code - d as u64 * self.place[i];
            (0..self.lists[i].len())
                .filter(move |&e| e != d)
                .filter(move |&e| {
                    let c = self.lists[i][e];
                    self.nbrs[i].iter().all(|&j| self.color(code, j) != c)
                })
                .map(move |e| (i, base + e as u64 * self.place[i]))
        })
    }

    fn step(&self, from: u64, to: u64) -> Step {
        let i = (0..self.verts.len())
            .find(|&i| self.digit(from, i) != self.digit(to, i))
            .expect("codes differ");
        Step::new(self.verts[i], self.color(to, i))
    }
}

/// All proper list colorings, as codes of a [`StateSpace`].
#[derive(Debug, Clone)]
pub struct Colorings {
    pub space: StateSpace,
    pub codes: Vec<u64>,
}

impl Colorings {
    pub fn count(&self) -> usize {
        self.codes.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Coloring> + '_ {
        self.codes.iter().map(|&c| self.space.decode(c))
    }
}

/// Backtracking over the vertex order; only proper partial colorings are
/// extended.
pub fn enumerate_colorings(
    g: &Graph,
    lists: &ListAssignment,
    cap: u64,
) -> Result<Colorings, OracleError> {
    let space = StateSpace::new(g, lists, cap)?;
    let n = space.num_vertices();
    let mut codes = Vec::new();
    let mut digits = vec![0usize; n];
    fn fits(space: &StateSpace, digits: &[usize], i: usize) -> bool {
        let c = space.lists[i][digits[i]];
        space.nbrs[i]
            .iter()
            .all(|&j| j > i || space.lists[j][digits[j]] != c)
    }
    fn rec(space: &StateSpace, digits: &mut [usize], i: usize, codes: &mut Vec<u64>) {
        if i == digits.len() {
            codes.push(
                digits
                    .iter()
                    .zip(&space.place)
                    .map(|(&d, &p)| d as u64 * p)
                    .sum(),
            );
            return;
        }
        for d in 0..space.lists[i].len() {
            digits[i] = d;
            if fits(space, digits, i) {
                rec(space, digits, i + 1, codes);
            }
        }
    }
    rec(&space, &mut digits, 0, &mut codes);
    codes.sort_unstable();
    Ok(Colorings { space, codes })
}

fn endpoints(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
    space: &StateSpace,
) -> Result<(u64, u64), OracleError> {
    for (which, c) in [("start", alpha), ("target", beta)] {
        c.check_proper(g, lists)
            .map_err(|reason| OracleError::Improper { which, reason })?;
    }
    let a = space.encode(alpha).expect("proper coloring encodes");
    let b = space.encode(beta).expect("proper coloring encodes");
    Ok((a, b))
}

/// Shortest path between two proper colorings in the recoloring graph, as
/// a sequence. `None` when `beta` is unreachable.
pub fn shortest_sequence(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
    cap: u64,
) -> Result<Option<RecolorSequence>, OracleError> {
    let space = StateSpace::new(g, lists, cap)?;
    let (a, b) = endpoints(g, lists, alpha, beta, &space)?;
    let mut parent: HashMap<u64, u64> = HashMap::from([(a, a)]);
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            break;
        }
        for (_, y) in space.moves(x) {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(y) {
                e.insert(x);
                queue.push_back(y);
            }
        }
    }
    if !parent.contains_key(&b) {
        return Ok(None);
    }
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(parent[path.last().unwrap()]);
    }
    path.reverse();
    let mut seq = RecolorSequence::new(space.decode(a));
    seq.steps = path.windows(2).map(|w| space.step(w[0], w[1])).collect();
    Ok(Some(seq))
}

/// Exact number of steps on a shortest recoloring sequence, or `None` when
/// the colorings lie in different components of the recoloring graph.
pub fn bfs_distance(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
    cap: u64,
) -> Result<Option<usize>, OracleError> {
    Ok(shortest_sequence(g, lists, alpha, beta, cap)?.map(|s| s.len()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KGood {
    /// A verified sequence recoloring each vertex at most `k` times.
    Yes(RecolorSequence),
    No,
    /// The search stored `explored` states without deciding.
    Unknown {
        explored: usize,
    },
}

impl KGood {
    pub fn is_yes(&self) -> bool {
        matches!(self, KGood::Yes(_))
    }
}

/// Decides whether `beta` is reachable from `alpha` recoloring each vertex at
/// most `k` times (`None` for no limit).
///
/// States are (coloring, per-vertex counts). A move that would take a count
/// past `k` is dropped, which is the same as capping counts at `k + 1` and
/// discarding exceeded states. A state is pruned when a stored state has the
/// same coloring and pointwise no larger counts, since every continuation of
/// the pruned state is also available to the stored one. More than
/// `max_states` stored states gives [`KGood::Unknown`].
pub fn kgood_reachable(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
    k: Option<u32>,
    max_states: usize,
) -> Result<KGood, OracleError> {
    let space = StateSpace::new(g, lists, u64::MAX)?;
    let (a, b) = endpoints(g, lists, alpha, beta, &space)?;
    let n = space.num_vertices();
    let track = k.is_some();
    let width = if track { n } else { 0 };

    // Stored states: code, counts, parent index.
    let mut codes: Vec<u64> = vec![a];
    let mut counts: Vec<u32> = vec![0; width];
    let mut parent: Vec<usize> = vec![usize::MAX];
    let mut by_code: HashMap<u64, Vec<usize>> = HashMap::from([(a, vec![0])]);
    let mut queue = VecDeque::from([0usize]);
    let mut found = None;
    let mut next = vec![0u32; width];
    while let Some(s) = queue.pop_front() {
        if codes[s] == b {
            found = Some(s);
            break;
        }
        let x = codes[s];
        for (i, y) in space.moves(x) {
            if track {
                next.copy_from_slice(&counts[s * n..(s + 1) * n]);
                next[i] += 1;
                if Some(next[i]) > k {
                    continue;
                }
            }
            let bucket = by_code.entry(y).or_default();
            let dominated = bucket.iter().any(|&t| {
                counts[t * width..(t + 1) * width]
                    .iter()
                    .zip(&next)
                    .all(|(p, q)| p <= q)
            });
            if dominated {
                continue;
            }
            if codes.len() >= max_states {
                return Ok(KGood::Unknown {
                    explored: codes.len(),
                });
            }
            let t = codes.len();
            codes.push(y);
            counts.extend_from_slice(&next);
            parent.push(s);
            bucket.push(t);
            queue.push_back(t);
        }
    }
    let Some(mut s) = found else {
        return Ok(KGood::No);
    };
    let mut path = vec![codes[s]];
    while parent[s] != usize::MAX {
        s = parent[s];
        path.push(codes[s]);
    }
    path.reverse();
    let mut seq = RecolorSequence::new(space.decode(a));
    seq.steps = path.windows(2).map(|w| space.step(w[0], w[1])).collect();
    seq.k = k;
    let report = verify(g, lists, &seq, Some(beta), k);
    assert!(
        report.ok,
        "k-good witness failed verification: {:?}",
        report.violation
    );
    Ok(KGood::Yes(seq))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn small_counts() {
        let g = Graph::new(1, []).unwrap();
        let l = ListAssignment::uniform(1, &[1, 2, 3]);
        assert_eq!(
            enumerate_colorings(&g, &l, DEFAULT_STATE_CAP)
                .unwrap()
                .count(),
            3
        );
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let l = ListAssignment::uniform(2, &[1, 2]);
        let all = enumerate_colorings(&g, &l, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(all.count(), 2);
        assert!(all.iter().all(|c| c.is_proper(&g, &l)));
    }

    #[test]
    fn cap_is_enforced() {
        let g = cycle(5);
        let l = ListAssignment::uniform(5, &[1, 2, 3, 4]);
        assert!(matches!(
            enumerate_colorings(&g, &l, 1000),
            Err(OracleError::StateCap {
                states: 1024,
                cap: 1000
            })
        ));
    }

    #[test]
    fn trivial_distances() {
        let g = Graph::new(1, []).unwrap();
        let l = ListAssignment::uniform(1, &[1, 2]);
        let (a, b) = (Coloring::from_colors(&[1]), Coloring::from_colors(&[2]));
        assert_eq!(bfs_distance(&g, &l, &a, &a, 100).unwrap(), Some(0));
        assert_eq!(bfs_distance(&g, &l, &a, &b, 100).unwrap(), Some(1));
    }

    #[test]
    fn frozen_colorings_are_unreachable() {
        // With 2-lists on an edge neither coloring can move.
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let l = ListAssignment::uniform(2, &[1, 2]);
        let (a, b) = (
            Coloring::from_colors(&[1, 2]),
            Coloring::from_colors(&[2, 1]),
        );
        assert_eq!(bfs_distance(&g, &l, &a, &b, 100).unwrap(), None);
        assert_eq!(
            kgood_reachable(&g, &l, &a, &b, None, 100).unwrap(),
            KGood::No
        );
    }

    #[test]
    fn zero_budget() {
        let g = cycle(4);
        let l = ListAssignment::uniform(4, &[1, 2, 3]);
        let a = Coloring::from_colors(&[1, 2, 1, 2]);
        let b = Coloring::from_colors(&[1, 3, 1, 2]);
        assert_eq!(
            kgood_reachable(&g, &l, &a, &a, Some(0), 100).unwrap(),
            KGood::Yes(RecolorSequence {
                start: a.clone(),
                steps: vec![],
                k: Some(0),
            })
        );
        assert_eq!(
            kgood_reachable(&g, &l, &a, &b, Some(0), 100).unwrap(),
            KGood::No
        );
        assert!(kgood_reachable(&g, &l, &a, &b, Some(1), 100)
            .unwrap()
            .is_yes());
    }

    #[test]
    fn swap_on_an_edge_needs_a_detour() {
        // Swapping 1 and 2 on an edge with a third color takes 3 steps and
        // recolors one endpoint twice.
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let l = ListAssignment::uniform(2, &[1, 2, 3]);
        let (a, b) = (
            Coloring::from_colors(&[1, 2]),
            Coloring::from_colors(&[2, 1]),
        );
        assert_eq!(bfs_distance(&g, &l, &a, &b, 100).unwrap(), Some(3));
        assert!(kgood_reachable(&g, &l, &a, &b, Some(2), 100)
            .unwrap()
            .is_yes());
        assert_eq!(
            kgood_reachable(&g, &l, &a, &b, Some(1), 100).unwrap(),
            KGood::No
        );
    }

    #[test]
    fn state_limit_gives_unknown() {
        let g = cycle(5);
        let l = ListAssignment::uniform(5, &[1, 2, 3, 4]);
        let a = Coloring::from_colors(&[1, 2, 1, 2, 3]);
        let b = Coloring::from_colors(&[2, 3, 4, 3, 4]);
        assert!(matches!(
            kgood_reachable(&g, &l, &a, &b, Some(3), 5).unwrap(),
            KGood::Unknown { .. }
        ));
    }

    #[test]
    fn improper_endpoint_is_an_error() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let l = ListAssignment::uniform(2, &[1, 2, 3]);
        let a = Coloring::from_colors(&[1, 1]);
        assert!(matches!(
            bfs_distance(&g, &l, &a, &a, 100),
            Err(OracleError::Improper { which: "start", .. })
        ));
    }
}
