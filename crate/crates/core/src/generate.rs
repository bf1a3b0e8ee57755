//! Seeded instance families with random lists and two random proper
//! colorings.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::recolor::{Color, Coloring, ListAssignment};
use crate::structure::{class_check_planar6, mad};

const ATTEMPTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Square grid with every square stretched to a 5-face; no 4-cycles.
    Grid5,
    /// Pentagonal grid with pairwise disjoint squares and pendant pieces.
    VertexDisjoint4Cycles,
    /// A cubic multigraph with edges subdivided until the girth is at least 10.
    Girth10Subdiv,
    /// A tree with edges turned into 0-, 1- and 2-threads plus a few extra
    /// edges, kept below average degree 5/2 everywhere.
    SparseTree2Threads,
    Cycle,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Grid5,
        Family::VertexDisjoint4Cycles,
        Family::Girth10Subdiv,
        Family::SparseTree2Threads,
        Family::Cycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Grid5 => "grid5",
            Family::VertexDisjoint4Cycles => "vertexdisjoint4cycles",
            Family::Girth10Subdiv => "girth10subdiv",
            Family::SparseTree2Threads => "sparsetree2threads",
            Family::Cycle => "cycle",
        }
    }

    /// Families emitted with a rotation system and checked against the
    /// planar class.
    pub fn is_planar(self) -> bool {
        matches!(
            self,
            Family::Grid5 | Family::VertexDisjoint4Cycles | Family::Cycle
        )
    }

    /// Families checked against `mad < 5/2`.
    pub fn is_sparse(self) -> bool {
        matches!(
            self,
            Family::Girth10Subdiv | Family::SparseTree2Threads | Family::Cycle
        )
    }

    pub fn default_list_size(self) -> usize {
        match self {
            Family::Grid5 | Family::VertexDisjoint4Cycles => 6,
            _ => 4,
        }
    }

    pub fn min_vertices(self) -> usize {
        match self {
            Family::Grid5 => 5,
            Family::VertexDisjoint4Cycles | Family::Cycle => 4,
            Family::Girth10Subdiv | Family::SparseTree2Threads => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenOptions {
    /// Defaults to the family's list size.
    pub list_size: Option<usize>,
    /// Colors are drawn from `1..=palette`; defaults to the list size plus 2.
    pub palette: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceBundle {
    pub family: Family,
    pub seed: u64,
    pub graph: Graph,
    pub lists: ListAssignment,
    pub alpha: Coloring,
    pub beta: Coloring,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("{family} needs at least {min} vertices, got {n}")]
    TooSmall {
        family: Family,
        n: usize,
        min: usize,
    },
    #[error("palette of {palette} colors cannot hold lists of size {list_size}")]
    Palette { palette: u32, list_size: usize },
    #[error("no valid {family} instance for n={n} seed={seed} after {ATTEMPTS} attempts")]
    Exhausted { family: Family, n: usize, seed: u64 },
}

/// Generates a bundle with at most `n` vertices (exactly `n` for cycles),
/// deterministic in `seed`.
pub fn generate(family: Family, n: usize, seed: u64) -> Result<InstanceBundle, GenerateError> {
    generate_with(family, n, seed, &GenOptions::default())
}

pub fn generate_with(
    family: Family,
    n: usize,
    seed: u64,
    opts: &GenOptions,
) -> Result<InstanceBundle, GenerateError> {
    if n < family.min_vertices() {
        return Err(GenerateError::TooSmall {
            family,
            n,
            min: family.min_vertices(),
        });
    }
    let list_size = opts.list_size.unwrap_or(family.default_list_size());
    let palette = opts.palette.unwrap_or(list_size as u32 + 2);
    if list_size == 0 || (palette as usize) < list_size {
        return Err(GenerateError::Palette { palette, list_size });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let Some(graph) = build(family, n, &mut rng) else {
            continue;
        };
        if !in_family_class(family, &graph) {
            continue;
        }
        let lists = random_lists(&graph, list_size, palette, &mut rng);
        let (Some(alpha), Some(beta)) = (
            greedy_coloring(&graph, &lists, &mut rng),
            greedy_coloring(&graph, &lists, &mut rng),
        ) else {
            continue;
        };
        return Ok(InstanceBundle {
            family,
            seed,
            graph,
            lists,
            alpha,
            beta,
        });
    }
    Err(GenerateError::Exhausted { family, n, seed })
}

fn in_family_class(family: Family, g: &Graph) -> bool {
    if family.is_planar() && !class_check_planar6(g).in_class() {
        return false;
    }
    if family.is_sparse() && !mad(g).is_ok_and(|m| m.value < Ratio::new(5, 2)) {
        return false;
    }
    true
}

fn build(family: Family, n: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    match family {
        Family::Grid5 => grid5(n, rng).map(|b| b.finish()),
        Family::VertexDisjoint4Cycles => disjoint_squares(n, rng),
        Family::Girth10Subdiv => girth10(n, rng),
        Family::SparseTree2Threads => sparse_tree(n, rng),
        Family::Cycle => {
            let edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            let rot = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
            Graph::new(n, edges).ok()?.with_rotation(rot).ok()
        }
    }
}

/// Edges plus a rotation system under construction.
struct Embedded {
    rot: Vec<Vec<Vertex>>,
}

impl Embedded {
    fn add_vertex(&mut self) -> Vertex {
        self.rot.push(Vec::new());
        self.rot.len() - 1
    }

    /// Adds the edge `u v`, placing it at position `at` in `u`'s rotation
    /// and at the end of `v`'s.
    fn add_edge(&mut self, u: Vertex, v: Vertex, at: usize) {
        let at = at.min(self.rot[u].len());
        self.rot[u].insert(at, v);
        self.rot[v].push(u);
    }

    fn finish(self) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = self
            .rot
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        let n = self.rot.len();
        Graph::new(n, edges)
            .and_then(|g| g.with_rotation(self.rot))
            .expect("generator produced an inconsistent embedding")
    }
}

/// A rows × cols grid drawn in the plane with every vertical edge in
/// alternate columns subdivided, so each square becomes a 5-face. Some edges
/// are dropped at random while the graph stays connected.
fn grid5(n: usize, rng: &mut ChaCha8Rng) -> Option<Embedded> {
    let size = |r: usize, c: usize, o: usize| {
        r * c + (r - 1) * (0..c).filter(|j| (j + o).is_multiple_of(2)).count()
    };
    let mut shapes = Vec::new();
    for r in 2..=n {
        for c in 2..=n {
            for o in 0..2 {
                if r * c <= n && size(r, c, o) <= n {
                    shapes.push((size(r, c, o), r, c, o));
                }
            }
        }
    }
    let best = shapes.iter().map(|s| s.0).max()?;
    let near: Vec<_> = shapes.into_iter().filter(|s| s.0 + 3 >= best).collect();
    let &(_, r, c, o) = near.choose(rng)?;

    let mut pos: Vec<(i64, i64)> = Vec::new();
    let id = |i: usize, j: usize| i * c + j;
    for i in 0..r {
        for j in 0..c {
            pos.push((2 * j as i64, 2 * i as i64));
        }
    }
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..c {
            if j + 1 < c {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < r {
                if (j + o) % 2 == 0 {
                    let m = pos.len();
                    pos.push((2 * j as i64, 2 * i as i64 + 1));
                    edges.push((id(i, j), m));
                    edges.push((m, id(i + 1, j)));
                } else {
                    edges.push((id(i, j), id(i + 1, j)));
                }
            }
        }
    }
    let total = pos.len();
    edges.shuffle(rng);
    let mut kept = edges.clone();
    for e in edges {
        if rng.gen_bool(0.12) {
            let trial: Vec<_> = kept.iter().copied().filter(|&x| x != e).collect();
            if Graph::new(total, trial.iter().copied())
                .ok()?
                .is_connected()
            {
                kept = trial;
            }
        }
    }
    Some(embed_by_angle(&pos, &kept))
}

/// Rotation system of a straight-line drawing: neighbors sorted by angle.
fn embed_by_angle(pos: &[(i64, i64)], edges: &[(Vertex, Vertex)]) -> Embedded {
    let mut rot = vec![Vec::new(); pos.len()];
    for &(u, v) in edges {
        rot[u].push(v);
        rot[v].push(u);
    }
    for (u, l) in rot.iter_mut().enumerate() {
        l.sort_by(|&a, &b| {
            let ang =
                |w: Vertex| ((pos[w].1 - pos[u].1) as f64).atan2((pos[w].0 - pos[u].0) as f64);
            ang(a).total_cmp(&ang(b))
        });
    }
    Embedded { rot }
}

/// A pentagonal grid (or a single square when tiny) with squares and
/// pendant pieces glued on, each square through a vertex used by no other
/// square.
fn disjoint_squares(n: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut emb;
    let mut used: Vec<bool>;
    if n >= 10 && rng.gen_bool(0.8) {
        emb = grid5(n / 2 + rng.gen_range(0..=n / 4), rng)?;
        used = vec![false; emb.rot.len()];
    } else {
        emb = Embedded { rot: Vec::new() };
        for _ in 0..4 {
            emb.add_vertex();
        }
        for i in 0..4 {
            emb.add_edge(i, (i + 1) % 4, 1);
        }
        used = vec![true; 4];
    }
    let mut squares = usize::from(used.iter().any(|&u| u));
    while emb.rot.len() < n {
        let room = n - emb.rot.len();
        let x = rng.gen_range(0..emb.rot.len());
        let at = rng.gen_range(0..=emb.rot[x].len());
        let choice = rng.gen_range(0..4);
        if room >= 3 && !used[x] && (choice < 2 || squares == 0) {
            // A square through x.
            let (a, b, cc) = (emb.add_vertex(), emb.add_vertex(), emb.add_vertex());
            emb.add_edge(x, cc, at);
            emb.add_edge(x, a, at);
            emb.add_edge(a, b, 0);
            emb.add_edge(b, cc, 0);
            used[x] = true;
            used.extend([true; 3]);
            squares += 1;
        } else if room >= 4 && choice == 2 {
            // A pendant square hanging from x.
            let s: Vec<Vertex> = (0..4).map(|_| emb.add_vertex()).collect();
            emb.add_edge(x, s[0], at);
            for i in 0..4 {
                emb.add_edge(s[i], s[(i + 1) % 4], 1);
            }
            used.extend([true; 4]);
            squares += 1;
        } else {
            let y = emb.add_vertex();
            emb.add_edge(x, y, at);
            used.push(false);
        }
    }
    Some(emb.finish())
}

/// Girth-10 subdivision of a random connected cubic multigraph, or a random
/// tree of maximum degree 3 when `n` is too small for one.
fn girth10(n: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut b = (n * 4 / 13) & !1;
    while b >= 2 {
        for _ in 0..20 {
            if let Some(g) = subdivided_cubic(b, rng).filter(|g| g.num_vertices() <= n) {
                return Some(g);
            }
        }
        b -= 2;
    }
    random_tree(n, 3, rng)
}

fn subdivided_cubic(b: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut stubs: Vec<Vertex> = (0..b).flat_map(|v| [v; 3]).collect();
    stubs.shuffle(rng);
    let base: Vec<(Vertex, Vertex)> = stubs.chunks(2).map(|p| (p[0], p[1])).collect();
    if base.iter().any(|&(u, v)| u == v) {
        return None;
    }
    let mut sub: Vec<usize> = (0..base.len()).map(|_| rng.gen_range(1..=2)).collect();
    // Lengthen each edge until its shortest cycle has length at least 10.
    loop {
        let mut changed = false;
        for e in 0..base.len() {
            let (u, v) = base[e];
            let w: Vec<usize> = sub.iter().map(|s| s + 1).collect();
            let Some(d) = weighted_distance(b, &base, &w, e, u, v) else {
                continue;
            };
            if d + w[e] < 10 {
                sub[e] += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut edges = Vec::new();
    let mut next = b;
    for (e, &(u, v)) in base.iter().enumerate() {
        let mut prev = u;
        for _ in 0..sub[e] {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    let g = Graph::new(next, edges).ok()?;
    g.is_connected().then_some(g)
}

/// Shortest distance from `u` to `v` avoiding edge `skip`.
fn weighted_distance(
    n: usize,
    edges: &[(Vertex, Vertex)],
    w: &[usize],
    skip: usize,
    u: Vertex,
    v: Vertex,
) -> Option<usize> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if i != skip {
            adj[a].push((b, w[i]));
            adj[b].push((a, w[i]));
        }
    }
    let mut dist = vec![usize::MAX; n];
    dist[u] = 0;
    let mut heap = BinaryHeap::from([Reverse((0, u))]);
    while let Some(Reverse((d, x))) = heap.pop() {
        if x == v {
            return Some(d);
        }
        if d > dist[x] {
            continue;
        }
        for &(y, c) in &adj[x] {
            if d + c < dist[y] {
                dist[y] = d + c;
                heap.push(Reverse((d + c, y)));
            }
        }
    }
    None
}

/// Random tree on exactly `n` vertices with maximum degree `max_deg`.
fn random_tree(n: usize, max_deg: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let open: Vec<Vertex> = (0..v).filter(|&u| deg[u] < max_deg).collect();
        let &u = open.choose(rng)?;
        deg[u] += 1;
        deg[v] += 1;
        edges.push((u, v));
    }
    Graph::new(n, edges).ok()
}

/// A random tree of maximum degree 4 whose edges become threads with 0 to 2
/// interior vertices, plus extra edges between low-degree vertices as long
/// as the maximum average degree stays below 5/2.
fn sparse_tree(n: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    // Enough branch vertices that threads of length at most 2 absorb the rest.
    let b = (n * 2 / 5).max(n.div_ceil(3) + 1).max(2).min(n);
    let tree = random_tree(b, 4, rng)?;
    let tree_edges: Vec<_> = tree.edges().collect();
    let mut slots: Vec<usize> = (0..tree_edges.len()).flat_map(|i| [i, i]).collect();
    slots.shuffle(rng);
    let mut lens = vec![0; tree_edges.len()];
    for &i in slots.iter().take(n - b) {
        lens[i] += 1;
    }
    let mut edges = Vec::new();
    let mut next = b;
    for (&(u, v), &s) in tree_edges.iter().zip(&lens) {
        let mut prev = u;
        for _ in 0..s {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    let mut g = Graph::new(next, edges.iter().copied()).ok()?;
    let tries = rng.gen_range(0..=next / 4);
    for _ in 0..tries {
        let u = rng.gen_range(0..next);
        let v = rng.gen_range(0..next);
        if u == v || g.has_edge(u, v) || g.deg(u) >= 4 || g.deg(v) >= 4 {
            continue;
        }
        let mut trial = edges.clone();
        trial.push((u, v));
        let h = Graph::new(next, trial.iter().copied()).ok()?;
        if h.girth().is_some_and(|l| l < 5) {
            continue;
        }
        if mad(&h).is_ok_and(|m| m.value < Ratio::new(5, 2)) {
            edges = trial;
            g = h;
        }
    }
    Some(g)
}

/// Each vertex gets `size` distinct colors from `1..=palette`.
pub fn random_lists(g: &Graph, size: usize, palette: u32, rng: &mut impl Rng) -> ListAssignment {
    let all: Vec<Color> = (1..=palette).collect();
    ListAssignment::new(
        (0..g.id_bound())
            .map(|v| {
                if g.contains(v) {
                    all.choose_multiple(rng, size).copied().collect()
                } else {
                    Vec::new()
                }
            })
            .collect(),
    )
}

/// Vertices in reverse smallest-last order: each has at most degeneracy many
/// neighbors earlier in the order.
pub fn degeneracy_order(g: &Graph) -> Vec<Vertex> {
    let mut deg: Vec<usize> = (0..g.id_bound()).map(|v| g.deg(v)).collect();
    let mut gone = vec![false; g.id_bound()];
    let mut order = Vec::with_capacity(g.num_vertices());
    for _ in 0..g.num_vertices() {
        let v = g
            .vertices()
            .filter(|&v| !gone[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex count mismatch");
        gone[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            deg[u] = deg[u].saturating_sub(1);
        }
    }
    order.reverse();
    order
}

/// Random greedy list coloring along the degeneracy order; `None` when some
/// vertex runs out of colors.
pub fn greedy_coloring(g: &Graph, lists: &ListAssignment, rng: &mut impl Rng) -> Option<Coloring> {
    let mut c = Coloring::empty(g.id_bound());
    for v in degeneracy_order(g) {
        let free: Vec<Color> = lists
            .get(v)
            .iter()
            .copied()
            .filter(|&x| g.neighbors(v).iter().all(|&u| c.get(u) != Some(x)))
            .collect();
        c.set(v, *free.choose(rng)?);
    }
    c.is_proper(g, lists).then_some(c)
}
