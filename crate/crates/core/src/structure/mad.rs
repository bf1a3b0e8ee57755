//! Exact maximum average degree through densest-subgraph max-flow.

use std::collections::VecDeque;

use num_rational::Ratio;

use crate::graph::{Graph, Vertex};

use super::StructureError;

/// Dinic's algorithm on an adjacency-list residual network.
struct Flow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add(&mut self, u: usize, v: usize, c: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn levels(&self, s: usize) -> Vec<i64> {
        let mut level = vec![-1; self.head.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] < 0 {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, f: i64, level: &[i64], it: &mut [usize]) -> i64 {
        if u == t {
            return f;
        }
        while it[u] < self.head[u].len() {
            let e = self.head[u][it[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let d = self.push(v, t, f.min(self.cap[e]), level, it);
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            it[u] += 1;
        }
        0
    }

    /// Max flow value; afterwards `source_side` gives the min cut.
    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] < 0 {
                return total;
            }
            let mut it = vec![0; self.head.len()];
            loop {
                let f = self.push(s, t, i64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    fn source_side(&self, s: usize) -> Vec<bool> {
        self.levels(s).iter().map(|&l| l >= 0).collect()
    }
}

/// Vertices of a subgraph `H` maximizing `|E(H)| - (p/q) |V(H)|`, and that
/// maximum scaled by `q`. Uses the closure network where each edge node
/// requires both of its endpoints.
fn best_closure(verts: &[Vertex], edges: &[(usize, usize)], p: i64, q: i64) -> (i64, Vec<usize>) {
    let n = verts.len();
    let m = edges.len();
    let (s, t) = (n + m, n + m + 1);
    let mut fl = Flow::new(n + m + 2);
    for (i, &(a, b)) in edges.iter().enumerate() {
        fl.add(s, n + i, q);
        fl.add(n + i, a, i64::MAX / 4);
        fl.add(n + i, b, i64::MAX / 4);
    }
    for i in 0..n {
        fl.add(i, t, p);
    }
    let cut = fl.max_flow(s, t);
    let side = fl.source_side(s);
    let chosen: Vec<usize> = (0..n).filter(|&i| side[i]).collect();
    (q * m as i64 - cut, chosen)
}

/// Maximum average degree with a densest induced subgraph as witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MadResult {
    pub value: Ratio<i64>,
    pub witness: Vec<Vertex>,
}

/// Exact `mad(g) = max over nonempty H of 2|E(H)| / |V(H)|`, computed by
/// Dinkelbach iteration on the density `|E(H)| / |V(H)|`.
pub fn mad(g: &Graph) -> Result<MadResult, StructureError> {
    let verts: Vec<Vertex> = g.vertices().collect();
    if verts.is_empty() {
        return Err(StructureError::EmptyGraph);
    }
    let mut index = vec![usize::MAX; g.id_bound()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (index[u], index[v])).collect();
    let mut witness: Vec<usize> = (0..verts.len()).collect();
    let mut dens = Ratio::new(edges.len() as i64, verts.len() as i64);
    loop {
        let (gain, chosen) = best_closure(&verts, &edges, *dens.numer(), *dens.denom());
        if gain <= 0 || chosen.is_empty() {
            break;
        }
        let inside: Vec<bool> = {
            let mut b = vec![false; verts.len()];
            for &i in &chosen {
                b[i] = true;
            }
            b
        };
        let e = edges
            .iter()
            .filter(|&&(a, b)| inside[a] && inside[b])
            .count();
        let next = Ratio::new(e as i64, chosen.len() as i64);
        if next <= dens {
            break;
        }
        dens = next;
        witness = chosen;
    }
    Ok(MadResult {
        value: dens * 2,
        witness: witness.into_iter().map(|i| verts[i]).collect(),
    })
}
