//! Structural validation of recipes, recipe search and recipe execution.

use std::collections::HashSet;

use crate::graph::{Graph, Vertex};
use crate::recolor::{insert_vertex, insertion_cap, Coloring, ListAssignment, RecolorSequence};
use crate::schedule::{extend_2thread, extend_3thread};

use super::{ConfigMatch, Insert, PipelineError, RecipeError};

/// Symbolic state of a partially re-inserted configuration.
#[derive(Clone)]
struct Sim<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    k: u32,
    present: Vec<bool>,
    deleted: Vec<bool>,
    cap: Vec<u32>,
}

impl<'a> Sim<'a> {
    fn new(
        g: &'a Graph,
        lists: &'a ListAssignment,
        deleted: &[Vertex],
        k: u32,
    ) -> Result<Self, RecipeError> {
        let mut del = vec![false; g.id_bound()];
        for &v in deleted {
            if !g.contains(v) {
                return Err(RecipeError::NotDeleted(v));
            }
            del[v] = true;
        }
        let present = (0..g.id_bound())
            .map(|v| g.contains(v) && !del[v])
            .collect();
        Ok(Sim {
            g,
            lists,
            k,
            present,
            deleted: del,
            cap: vec![k; g.id_bound()],
        })
    }

    fn absent(&self, v: Vertex) -> bool {
        v < self.deleted.len() && self.deleted[v] && !self.present[v]
    }

    fn present_nbrs(&self, v: Vertex) -> Vec<Vertex> {
        self.g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.present[u])
            .collect()
    }

    fn key_cap(&self, x: Vertex) -> Result<u32, RecipeError> {
        if !self.absent(x) {
            return Err(RecipeError::NotDeleted(x));
        }
        let nb = self.present_nbrs(x);
        let list = self.lists.size(x);
        if list < nb.len() + 2 {
            return Err(RecipeError::NoSlack {
                vertex: x,
                list,
                degree: nb.len(),
            });
        }
        let t: u32 = nb.iter().map(|&u| self.cap[u]).sum();
        Ok(insertion_cap(t, (list - nb.len() - 1) as u32))
    }

    /// Checks that `path` is a thread once its interior is inserted: the
    /// interior is absent now, consecutive vertices are adjacent, and every
    /// interior vertex will see exactly its two path neighbors.
    fn thread_ok(&self, path: &[Vertex]) -> Result<(), RecipeError> {
        let bad = || RecipeError::NotAThread(path.to_vec());
        let last = path.len() - 1;
        let interior = &path[1..last];
        if !self.present[path[0]] || !self.present[path[last]] {
            return Err(bad());
        }
        if !path.windows(2).all(|w| self.g.has_edge(w[0], w[1])) {
            return Err(bad());
        }
        for (i, &x) in interior.iter().enumerate() {
            if !self.absent(x) || interior[..i].contains(&x) {
                return Err(bad());
            }
            if self.lists.size(x) < 4 {
                return Err(RecipeError::ShortList(x));
            }
            let mut seen: Vec<Vertex> = self
                .g
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&u| self.present[u] || interior.contains(&u))
                .collect();
            let mut want = vec![path[i], path[i + 2]];
            seen.sort_unstable();
            want.sort_unstable();
            want.dedup();
            if seen != want {
                return Err(bad());
            }
        }
        Ok(())
    }

    fn apply(&mut self, step: &Insert) -> Result<(), RecipeError> {
        match step {
            Insert::Key(x) => {
                let c = self.key_cap(*x)?;
                self.cap[*x] = c;
            }
            Insert::Thread2(t) => {
                self.thread_ok(t)?;
                let s = self.cap[t[3]];
                if s + 3 > self.k {
                    return Err(RecipeError::BusyEnd {
                        vertex: t[3],
                        cap: s,
                    });
                }
                self.cap[t[1]] = self.k;
                self.cap[t[2]] = s + 3;
            }
            Insert::Thread3(t) => {
                self.thread_ok(t)?;
                self.cap[t[1]] = self.k;
                self.cap[t[2]] = 4;
                self.cap[t[3]] = self.k;
            }
        }
        for v in step.inserted() {
            self.present[v] = true;
        }
        Ok(())
    }
}

/// Replays a recipe symbolically: vertices outside the deleted set count as
/// recolored `k` times, and each step derives caps for what it inserts from
/// the caps of the present neighbors. Returns the cap of every deleted
/// vertex in id order.
pub fn simulate(
    g: &Graph,
    lists: &ListAssignment,
    deleted: &[Vertex],
    recipe: &[Insert],
    k: u32,
) -> Result<Vec<(Vertex, u32)>, RecipeError> {
    let mut sim = Sim::new(g, lists, deleted, k)?;
    for step in recipe {
        sim.apply(step)?;
    }
    let mut out: Vec<(Vertex, u32)> = Vec::new();
    for v in 0..g.id_bound() {
        if sim.deleted[v] {
            if !sim.present[v] {
                return Err(RecipeError::NeverInserted(v));
            }
            out.push((v, sim.cap[v]));
        }
    }
    Ok(out)
}

const SEARCH_LIMIT: usize = 200_000;

/// Depth-first search for a recipe re-inserting `deleted` with every cap at
/// most `k`. Thread steps are only considered when `threads` is set.
pub fn search_recipe(
    g: &Graph,
    lists: &ListAssignment,
    deleted: &[Vertex],
    k: u32,
    threads: bool,
) -> Option<Vec<Insert>> {
    let sim = Sim::new(g, lists, deleted, k).ok()?;
    let mut del: Vec<Vertex> = deleted.to_vec();
    del.sort_unstable();
    del.dedup();
    let mut failed = HashSet::new();
    let mut budget = SEARCH_LIMIT;
    let mut path = Vec::new();
    dfs(&sim, &del, threads, &mut failed, &mut budget, &mut path).then_some(path)
}

fn candidates(sim: &Sim, del: &[Vertex], threads: bool) -> Vec<Insert> {
    let rest: Vec<Vertex> = del.iter().copied().filter(|&v| !sim.present[v]).collect();
    let mut out = Vec::new();
    let lone_present = |x: Vertex| -> Option<Vertex> {
        let p = sim.present_nbrs(x);
        (p.len() == 1).then(|| p[0])
    };
    if threads {
        for &c in &rest {
            let inner: Vec<Vertex> = sim
                .g
                .neighbors(c)
                .iter()
                .copied()
                .filter(|u| rest.contains(u))
                .collect();
            if !sim.present_nbrs(c).is_empty() {
                continue;
            }
            for i in 0..inner.len() {
                for j in i + 1..inner.len() {
                    let (b, d) = (inner[i], inner[j]);
                    if let (Some(a), Some(e)) = (lone_present(b), lone_present(d)) {
                        out.push(Insert::Thread3([a, b, c, d, e]));
                    }
                }
            }
        }
        for &b in &rest {
            for &c in sim.g.neighbors(b).iter().filter(|u| rest.contains(u)) {
                if let (Some(a), Some(d)) = (lone_present(b), lone_present(c)) {
                    out.push(Insert::Thread2([a, b, c, d]));
                }
            }
        }
    }
    out.extend(rest.iter().map(|&x| Insert::Key(x)));
    out
}

fn dfs(
    sim: &Sim,
    del: &[Vertex],
    threads: bool,
    failed: &mut HashSet<Vec<u32>>,
    budget: &mut usize,
    path: &mut Vec<Insert>,
) -> bool {
    if del.iter().all(|&v| sim.present[v]) {
        return true;
    }
    // Present deleted vertices and their caps identify the search state.
    let key: Vec<u32> = del
        .iter()
        .map(|&v| if sim.present[v] { sim.cap[v] + 1 } else { 0 })
        .collect();
    if failed.contains(&key) || *budget == 0 {
        return false;
    }
    *budget -= 1;
    for step in candidates(sim, del, threads) {
        let mut next = sim.clone();
        if next.apply(&step).is_err() {
            continue;
        }
        if step.inserted().iter().any(|&v| next.cap[v] > next.k) {
            continue;
        }
        path.push(step);
        if dfs(&next, del, threads, failed, budget, path) {
            return true;
        }
        path.pop();
    }
    failed.insert(key);
    false
}

/// Runs a match's recipe on top of `base`, a sequence for `h` minus the
/// deleted set, and checks realized counts against the declared caps.
pub fn apply_recipe(
    h: &Graph,
    lists: &ListAssignment,
    m: &ConfigMatch,
    base: &RecolorSequence,
    alpha: &Coloring,
    beta: &Coloring,
    k: u32,
) -> Result<RecolorSequence, PipelineError> {
    let mut present: Vec<bool> = (0..h.id_bound()).map(|v| h.contains(v)).collect();
    for &v in &m.deleted {
        present[v] = false;
    }
    let mut seq = base.clone();
    let color = |c: &Coloring, v: Vertex| {
        c.get(v)
            .ok_or_else(|| PipelineError::ImproperEndpoint(format!("vertex {v} is uncolored")))
    };
    for step in &m.recipe {
        for v in step.inserted() {
            present[v] = true;
        }
        let cur = h.retain(|v| present[v]);
        let out = match step {
            Insert::Key(x) => {
                insert_vertex(&cur, lists, *x, &seq, color(alpha, *x)?, color(beta, *x)?)
            }
            Insert::Thread2(t) => extend_2thread(&cur, lists, *t, &seq, alpha, beta, k),
            Insert::Thread3(t) => extend_3thread(&cur, lists, *t, &seq, alpha, beta, k),
        };
        seq = out.map_err(|source| PipelineError::Extend {
            pattern: m.pattern,
            source,
        })?;
    }
    for &(v, declared) in &m.caps {
        let realized = seq.count_of(v);
        if realized > declared {
            return Err(PipelineError::CapExceeded {
                pattern: m.pattern,
                vertex: v,
                realized,
                declared,
            });
        }
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lists(n: usize, size: u32) -> ListAssignment {
        ListAssignment::uniform(n, &(1..=size).collect::<Vec<_>>())
    }

    #[test]
    fn key_caps_follow_present_degree() {
        // Path 0-1-2, delete {1}: two present neighbors, slack 6-2-1 = 3.
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let caps = simulate(&g, &lists(3, 6), &[1], &[Insert::Key(1)], 48).unwrap();
        assert_eq!(caps, vec![(1, 33)]);
        assert!(matches!(
            simulate(&g, &lists(3, 6), &[1], &[], 48),
            Err(RecipeError::NeverInserted(1))
        ));
    }

    #[test]
    fn thread_caps_and_shape() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let l = lists(5, 4);
        let caps = simulate(&g, &l, &[1, 2, 3], &[Insert::Thread3([0, 1, 2, 3, 4])], 18).unwrap();
        assert_eq!(caps, vec![(1, 18), (2, 4), (3, 18)]);
        let caps = simulate(
            &g,
            &l,
            &[1, 2, 3],
            &[Insert::Key(3), Insert::Thread2([0, 1, 2, 3])],
            18,
        )
        .unwrap();
        assert_eq!(caps, vec![(1, 18), (2, 13), (3, 10)]);
        assert!(matches!(
            simulate(
                &g,
                &l,
                &[1, 2, 3],
                &[Insert::Thread2([0, 1, 2, 3]), Insert::Key(3)],
                18
            ),
            Err(RecipeError::NotAThread(_))
        ));
    }

    #[test]
    fn search_finds_a_certified_order() {
        // 3-vertex 0 with two pendant 2-threads and one edge to a hub 7.
        let g = Graph::new(
            8,
            [
                (0, 1),
                (1, 2),
                (2, 5),
                (0, 3),
                (3, 4),
                (4, 6),
                (0, 7),
                (5, 6),
                (5, 7),
                (6, 7),
            ],
        )
        .unwrap();
        let l = lists(8, 4);
        let del = [0, 1, 2, 3, 4];
        let recipe = search_recipe(&g, &l, &del, 18, true).unwrap();
        let caps = simulate(&g, &l, &del, &recipe, 18).unwrap();
        assert!(caps.iter().all(|&(_, c)| c <= 18));
        assert!(search_recipe(&g, &l, &del, 18, false).is_none());
    }
}
