//! Exact joint insertion of a small vertex set into a base sequence, and the
//! 2-thread and 3-thread extensions built on it.
//!
//! The inserted set `S` only interacts with the base sequence through steps
//! at outside neighbors of `S` (events). Between two events the outside
//! colors are frozen, so the search runs over colorings of `S` at each event
//! boundary. Per coloring it keeps the Pareto front of per-vertex move
//! counts, which makes the search exact under per-vertex caps.

use std::collections::BTreeMap;

use crate::graph::{Graph, Vertex};
use crate::recolor::{Color, Coloring, ExtendError, ListAssignment, RecolorSequence, Step};

struct Label {
    state: usize,
    counts: Vec<u32>,
    parent: Option<usize>,
    step: Option<(usize, Color)>,
    window: usize,
    dead: bool,
}

/// Inserts every vertex of `set` into `base` (a sequence on `g - set`), so
/// that vertex `set[i]` starts at `alpha[i]`, ends at `beta[i]` and moves at
/// most `caps[i]` times. Among feasible schedules, one with the fewest total
/// moves is returned.
pub fn joint_insert(
    g: &Graph,
    lists: &ListAssignment,
    set: &[Vertex],
    base: &RecolorSequence,
    alpha: &[Color],
    beta: &[Color],
    caps: &[u32],
) -> Result<RecolorSequence, ExtendError> {
    let m = set.len();
    assert!(alpha.len() == m && beta.len() == m && caps.len() == m);
    for (i, &v) in set.iter().enumerate() {
        if !g.contains(v) {
            return Err(ExtendError::UnknownVertex(v));
        }
        for c in [alpha[i], beta[i]] {
            if !lists.allows(v, c) {
                return Err(ExtendError::OffList(v, c));
            }
        }
    }
    if let Some(s) = base.steps.iter().find(|s| set.contains(&s.vertex)) {
        return Err(ExtendError::TouchesInserted(s.vertex));
    }
    let index_of = |v: Vertex| set.iter().position(|&x| x == v);
    // Inside neighbor indices and outside neighbors per inserted vertex.
    let inside: Vec<Vec<usize>> = set
        .iter()
        .map(|&v| g.neighbors(v).iter().filter_map(|&u| index_of(u)).collect())
        .collect();
    let outside: Vec<Vec<Vertex>> = set
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| index_of(u).is_none())
                .collect()
        })
        .collect();
    let palettes: Vec<&[Color]> = set.iter().map(|&v| lists.get(v)).collect();
    let radix: Vec<usize> = palettes.iter().map(|p| p.len()).collect();
    let encode =
        |cols: &[usize]| -> usize { cols.iter().zip(&radix).fold(0, |acc, (&c, &r)| acc * r + c) };
    let decode = |mut code: usize| -> Vec<usize> {
        let mut out = vec![0; m];
        for i in (0..m).rev() {
            out[i] = code % radix[i];
            code /= radix[i];
        }
        out
    };
    let pos = |i: usize, c: Color| palettes[i].binary_search(&c).unwrap_or(usize::MAX);
    let a_idx: Vec<usize> = (0..m).map(|i| pos(i, alpha[i])).collect();
    let b_idx: Vec<usize> = (0..m).map(|i| pos(i, beta[i])).collect();

    let mut outer = base.start.clone();
    let end = base.end();
    for i in 0..m {
        for &j in &inside[i] {
            if alpha[i] == alpha[j] {
                return Err(ExtendError::ImproperStart(set[i], set[j]));
            }
            if beta[i] == beta[j] {
                return Err(ExtendError::ImproperEnd(set[i], set[j]));
            }
        }
        for &u in &outside[i] {
            if outer.get(u) == Some(alpha[i]) {
                return Err(ExtendError::ImproperStart(set[i], u));
            }
            if end.get(u) == Some(beta[i]) {
                return Err(ExtendError::ImproperEnd(set[i], u));
            }
        }
    }

    let is_outside_nbr = |u: Vertex| outside.iter().any(|o| o.contains(&u));
    let events: Vec<usize> = base
        .steps
        .iter()
        .enumerate()
        .filter(|(_, s)| is_outside_nbr(s.vertex))
        .map(|(i, _)| i)
        .collect();

    let mut arena: Vec<Label> = vec![Label {
        state: encode(&a_idx),
        counts: vec![0; m],
        parent: None,
        step: None,
        window: 0,
        dead: false,
    }];
    let mut front: BTreeMap<usize, Vec<usize>> = BTreeMap::from([(encode(&a_idx), vec![0])]);

    for window in 0..=events.len() {
        // Close the front under single moves with the outside frozen.
        let mut work: Vec<usize> = front.values().flatten().copied().collect();
        while let Some(li) = work.pop() {
            if arena[li].dead {
                continue;
            }
            let cols = decode(arena[li].state);
            for i in 0..m {
                if arena[li].counts[i] >= caps[i] {
                    continue;
                }
                for (ci, &c) in palettes[i].iter().enumerate() {
                    if ci == cols[i]
                        || inside[i].iter().any(|&j| palettes[j][cols[j]] == c)
                        || outside[i].iter().any(|&u| outer.get(u) == Some(c))
                    {
                        continue;
                    }
                    let mut next = cols.clone();
                    next[i] = ci;
                    let code = encode(&next);
                    let mut counts = arena[li].counts.clone();
                    counts[i] += 1;
                    let slot = front.entry(code).or_default();
                    if slot
                        .iter()
                        .any(|&o| arena[o].counts.iter().zip(&counts).all(|(a, b)| a <= b))
                    {
                        continue;
                    }
                    slot.retain(|&o| {
                        let dominated = counts.iter().zip(&arena[o].counts).all(|(a, b)| a <= b);
                        if dominated {
                            arena[o].dead = true;
                        }
                        !dominated
                    });
                    let id = arena.len();
                    arena.push(Label {
                        state: code,
                        counts,
                        parent: Some(li),
                        step: Some((i, c)),
                        window,
                        dead: false,
                    });
                    if let Some(s) = front.get_mut(&code) {
                        s.push(id);
                    }
                    work.push(id);
                }
            }
        }
        let Some(&ei) = events.get(window) else { break };
        let s = base.steps[ei];
        outer.set(s.vertex, s.color);
        front.retain(|&state, _| {
            let cols = decode(state);
            (0..m).all(|i| !(outside[i].contains(&s.vertex) && palettes[i][cols[i]] == s.color))
        });
        if front.is_empty() {
            return Err(ExtendError::Infeasible(set.to_vec()));
        }
    }

    let best = front
        .get(&encode(&b_idx))
        .and_then(|ls| {
            ls.iter()
                .copied()
                .min_by_key(|&l| (arena[l].counts.iter().sum::<u32>(), arena[l].counts.clone()))
        })
        .ok_or_else(|| ExtendError::Infeasible(set.to_vec()))?;

    // Moves per window, in order.
    let mut per_window: Vec<Vec<Step>> = vec![Vec::new(); events.len() + 1];
    let mut cur = Some(best);
    while let Some(l) = cur {
        if let Some((i, c)) = arena[l].step {
            per_window[arena[l].window].push(Step::new(set[i], c));
        }
        cur = arena[l].parent;
    }
    for w in &mut per_window {
        w.reverse();
    }

    let mut start = base.start.clone();
    for i in 0..m {
        start.set(set[i], alpha[i]);
    }
    let mut steps = Vec::with_capacity(base.steps.len() + 4 * m);
    let mut ev = 0;
    for (i, s) in base.steps.iter().enumerate() {
        if ev < events.len() && events[ev] == i {
            steps.extend_from_slice(&per_window[ev]);
            ev += 1;
        }
        steps.push(*s);
    }
    steps.extend_from_slice(&per_window[events.len()]);
    Ok(RecolorSequence {
        start,
        steps,
        k: base.k,
    })
}

fn check_thread(g: &Graph, path: &[Vertex]) -> Result<(), ExtendError> {
    let interior = &path[1..path.len() - 1];
    let ok = path.iter().all(|&v| g.contains(v))
        && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
        && interior.iter().all(|&v| g.deg(v) == 2)
        && (1..interior.len()).all(|i| !interior[..i].contains(&interior[i]))
        && interior
            .iter()
            .all(|v| *v != path[0] && *v != path[path.len() - 1]);
    if ok {
        Ok(())
    } else {
        Err(ExtendError::NotAThread(path.to_vec()))
    }
}

fn colors_of(c: &Coloring, vs: &[Vertex]) -> Result<Vec<Color>, ExtendError> {
    vs.iter()
        .map(|&v| c.get(v).ok_or(ExtendError::UnknownVertex(v)))
        .collect()
}

/// Inserts the interior `v2, v3` of the 2-thread `v1 v2 v3 v4` into `base`.
/// With `s` the number of base steps at `v4`, requires `s <= k - 3`, caps
/// `v3` at `s + 3` and `v2` at `k`.
pub fn extend_2thread(
    h: &Graph,
    lists: &ListAssignment,
    thread: [Vertex; 4],
    base: &RecolorSequence,
    alpha: &Coloring,
    beta: &Coloring,
    k: u32,
) -> Result<RecolorSequence, ExtendError> {
    check_thread(h, &thread)?;
    let s = base.count_of(thread[3]);
    if s + 3 > k {
        return Err(ExtendError::NeighborTooBusy {
            vertex: thread[3],
            s,
            k,
        });
    }
    let set = [thread[1], thread[2]];
    joint_insert(
        h,
        lists,
        &set,
        base,
        &colors_of(alpha, &set)?,
        &colors_of(beta, &set)?,
        &[k, s + 3],
    )
}

/// Inserts the interior `v2, v3, v4` of the 3-thread `v1 .. v5` into `base`,
/// capping `v3` at 4 and the other two at `k`.
pub fn extend_3thread(
    h: &Graph,
    lists: &ListAssignment,
    thread: [Vertex; 5],
    base: &RecolorSequence,
    alpha: &Coloring,
    beta: &Coloring,
    k: u32,
) -> Result<RecolorSequence, ExtendError> {
    check_thread(h, &thread)?;
    let set = [thread[1], thread[2], thread[3]];
    joint_insert(
        h,
        lists,
        &set,
        base,
        &colors_of(alpha, &set)?,
        &colors_of(beta, &set)?,
        &[k, 4, k],
    )
}
