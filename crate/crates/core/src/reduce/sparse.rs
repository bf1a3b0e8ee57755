//! Reducible configurations for graphs of maximum average degree below 5/2,
//! with 4-lists and budget 18.
//!
//! Profiles are written `[a, b, c]`: a 3-vertex whose maximal threads have
//! `a >= b >= c` interior vertices.

use crate::graph::{Graph, Vertex};
use crate::structure::threads::{
    follow, has_profile, thread_profile, threads_at, weak_neighbors, Thread,
};

use super::{CapExpr, Catalog, ConfigMatch, ConfigPattern, Ctx, Insert};

use CapExpr::{Budget as K, Const, Role as R};

pub fn catalog() -> Catalog {
    let p = |id, summary, detect, declared| ConfigPattern {
        id,
        summary,
        detect,
        runtime_verified: false,
        declared,
    };
    Catalog {
        name: "sparse",
        patterns: vec![
            p(
                "cycle-component",
                "a component that is a cycle",
                cycle_component,
                None,
            ),
            p(
                "min-degree",
                "a vertex of degree at most 1",
                min_degree,
                None,
            ),
            p(
                "three-thread",
                "a thread with three interior vertices",
                three_thread,
                None,
            ),
            p(
                "crowded-vertex",
                "a 3-vertex with 4+ nearby 2-vertices or a 4-vertex with 6+",
                crowded_vertex,
                None,
            ),
            p(
                "210-next-to-low",
                "a [2,1,0]-vertex adjacent to a [2,1,0]-, [2,0,0]- or [1,1,0]-vertex",
                two_one_zero_next_to_low,
                None,
            ),
            p(
                "111-weak-pair",
                "a [1,1,1]-vertex weak-adjacent to a [2,1,0]- or [1,1,1]-vertex",
                one_one_one_weak_pair,
                None,
            ),
            p(
                "two-210-neighbors",
                "a 3-vertex adjacent to two [2,1,0]-vertices",
                two_210_neighbors,
                Some(two_210_neighbors_caps),
            ),
            p(
                "100-weak-111",
                "a [1,0,0]-vertex with a [2,1,0]-neighbor, weak-adjacent to a [1,1,1]-vertex",
                one_zero_zero_weak_111,
                Some(one_zero_zero_weak_111_caps),
            ),
            p(
                "100-next-to-bad",
                "a [1,0,0]-vertex with a [2,1,0]-neighbor, adjacent to a bad [1,1,0]-vertex",
                one_zero_zero_next_to_bad,
                Some(one_zero_zero_next_to_bad_caps),
            ),
            p(
                "bad-next-to-200",
                "a bad [1,1,0]-vertex adjacent to a [2,0,0]-vertex",
                bad_next_to_200,
                Some(bad_next_to_200_caps),
            ),
            p(
                "bad-next-to-110",
                "a bad [1,1,0]-vertex adjacent to a [1,1,0]-vertex",
                bad_next_to_110,
                Some(bad_next_to_110_caps),
            ),
            p(
                "110-two-weak-111",
                "a [1,1,0]-vertex weak-adjacent to two [1,1,1]-vertices",
                one_one_zero_two_weak_111,
                Some(one_one_zero_two_weak_111_caps),
            ),
            p(
                "110-double-weak-111",
                "a [1,1,0]-vertex whose two 1-threads end at the same [1,1,1]-vertex",
                one_one_zero_double_weak_111,
                Some(one_one_zero_double_weak_111_caps),
            ),
            p(
                "2210-next-to-210",
                "a [2,2,1,0]-vertex adjacent to a [2,1,0]-vertex",
                two_two_one_zero_next_to_210,
                Some(two_two_one_zero_next_to_210_caps),
            ),
        ],
    }
}

/// Maximal threads at a 3+-vertex grouped by interior length, each group in
/// neighbor order.
struct Split {
    two: Vec<Thread>,
    one: Vec<Thread>,
    zero: Vec<Vertex>,
}

fn split(g: &Graph, v: Vertex) -> Option<Split> {
    if g.deg(v) < 3 {
        return None;
    }
    let mut s = Split {
        two: Vec::new(),
        one: Vec::new(),
        zero: Vec::new(),
    };
    for t in threads_at(g, v) {
        match t.len() {
            0 => s.zero.push(t.end),
            1 => s.one.push(t),
            2 => s.two.push(t),
            _ => return None,
        }
    }
    Some(s)
}

fn is(g: &Graph, v: Vertex, profile: &[usize]) -> bool {
    has_profile(g, v, profile)
}

/// A [2,1,0]-vertex as (2-thread, 1-thread, 0-neighbor).
fn two_one_zero(g: &Graph, v: Vertex) -> Option<(Thread, Thread, Vertex)> {
    if !is(g, v, &[2, 1, 0]) {
        return None;
    }
    let mut s = split(g, v)?;
    Some((s.two.pop()?, s.one.pop()?, s.zero.pop()?))
}

/// 3-thread roles `[y1, c1, v, c2, y2]` through a vertex whose other threads
/// are the 1-threads `a` and `b`.
fn through(a: &Thread, b: &Thread, v: Vertex) -> [Vertex; 5] {
    [a.end, a.interior[0], v, b.interior[0], b.end]
}

/// 2-thread roles `[far, b, a, v]` for the 2-thread `t` leaving `v`.
fn two_into(t: &Thread) -> [Vertex; 4] {
    [t.end, t.interior[1], t.interior[0], t.start]
}

/// 2-thread roles `[far, c, v, end]`: the 1-thread `t` from `v` extended by
/// `end` on the other side of `v`.
fn one_then(t: &Thread, end: Vertex) -> [Vertex; 4] {
    [t.end, t.interior[0], t.start, end]
}

fn cycle_component(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let Some(start) = g.vertices().next() else {
        return Vec::new();
    };
    if g.vertices().any(|v| g.deg(v) != 2) || !g.is_connected() {
        return Vec::new();
    }
    let walk = follow(g, start, g.neighbors(start)[0]).path();
    let n = walk.len() - 1;
    if n == 3 {
        let w = [walk[0], walk[1], walk[2]];
        return vec![ConfigMatch::new(
            "cycle-component",
            vec![("a", w[0]), ("b", w[1]), ("c", w[2])],
            w.to_vec(),
            w.iter().map(|&x| Insert::Key(x)).collect(),
        )];
    }
    let t = [walk[0], walk[1], walk[2], walk[3], walk[4 % n]];
    vec![ConfigMatch::new(
        "cycle-component",
        vec![
            ("v1", t[0]),
            ("v2", t[1]),
            ("v3", t[2]),
            ("v4", t[3]),
            ("v5", t[4]),
        ],
        vec![t[1], t[2], t[3]],
        vec![Insert::Thread3(t)],
    )]
}

fn min_degree(ctx: &Ctx) -> Vec<ConfigMatch> {
    ctx.g
        .vertices()
        .filter(|&v| ctx.g.deg(v) <= 1)
        .map(|v| ConfigMatch::new("min-degree", vec![("v", v)], vec![v], vec![Insert::Key(v)]))
        .collect()
}

fn three_thread(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.deg(v) == 2) {
        let nb = g.neighbors(v);
        let (a, b) = (nb[0], nb[1]);
        if g.deg(a) != 2 || g.deg(b) != 2 || g.has_edge(a, b) {
            continue;
        }
        let far = |x: Vertex| {
            let n = g.neighbors(x);
            if n[0] == v {
                n[1]
            } else {
                n[0]
            }
        };
        let t = [far(a), a, v, b, far(b)];
        out.push(ConfigMatch::new(
            "three-thread",
            vec![
                ("v1", t[0]),
                ("v2", t[1]),
                ("v3", t[2]),
                ("v4", t[3]),
                ("v5", t[4]),
            ],
            vec![a, v, b],
            vec![Insert::Thread3(t)],
        ));
    }
    out
}

/// The re-insertion recipe is left empty and found by search.
fn crowded_vertex(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for v in g.vertices() {
        let Ok(p) = thread_profile(g, v) else {
            continue;
        };
        let crowded = (p.counts.len() == 3 && p.n2 >= 4) || (p.counts.len() == 4 && p.n2 >= 6);
        if !crowded {
            continue;
        }
        let mut deleted = vec![v];
        for t in threads_at(g, v) {
            deleted.extend(t.interior);
        }
        out.push(ConfigMatch::new(
            "crowded-vertex",
            vec![("v", v)],
            deleted,
            Vec::new(),
        ));
    }
    out
}

fn two_one_zero_next_to_low(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for v in g.vertices() {
        let Some((t2, t1, u)) = two_one_zero(g, v) else {
            continue;
        };
        let base_del = [v, t2.interior[0], t2.interior[1], t1.interior[0], u];
        let tail = [
            Insert::Thread2(one_then(&t1, u)),
            Insert::Thread2(two_into(&t2)),
        ];
        let roles = vec![("v", v), ("u", u)];
        let push =
            |out: &mut Vec<ConfigMatch>, extra: &[Vertex], head: Vec<Insert>, more: Vec<Insert>| {
                let mut deleted = base_del.to_vec();
                deleted.extend_from_slice(extra);
                let mut recipe = head;
                recipe.extend_from_slice(&tail);
                recipe.extend(more);
                out.push(ConfigMatch::new(
                    "210-next-to-low",
                    roles.clone(),
                    deleted,
                    recipe,
                ));
            };
        if let Some((u2, u1, _)) = two_one_zero(g, u) {
            let head = vec![
                Insert::Key(u2.interior[1]),
                Insert::Thread3([u1.end, u1.interior[0], u, u2.interior[0], u2.interior[1]]),
            ];
            push(
                &mut out,
                &[u2.interior[0], u2.interior[1], u1.interior[0]],
                head,
                Vec::new(),
            );
        } else if is(g, u, &[2, 0, 0]) {
            let Some(mut s) = split(g, u) else { continue };
            let Some(u2) = s.two.pop() else { continue };
            push(
                &mut out,
                &u2.interior.clone(),
                vec![Insert::Key(u)],
                vec![Insert::Thread2(two_into(&u2))],
            );
        } else if is(g, u, &[1, 1, 0]) {
            let Some(s) = split(g, u) else { continue };
            let (a, b) = (&s.one[0], &s.one[1]);
            push(
                &mut out,
                &[a.interior[0], b.interior[0]],
                vec![Insert::Thread3(through(a, b, u))],
                Vec::new(),
            );
        }
    }
    out
}

fn one_one_one_weak_pair(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| is(g, v, &[1, 1, 1])) {
        let ts = threads_at(g, v);
        for (i, t) in ts.iter().enumerate() {
            let (u, c1) = (t.end, t.interior[0]);
            if u == v || g.deg(u) < 3 {
                continue;
            }
            let rest: Vec<&Thread> = ts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, t)| t)
                .collect();
            let via_v = Insert::Thread3(through(rest[0], rest[1], v));
            let mut deleted = vec![v, c1, u, rest[0].interior[0], rest[1].interior[0]];
            let recipe;
            if let Some((u2, _, _)) = two_one_zero(g, u) {
                deleted.extend_from_slice(&u2.interior);
                recipe = vec![
                    via_v,
                    Insert::Key(u),
                    Insert::Key(c1),
                    Insert::Thread2(two_into(&u2)),
                ];
            } else if is(g, u, &[1, 1, 1]) {
                let others: Vec<Thread> = threads_at(g, u)
                    .into_iter()
                    .filter(|t| t.interior[0] != c1)
                    .collect();
                if others.len() != 2 {
                    continue;
                }
                deleted.extend([others[0].interior[0], others[1].interior[0]]);
                recipe = vec![
                    via_v,
                    Insert::Thread3(through(&others[0], &others[1], u)),
                    Insert::Key(c1),
                ];
            } else {
                continue;
            }
            out.push(ConfigMatch::new(
                "111-weak-pair",
                vec![("v", v), ("u", u), ("c", c1)],
                deleted,
                recipe,
            ));
        }
    }
    out
}

fn two_210_neighbors(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.deg(v) == 3) {
        let hits: Vec<(Vertex, (Thread, Thread, Vertex))> = g
            .neighbors(v)
            .iter()
            .filter_map(|&x| two_one_zero(g, x).filter(|t| t.2 == v).map(|t| (x, t)))
            .collect();
        for i in 0..hits.len() {
            for j in i + 1..hits.len() {
                let (v1, (a1, c1, _)) = &hits[i];
                let (v2, (a2, c2, _)) = &hits[j];
                let mut deleted = vec![v, *v1, *v2];
                for t in [a1, c1, a2, c2] {
                    deleted.extend_from_slice(&t.interior);
                }
                out.push(ConfigMatch::new(
                    "two-210-neighbors",
                    vec![("v", v), ("v1", *v1), ("v2", *v2)],
                    deleted,
                    vec![
                        Insert::Key(v),
                        Insert::Thread2(one_then(c1, v)),
                        Insert::Thread2(one_then(c2, v)),
                        Insert::Thread2(two_into(a1)),
                        Insert::Thread2(two_into(a2)),
                    ],
                ));
            }
        }
    }
    out
}

/// [1,0,0]-vertices `v` with a [2,1,0]-neighbor `v2` whose 0-neighbor is
/// `v`: yields `(v, 1-thread of v, v2, its 2-thread, its 1-thread, third
/// neighbor of v)`.
fn one_zero_zero_with_210(g: &Graph) -> Vec<(Vertex, Thread, Vertex, Thread, Thread, Vertex)> {
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| is(g, v, &[1, 0, 0])) {
        let Some(s) = split(g, v) else { continue };
        for (i, &v2) in s.zero.iter().enumerate() {
            let Some((t2, t1, back)) = two_one_zero(g, v2) else {
                continue;
            };
            if back != v {
                continue;
            }
            out.push((v, s.one[0].clone(), v2, t2, t1, s.zero[1 - i]));
        }
    }
    out
}

fn one_zero_zero_weak_111(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for (v, t, v2, t2, t1, _) in one_zero_zero_with_210(g) {
        let (v1, u1) = (t.interior[0], t.end);
        if u1 == v || !is(g, u1, &[1, 1, 1]) {
            continue;
        }
        let others: Vec<Thread> = threads_at(g, u1)
            .into_iter()
            .filter(|x| x.interior[0] != v1)
            .collect();
        if others.len() != 2 {
            continue;
        }
        let (p, q) = (&others[0], &others[1]);
        let mut deleted = vec![v, v1, u1, p.interior[0], q.interior[0], v2];
        deleted.extend_from_slice(&t2.interior);
        deleted.extend_from_slice(&t1.interior);
        out.push(ConfigMatch::new(
            "100-weak-111",
            vec![("v", v), ("u1", u1), ("v1", v1), ("v2", v2)],
            deleted,
            vec![
                Insert::Key(v),
                Insert::Thread3(through(p, q, u1)),
                Insert::Key(v1),
                Insert::Thread2(one_then(&t1, v)),
                Insert::Thread2(two_into(&t2)),
            ],
        ));
    }
    out
}

fn one_zero_zero_next_to_bad(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for (v, t, v2, t2, t1, v3) in one_zero_zero_with_210(g) {
        if !is(g, v3, &[1, 1, 0]) {
            continue;
        }
        let Some(s3) = split(g, v3) else { continue };
        for (i, tw) in s3.one.iter().enumerate() {
            let (w, v3p) = (tw.interior[0], tw.end);
            if v3p == v3 || !is(g, v3p, &[1, 1, 1]) {
                continue;
            }
            let tu = &s3.one[1 - i];
            let others: Vec<Thread> = threads_at(g, v3p)
                .into_iter()
                .filter(|x| x.interior[0] != w)
                .collect();
            if others.len() != 2 {
                continue;
            }
            let (p, q) = (&others[0], &others[1]);
            let (a2, b2) = (t2.interior[0], t2.interior[1]);
            let mut deleted = vec![
                w,
                tu.interior[0],
                v3,
                v,
                t.interior[0],
                v2,
                a2,
                b2,
                t1.interior[0],
            ];
            deleted.extend([v3p, p.interior[0], q.interior[0]]);
            out.push(ConfigMatch::new(
                "100-next-to-bad",
                vec![("v", v), ("v2", v2), ("v3", v3), ("v3'", v3p), ("w", w)],
                deleted,
                vec![
                    Insert::Key(b2),
                    Insert::Thread3([t1.end, t1.interior[0], v2, a2, b2]),
                    Insert::Thread3(through(p, q, v3p)),
                    Insert::Thread2([t.end, t.interior[0], v, v2]),
                    Insert::Thread2(one_then(tu, v)),
                    Insert::Key(w),
                ],
            ));
        }
    }
    out
}

/// Bad [1,1,0]-vertices `v` with their 0-neighbor `v3`, the 1-thread `t1`
/// to the weak [1,1,1]-neighbor, the other 1-thread `t2`, and the two
/// remaining threads at that weak neighbor.
fn bad_vertices(g: &Graph) -> Vec<(Vertex, Vertex, Thread, Thread, [Thread; 2])> {
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| is(g, v, &[1, 1, 0])) {
        let Some(s) = split(g, v) else { continue };
        for i in 0..2 {
            let t1 = &s.one[i];
            let v1p = t1.end;
            if v1p == v || !is(g, v1p, &[1, 1, 1]) {
                continue;
            }
            let others: Vec<Thread> = threads_at(g, v1p)
                .into_iter()
                .filter(|x| x.interior[0] != t1.interior[0])
                .collect();
            let Ok(pair) = <[Thread; 2]>::try_from(others) else {
                continue;
            };
            out.push((v, s.zero[0], t1.clone(), s.one[1 - i].clone(), pair));
        }
    }
    out
}

fn bad_next_to_200(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for (v, v3, t1, t2, [p, q]) in bad_vertices(g) {
        if !is(g, v3, &[2, 0, 0]) {
            continue;
        }
        let Some(mut s3) = split(g, v3) else { continue };
        let Some(t3) = s3.two.pop() else { continue };
        let (v1, v1p, v2) = (t1.interior[0], t1.end, t2.interior[0]);
        let mut deleted = vec![v1, v, v2, v3, v1p, p.interior[0], q.interior[0]];
        deleted.extend_from_slice(&t3.interior);
        out.push(ConfigMatch::new(
            "bad-next-to-200",
            vec![
                ("v", v),
                ("v1", v1),
                ("v1'", v1p),
                ("v3", v3),
                ("v3'", t3.interior[0]),
            ],
            deleted,
            vec![
                Insert::Thread3(through(&p, &q, v1p)),
                Insert::Key(v3),
                Insert::Thread2(one_then(&t2, v3)),
                Insert::Thread2(two_into(&t3)),
                Insert::Key(v1),
            ],
        ));
    }
    out
}

fn bad_next_to_110(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for (v, v3, t1, t2, [p, q]) in bad_vertices(g) {
        if !is(g, v3, &[1, 1, 0]) {
            continue;
        }
        let Some(s3) = split(g, v3) else { continue };
        let (r1, r2) = (&s3.one[0], &s3.one[1]);
        let (v1, v1p, v2) = (t1.interior[0], t1.end, t2.interior[0]);
        let deleted = vec![
            v1,
            v,
            v2,
            v3,
            r1.interior[0],
            r2.interior[0],
            v1p,
            p.interior[0],
            q.interior[0],
        ];
        out.push(ConfigMatch::new(
            "bad-next-to-110",
            vec![("v", v), ("v1", v1), ("v1'", v1p), ("v3", v3)],
            deleted,
            vec![
                Insert::Thread3(through(r1, r2, v3)),
                Insert::Thread3(through(&p, &q, v1p)),
                Insert::Thread2(one_then(&t2, v3)),
                Insert::Key(v1),
            ],
        ));
    }
    out
}

fn one_one_zero_two_weak_111(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| is(g, v, &[1, 1, 0])) {
        let weak: Vec<(Vertex, Vertex)> = weak_neighbors(g, v);
        if weak.len() != 2
            || weak[0].0 == weak[1].0
            || !weak.iter().all(|&(u, _)| is(g, u, &[1, 1, 1]))
        {
            continue;
        }
        let mut deleted = vec![v];
        let mut threes = Vec::new();
        for &(vp, vi) in &weak {
            let others: Vec<Thread> = threads_at(g, vp)
                .into_iter()
                .filter(|x| x.interior[0] != vi)
                .collect();
            if others.len() != 2 {
                break;
            }
            deleted.extend([vi, vp, others[0].interior[0], others[1].interior[0]]);
            threes.push(Insert::Thread3(through(&others[0], &others[1], vp)));
        }
        if threes.len() != 2 {
            continue;
        }
        let mut recipe = vec![Insert::Key(v)];
        recipe.extend(threes);
        recipe.extend([Insert::Key(weak[0].1), Insert::Key(weak[1].1)]);
        out.push(ConfigMatch::new(
            "110-two-weak-111",
            vec![
                ("v", v),
                ("v1", weak[0].1),
                ("v2", weak[1].1),
                ("v1'", weak[0].0),
                ("v2'", weak[1].0),
            ],
            deleted,
            recipe,
        ));
    }
    out
}

/// Not covered by the weak-adjacency counts, which assume distinct weak
/// neighbors: `v` and `u` bound the square `v a u b`.
fn one_one_zero_double_weak_111(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| is(g, v, &[1, 1, 0])) {
        let weak = weak_neighbors(g, v);
        if weak.len() != 2 || weak[0].0 != weak[1].0 || !is(g, weak[0].0, &[1, 1, 1]) {
            continue;
        }
        let (u, a, b) = (weak[0].0, weak[0].1, weak[1].1);
        let Some(t) = threads_at(g, u)
            .into_iter()
            .find(|t| t.interior[0] != a && t.interior[0] != b)
        else {
            continue;
        };
        let c = t.interior[0];
        out.push(ConfigMatch::new(
            "110-double-weak-111",
            vec![("v", v), ("u", u), ("a", a), ("b", b), ("c", c)],
            vec![v, u, a, b, c],
            vec![
                Insert::Key(v),
                Insert::Thread3([t.end, c, u, a, v]),
                Insert::Key(b),
            ],
        ));
    }
    out
}

fn two_two_one_zero_next_to_210(ctx: &Ctx) -> Vec<ConfigMatch> {
    let g = ctx.g;
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| is(g, v, &[2, 2, 1, 0])) {
        let Some(s) = split(g, v) else { continue };
        let v4 = s.zero[0];
        let Some((a4, c4, back)) = two_one_zero(g, v4) else {
            continue;
        };
        if back != v {
            continue;
        }
        let t3 = &s.one[0];
        let mut deleted = vec![v, t3.interior[0], v4, c4.interior[0]];
        for t in s.two.iter().chain([&a4]) {
            deleted.extend_from_slice(&t.interior);
        }
        let (a, b) = (a4.interior[0], a4.interior[1]);
        out.push(ConfigMatch::new(
            "2210-next-to-210",
            vec![("v", v), ("v4", v4)],
            deleted,
            vec![
                Insert::Key(b),
                Insert::Thread3([c4.end, c4.interior[0], v4, a, b]),
                Insert::Thread2(one_then(t3, v4)),
                Insert::Thread2(two_into(&s.two[0])),
                Insert::Thread2(two_into(&s.two[1])),
            ],
        ));
    }
    out
}

/// Declared caps: `v` then its two [2,1,0]-neighbors.
pub fn two_210_neighbors_caps() -> Vec<(&'static str, CapExpr)> {
    vec![
        ("v", CapExpr::key(vec![K], 2)),
        ("v1", CapExpr::plus_three(R("v"))),
        ("v2", CapExpr::plus_three(R("v"))),
    ]
}

pub fn one_zero_zero_weak_111_caps() -> Vec<(&'static str, CapExpr)> {
    vec![
        ("v", CapExpr::key(vec![K], 2)),
        ("u1", Const(4)),
        ("v1", CapExpr::key(vec![R("v"), R("u1")], 1)),
        ("v2", CapExpr::plus_three(R("v"))),
    ]
}

pub fn one_zero_zero_next_to_bad_caps() -> Vec<(&'static str, CapExpr)> {
    vec![
        ("v2", Const(4)),
        ("v3'", Const(4)),
        ("v", CapExpr::plus_three(R("v2"))),
        ("v3", CapExpr::plus_three(R("v"))),
        ("w", CapExpr::key(vec![R("v3"), R("v3'")], 1)),
    ]
}

pub fn bad_next_to_200_caps() -> Vec<(&'static str, CapExpr)> {
    vec![
        ("v1'", Const(4)),
        ("v3", CapExpr::key(vec![K], 2)),
        ("v", CapExpr::plus_three(R("v3"))),
        ("v3'", CapExpr::plus_three(R("v3"))),
        ("v1", CapExpr::key(vec![R("v"), R("v1'")], 1)),
    ]
}

pub fn bad_next_to_110_caps() -> Vec<(&'static str, CapExpr)> {
    vec![
        ("v3", Const(4)),
        ("v1'", Const(4)),
        ("v", CapExpr::plus_three(R("v3"))),
        ("v1", CapExpr::key(vec![R("v"), R("v1'")], 1)),
    ]
}

pub fn one_one_zero_two_weak_111_caps() -> Vec<(&'static str, CapExpr)> {
    vec![
        ("v", CapExpr::key(vec![K], 2)),
        ("v1'", Const(4)),
        ("v2'", Const(4)),
        ("v1", CapExpr::key(vec![R("v"), R("v1'")], 1)),
        ("v2", CapExpr::key(vec![R("v"), R("v2'")], 1)),
    ]
}

pub fn one_one_zero_double_weak_111_caps() -> Vec<(&'static str, CapExpr)> {
    vec![
        ("v", CapExpr::key(vec![K], 2)),
        ("u", Const(4)),
        ("b", CapExpr::key(vec![R("v"), R("u")], 1)),
    ]
}

pub fn two_two_one_zero_next_to_210_caps() -> Vec<(&'static str, CapExpr)> {
    vec![("v4", Const(4)), ("v", CapExpr::plus_three(R("v4")))]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::eval_caps;

    fn last(table: Vec<(&'static str, CapExpr)>) -> u32 {
        eval_caps(&table, 18).unwrap().last().unwrap().1
    }

    #[test]
    fn declared_formulas_evaluate() {
        let caps = eval_caps(&two_210_neighbors_caps(), 18).unwrap();
        assert_eq!(caps, [("v", 10), ("v1", 13), ("v2", 13)]);
        assert_eq!(last(one_zero_zero_weak_111_caps()), 13);
        assert_eq!(
            eval_caps(&one_zero_zero_weak_111_caps(), 18).unwrap()[2],
            ("v1", 15)
        );
        assert_eq!(last(one_zero_zero_next_to_bad_caps()), 15);
        assert_eq!(last(bad_next_to_200_caps()), 18);
        assert_eq!(last(bad_next_to_110_caps()), 12);
        assert_eq!(last(one_one_zero_two_weak_111_caps()), 15);
        assert_eq!(last(two_two_one_zero_next_to_210_caps()), 7);
        assert_eq!(last(one_one_zero_double_weak_111_caps()), 15);
    }
}
