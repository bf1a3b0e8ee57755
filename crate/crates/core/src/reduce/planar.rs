//! Reducible configurations for triangle-free planar graphs without
//! intersecting 4-cycles, with 6-lists and budget 48.

use crate::graph::Vertex;
use crate::structure::faces::{exact, labelings};

use super::{CapExpr, Catalog, ConfigMatch, ConfigPattern, Ctx, Insert};

use CapExpr::{Budget as K, Role as R};

pub fn catalog() -> Catalog {
    Catalog {
        name: "planar",
        patterns: vec![
            ConfigPattern {
                id: "low-degree",
                summary: "a vertex of degree at most 2",
                detect: low_degree,
                runtime_verified: false,
                declared: None,
            },
            ConfigPattern {
                id: "three-three-three",
                summary: "a 3-vertex adjacent to two 3-vertices",
                detect: three_with_two_threes,
                runtime_verified: true,
                declared: None,
            },
            ConfigPattern {
                id: "four-with-four-threes",
                summary: "a 4-vertex adjacent to four 3-vertices",
                detect: four_with_four_threes,
                runtime_verified: true,
                declared: None,
            },
            ConfigPattern {
                id: "pentagon-tail",
                summary: "a (3,4,3,3,4)-face whose 4-vertex v2 has a 3-neighbor u with a 3-neighbor w, both off the face",
                detect: pentagon_tail,
                runtime_verified: false,
                declared: Some(pentagon_tail_caps),
            },
            ConfigPattern {
                id: "pentagon-square",
                summary: "a (3,4,3,3,4)-face sharing an edge with a (3,4,3,4)-face",
                detect: pentagon_square,
                runtime_verified: false,
                declared: Some(pentagon_square_caps),
            },
        ],
    }
}

fn low_degree(ctx: &Ctx) -> Vec<ConfigMatch> {
    ctx.g
        .vertices()
        .filter(|&v| ctx.g.deg(v) <= 2)
        .map(|v| ConfigMatch::new("low-degree", vec![("v", v)], vec![v], vec![Insert::Key(v)]))
        .collect()
}

fn threes(ctx: &Ctx, v: Vertex) -> Vec<Vertex> {
    ctx.g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| ctx.g.deg(u) == 3)
        .collect()
}

/// Deletes `u, a, b` and re-inserts `u` first. The last two insertions see
/// two outside neighbors each, so no Key order fits in 48 for all inputs.
fn three_with_two_threes(ctx: &Ctx) -> Vec<ConfigMatch> {
    let mut out = Vec::new();
    for u in ctx.g.vertices().filter(|&u| ctx.g.deg(u) == 3) {
        let t = threes(ctx, u);
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let (a, b) = (t[i], t[j]);
                out.push(ConfigMatch::new(
                    "three-three-three",
                    vec![("u", u), ("a", a), ("b", b)],
                    vec![u, a, b],
                    vec![Insert::Key(u), Insert::Key(a), Insert::Key(b)],
                ));
            }
        }
    }
    out
}

/// Deletes `v` and its four 3-neighbors; `v` goes back first with no
/// present neighbors.
fn four_with_four_threes(ctx: &Ctx) -> Vec<ConfigMatch> {
    ctx.g
        .vertices()
        .filter(|&v| ctx.g.deg(v) == 4 && threes(ctx, v).len() == 4)
        .map(|v| {
            let t = threes(ctx, v);
            let mut recipe = vec![Insert::Key(v)];
            recipe.extend(t.iter().map(|&a| Insert::Key(a)));
            let mut deleted = t.clone();
            deleted.push(v);
            ConfigMatch::new(
                "four-with-four-threes",
                vec![
                    ("v", v),
                    ("a1", t[0]),
                    ("a2", t[1]),
                    ("a3", t[2]),
                    ("a4", t[3]),
                ],
                deleted,
                recipe,
            )
        })
        .collect()
}

/// Labelled (3,4,3,3,4)-faces `v1..v5` of the current embedding.
fn pentagons(ctx: &Ctx) -> Vec<(usize, Vec<Vertex>)> {
    let Some(fs) = &ctx.faces else {
        return Vec::new();
    };
    let pat = exact(&[3, 4, 3, 3, 4]);
    let mut out = Vec::new();
    for (f, walk) in fs.faces.iter().enumerate() {
        if walk.len() == 5 && fs.is_simple(f) {
            for lab in labelings(ctx.g, walk, &pat) {
                out.push((f, lab));
            }
        }
    }
    out
}

/// Re-insertion order shared by both pentagon configurations.
fn pentagon_recipe(v: &[Vertex], u: Vertex, w: Vertex) -> Vec<Insert> {
    vec![
        Insert::Key(v[1]),
        Insert::Key(v[4]),
        Insert::Key(w),
        Insert::Key(v[0]),
        Insert::Key(u),
        Insert::Key(v[3]),
        Insert::Key(v[2]),
    ]
}

fn pentagon_roles(v: &[Vertex], u: Vertex, w: Vertex) -> Vec<(&'static str, Vertex)> {
    vec![
        ("v1", v[0]),
        ("v2", v[1]),
        ("v3", v[2]),
        ("v4", v[3]),
        ("v5", v[4]),
        ("u", u),
        ("w", w),
    ]
}

fn pentagon_tail(ctx: &Ctx) -> Vec<ConfigMatch> {
    let mut out = Vec::new();
    for (_, v) in pentagons(ctx) {
        for u in threes(ctx, v[1]).into_iter().filter(|u| !v.contains(u)) {
            for w in threes(ctx, u).into_iter().filter(|w| !v.contains(w)) {
                let mut deleted = v.clone();
                deleted.extend([u, w]);
                out.push(ConfigMatch::new(
                    "pentagon-tail",
                    pentagon_roles(&v, u, w),
                    deleted,
                    pentagon_recipe(&v, u, w),
                ));
            }
        }
    }
    out
}

fn pentagon_square(ctx: &Ctx) -> Vec<ConfigMatch> {
    let Some(fs) = &ctx.faces else {
        return Vec::new();
    };
    let g = ctx.g;
    let square = exact(&[3, 4, 3, 4]);
    let mut out = Vec::new();
    for (f, v) in pentagons(ctx) {
        // The square meets the pentagon along v1v2 or v2v3.
        for other in [v[0], v[2]] {
            let Some(p) = fs.across(f, other, v[1]) else {
                continue;
            };
            if fs.degree(p) != 4
                || !fs.is_simple(p)
                || labelings(g, &fs.faces[p], &square).is_empty()
            {
                continue;
            }
            let walk = &fs.faces[p];
            let Some(u) = walk
                .iter()
                .copied()
                .find(|&x| x != other && g.has_edge(x, v[1]))
            else {
                continue;
            };
            let Some(w) = walk
                .iter()
                .copied()
                .find(|&x| x != other && x != v[1] && x != u)
            else {
                continue;
            };
            if v.contains(&u) || v.contains(&w) {
                continue;
            }
            let mut deleted = v.clone();
            deleted.extend([u, w]);
            out.push(ConfigMatch::new(
                "pentagon-square",
                pentagon_roles(&v, u, w),
                deleted,
                pentagon_recipe(&v, u, w),
            ));
        }
    }
    out
}

/// Declared caps for the pentagon with a tail.
pub fn pentagon_tail_caps() -> Vec<(&'static str, CapExpr)> {
    vec![
        ("v2", CapExpr::key(vec![K], 4)),
        ("v5", CapExpr::key(vec![K, K], 3)),
        ("w", CapExpr::key(vec![K, K], 3)),
        ("v1", CapExpr::key(vec![R("v5"), K, R("v2")], 2)),
        ("u", CapExpr::key(vec![R("w"), K, R("v2")], 2)),
        ("v4", CapExpr::key(vec![R("v5"), K], 3)),
        ("v3", CapExpr::key(vec![R("v4"), K, R("v2")], 2)),
    ]
}

/// Declared caps for the pentagon next to a (3,4,3,4)-square.
pub fn pentagon_square_caps() -> Vec<(&'static str, CapExpr)> {
    vec![
        ("v2", CapExpr::key(vec![K], 4)),
        ("v5", CapExpr::key(vec![K, K], 3)),
        ("w", CapExpr::key(vec![K, K], 3)),
        ("u", CapExpr::key(vec![R("v2"), K, R("w")], 2)),
        ("v1", CapExpr::key(vec![R("v2"), K, R("w")], 2)),
        ("v4", CapExpr::key(vec![R("v5"), K], 3)),
        ("v3", CapExpr::key(vec![R("v4"), R("v2"), K], 2)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::eval_caps;

    #[test]
    fn pentagon_formulas_evaluate_to_stated_caps() {
        let want = [
            ("v2", 13),
            ("v5", 33),
            ("w", 33),
            ("v1", 48),
            ("u", 48),
            ("v4", 28),
            ("v3", 46),
        ];
        let got = eval_caps(&pentagon_tail_caps(), 48).unwrap();
        assert_eq!(got, want);
        let got = eval_caps(&pentagon_square_caps(), 48).unwrap();
        assert_eq!(
            got,
            [
                ("v2", 13),
                ("v5", 33),
                ("w", 33),
                ("u", 48),
                ("v1", 48),
                ("v4", 28),
                ("v3", 46)
            ]
        );
    }
}
