//! Reducible configurations, their re-insertion recipes and the drivers that
//! build bounded recoloring sequences by repeated reduction.

pub mod driver;
pub mod planar;
pub mod recipe;
pub mod sparse;

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::recolor::{ExtendError, ListAssignment, VerifyReport};
use crate::structure::{ClassReport, FaceStructure};

pub use driver::{reconfigure, reconfigure_mad4, reconfigure_planar6, Outcome, Theorem};
pub use recipe::{apply_recipe, search_recipe, simulate};

/// One re-insertion step of a recipe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Insert {
    /// Single-vertex insertion with lookahead.
    Key(Vertex),
    /// Inserts the interior of the 2-thread `v1 v2 v3 v4`; `v3` is bounded
    /// by the count of `v4` plus 3.
    Thread2([Vertex; 4]),
    /// Inserts the interior of the 3-thread `v1 .. v5`; `v3` is bounded by 4.
    Thread3([Vertex; 5]),
}

impl Insert {
    pub fn inserted(&self) -> Vec<Vertex> {
        match self {
            Insert::Key(v) => vec![*v],
            Insert::Thread2(t) => vec![t[1], t[2]],
            Insert::Thread3(t) => vec![t[1], t[2], t[3]],
        }
    }
}

/// A detected configuration: named roles, the vertices it removes and the
/// plan for putting them back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigMatch {
    pub pattern: &'static str,
    pub roles: Vec<(&'static str, Vertex)>,
    /// Sorted, without repeats.
    pub deleted: Vec<Vertex>,
    pub recipe: Vec<Insert>,
    /// Caps derived from the recipe structure, one per deleted vertex.
    pub caps: Vec<(Vertex, u32)>,
    /// Every cap is within the budget.
    pub certified: bool,
}

impl ConfigMatch {
    pub fn new(
        pattern: &'static str,
        roles: Vec<(&'static str, Vertex)>,
        mut deleted: Vec<Vertex>,
        recipe: Vec<Insert>,
    ) -> Self {
        deleted.sort_unstable();
        deleted.dedup();
        ConfigMatch {
            pattern,
            roles,
            deleted,
            recipe,
            caps: Vec::new(),
            certified: false,
        }
    }

    pub fn role(&self, name: &str) -> Option<Vertex> {
        self.roles.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    pub fn cap_of(&self, v: Vertex) -> Option<u32> {
        self.caps.iter().find(|(x, _)| *x == v).map(|&(_, c)| c)
    }

    fn sort_key(&self) -> Vec<Vertex> {
        self.roles.iter().map(|&(_, v)| v).collect()
    }
}

/// A cap formula over the budget `k` and earlier roles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CapExpr {
    Budget,
    Const(u32),
    Role(&'static str),
    /// `⌈(sum of terms) / slack⌉ + 1`.
    Key(Vec<CapExpr>, u32),
    /// Cap of a 2-thread's middle vertex: the far end's cap plus 3.
    PlusThree(Box<CapExpr>),
}

impl CapExpr {
    pub fn key(terms: Vec<CapExpr>, slack: u32) -> Self {
        CapExpr::Key(terms, slack)
    }

    pub fn plus_three(e: CapExpr) -> Self {
        CapExpr::PlusThree(Box::new(e))
    }

    pub fn eval(&self, k: u32, env: &HashMap<&str, u32>) -> Option<u32> {
        Some(match self {
            CapExpr::Budget => k,
            CapExpr::Const(c) => *c,
            CapExpr::Role(r) => *env.get(r)?,
            CapExpr::Key(terms, slack) => {
                let mut t = 0;
                for e in terms {
                    t += e.eval(k, env)?;
                }
                crate::recolor::insertion_cap(t, *slack)
            }
            CapExpr::PlusThree(e) => e.eval(k, env)? + 3,
        })
    }
}

/// Evaluates a table of role caps in order, each formula seeing the roles
/// bound before it.
pub fn eval_caps(table: &[(&'static str, CapExpr)], k: u32) -> Option<Vec<(&'static str, u32)>> {
    let mut env = HashMap::new();
    let mut out = Vec::new();
    for (role, e) in table {
        let v = e.eval(k, &env)?;
        env.insert(*role, v);
        out.push((*role, v));
    }
    Some(out)
}

/// What detectors see: the current graph, its faces when embedded, and the
/// lists.
pub struct Ctx<'a> {
    pub g: &'a Graph,
    pub faces: Option<FaceStructure>,
    pub lists: &'a ListAssignment,
    pub k: u32,
    pub threads_allowed: bool,
}

impl<'a> Ctx<'a> {
    pub fn new(g: &'a Graph, lists: &'a ListAssignment, k: u32, threads_allowed: bool) -> Self {
        Ctx {
            g,
            faces: crate::structure::faces(g).ok(),
            lists,
            k,
            threads_allowed,
        }
    }
}

/// A catalog entry.
pub struct ConfigPattern {
    pub id: &'static str,
    pub summary: &'static str,
    pub detect: fn(&Ctx) -> Vec<ConfigMatch>,
    /// Recipes that cannot be certified within the budget are still used,
    /// and their output is checked by the verifier.
    pub runtime_verified: bool,
    /// Declared cap formulas, where the configuration states them.
    pub declared: Option<DeclaredCaps>,
}

/// Per-role cap formulas, by role name.
pub type DeclaredCaps = fn() -> Vec<(&'static str, CapExpr)>;

pub struct Catalog {
    pub name: &'static str,
    pub patterns: Vec<ConfigPattern>,
}

impl Catalog {
    pub fn planar() -> Catalog {
        planar::catalog()
    }

    pub fn sparse() -> Catalog {
        sparse::catalog()
    }

    pub fn pattern(&self, id: &str) -> Option<&ConfigPattern> {
        self.patterns.iter().find(|p| p.id == id)
    }

    /// Raw structural matches of every pattern, ignoring recipe validity.
    pub fn all_matches(&self, ctx: &Ctx) -> Vec<ConfigMatch> {
        self.patterns.iter().flat_map(|p| (p.detect)(ctx)).collect()
    }

    /// First usable match in priority order. Within a pattern, matches are
    /// tried in lexicographic order of their role vertices. A match whose
    /// stated recipe fails validation falls back to a recipe search over the
    /// same deleted set.
    pub fn find(&self, ctx: &Ctx) -> Option<ConfigMatch> {
        for p in &self.patterns {
            let mut ms = (p.detect)(ctx);
            ms.sort_by_key(ConfigMatch::sort_key);
            ms.dedup_by(|a, b| a.sort_key() == b.sort_key() && a.deleted == b.deleted);
            for mut m in ms {
                let caps = simulate(ctx.g, ctx.lists, &m.deleted, &m.recipe, ctx.k).ok();
                if let Some(caps) = &caps {
                    if caps.iter().all(|&(_, c)| c <= ctx.k) {
                        m.caps = caps.clone();
                        m.certified = true;
                        return Some(m);
                    }
                }
                if let Some(found) = self.searched(ctx, &m) {
                    return Some(found);
                }
                if let (Some(caps), true) = (caps, p.runtime_verified) {
                    m.caps = caps;
                    return Some(m);
                }
            }
        }
        None
    }

    fn searched(&self, ctx: &Ctx, m: &ConfigMatch) -> Option<ConfigMatch> {
        let recipe = search_recipe(ctx.g, ctx.lists, &m.deleted, ctx.k, ctx.threads_allowed)?;
        let caps = simulate(ctx.g, ctx.lists, &m.deleted, &recipe, ctx.k).ok()?;
        let mut out = m.clone();
        out.recipe = recipe;
        out.caps = caps;
        out.certified = true;
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipeError {
    #[error("vertex {0} is inserted twice or was never deleted")]
    NotDeleted(Vertex),
    #[error("vertex {0} is deleted but never re-inserted")]
    NeverInserted(Vertex),
    #[error("vertex {vertex} has {list} colors and {degree} present neighbors")]
    NoSlack {
        vertex: Vertex,
        list: usize,
        degree: usize,
    },
    #[error("{0:?} is not a thread at insertion time")]
    NotAThread(Vec<Vertex>),
    #[error("thread end {vertex} has cap {cap}, above the budget minus 3")]
    BusyEnd { vertex: Vertex, cap: u32 },
    #[error("thread insertion needs lists of at least 4 colors at {0}")]
    ShortList(Vertex),
    #[error("thread steps are disabled for this catalog")]
    ThreadsDisabled,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("lists too small: vertex {vertex} has {size}, need {need}")]
    ListTooSmall {
        vertex: Vertex,
        size: usize,
        need: usize,
    },
    #[error("start or target coloring is not a proper list coloring: {0}")]
    ImproperEndpoint(String),
    #[error("graph is outside the planar class")]
    NotPlanarClass(Box<ClassReport>),
    #[error("maximum average degree {0} is not below 5/2")]
    MadTooLarge(num_rational::Ratio<i64>),
    #[error("no reducible configuration in a graph on {} vertices", .0.num_vertices())]
    NoConfiguration(Box<Graph>),
    #[error("recipe {pattern} is malformed: {source}")]
    Recipe {
        pattern: &'static str,
        source: RecipeError,
    },
    #[error("extension failed in {pattern}: {source}")]
    Extend {
        pattern: &'static str,
        source: ExtendError,
    },
    #[error("{pattern}: vertex {vertex} recolored {realized} times, declared cap {declared}")]
    CapExceeded {
        pattern: &'static str,
        vertex: Vertex,
        realized: u32,
        declared: u32,
    },
    #[error("final sequence fails verification")]
    VerifyFailed(Box<VerifyReport>),
}
