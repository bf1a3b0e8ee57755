//! Recursive drivers: reduce to the empty graph, then re-insert in reverse.

use std::fmt;
use std::str::FromStr;

use crate::graph::Graph;
use crate::recolor::{verify, Coloring, ListAssignment, RecolorSequence};
use crate::structure::{class_check_planar6, mad};

use super::{apply_recipe, Catalog, ConfigMatch, Ctx, PipelineError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Planar, no triangles, no intersecting 4-cycles; 6-lists; budget 48.
    Planar6,
    /// Maximum average degree below 5/2; 4-lists; budget 18.
    Mad4,
}

impl Theorem {
    pub fn budget(self) -> u32 {
        match self {
            Theorem::Planar6 => 48,
            Theorem::Mad4 => 18,
        }
    }

    pub fn list_size(self) -> usize {
        match self {
            Theorem::Planar6 => 6,
            Theorem::Mad4 => 4,
        }
    }

    pub fn catalog(self) -> Catalog {
        match self {
            Theorem::Planar6 => Catalog::planar(),
            Theorem::Mad4 => Catalog::sparse(),
        }
    }

    /// Thread extensions need 4-lists and only appear in the sparse recipes.
    pub fn threads_allowed(self) -> bool {
        self == Theorem::Mad4
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Planar6 => "planar6",
            Theorem::Mad4 => "mad4",
        })
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "planar6" => Ok(Theorem::Planar6),
            "mad4" => Ok(Theorem::Mad4),
            _ => Err(format!("unknown theorem '{s}', expected planar6 or mad4")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub sequence: RecolorSequence,
    /// Every configuration used, in the order it was removed.
    pub matches: Vec<ConfigMatch>,
    /// Realized recolor count per vertex id.
    pub counts: Vec<u32>,
}

pub fn reconfigure_planar6(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<Outcome, PipelineError> {
    reconfigure(Theorem::Planar6, g, lists, alpha, beta)
}

pub fn reconfigure_mad4(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<Outcome, PipelineError> {
    reconfigure(Theorem::Mad4, g, lists, alpha, beta)
}

/// Checks the theorem's hypotheses, then builds and verifies a sequence.
pub fn reconfigure(
    theorem: Theorem,
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<Outcome, PipelineError> {
    let need = theorem.list_size();
    for v in g.vertices() {
        if lists.size(v) < need {
            return Err(PipelineError::ListTooSmall {
                vertex: v,
                size: lists.size(v),
                need,
            });
        }
    }
    match theorem {
        Theorem::Planar6 => {
            let rep = class_check_planar6(g);
            if !rep.in_class() {
                return Err(PipelineError::NotPlanarClass(Box::new(rep)));
            }
        }
        Theorem::Mad4 => {
            if let Ok(m) = mad(g) {
                if m.value >= num_rational::Ratio::new(5, 2) {
                    return Err(PipelineError::MadTooLarge(m.value));
                }
            }
        }
    }
    reconfigure_with(
        g,
        lists,
        alpha,
        beta,
        &theorem.catalog(),
        theorem.budget(),
        theorem.threads_allowed(),
    )
}

/// The reduction machinery with an arbitrary catalog and budget and no
/// hypothesis check. Components are handled one at a time and their
/// sequences concatenated.
pub fn reconfigure_with(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
    catalog: &Catalog,
    k: u32,
    threads_allowed: bool,
) -> Result<Outcome, PipelineError> {
    for (name, c) in [("start", alpha), ("target", beta)] {
        c.check_proper(g, lists)
            .map_err(|e| PipelineError::ImproperEndpoint(format!("{name}: {e}")))?;
    }
    let n = g.id_bound();
    let mut sequence = RecolorSequence {
        start: alpha.restrict(g),
        steps: Vec::new(),
        k: Some(k),
    };
    let mut matches = Vec::new();
    for comp in g.components() {
        let mut inside = vec![false; n];
        for &v in &comp {
            inside[v] = true;
        }
        let h = g.retain(|v| inside[v]);
        let (seq, used) = reduce_component(&h, lists, alpha, beta, catalog, k, threads_allowed)?;
        sequence.steps.extend(seq.steps);
        matches.extend(used);
    }
    let report = verify(g, lists, &sequence, Some(beta), Some(k));
    if !report.ok {
        return Err(PipelineError::VerifyFailed(Box::new(report)));
    }
    Ok(Outcome {
        sequence,
        matches,
        counts: report.counts,
    })
}

fn reduce_component(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
    catalog: &Catalog,
    k: u32,
    threads_allowed: bool,
) -> Result<(RecolorSequence, Vec<ConfigMatch>), PipelineError> {
    let mut stack: Vec<(Graph, ConfigMatch)> = Vec::new();
    let mut h = g.clone();
    while !h.is_empty() {
        let m = catalog
            .find(&Ctx::new(&h, lists, k, threads_allowed))
            .ok_or_else(|| PipelineError::NoConfiguration(Box::new(h.clone())))?;
        let next = h.retain(|v| m.deleted.binary_search(&v).is_err());
        stack.push((std::mem::replace(&mut h, next), m));
    }
    let mut seq = RecolorSequence {
        start: Coloring::empty(g.id_bound()),
        steps: Vec::new(),
        k: Some(k),
    };
    let mut used = Vec::with_capacity(stack.len());
    while let Some((h, m)) = stack.pop() {
        seq = apply_recipe(&h, lists, &m, &seq, alpha, beta, k)?;
        used.push(m);
    }
    used.reverse();
    Ok((seq, used))
}
