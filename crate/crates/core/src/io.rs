//! Line-based text formats for graphs, lists, colorings and sequences.
//!
//! ```text
//! graph <n> <m>
//! e <u> <v>
//! rot <v>: <n1> <n2> ...
//! L <v>: <c1> <c2> ...
//! c <v> <color>
//! seq k=<k>          # or k=none
//! s <v> <color>
//! ```
//!
//! Ids are decimal and 0-based, `#` starts a comment, blank lines are
//! ignored. Rotation lines are optional, but once one is given every vertex
//! of degree at least 3 needs one; smaller degrees have only one cyclic order
//! and are filled in.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::recolor::{Color, Coloring, ListAssignment, RecolorSequence, Step};

/// Largest vertex count a graph file may declare.
pub const MAX_VERTICES: usize = 100_000;
/// Largest edge count a graph file may declare.
pub const MAX_EDGES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based; 0 when the problem concerns the file as a whole.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected '{0}'")]
    Expected(&'static str),
    #[error("invalid number '{0}'")]
    Number(String),
    #[error("missing header")]
    MissingHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("{0} vertices exceeds the limit {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("{0} edges exceeds the limit {MAX_EDGES}")]
    TooManyEdges(usize),
    #[error("vertex {0} out of range")]
    VertexRange(Vertex),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("duplicate entry for vertex {0}")]
    Duplicate(Vertex),
    #[error("color {0} repeated in a list")]
    RepeatedColor(Color),
    #[error("vertex {0} of degree {1} has no rotation line")]
    MissingRotation(Vertex, usize),
    #[error("unexpected '{0}'")]
    Unexpected(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Non-comment, non-blank lines with their 1-based numbers and comments
/// stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn number<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, ParseError> {
    s.parse()
        .map_err(|_| err(line, ParseErrorKind::Number(s.to_string())))
}

/// Splits `"<tag> <v>: rest"` into `v` and the numbers of `rest`.
fn vertex_line<T: std::str::FromStr>(
    line: usize,
    rest: &str,
    tag: &'static str,
) -> Result<(Vertex, Vec<T>), ParseError> {
    let (v, tail) = rest
        .split_once(':')
        .ok_or(err(line, ParseErrorKind::Expected(tag)))?;
    let v = number(line, v.trim())?;
    let xs = tail
        .split_whitespace()
        .map(|x| number(line, x))
        .collect::<Result<_, _>>()?;
    Ok((v, xs))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut rot: Vec<(usize, Vertex, Vec<Vertex>)> = Vec::new();
    for (ln, l) in lines(text) {
        let mut words = l.split_whitespace();
        let tag = words.next().unwrap_or("");
        match (tag, header) {
            ("graph", None) => {
                let (Some(n), Some(m), None) = (words.next(), words.next(), words.next()) else {
                    return Err(err(ln, ParseErrorKind::Expected("graph <n> <m>")));
                };
                let (n, m): (usize, usize) = (number(ln, n)?, number(ln, m)?);
                if n > MAX_VERTICES {
                    return Err(err(ln, ParseErrorKind::TooManyVertices(n)));
                }
                if m > MAX_EDGES {
                    return Err(err(ln, ParseErrorKind::TooManyEdges(m)));
                }
                header = Some((n, m));
            }
            ("graph", Some(_)) => return Err(err(ln, ParseErrorKind::DuplicateHeader)),
            (_, None) => return Err(err(ln, ParseErrorKind::MissingHeader)),
            ("e", Some((n, m))) => {
                let (Some(u), Some(v), None) = (words.next(), words.next(), words.next()) else {
                    return Err(err(ln, ParseErrorKind::Expected("e <u> <v>")));
                };
                let (u, v): (Vertex, Vertex) = (number(ln, u)?, number(ln, v)?);
                for x in [u, v] {
                    if x >= n {
                        return Err(err(ln, ParseErrorKind::VertexRange(x)));
                    }
                }
                if edges.len() == m {
                    return Err(err(
                        ln,
                        ParseErrorKind::EdgeCount {
                            declared: m,
                            found: m + 1,
                        },
                    ));
                }
                // Graph::new reports loops and parallel edges without a line.
                if u == v {
                    return Err(err(ln, GraphError::Loop(u).into()));
                }
                edges.push((u, v));
            }
            ("rot", Some((n, _))) => {
                let (v, order) = vertex_line(ln, &l[3..], "rot <v>: <n1> ...")?;
                if v >= n {
                    return Err(err(ln, ParseErrorKind::VertexRange(v)));
                }
                if rot.iter().any(|r| r.1 == v) {
                    return Err(err(ln, ParseErrorKind::Duplicate(v)));
                }
                rot.push((ln, v, order));
            }
            _ => return Err(err(ln, ParseErrorKind::Unexpected(tag.to_string()))),
        }
    }
    let (n, m) = header.ok_or(err(0, ParseErrorKind::MissingHeader))?;
    if edges.len() != m {
        return Err(err(
            0,
            ParseErrorKind::EdgeCount {
                declared: m,
                found: edges.len(),
            },
        ));
    }
    let g = Graph::new(n, edges).map_err(|e| err(0, e.into()))?;
    if rot.is_empty() {
        return Ok(g);
    }
    let mut full: Vec<Option<Vec<Vertex>>> = vec![None; n];
    for (ln, v, order) in rot {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != g.neighbors(v) {
            return Err(err(ln, GraphError::BadRotation(v).into()));
        }
        full[v] = Some(order);
    }
    let full = full
        .into_iter()
        .enumerate()
        .map(|(v, r)| match r {
            Some(r) => Ok(r),
            None if g.deg(v) <= 2 => Ok(g.neighbors(v).to_vec()),
            None => Err(err(0, ParseErrorKind::MissingRotation(v, g.deg(v)))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    g.with_rotation(full).map_err(|e| err(0, e.into()))
}

/// Writes every vertex id below the id bound; deleted vertices come back as
/// isolated vertices.
pub fn serialize_graph(g: &Graph) -> String {
    let edges: Vec<_> = g.edges().collect();
    let mut out = format!("graph {} {}\n", g.id_bound(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "e {u} {v}");
    }
    if g.has_rotation() {
        for v in 0..g.id_bound() {
            let r = g.rotation(v).unwrap_or(&[]);
            let _ = writeln!(out, "rot {v}:{}", join(r));
        }
    }
    out
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| format!(" {x}")).collect()
}

pub fn parse_lists(text: &str) -> Result<ListAssignment, ParseError> {
    let mut lists: Vec<Option<Vec<Color>>> = Vec::new();
    for (ln, l) in lines(text) {
        let Some(rest) = l
            .strip_prefix('L')
            .filter(|r| r.starts_with(char::is_whitespace))
        else {
            return Err(err(ln, ParseErrorKind::Expected("L <v>: <c1> ...")));
        };
        let (v, mut colors): (Vertex, Vec<Color>) = vertex_line(ln, rest, "L <v>: <c1> ...")?;
        if v >= MAX_VERTICES {
            return Err(err(ln, ParseErrorKind::VertexRange(v)));
        }
        colors.sort_unstable();
        if let Some(w) = colors.windows(2).find(|w| w[0] == w[1]) {
            return Err(err(ln, ParseErrorKind::RepeatedColor(w[0])));
        }
        if v >= lists.len() {
            lists.resize(v + 1, None);
        }
        if lists[v].replace(colors).is_some() {
            return Err(err(ln, ParseErrorKind::Duplicate(v)));
        }
    }
    Ok(ListAssignment::new(
        lists.into_iter().map(Option::unwrap_or_default).collect(),
    ))
}

/// Vertices with an empty list are omitted.
pub fn serialize_lists(lists: &ListAssignment) -> String {
    let mut out = String::new();
    for v in 0..lists.id_bound() {
        if lists.size(v) > 0 {
            let _ = writeln!(out, "L {v}:{}", join(lists.get(v)));
        }
    }
    out
}

fn pair(
    ln: usize,
    l: &str,
    tag: &'static str,
    shape: &'static str,
) -> Result<(Vertex, Color), ParseError> {
    let mut words = l.split_whitespace();
    let (Some(t), Some(v), Some(c), None) =
        (words.next(), words.next(), words.next(), words.next())
    else {
        return Err(err(ln, ParseErrorKind::Expected(shape)));
    };
    if t != tag {
        return Err(err(ln, ParseErrorKind::Expected(shape)));
    }
    let v: Vertex = number(ln, v)?;
    if v >= MAX_VERTICES {
        return Err(err(ln, ParseErrorKind::VertexRange(v)));
    }
    Ok((v, number(ln, c)?))
}

pub fn parse_coloring(text: &str) -> Result<Coloring, ParseError> {
    let mut c = Coloring::empty(0);
    for (ln, l) in lines(text) {
        let (v, x) = pair(ln, l, "c", "c <v> <color>")?;
        if c.get(v).is_some() {
            return Err(err(ln, ParseErrorKind::Duplicate(v)));
        }
        c.set(v, x);
    }
    Ok(c)
}

pub fn serialize_coloring(c: &Coloring) -> String {
    c.iter().map(|(v, x)| format!("c {v} {x}\n")).collect()
}

/// The contents of a sequence file: a budget and the steps, without the
/// start coloring, which lives in its own file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SequenceFile {
    pub k: Option<u32>,
    pub steps: Vec<Step>,
}

impl SequenceFile {
    pub fn into_sequence(self, start: Coloring) -> RecolorSequence {
        RecolorSequence {
            start,
            steps: self.steps,
            k: self.k,
        }
    }
}

impl From<&RecolorSequence> for SequenceFile {
    fn from(s: &RecolorSequence) -> Self {
        SequenceFile {
            k: s.k,
            steps: s.steps.clone(),
        }
    }
}

pub fn parse_sequence(text: &str) -> Result<SequenceFile, ParseError> {
    let mut it = lines(text);
    let (ln, head) = it.next().ok_or(err(0, ParseErrorKind::MissingHeader))?;
    let k = match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["seq", k] => match k.strip_prefix("k=") {
            Some("none") => None,
            Some(k) => Some(number(ln, k)?),
            None => return Err(err(ln, ParseErrorKind::Expected("seq k=<k>"))),
        },
        _ => return Err(err(ln, ParseErrorKind::Expected("seq k=<k>"))),
    };
    let mut steps = Vec::new();
    for (ln, l) in it {
        let (v, c) = pair(ln, l, "s", "s <v> <color>")?;
        steps.push(Step::new(v, c));
    }
    Ok(SequenceFile { k, steps })
}

pub fn serialize_sequence(s: &SequenceFile) -> String {
    let mut out = match s.k {
        Some(k) => format!("seq k={k}\n"),
        None => "seq k=none\n".to_string(),
    };
    for st in &s.steps {
        let _ = writeln!(out, "s {} {}", st.vertex, st.color);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        let rot = (0..5).map(|i| vec![(i + 4) % 5, (i + 1) % 5]).collect();
        Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5)))
            .unwrap()
            .with_rotation(rot)
            .unwrap()
    }

    #[test]
    fn graph_round_trip() {
        let g = c5();
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
        let h = g.without_rotation();
        assert_eq!(parse_graph(&serialize_graph(&h)).unwrap(), h);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# a path\n\ngraph 3 2  # header\ne 0 1\n  e 1 2\n").unwrap();
        assert_eq!(g.num_edges(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_graph("graph 3 2\ne 0 1\ne 1 x\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(e.to_string(), "line 3: invalid number 'x'");
        assert_eq!(parse_graph("graph 3 1\ne 0 3\n").unwrap_err().line, 2);
        assert_eq!(
            parse_graph("e 0 1\n").unwrap_err().kind,
            ParseErrorKind::MissingHeader
        );
        assert!(matches!(
            parse_graph("graph 3 2\ne 0 1\n").unwrap_err().kind,
            ParseErrorKind::EdgeCount {
                declared: 2,
                found: 1
            }
        ));
        assert!(matches!(
            parse_graph("graph 999999999 0\n").unwrap_err().kind,
            ParseErrorKind::TooManyVertices(_)
        ));
        assert_eq!(
            parse_lists("L 0: 1 2 2\n").unwrap_err().kind,
            ParseErrorKind::RepeatedColor(2)
        );
        assert_eq!(parse_coloring("c 0 1\nc 0 2\n").unwrap_err().line, 2);
    }

    #[test]
    fn partial_rotation_is_completed_for_low_degree() {
        let text = "graph 4 3\ne 0 1\ne 0 2\ne 0 3\nrot 0: 3 2 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.rotation(0).unwrap(), &[3, 2, 1]);
        let bad = "graph 4 3\ne 0 1\ne 0 2\ne 0 3\nrot 1: 0\n";
        assert_eq!(
            parse_graph(bad).unwrap_err().kind,
            ParseErrorKind::MissingRotation(0, 3)
        );
        let wrong = "graph 4 3\ne 0 1\ne 0 2\ne 0 3\nrot 0: 1 2\n";
        assert_eq!(parse_graph(wrong).unwrap_err().line, 5);
    }

    #[test]
    fn lists_colorings_sequences_round_trip() {
        let l = ListAssignment::new(vec![vec![3, 1], vec![], vec![2, 4, 6]]);
        assert_eq!(parse_lists(&serialize_lists(&l)).unwrap(), l);
        let c = Coloring::from_colors(&[1, 2, 3]);
        assert_eq!(parse_coloring(&serialize_coloring(&c)).unwrap(), c);
        for k in [Some(18), None] {
            let s = SequenceFile {
                k,
                steps: vec![Step::new(0, 2), Step::new(4, 1)],
            };
            assert_eq!(parse_sequence(&serialize_sequence(&s)).unwrap(), s);
        }
    }

    #[test]
    fn off_list_step_parses() {
        let s = parse_sequence("seq k=3\ns 0 99\n").unwrap();
        assert_eq!(s.steps, vec![Step::new(0, 99)]);
    }
}
