//! Graph documents: the hand-writable edge-list format and the structured
//! JSON record.
//!
//! Edge-list lines:
//!
//! ```text
//! # comment
//! vertices: 4          optional; tokens are then ids below 4
//! labels: a b c d      optional; tokens are then these labels
//! a b                  an edge
//! e                    an isolated vertex
//! triangle: a b c
//! square: a b c d      in cyclic order
//! perm: b a c d        images of the vertices in id order
//! ```
//!
//! Without a header, tokens are ids if they are all numeric and labels in
//! order of first appearance otherwise.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use bucolic::complex::{flag_complex, Square, Triangle, TriangleSquareComplex};
use bucolic::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    At {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

fn at(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::At {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Record,
}

/// A parsed input: a graph with optional explicit cells and an optional
/// group given by generating permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: Graph,
    pub triangles: Option<Vec<Triangle>>,
    pub squares: Option<Vec<Square>>,
    pub group: Vec<Vec<Vertex>>,
}

impl GraphDocument {
    pub fn new(graph: Graph) -> Self {
        GraphDocument {
            graph,
            triangles: None,
            squares: None,
            group: Vec::new(),
        }
    }

    /// The explicit complex if cells were given, the flag complex otherwise.
    pub fn complex(&self) -> bucolic::Result<TriangleSquareComplex> {
        if self.triangles.is_none() && self.squares.is_none() {
            return Ok(flag_complex(&self.graph));
        }
        TriangleSquareComplex::new(
            self.graph.clone(),
            self.triangles.clone().unwrap_or_default(),
            self.squares.clone().unwrap_or_default(),
        )
    }

    /// Resolves a vertex given by label, falling back to a numeric id.
    pub fn vertex(&self, token: &str) -> Option<Vertex> {
        self.graph
            .vertex_by_label(token)
            .or_else(|| token.parse().ok().filter(|&v| v < self.graph.vertex_count()))
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        if text.trim_start().starts_with('{') {
            parse_record(text)
        } else {
            parse_edge_list(text)
        }
    }

    pub fn serialize(&self, format: Format) -> String {
        match format {
            Format::EdgeList => self.to_edge_list(),
            Format::Record => serde_json::to_string_pretty(&self.to_record()).expect("serializable record") + "\n",
        }
    }

    fn numeric_labels(&self) -> bool {
        self.graph.labels().iter().enumerate().all(|(i, l)| *l == i.to_string())
    }

    fn to_edge_list(&self) -> String {
        let g = &self.graph;
        let numeric = self.numeric_labels();
        let name = |v: Vertex| if numeric { v.to_string() } else { g.label(v).to_string() };
        let mut out = String::new();
        if numeric {
            let _ = writeln!(out, "vertices: {}", g.vertex_count());
        } else {
            let _ = writeln!(out, "labels: {}", g.labels().join(" "));
        }
        for (u, v) in g.edges() {
            let _ = writeln!(out, "{} {}", name(u), name(v));
        }
        let join = |vs: &[Vertex]| vs.iter().map(|&v| name(v)).collect::<Vec<_>>().join(" ");
        for t in self.triangles.iter().flatten() {
            let _ = writeln!(out, "triangle: {}", join(t));
        }
        for s in self.squares.iter().flatten() {
            let _ = writeln!(out, "square: {}", join(s));
        }
        for p in &self.group {
            let _ = writeln!(out, "perm: {}", join(p));
        }
        out
    }

    fn to_record(&self) -> Record {
        let g = &self.graph;
        Record {
            vertices: if self.numeric_labels() {
                VertexSpec::Count(g.vertex_count())
            } else {
                VertexSpec::Labels(g.labels().to_vec())
            },
            edges: g.edges().map(|(u, v)| [VRef::Id(u), VRef::Id(v)]).collect(),
            triangles: self
                .triangles
                .as_ref()
                .map(|ts| ts.iter().map(|t| t.map(VRef::Id).to_vec()).collect()),
            squares: self
                .squares
                .as_ref()
                .map(|ss| ss.iter().map(|s| s.map(VRef::Id).to_vec()).collect()),
            group: (!self.group.is_empty()).then(|| {
                self.group
                    .iter()
                    .map(|p| p.iter().map(|&v| VRef::Id(v)).collect())
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum VertexSpec {
    Count(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum VRef {
    Id(usize),
    Label(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    vertices: VertexSpec,
    #[serde(default)]
    edges: Vec<[VRef; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    triangles: Option<Vec<Vec<VRef>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    squares: Option<Vec<Vec<VRef>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<Vec<Vec<VRef>>>,
}

fn parse_record(text: &str) -> Result<GraphDocument, ParseError> {
    let rec: Record = serde_json::from_str(text).map_err(|e| at(e.line(), e.column(), e.to_string()))?;
    let (n, labels) = match rec.vertices {
        VertexSpec::Count(n) => (n, None),
        VertexSpec::Labels(ls) => (ls.len(), Some(ls)),
    };
    let index: HashMap<String, Vertex> = labels
        .iter()
        .flatten()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    let resolve = |r: &VRef| -> Result<Vertex, ParseError> {
        match r {
            VRef::Id(v) if *v < n => Ok(*v),
            VRef::Id(v) => Err(ParseError::Invalid(format!(
                "vertex id {v} out of range (vertices: {n})"
            ))),
            VRef::Label(l) => index
                .get(l)
                .copied()
                .ok_or_else(|| ParseError::Invalid(format!("unknown vertex label {l:?}"))),
        }
    };
    let list = |rs: &[VRef]| rs.iter().map(resolve).collect::<Result<Vec<_>, _>>();
    let edges = rec
        .edges
        .iter()
        .map(|[a, b]| Ok((resolve(a)?, resolve(b)?)))
        .collect::<Result<Vec<_>, ParseError>>()?;
    let mut graph = Graph::from_edges(n, edges).map_err(|e| ParseError::Invalid(e.to_string()))?;
    if let Some(ls) = labels {
        graph = graph.with_labels(ls).map_err(|e| ParseError::Invalid(e.to_string()))?;
    }
    let cells = |cs: Option<Vec<Vec<VRef>>>, k: usize, what: &str| -> Result<Option<Vec<Vec<Vertex>>>, ParseError> {
        cs.map(|cs| {
            cs.iter()
                .map(|c| {
                    let vs = list(c)?;
                    if vs.len() != k {
                        return Err(ParseError::Invalid(format!(
                            "{what} needs {k} vertices, got {}",
                            vs.len()
                        )));
                    }
                    Ok(vs)
                })
                .collect()
        })
        .transpose()
    };
    let triangles = cells(rec.triangles, 3, "triangle")?.map(|v| v.into_iter().map(|c| [c[0], c[1], c[2]]).collect());
    let squares = cells(rec.squares, 4, "square")?.map(|v| v.into_iter().map(|c| [c[0], c[1], c[2], c[3]]).collect());
    let group = cells(rec.group, n, "permutation")?.unwrap_or_default();
    Ok(GraphDocument {
        graph,
        triangles,
        squares,
        group,
    })
}

/// A token with its 1-based position.
#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

enum Line<'a> {
    Edge(Token<'a>, Token<'a>),
    Vertex(Token<'a>),
    Triangle(Vec<Token<'a>>),
    Square(Vec<Token<'a>>),
    Perm(Vec<Token<'a>>),
}

fn tokens(text: &str, line: usize, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &text[s..i],
                    line,
                    column: offset + text[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn parse_edge_list(text: &str) -> Result<GraphDocument, ParseError> {
    let mut count: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        if let Some((key, rest)) = body.split_once(':') {
            let offset = key.chars().count() + 1;
            let toks = tokens(rest, line_no, offset);
            let key_col = key.chars().take_while(|c| c.is_whitespace()).count() + 1;
            match key.trim() {
                "vertices" => {
                    let [t] = toks.as_slice() else {
                        return Err(at(line_no, key_col, "expected \"vertices: <count>\""));
                    };
                    count = Some(
                        t.text
                            .parse()
                            .map_err(|_| at(t.line, t.column, format!("invalid vertex count {:?}", t.text)))?,
                    );
                }
                "labels" => labels = Some(toks.iter().map(|t| t.text.to_string()).collect()),
                "triangle" if toks.len() == 3 => lines.push(Line::Triangle(toks)),
                "square" if toks.len() == 4 => lines.push(Line::Square(toks)),
                "perm" => lines.push(Line::Perm(toks)),
                "triangle" | "square" => {
                    return Err(at(
                        line_no,
                        key_col,
                        format!("wrong number of vertices for {}", key.trim()),
                    ))
                }
                other => return Err(at(line_no, key_col, format!("unknown directive {other:?}"))),
            }
            continue;
        }
        let mut toks = tokens(body, line_no, 0);
        match toks.len() {
            1 => lines.push(Line::Vertex(toks.remove(0))),
            2 => {
                let b = toks.pop().expect("two tokens");
                let a = toks.pop().expect("two tokens");
                lines.push(Line::Edge(a, b));
            }
            _ => return Err(at(toks[2].line, toks[2].column, "expected \"u v\" on an edge line")),
        }
    }
    let all_tokens = || {
        lines.iter().flat_map(|l| match l {
            Line::Edge(a, b) => vec![a, b],
            Line::Vertex(a) => vec![a],
            Line::Triangle(ts) | Line::Square(ts) | Line::Perm(ts) => ts.iter().collect(),
        })
    };
    // fix the vertex naming scheme
    let mut index: HashMap<String, Vertex> = HashMap::new();
    let numeric = labels.is_none() && all_tokens().all(|t| t.text.parse::<usize>().is_ok());
    let n = if let Some(ls) = &labels {
        for (i, l) in ls.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(ParseError::Invalid(format!("duplicate label {l:?}")));
            }
        }
        if count.is_some_and(|c| c != ls.len()) {
            return Err(ParseError::Invalid("vertex count and label list disagree".into()));
        }
        ls.len()
    } else if numeric {
        let max = all_tokens().map(|t| t.text.parse::<usize>().expect("numeric")).max();
        match (count, max) {
            (Some(c), _) => c,
            (None, Some(m)) => m + 1,
            (None, None) => 0,
        }
    } else {
        let mut order = Vec::new();
        for t in all_tokens() {
            if !index.contains_key(t.text) {
                index.insert(t.text.to_string(), order.len());
                order.push(t.text.to_string());
            }
        }
        labels = Some(order);
        index.len()
    };
    let resolve = |t: &Token| -> Result<Vertex, ParseError> {
        let v = if numeric {
            t.text.parse::<usize>().ok()
        } else {
            index.get(t.text).copied()
        };
        v.filter(|&v| v < n)
            .ok_or_else(|| at(t.line, t.column, format!("unknown vertex {:?}", t.text)))
    };
    let mut edges = Vec::new();
    let (mut triangles, mut squares, mut group) = (Vec::new(), Vec::new(), Vec::new());
    for l in &lines {
        match l {
            Line::Edge(a, b) => {
                let (u, v) = (resolve(a)?, resolve(b)?);
                if u == v {
                    return Err(at(b.line, b.column, "self-loop"));
                }
                edges.push((u, v));
            }
            Line::Vertex(a) => {
                resolve(a)?;
            }
            Line::Triangle(ts) => {
                let vs = ts.iter().map(resolve).collect::<Result<Vec<_>, _>>()?;
                triangles.push([vs[0], vs[1], vs[2]]);
            }
            Line::Square(ts) => {
                let vs = ts.iter().map(resolve).collect::<Result<Vec<_>, _>>()?;
                squares.push([vs[0], vs[1], vs[2], vs[3]]);
            }
            Line::Perm(ts) => {
                if ts.len() != n {
                    let line = ts.first().map_or(0, |t| t.line);
                    return Err(at(
                        line,
                        1,
                        format!("permutation lists {} images, graph has {n} vertices", ts.len()),
                    ));
                }
                group.push(ts.iter().map(resolve).collect::<Result<Vec<_>, _>>()?);
            }
        }
    }
    let mut graph = Graph::from_edges(n, edges).map_err(|e| ParseError::Invalid(e.to_string()))?;
    if let Some(ls) = labels {
        graph = graph.with_labels(ls).map_err(|e| ParseError::Invalid(e.to_string()))?;
    }
    let has_cells = !triangles.is_empty() || !squares.is_empty();
    Ok(GraphDocument {
        graph,
        triangles: has_cells.then_some(triangles.clone()),
        squares: has_cells.then_some(squares),
        group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_edge_list() {
        let d = GraphDocument::parse("# a path\n0 1\n1 2 # tail\n\n").unwrap();
        assert_eq!(d.graph.vertex_count(), 3);
        assert_eq!(d.graph.edge_count(), 2);
        let d = GraphDocument::parse("vertices: 4\n0 1\n").unwrap();
        assert_eq!(d.graph.vertex_count(), 4);
    }

    #[test]
    fn labelled_edge_list() {
        let d = GraphDocument::parse("a b\nb c\nperm: c b a\n").unwrap();
        assert_eq!(d.graph.labels(), ["a", "b", "c"]);
        assert_eq!(d.group, vec![vec![2, 1, 0]]);
        assert_eq!(d.vertex("b"), Some(1));
    }

    #[test]
    fn errors_carry_positions() {
        let e = GraphDocument::parse("0 1\n1 2 3\n").unwrap_err();
        assert_eq!(e, at(2, 5, "expected \"u v\" on an edge line"));
        let e = GraphDocument::parse("vertices: 2\n0 5\n").unwrap_err();
        assert!(matches!(e, ParseError::At { line: 2, column: 3, .. }));
        let e = GraphDocument::parse("{\"vertices\": 2, \"edges\": [[0, 1]").unwrap_err();
        assert!(matches!(e, ParseError::At { line: 1, .. }));
    }

    #[test]
    fn round_trips() {
        for text in [
            "vertices: 3\n0 1\n1 2\nperm: 2 1 0\n",
            "labels: x y z w\nx y\nx w\ny z\nz w\nsquare: x y z w\n",
        ] {
            let d = GraphDocument::parse(text).unwrap();
            assert_eq!(d.serialize(Format::EdgeList), text);
            let json = d.serialize(Format::Record);
            assert_eq!(GraphDocument::parse(&json).unwrap(), d);
        }
    }

    #[test]
    fn record_with_labels() {
        let d = GraphDocument::parse(
            r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b"], [1, 2]], "group": [["c", "b", "a"]]}"#,
        )
        .unwrap();
        assert_eq!(d.graph.edge_count(), 2);
        assert_eq!(d.group, vec![vec![2, 1, 0]]);
    }
}
