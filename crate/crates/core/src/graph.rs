//! Labeled undirected graphs and their text formats.
//!
//! Vertices carry a stable string name and a dense index (their position in
//! the input). Every downstream algorithm works on indices and uses the
//! index as its deterministic tie-breaker.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Rational;

/// Dense vertex index, `0..n` in input order.
pub type VertexIdx = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub label: Rational,
}

/// Simple undirected graph with an exact probability label in `[0, 1]` on
/// every vertex.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    index: HashMap<String, VertexIdx>,
    // sorted, deduplicated
    adj: Vec<Vec<VertexIdx>>,
    // input order, each pair once
    edges: Vec<(VertexIdx, VertexIdx)>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.adj == other.adj
    }
}

impl Eq for LabeledGraph {}

/// Names are nonempty, whitespace-free, and not the edge-list keyword.
fn valid_name(name: &str) -> bool {
    !name.is_empty() && name != "vertex" && !name.chars().any(char::is_whitespace)
}

impl LabeledGraph {
    /// Builds and validates a graph from named vertices and named edges.
    pub fn new<S: AsRef<str>>(
        vertices: impl IntoIterator<Item = (String, Rational)>,
        edges: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let mut g = LabeledGraph {
            vertices: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
            edges: Vec::new(),
        };
        for (name, label) in vertices {
            g.push_vertex(name, label)?;
        }
        for (a, b) in edges {
            g.push_edge(a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    /// Builds a graph from labels and index pairs; names are `v0, v1, ...`.
    pub fn from_indices(labels: Vec<Rational>, edges: &[(VertexIdx, VertexIdx)]) -> Result<Self> {
        let names: Vec<String> = (0..labels.len()).map(|i| format!("v{i}")).collect();
        let edges: Vec<(&str, &str)> = edges
            .iter()
            .map(|&(a, b)| {
                let name = |i: usize| names.get(i).map(String::as_str).unwrap_or("?");
                (name(a), name(b))
            })
            .collect();
        LabeledGraph::new(names.iter().cloned().zip(labels), edges)
    }

    fn push_vertex(&mut self, name: String, label: Rational) -> Result<()> {
        if !valid_name(&name) {
            return Err(Error::InvalidName(name));
        }
        if label.is_negative() || label > Rational::one() {
            return Err(Error::LabelOutOfRange(name));
        }
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        self.index.insert(name.clone(), self.vertices.len());
        self.vertices.push(Vertex { name, label });
        self.adj.push(Vec::new());
        Ok(())
    }

    fn push_edge(&mut self, a: &str, b: &str) -> Result<()> {
        let u = self.endpoint(a)?;
        let v = self.endpoint(b)?;
        if u == v {
            return Err(Error::SelfLoop(a.to_string()));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
            self.edges.push((u, v));
        }
        Ok(())
    }

    fn endpoint(&self, name: &str) -> Result<VertexIdx> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEndpoint(name.to_string()))
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn name(&self, v: VertexIdx) -> &str {
        &self.vertices[v].name
    }

    pub fn label(&self, v: VertexIdx) -> &Rational {
        &self.vertices[v].label
    }

    pub fn index_of(&self, name: &str) -> Result<VertexIdx> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Resolves a list of names to indices.
    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<VertexIdx>> {
        names.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    pub fn neighbors(&self, v: VertexIdx) -> &[VertexIdx] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexIdx) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: VertexIdx, v: VertexIdx) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges in input order.
    pub fn edges(&self) -> &[(VertexIdx, VertexIdx)] {
        &self.edges
    }

    /// Same shape, every label replaced by `p`.
    pub fn with_uniform_label(&self, p: &Rational) -> Result<Self> {
        self.with_labels(vec![p.clone(); self.n()])
    }

    pub fn with_labels(&self, labels: Vec<Rational>) -> Result<Self> {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        let mut g = self.clone();
        for (vx, label) in g.vertices.iter_mut().zip(labels) {
            if label.is_negative() || label > Rational::one() {
                return Err(Error::LabelOutOfRange(vx.name.clone()));
            }
            vx.label = label;
        }
        Ok(g)
    }

    /// True iff no two members of `s` are adjacent.
    pub fn is_independent_idx(&self, s: &[VertexIdx]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| u != v && !self.adjacent(u, v)))
    }
}

/// Name-based independence test; unknown names are an error.
pub fn is_independent<S: AsRef<str>>(g: &LabeledGraph, s: &[S]) -> Result<bool> {
    let idx = g.indices_of(s)?;
    Ok(g.is_independent_idx(&idx))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "edgelist" => Ok(Format::EdgeList),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown format {other:?}"),
            }),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    name: String,
    p: String,
}

pub fn parse_graph(text: &str, format: Format) -> Result<LabeledGraph> {
    match format {
        Format::Json => parse_json(text),
        Format::EdgeList => parse_edge_list(text),
    }
}

fn parse_json(text: &str) -> Result<LabeledGraph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for v in doc.vertices {
        let label =
            v.p.parse()
                .map_err(|_| Error::InvalidRational(format!("{} (vertex {})", v.p, v.name)))?;
        vertices.push((v.name, label));
    }
    LabeledGraph::new(vertices, doc.edges.into_iter().map(|[a, b]| (a, b)))
}

fn parse_edge_list(text: &str) -> Result<LabeledGraph> {
    let mut g = LabeledGraph::new(Vec::new(), Vec::<(&str, &str)>::new())?;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["vertex", name, p] => {
                let label = p.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("bad label {p:?}"),
                })?;
                g.push_vertex(name.to_string(), label)?;
            }
            ["vertex", ..] => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "expected `vertex <name> <p>`".into(),
                })
            }
            [a, b] => g.push_edge(a, b)?,
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected `vertex <name> <p>` or `<name> <name>`, got {line:?}"),
                })
            }
        }
    }
    Ok(g)
}

pub fn serialize_graph(g: &LabeledGraph, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = GraphDoc {
                vertices: g
                    .vertices
                    .iter()
                    .map(|v| VertexDoc {
                        name: v.name.clone(),
                        p: v.label.to_string(),
                    })
                    .collect(),
                edges: g
                    .edges
                    .iter()
                    .map(|&(a, b)| [g.name(a).to_string(), g.name(b).to_string()])
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("graph document serializes");
            s.push('\n');
            s
        }
        Format::EdgeList => {
            let mut s = String::new();
            for v in &g.vertices {
                let _ = writeln!(s, "vertex {} {}", v.name, v.label);
            }
            for &(a, b) in &g.edges {
                let _ = writeln!(s, "{} {}", g.name(a), g.name(b));
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn empty_json() {
        let g = parse_graph(r#"{"vertices": [], "edges": []}"#, Format::Json).unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
        let doc = serialize_graph(&g, Format::Json);
        assert_eq!(parse_graph(&doc, Format::Json).unwrap(), g);
    }

    #[test]
    fn goldner_harary_fixture_parses() {
        let g = fixtures::goldner_harary(Rational::frac(1, 8));
        assert_eq!((g.n(), g.m()), (11, 27));
        for fmt in [Format::Json, Format::EdgeList] {
            let text = serialize_graph(&g, fmt);
            let h = parse_graph(&text, fmt).unwrap();
            assert_eq!(h, g);
            assert_eq!(h.m(), 27);
        }
    }

    #[test]
    fn decimal_labels_are_exact() {
        let g = parse_graph("vertex a 0.125\n", Format::EdgeList).unwrap();
        assert_eq!(g.label(0), &Rational::frac(1, 8));
    }

    #[test]
    fn single_vertex_serializes_label() {
        let g = LabeledGraph::new(
            [("x".to_string(), Rational::frac(1, 2))],
            Vec::<(&str, &str)>::new(),
        )
        .unwrap();
        let doc = serialize_graph(&g, Format::Json);
        assert!(doc.contains(r#""p": "1/2""#), "{doc}");
        assert_eq!(serialize_graph(&g, Format::EdgeList), "vertex x 1/2\n");
    }

    #[test]
    fn validation_errors() {
        let e = parse_graph(
            r#"{"vertices":[{"name":"a","p":"3/2"}],"edges":[]}"#,
            Format::Json,
        )
        .unwrap_err();
        assert_eq!(e.to_string(), "label out of range a");

        let e = parse_graph("vertex a 1/2\nvertex a 1/3\n", Format::EdgeList).unwrap_err();
        assert_eq!(e, Error::DuplicateVertex("a".into()));

        let e = parse_graph("vertex a 1/2\na b\n", Format::EdgeList).unwrap_err();
        assert_eq!(e, Error::UnknownEndpoint("b".into()));

        let e = parse_graph("vertex a 1/2\na a\n", Format::EdgeList).unwrap_err();
        assert!(e.to_string().starts_with("self-loop rejected"));

        let e = parse_graph("vertex a 1/2\nvertex b\n", Format::EdgeList).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");

        let e = parse_graph("vertex vertex 1/2\n", Format::EdgeList).unwrap_err();
        assert!(matches!(e, Error::InvalidName(_)), "{e}");

        let e = parse_graph("vertex a -1/2\n", Format::EdgeList).unwrap_err();
        assert_eq!(e, Error::LabelOutOfRange("a".into()));

        let e = parse_graph("{\n\"vertices\": [,\n", Format::Json).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_graph("vertex a 0\nvertex b 0\na b\nb a\n", Format::EdgeList).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn independence() {
        let path = fixtures::path(3, Rational::frac(1, 4));
        assert!(is_independent(&path, &["v0", "v2"]).unwrap());
        assert!(!is_independent(&path, &["v0", "v1"]).unwrap());
        assert!(is_independent::<&str>(&path, &[]).unwrap());
        assert!(is_independent(&path, &["zz"]).is_err());

        let gh = fixtures::goldner_harary(Rational::frac(1, 8));
        assert!(!is_independent(&gh, &["e", "f"]).unwrap());
        assert!(is_independent(&gh, &["a", "c"]).unwrap());
    }

    fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
        (0usize..9).prop_flat_map(|n| {
            let labels = prop::collection::vec((0i64..=16, 1i64..=16), n);
            let edges = prop::collection::vec((0..n.max(1), 0..n.max(1)), 0..(n * 2 + 1));
            (labels, edges).prop_map(move |(labels, edges)| {
                let labels = labels
                    .into_iter()
                    .map(|(a, b)| Rational::frac(a.min(b), b))
                    .collect();
                let edges: Vec<_> = edges.into_iter().filter(|(a, b)| a != b).collect();
                LabeledGraph::from_indices(labels, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn parse_serialize_round_trip(g in arb_graph()) {
            for fmt in [Format::Json, Format::EdgeList] {
                let back = parse_graph(&serialize_graph(&g, fmt), fmt).unwrap();
                prop_assert_eq!(&back, &g);
            }
        }

        #[test]
        fn adjacency_is_symmetric(g in arb_graph()) {
            for u in 0..g.n() {
                prop_assert!(!g.adjacent(u, u));
                for v in 0..g.n() {
                    prop_assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
                }
            }
        }
    }
}
