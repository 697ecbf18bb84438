//! Small named graphs used by tests, benches and documentation.

use crate::chordal::TreeOrder;
use crate::graph::LabeledGraph;
use crate::numerics::Rational;

/// Edges of the Goldner–Harary graph on vertices `a..k`.
pub const GOLDNER_HARARY_EDGES: [(&str, &str); 27] = [
    ("a", "b"),
    ("a", "e"),
    ("a", "g"),
    ("b", "c"),
    ("b", "d"),
    ("b", "e"),
    ("b", "f"),
    ("b", "g"),
    ("d", "g"),
    ("d", "f"),
    ("c", "e"),
    ("c", "f"),
    ("e", "f"),
    ("f", "g"),
    ("k", "j"),
    ("k", "e"),
    ("k", "g"),
    ("j", "h"),
    ("j", "i"),
    ("j", "e"),
    ("j", "f"),
    ("j", "g"),
    ("i", "g"),
    ("i", "f"),
    ("h", "e"),
    ("h", "f"),
    ("e", "g"),
];

/// Successor forest realizing Goldner–Harary as a lefthanded graph:
/// a, c, d below b; h, i, k below j; b, j below e; then e < f < g.
pub const GOLDNER_HARARY_ORDER: [(&str, Option<&str>); 11] = [
    ("a", Some("b")),
    ("c", Some("b")),
    ("d", Some("b")),
    ("h", Some("j")),
    ("i", Some("j")),
    ("k", Some("j")),
    ("b", Some("e")),
    ("j", Some("e")),
    ("e", Some("f")),
    ("f", Some("g")),
    ("g", None),
];

/// Goldner–Harary with every label equal to `p`.
pub fn goldner_harary(p: Rational) -> LabeledGraph {
    let names = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"];
    LabeledGraph::new(
        names.iter().map(|s| (s.to_string(), p.clone())),
        GOLDNER_HARARY_EDGES,
    )
    .expect("valid fixture")
}

pub fn goldner_harary_reference_order(g: &LabeledGraph) -> TreeOrder {
    TreeOrder::from_names(g, &GOLDNER_HARARY_ORDER).expect("valid fixture order")
}

/// `K_n` on `v0..v{n-1}`.
pub fn complete(n: usize, p: Rational) -> LabeledGraph {
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    LabeledGraph::from_indices(vec![p; n], &edges).expect("valid fixture")
}

/// Path `v0 - v1 - ... - v{n-1}`.
pub fn path(n: usize, p: Rational) -> LabeledGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    LabeledGraph::from_indices(vec![p; n], &edges).expect("valid fixture")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize, p: Rational) -> LabeledGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    LabeledGraph::from_indices(vec![p; n], &edges).expect("valid fixture")
}
