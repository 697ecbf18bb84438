use std::collections::VecDeque;

use super::mcs::{check_chordal, Chordality, EliminationOrdering};
use crate::error::Result;
use crate::graph::{LabeledGraph, VertexIdx};

/// Index of a node in a [`CliqueTree`].
pub type NodeIdx = usize;

/// Maximal cliques of a chordal graph arranged in a tree such that the nodes
/// containing any one vertex form a subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueTree {
    cliques: Vec<Vec<VertexIdx>>,
    edges: Vec<(NodeIdx, NodeIdx)>,
    neighbors: Vec<Vec<NodeIdx>>,
    subtrees: Vec<Vec<NodeIdx>>,
    root: NodeIdx,
}

impl CliqueTree {
    pub fn cliques(&self) -> &[Vec<VertexIdx>] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn edges(&self) -> &[(NodeIdx, NodeIdx)] {
        &self.edges
    }

    pub fn node_neighbors(&self, x: NodeIdx) -> &[NodeIdx] {
        &self.neighbors[x]
    }

    /// Nodes whose clique contains `v`, ascending.
    pub fn subtree(&self, v: VertexIdx) -> &[NodeIdx] {
        &self.subtrees[v]
    }

    /// The node containing the last vertex of the elimination ordering.
    pub fn root(&self) -> NodeIdx {
        self.root
    }

    /// Parent pointers and depths with the tree hung from `root`.
    pub fn rooted_at(&self, root: NodeIdx) -> (Vec<Option<NodeIdx>>, Vec<usize>) {
        let k = self.len();
        let mut parent = vec![None; k];
        let mut depth = vec![usize::MAX; k];
        if k == 0 {
            return (parent, depth);
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.neighbors[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        (parent, depth)
    }

    /// True when every vertex's nodes induce a connected subgraph of the tree.
    pub fn has_subtree_property(&self) -> bool {
        self.subtrees.iter().all(|nodes| {
            let Some(&start) = nodes.first() else {
                return false;
            };
            let mut seen = vec![false; self.len()];
            seen[start] = true;
            let mut stack = vec![start];
            let mut count = 1;
            while let Some(x) = stack.pop() {
                for &y in &self.neighbors[x] {
                    if !seen[y] && nodes.binary_search(&y).is_ok() {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
            count == nodes.len()
        })
    }

    /// Adjacency list of the subtree intersection graph.
    pub fn intersection_edges(&self) -> Vec<(VertexIdx, VertexIdx)> {
        let n = self.subtrees.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (&self.subtrees[u], &self.subtrees[v]);
                if a.iter().any(|x| b.binary_search(x).is_ok()) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Builds a clique tree from a perfect elimination ordering `peo`
/// (`peo[0]` is eliminated first).
///
/// With `L(v)` the neighbors eliminated after `v`, the candidate cliques are
/// `{v} + L(v)`; a candidate is maximal unless some `u` with parent `v` has
/// `|L(u)| = |L(v)| + 1`, in which case `u`'s clique absorbs it. Each maximal
/// clique is attached to the clique holding the parent of the last candidate
/// it absorbed; components are joined at the root.
pub fn build_clique_tree(g: &LabeledGraph, peo: &EliminationOrdering) -> Result<CliqueTree> {
    if let Chordality::Witness(w) = check_chordal(g, &peo.reversed()) {
        return Err(w.into_error(g));
    }
    let n = g.n();
    let later: Vec<Vec<VertexIdx>> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| peo.position(u) > peo.position(v))
                .collect()
        })
        .collect();
    let parent: Vec<Option<VertexIdx>> = (0..n)
        .map(|v| later[v].iter().copied().min_by_key(|&u| peo.position(u)))
        .collect();

    // absorbing child per vertex, if any
    let mut absorbed_by: Vec<Option<VertexIdx>> = vec![None; n];
    for &u in peo.as_slice() {
        if let Some(p) = parent[u] {
            if later[u].len() == later[p].len() + 1 && absorbed_by[p].is_none() {
                absorbed_by[p] = Some(u);
            }
        }
    }

    let mut cliques: Vec<Vec<VertexIdx>> = Vec::new();
    let mut rep = vec![usize::MAX; n];
    let mut node_of_vertex: Vec<Option<NodeIdx>> = vec![None; n];
    for &v in peo.as_slice() {
        match absorbed_by[v] {
            Some(u) => rep[v] = rep[u],
            None => {
                let mut c = later[v].clone();
                c.push(v);
                c.sort_unstable();
                rep[v] = cliques.len();
                node_of_vertex[v] = Some(cliques.len());
                cliques.push(c);
            }
        }
    }

    let k = cliques.len();
    let root = peo.as_slice().last().map_or(0, |&v| rep[v]);
    let mut edges = Vec::new();
    for &v in peo.as_slice() {
        let Some(node) = node_of_vertex[v] else {
            continue;
        };
        // follow the chain of candidates this clique absorbed
        let mut top = v;
        while let Some(p) = parent[top] {
            if absorbed_by[p] != Some(top) {
                break;
            }
            top = p;
        }
        match parent[top] {
            Some(p) => edges.push((node, rep[p])),
            None if node != root => edges.push((node, root)),
            None => {}
        }
    }

    let mut neighbors = vec![Vec::new(); k];
    for &(a, b) in &edges {
        neighbors[a].push(b);
        neighbors[b].push(a);
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }
    let mut subtrees = vec![Vec::new(); n];
    for (x, c) in cliques.iter().enumerate() {
        for &v in c {
            subtrees[v].push(x);
        }
    }
    Ok(CliqueTree {
        cliques,
        edges,
        neighbors,
        subtrees,
        root,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::mcs_order;
    use crate::fixtures;
    use crate::numerics::Rational;

    fn tree_for(g: &LabeledGraph) -> CliqueTree {
        build_clique_tree(g, &mcs_order(g).reversed()).unwrap()
    }

    fn assert_valid(g: &LabeledGraph, t: &CliqueTree) {
        assert!(t.has_subtree_property());
        assert_eq!(t.edges().len() + 1, t.len().max(1));
        let mut expected: Vec<_> = g
            .edges()
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        expected.sort_unstable();
        assert_eq!(t.intersection_edges(), expected);
        // cliques are distinct and maximal
        for (i, a) in t.cliques().iter().enumerate() {
            for (j, b) in t.cliques().iter().enumerate() {
                if i != j {
                    assert!(!a.iter().all(|x| b.contains(x)), "{a:?} inside {b:?}");
                }
            }
        }
    }

    #[test]
    fn single_edge() {
        let g = fixtures::complete(2, Rational::frac(1, 3));
        let t = tree_for(&g);
        assert_eq!(t.cliques(), &[vec![0, 1]]);
        assert_eq!(t.subtree(0), t.subtree(1));
        assert_valid(&g, &t);
    }

    #[test]
    fn path_of_three() {
        let g = fixtures::path(3, Rational::frac(1, 4));
        let t = tree_for(&g);
        assert_eq!(t.len(), 2);
        assert_eq!(t.edges().len(), 1);
        assert_eq!(t.subtree(1).len(), 2);
        assert!(t.cliques().contains(&vec![0, 1]));
        assert!(t.cliques().contains(&vec![1, 2]));
        assert_valid(&g, &t);
    }

    #[test]
    fn goldner_harary_reproduces_all_edges() {
        let g = fixtures::goldner_harary(Rational::frac(1, 8));
        let t = tree_for(&g);
        assert_valid(&g, &t);
        assert_eq!(t.intersection_edges().len(), 27);
        // the root holds the first MCS vertex
        let first = mcs_order(&g).as_slice()[0];
        assert!(t.cliques()[t.root()].contains(&first));
    }

    #[test]
    fn disconnected_graphs_form_one_tree() {
        let g = LabeledGraph::from_indices(vec![Rational::zero(); 5], &[(0, 1), (2, 3)]).unwrap();
        let t = tree_for(&g);
        assert_valid(&g, &t);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn rejects_non_chordal() {
        let g = fixtures::cycle(5, Rational::zero());
        let err = build_clique_tree(&g, &mcs_order(&g).reversed()).unwrap_err();
        assert!(err.to_string().contains("not chordal"));
    }
}
