use std::collections::BTreeMap;
use std::fmt;

use super::clique_tree::{build_clique_tree, CliqueTree, NodeIdx};
use super::mcs::{check_chordal, mcs_order, Chordality, EliminationOrdering};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexIdx};

/// A tree partial order stored as a successor forest: each vertex points to
/// the unique element covering it, or to nothing if it is maximal. Every
/// up-set is then a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeOrder {
    succ: Vec<Option<VertexIdx>>,
    depth: Vec<usize>,
    children: Vec<Vec<VertexIdx>>,
    // Euler-tour interval: u <= v iff enter[v] <= enter[u] and exit[u] <= exit[v]
    enter: Vec<usize>,
    exit: Vec<usize>,
}

impl TreeOrder {
    /// Fails with [`Error::CyclicOrder`] if following successors loops.
    pub fn from_successors(succ: Vec<Option<VertexIdx>>) -> Result<Self> {
        let n = succ.len();
        if let Some(&bad) = succ.iter().flatten().find(|&&s| s >= n) {
            return Err(Error::UnknownVertex(format!("#{bad} in successor map")));
        }
        // depth = number of successor hops to a maximal element
        const UNSET: usize = usize::MAX;
        const ON_STACK: usize = usize::MAX - 1;
        let mut depth = vec![UNSET; n];
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            // depth of the last element pushed onto `path`
            let mut d = loop {
                match depth[v] {
                    ON_STACK => return Err(Error::CyclicOrder(format!("#{v}"))),
                    UNSET => {}
                    known => break known + 1,
                }
                depth[v] = ON_STACK;
                path.push(v);
                match succ[v] {
                    Some(s) => v = s,
                    None => break 0,
                }
            };
            for &x in path.iter().rev() {
                depth[x] = d;
                d += 1;
            }
        }
        let mut children = vec![Vec::new(); n];
        for (v, s) in succ.iter().enumerate() {
            if let Some(s) = s {
                children[*s].push(v);
            }
        }
        let (enter, exit) = euler_tour(&succ, &children);
        Ok(TreeOrder {
            succ,
            depth,
            children,
            enter,
            exit,
        })
    }

    /// Builds the order from `(vertex, successor)` names. Vertices not
    /// mentioned are maximal.
    pub fn from_names<S: AsRef<str>>(g: &LabeledGraph, pairs: &[(S, Option<S>)]) -> Result<Self> {
        let mut succ = vec![None; g.n()];
        for (v, s) in pairs {
            let v = g.index_of(v.as_ref())?;
            succ[v] = match s {
                Some(s) => Some(g.index_of(s.as_ref())?),
                None => None,
            };
        }
        TreeOrder::from_successors(succ).map_err(|e| match e {
            Error::CyclicOrder(s) => Error::CyclicOrder(name_of(g, &s)),
            other => other,
        })
    }

    /// Parses `{"vertex": "successor" | null, ...}`.
    pub fn from_json(g: &LabeledGraph, text: &str) -> Result<Self> {
        let map: BTreeMap<String, Option<String>> =
            serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                msg: e.to_string(),
            })?;
        let pairs: Vec<(String, Option<String>)> = map.into_iter().collect();
        TreeOrder::from_names(g, &pairs)
    }

    /// `{"vertex": "successor" | null}` in vertex input order.
    pub fn to_json(&self, g: &LabeledGraph) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for v in 0..self.len() {
            let s = match self.succ[v] {
                Some(s) => serde_json::Value::String(g.name(s).to_string()),
                None => serde_json::Value::Null,
            };
            map.insert(g.name(v).to_string(), s);
        }
        serde_json::Value::Object(map)
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successor(&self, v: VertexIdx) -> Option<VertexIdx> {
        self.succ[v]
    }

    pub fn successors(&self) -> &[Option<VertexIdx>] {
        &self.succ
    }

    /// Elements directly covered by `v`.
    pub fn predecessors(&self, v: VertexIdx) -> &[VertexIdx] {
        &self.children[v]
    }

    pub fn depth(&self, v: VertexIdx) -> usize {
        self.depth[v]
    }

    /// `u <= v`.
    pub fn le(&self, u: VertexIdx, v: VertexIdx) -> bool {
        self.enter[v] <= self.enter[u] && self.exit[u] <= self.exit[v]
    }

    /// `u < v` (strict).
    pub fn lt(&self, u: VertexIdx, v: VertexIdx) -> bool {
        u != v && self.le(u, v)
    }

    pub fn comparable(&self, u: VertexIdx, v: VertexIdx) -> bool {
        self.le(u, v) || self.le(v, u)
    }

    /// Strict up-set of `v`, nearest first.
    pub fn strict_up_set(&self, v: VertexIdx) -> Vec<VertexIdx> {
        std::iter::successors(self.succ[v], |&x| self.succ[x]).collect()
    }

    /// `D_v`: every `u < v`, ascending by index.
    pub fn strict_down_set(&self, v: VertexIdx) -> Vec<VertexIdx> {
        let mut out = Vec::new();
        let mut stack: Vec<VertexIdx> = self.children[v].clone();
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend_from_slice(&self.children[x]);
        }
        out.sort_unstable();
        out
    }

    /// `N_v`: neighbors of `v` strictly below it, ascending.
    pub fn down_neighbors(&self, g: &LabeledGraph, v: VertexIdx) -> Vec<VertexIdx> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.lt(u, v))
            .collect()
    }

    /// `F_v = D_v \ N_v`, ascending.
    pub fn down_non_neighbors(&self, g: &LabeledGraph, v: VertexIdx) -> Vec<VertexIdx> {
        self.strict_down_set(v)
            .into_iter()
            .filter(|&u| !g.adjacent(u, v))
            .collect()
    }

    /// `mu(U)`: members of `u` with nothing in `u` strictly above them.
    pub fn maximal_elements(&self, u: &[VertexIdx]) -> Vec<VertexIdx> {
        let mut member = vec![false; self.len()];
        for &x in u {
            member[x] = true;
        }
        let mut out: Vec<VertexIdx> = u
            .iter()
            .copied()
            .filter(|&x| !std::iter::successors(self.succ[x], |&y| self.succ[y]).any(|y| member[y]))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Topological order from the bottom up, taken in rounds: each round
    /// lists, by input index, every vertex whose predecessors were all
    /// placed in earlier rounds.
    pub fn linear_extension(&self) -> EliminationOrdering {
        let n = self.len();
        let mut pending: Vec<usize> = self.children.iter().map(Vec::len).collect();
        let mut round: Vec<VertexIdx> = (0..n).filter(|&v| pending[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while !round.is_empty() {
            let mut next = Vec::new();
            for &v in &round {
                order.push(v);
                if let Some(s) = self.succ[v] {
                    pending[s] -= 1;
                    if pending[s] == 0 {
                        next.push(s);
                    }
                }
            }
            next.sort_unstable();
            round = next;
        }
        EliminationOrdering::new(order).expect("acyclic successor forest")
    }
}

fn euler_tour(succ: &[Option<VertexIdx>], children: &[Vec<VertexIdx>]) -> (Vec<usize>, Vec<usize>) {
    let n = succ.len();
    let mut enter = vec![0; n];
    let mut exit = vec![0; n];
    let mut clock = 0;
    for root in (0..n).filter(|&v| succ[v].is_none()) {
        // (vertex, next child to visit)
        let mut stack = vec![(root, 0usize)];
        enter[root] = clock;
        clock += 1;
        while let Some((v, i)) = stack.last_mut() {
            if let Some(&c) = children[*v].get(*i) {
                *i += 1;
                enter[c] = clock;
                clock += 1;
                stack.push((c, 0));
            } else {
                exit[*v] = clock;
                clock += 1;
                stack.pop();
            }
        }
    }
    (enter, exit)
}

fn name_of(g: &LabeledGraph, tag: &str) -> String {
    tag.strip_prefix('#')
        .and_then(|i| i.parse::<usize>().ok())
        .filter(|&i| i < g.n())
        .map(|i| g.name(i).to_string())
        .unwrap_or_else(|| tag.to_string())
}

/// First reason a (graph, order) pair is not lefthanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LefthandViolation {
    /// `u ~ v` but neither `u <= v` nor `v <= u`.
    Incomparable { u: VertexIdx, v: VertexIdx },
    /// `w < u < v` and `v ~ w`, but `v` is not adjacent to `u`.
    Gap {
        w: VertexIdx,
        u: VertexIdx,
        v: VertexIdx,
    },
}

impl LefthandViolation {
    pub fn describe(&self, g: &LabeledGraph) -> String {
        match *self {
            LefthandViolation::Incomparable { u, v } => format!(
                "edge {}-{} joins incomparable vertices",
                g.name(u),
                g.name(v)
            ),
            LefthandViolation::Gap { w, u, v } => format!(
                "{w} < {u} < {v} and {v} ~ {w}, but {v} is not adjacent to {u}",
                w = g.name(w),
                u = g.name(u),
                v = g.name(v)
            ),
        }
    }

    pub fn into_error(self, g: &LabeledGraph) -> Error {
        Error::NotLefthanded(self.describe(g))
    }
}

impl fmt::Display for LefthandViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LefthandViolation::Incomparable { u, v } => write!(f, "incomparable edge #{u}-#{v}"),
            LefthandViolation::Gap { w, u, v } => write!(f, "gap #{w} < #{u} < #{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lefthandedness {
    Ok,
    Violation(LefthandViolation),
}

impl Lefthandedness {
    pub fn is_ok(&self) -> bool {
        matches!(self, Lefthandedness::Ok)
    }

    pub fn into_result(self, g: &LabeledGraph) -> Result<()> {
        match self {
            Lefthandedness::Ok => Ok(()),
            Lefthandedness::Violation(v) => Err(v.into_error(g)),
        }
    }
}

/// Checks both lefthandedness conditions. The tree-order law itself holds by
/// construction of [`TreeOrder`] (acyclic successor forest).
pub fn verify_lefthanded(g: &LabeledGraph, t: &TreeOrder) -> Result<Lefthandedness> {
    if t.len() != g.n() {
        return Err(Error::UnknownVertex(format!(
            "order covers {} vertices, graph has {}",
            t.len(),
            g.n()
        )));
    }
    for &(a, b) in g.edges() {
        if !t.comparable(a, b) {
            return Ok(Lefthandedness::Violation(LefthandViolation::Incomparable {
                u: a.min(b),
                v: a.max(b),
            }));
        }
    }
    // Every w < v with w ~ v must have its cover equal to v or adjacent to
    // v; by induction up the chain this covers all w < u < v.
    for v in 0..g.n() {
        for &w in g.neighbors(v) {
            if !t.lt(w, v) {
                continue;
            }
            let u = t.successor(w).expect("w < v has a successor");
            if u != v && !g.adjacent(u, v) {
                return Ok(Lefthandedness::Violation(LefthandViolation::Gap {
                    w,
                    u,
                    v,
                }));
            }
        }
    }
    Ok(Lefthandedness::Ok)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootChoice {
    /// The clique-tree node containing the last vertex of the PEO.
    #[default]
    LastPeoVertex,
    /// The clique-tree node containing the first vertex of the PEO.
    FirstPeoVertex,
    /// A specific node, reduced modulo the number of cliques.
    Node(NodeIdx),
}

/// How vertices whose subtrees have the same top node are chained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Smaller input index sits lower.
    #[default]
    InputIndex,
    /// Larger input index sits lower.
    ReverseInputIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TreeOrderConfig {
    pub root: RootChoice,
    pub tie_break: TieBreak,
}

/// Lefthanded tree-order of a chordal graph with the default configuration.
pub fn build_tree_order(g: &LabeledGraph) -> Result<TreeOrder> {
    build_tree_order_with(g, TreeOrderConfig::default())
}

/// Tree-order read off a clique tree.
///
/// A dummy leaf hangs off the chosen root node. For every vertex, the
/// shortest path from its subtree to that leaf starts at the subtree's top
/// node (the one nearest the root), so `u <= v` exactly when `v`'s top node
/// is an ancestor of, or equal to, `u`'s top node; vertices sharing a top
/// node are chained by the tie-break.
pub fn build_tree_order_with(g: &LabeledGraph, config: TreeOrderConfig) -> Result<TreeOrder> {
    let mcs = mcs_order(g);
    if let Chordality::Witness(w) = check_chordal(g, &mcs) {
        return Err(w.into_error(g));
    }
    let peo = mcs.reversed();
    let tree = build_clique_tree(g, &peo)?;
    Ok(order_from_clique_tree(g, &tree, &peo, config))
}

fn order_from_clique_tree(
    g: &LabeledGraph,
    tree: &CliqueTree,
    peo: &EliminationOrdering,
    config: TreeOrderConfig,
) -> TreeOrder {
    let n = g.n();
    if n == 0 {
        return TreeOrder::from_successors(Vec::new()).expect("empty order");
    }
    let root = match config.root {
        RootChoice::LastPeoVertex => tree.root(),
        RootChoice::FirstPeoVertex => tree.subtree(peo.as_slice()[0])[0],
        RootChoice::Node(x) => x % tree.len(),
    };
    let (parent, depth) = tree.rooted_at(root);

    let top = |v: VertexIdx| {
        *tree
            .subtree(v)
            .iter()
            .min_by_key(|&&x| depth[x])
            .expect("every vertex lies in some clique")
    };
    let mut groups: Vec<Vec<VertexIdx>> = vec![Vec::new(); tree.len()];
    for v in 0..n {
        groups[top(v)].push(v);
    }
    for grp in &mut groups {
        match config.tie_break {
            TieBreak::InputIndex => grp.sort_unstable(),
            TieBreak::ReverseInputIndex => grp.sort_unstable_by(|a, b| b.cmp(a)),
        }
    }

    let mut succ = vec![None; n];
    for x in 0..tree.len() {
        let grp = &groups[x];
        for pair in grp.windows(2) {
            succ[pair[0]] = Some(pair[1]);
        }
        let Some(&last) = grp.last() else {
            continue;
        };
        let mut anc = parent[x];
        while let Some(y) = anc {
            if let Some(&lowest) = groups[y].first() {
                succ[last] = Some(lowest);
                break;
            }
            anc = parent[y];
        }
    }
    TreeOrder::from_successors(succ).expect("groups along root paths form a forest")
}
