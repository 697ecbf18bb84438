use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexIdx};

/// A permutation of `0..n`, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EliminationOrdering {
    order: Vec<VertexIdx>,
    position: Vec<usize>,
}

impl EliminationOrdering {
    /// Fails unless `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<VertexIdx>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::UnknownVertex(format!("#{v} in ordering")));
            }
            position[v] = i;
        }
        Ok(EliminationOrdering { order, position })
    }

    pub fn as_slice(&self) -> &[VertexIdx] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, v: VertexIdx) -> usize {
        self.position[v]
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        EliminationOrdering::new(order).expect("reversal of a permutation")
    }

    pub fn names<'g>(&self, g: &'g LabeledGraph) -> Vec<&'g str> {
        self.order.iter().map(|&v| g.name(v)).collect()
    }
}

/// Maximum cardinality search. Returns the visit order; for a chordal graph
/// its reverse is a perfect elimination ordering. Ties go to the smallest
/// input index.
pub fn mcs_order(g: &LabeledGraph) -> EliminationOrdering {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    // buckets[w] holds unvisited vertices with w visited neighbors
    let mut buckets: Vec<BTreeSet<VertexIdx>> = vec![BTreeSet::new(); n.max(1)];
    buckets[0].extend(0..n);
    let mut top = 0usize;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        while buckets[top].is_empty() {
            top -= 1;
        }
        let v = buckets[top].pop_first().expect("nonempty bucket");
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if visited[u] {
                continue;
            }
            buckets[weight[u]].remove(&u);
            weight[u] += 1;
            buckets[weight[u]].insert(u);
            top = top.max(weight[u]);
        }
    }
    EliminationOrdering::new(order).expect("each vertex visited once")
}

/// `u` and `w` are both neighbors of `v` eliminated after it, yet `u` and `w`
/// are not adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChordlessWitness {
    pub v: VertexIdx,
    pub u: VertexIdx,
    pub w: VertexIdx,
}

impl ChordlessWitness {
    pub fn into_error(self, g: &LabeledGraph) -> Error {
        Error::NotChordal {
            v: g.name(self.v).to_string(),
            u: g.name(self.u).to_string(),
            w: g.name(self.w).to_string(),
        }
    }

    /// Extends the triple to an induced cycle of length at least 4 through
    /// `u - v - w`, when one exists.
    pub fn chordless_cycle(&self, g: &LabeledGraph) -> Option<Vec<VertexIdx>> {
        // shortest w -> u path avoiding v and v's other neighbors
        let n = g.n();
        let blocked =
            |x: VertexIdx| x == self.v || (x != self.u && x != self.w && g.adjacent(x, self.v));
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.w]);
        seen[self.w] = true;
        while let Some(x) = queue.pop_front() {
            if x == self.u {
                break;
            }
            for &y in g.neighbors(x) {
                if !seen[y] && !blocked(y) {
                    seen[y] = true;
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if !seen[self.u] {
            return None;
        }
        let mut cycle = vec![self.v];
        let mut x = self.u;
        while x != self.w {
            cycle.push(x);
            x = prev[x];
        }
        cycle.push(self.w);
        Some(cycle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chordality {
    Chordal,
    Witness(ChordlessWitness),
}

impl Chordality {
    pub fn witness(&self) -> Option<ChordlessWitness> {
        match self {
            Chordality::Chordal => None,
            Chordality::Witness(w) => Some(*w),
        }
    }

    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal)
    }
}

/// Checks that `reverse(ord)` is a perfect elimination ordering.
///
/// With elimination running from the end of `ord` to the front, the later
/// neighbors of `v` are those placed before it in `ord`. Each `v` is tested
/// against its parent, the later neighbor eliminated first; this is
/// equivalent to the full clique test.
pub fn check_chordal(g: &LabeledGraph, ord: &EliminationOrdering) -> Chordality {
    assert_eq!(ord.len(), g.n(), "ordering must cover the graph");
    for &v in ord.as_slice() {
        let pv = ord.position(v);
        let earlier = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| ord.position(u) < pv);
        let Some(parent) = earlier.clone().max_by_key(|&u| ord.position(u)) else {
            continue;
        };
        for u in earlier {
            if u != parent && !g.adjacent(u, parent) {
                return Chordality::Witness(ChordlessWitness { v, u: parent, w: u });
            }
        }
    }
    Chordality::Chordal
}

/// Shorthand for MCS followed by the PEO check.
pub fn chordality(g: &LabeledGraph) -> Chordality {
    check_chordal(g, &mcs_order(g))
}
