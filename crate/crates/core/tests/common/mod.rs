#![allow(dead_code)]

use lefthand_core::chordal::TreeOrder;
use lefthand_core::oracle::bfunc;
use lefthand_core::{random_chordal, LabelMode, LabeledGraph, Rational, VertexIdx};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CAP: usize = 20;

/// Labeled chordal graphs with at most 12 vertices and denominators at most
/// 64. Label ceilings vary so both verdicts show up.
pub fn corpus(count: usize) -> Vec<LabeledGraph> {
    (0..count as u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let n = rng.gen_range(1..=12);
            let ceiling = Rational::frac(1, rng.gen_range(1..=5));
            random_chordal(
                n,
                seed,
                &LabelMode::Random {
                    max_den: 64,
                    max: ceiling,
                },
            )
        })
        .collect()
}

/// Erdős–Rényi graph on `n` vertices with edge probability `density`.
pub fn random_graph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> LabeledGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    LabeledGraph::from_indices(vec![Rational::frac(1, 10); n], &edges).unwrap()
}

/// True iff some vertex subset of size at least 4 induces a cycle.
pub fn has_induced_long_cycle(g: &LabeledGraph) -> bool {
    let n = g.n();
    assert!(n <= 16);
    (0u32..1 << n).any(|mask| {
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if verts.len() < 4 {
            return false;
        }
        let inside = |u: usize| mask >> u & 1 == 1;
        let two_regular = verts
            .iter()
            .all(|&v| g.neighbors(v).iter().filter(|&&u| inside(u)).count() == 2);
        two_regular && connected_within(g, &verts, mask)
    })
}

fn connected_within(g: &LabeledGraph, verts: &[usize], mask: u32) -> bool {
    let mut seen = 1u32 << verts[0];
    let mut stack = vec![verts[0]];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if mask >> u & 1 == 1 && seen >> u & 1 == 0 {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    seen == mask
}

/// `D_v ∪ {v}`.
pub fn closed_down_set(t: &TreeOrder, v: VertexIdx) -> Vec<VertexIdx> {
    let mut s = t.strict_down_set(v);
    s.push(v);
    s.sort_unstable();
    s
}

pub fn b(g: &LabeledGraph, s: &[VertexIdx]) -> Rational {
    bfunc(g, s, CAP).unwrap()
}

/// Union of closed down-sets of a random subset of vertices.
pub fn random_down_closed(t: &TreeOrder, rng: &mut ChaCha8Rng) -> Vec<VertexIdx> {
    let mut member = vec![false; t.len()];
    for v in 0..t.len() {
        if rng.gen_bool(0.3) {
            for u in closed_down_set(t, v) {
                member[u] = true;
            }
        }
    }
    (0..t.len()).filter(|&v| member[v]).collect()
}

/// Multiset equality that also rejects repeats on either side.
pub fn disjoint_union_eq(mut left: Vec<VertexIdx>, mut right: Vec<VertexIdx>) -> bool {
    left.sort_unstable();
    right.sort_unstable();
    let distinct = |s: &[VertexIdx]| s.windows(2).all(|w| w[0] != w[1]);
    distinct(&left) && distinct(&right) && left == right
}
