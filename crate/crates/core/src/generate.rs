//! Seeded random chordal graphs for property tests and the `gen` command.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{LabeledGraph, VertexIdx};
use crate::numerics::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelMode {
    Uniform(Rational),
    /// Denominator uniform in `1..=max_den`, numerator uniform over values
    /// keeping the label in `[0, max]`.
    Random {
        max_den: u32,
        max: Rational,
    },
}

impl LabelMode {
    pub fn random(max_den: u32) -> Self {
        LabelMode::Random {
            max_den,
            max: Rational::one(),
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Rational {
        match self {
            LabelMode::Uniform(p) => p.clone(),
            LabelMode::Random { max_den, max } => {
                let d = rng.gen_range(1..=(*max_den).max(1)) as i64;
                let top = (max * Rational::from(d))
                    .floor()
                    .clamp(BigInt::from(0), BigInt::from(d));
                let top = i64::try_from(top).expect("numerator bounded by denominator");
                Rational::frac(rng.gen_range(0..=top), d)
            }
        }
    }
}

/// Grows a graph one vertex at a time, joining each newcomer to a random
/// subset of a previously recorded clique; the build order reversed is then a
/// perfect elimination ordering. Vertex and edge order are shuffled before
/// returning. Same `(n, seed, labels)` gives the same graph.
pub fn random_chordal(n: usize, seed: u64, labels: &LabelMode) -> LabeledGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cliques: Vec<Vec<VertexIdx>> = Vec::new();
    let mut edges: Vec<(VertexIdx, VertexIdx)> = Vec::new();
    for v in 0..n {
        let mut clique = vec![v];
        if let Some(base) = cliques.choose(&mut rng) {
            let keep = rng.gen_range(0.2..1.0);
            for &u in base {
                if rng.gen_bool(keep) {
                    edges.push((u, v));
                    clique.push(u);
                }
            }
        }
        cliques.push(clique);
    }
    let mut perm: Vec<VertexIdx> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges: Vec<_> = edges
        .into_iter()
        .map(|(a, b)| (perm[a], perm[b]))
        .map(|(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
        .collect();
    edges.shuffle(&mut rng);
    let labels = (0..n).map(|_| labels.draw(&mut rng)).collect();
    LabeledGraph::from_indices(labels, &edges).expect("generated graph is well formed")
}
