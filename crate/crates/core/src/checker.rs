//! Polynomial-time membership test for labeled chordal graphs.
//!
//! Vertices are visited along a linear extension of a lefthanded tree-order
//! and assigned `x_v = p_v / prod_{u in N_v} (1 - x_u)`, where `N_v` are the
//! neighbors of `v` below it. The graph is in Shearer's family iff every
//! `x_v` lands in `[0, 1)`; in that case `prod_v (1 - x_v)` equals `sigma(∅)`,
//! the best lower bound on the probability that no event occurs.

use serde::Serialize;

use crate::chordal::{verify_lefthanded, EliminationOrdering, TreeOrder};
use crate::error::Result;
use crate::graph::{LabeledGraph, VertexIdx};
use crate::numerics::Rational;
use crate::oracle::{self, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub order: EliminationOrdering,
    /// `x[v]` for every vertex processed before the run stopped.
    pub x: Vec<Option<Rational>>,
    pub verdict: Verdict,
    /// `prod_v (1 - x_v)` when in the family.
    pub bound: Option<Rational>,
    /// First vertex whose `x_v >= 1`.
    pub witness: Option<VertexIdx>,
}

impl CheckReport {
    pub fn x_of(&self, v: VertexIdx) -> Option<&Rational> {
        self.x[v].as_ref()
    }
}

/// Runs the recursion; halts at the first `x_v >= 1`, before any `1 - x_v = 0`
/// could be used as a divisor.
pub fn check_membership(g: &LabeledGraph, t: &TreeOrder) -> Result<CheckReport> {
    verify_lefthanded(g, t)?.into_result(g)?;
    let order = t.linear_extension();
    let mut x: Vec<Option<Rational>> = vec![None; g.n()];
    let one = Rational::one();
    for &v in order.as_slice() {
        let slack: Rational = t
            .down_neighbors(g, v)
            .iter()
            .map(|&u| &one - x[u].as_ref().expect("lower vertices come first"))
            .product();
        let xv = g.label(v) / slack;
        let failed = xv >= one;
        x[v] = Some(xv);
        if failed {
            return Ok(CheckReport {
                order,
                x,
                verdict: Verdict::OutOfL,
                bound: None,
                witness: Some(v),
            });
        }
    }
    let bound = x.iter().flatten().map(|xv| &one - xv).product();
    Ok(CheckReport {
        order,
        x,
        verdict: Verdict::InL,
        bound: Some(bound),
        witness: None,
    })
}

/// Mismatch found by [`bound_crosscheck`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub what: String,
    pub vertex: Option<String>,
    pub checker: String,
    pub oracle: String,
}

/// Compares an in-family checker run against the oracle: the bound must equal
/// `sigma(∅)`, each `x_v` must equal the canonical assignment, and
/// `p_v = x_v prod_{u in N_v} (1 - x_u)` must hold at every vertex.
pub fn bound_crosscheck(
    g: &LabeledGraph,
    t: &TreeOrder,
    cap: usize,
) -> Result<std::result::Result<(), Vec<Discrepancy>>> {
    let report = check_membership(g, t)?;
    let shearer = oracle::shearer_check(g, cap)?;
    let mut bad = Vec::new();
    if report.verdict != shearer.verdict {
        bad.push(Discrepancy {
            what: "verdict".into(),
            vertex: None,
            checker: report.verdict.as_str().into(),
            oracle: shearer.verdict.as_str().into(),
        });
        return Ok(Err(bad));
    }
    let Some(bound) = &report.bound else {
        return Ok(Ok(()));
    };
    if *bound != shearer.sigma_empty {
        bad.push(Discrepancy {
            what: "bound vs sigma(∅)".into(),
            vertex: None,
            checker: bound.to_string(),
            oracle: shearer.sigma_empty.to_string(),
        });
    }
    let canonical = oracle::canonical_assignment(g, t, cap)?;
    let one = Rational::one();
    for (v, canon) in canonical.iter().enumerate() {
        let xv = report.x[v]
            .as_ref()
            .expect("all vertices processed when in_L");
        if xv != canon {
            bad.push(Discrepancy {
                what: "x vs canonical assignment".into(),
                vertex: Some(g.name(v).into()),
                checker: xv.to_string(),
                oracle: canon.to_string(),
            });
        }
        let rebuilt: Rational = xv
            * t.down_neighbors(g, v)
                .iter()
                .map(|&u| &one - report.x[u].as_ref().unwrap())
                .product::<Rational>();
        if rebuilt != *g.label(v) {
            bad.push(Discrepancy {
                what: "p_v = x_v prod (1 - x_u)".into(),
                vertex: Some(g.name(v).into()),
                checker: rebuilt.to_string(),
                oracle: g.label(v).to_string(),
            });
        }
    }
    Ok(if bad.is_empty() { Ok(()) } else { Err(bad) })
}

/// Verdicts whose deciding margin is below this are recomputed exactly.
pub const FLOAT_BOUNDARY_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FloatCheckReport {
    pub x: Vec<Option<f64>>,
    pub verdict: Verdict,
    pub bound: Option<f64>,
    pub witness: Option<VertexIdx>,
}

/// Either the float pass was conclusive or it was too close to call.
#[derive(Debug, Clone, PartialEq)]
pub enum FastCheck {
    Float(FloatCheckReport),
    Exact(CheckReport),
}

impl FastCheck {
    pub fn verdict(&self) -> Verdict {
        match self {
            FastCheck::Float(r) => r.verdict,
            FastCheck::Exact(r) => r.verdict,
        }
    }
}

/// Same recursion in `f64`. Falls back to [`check_membership`] when some
/// `|1 - x_v|` comes within [`FLOAT_BOUNDARY_MARGIN`] of zero.
pub fn check_membership_fast(g: &LabeledGraph, t: &TreeOrder) -> Result<FastCheck> {
    verify_lefthanded(g, t)?.into_result(g)?;
    let order = t.linear_extension();
    let labels: Vec<f64> = (0..g.n()).map(|v| g.label(v).to_f64()).collect();
    let mut x: Vec<Option<f64>> = vec![None; g.n()];
    for &v in order.as_slice() {
        let slack: f64 = t
            .down_neighbors(g, v)
            .iter()
            .map(|&u| 1.0 - x[u].unwrap())
            .product();
        let xv = labels[v] / slack;
        if !xv.is_finite() || (1.0 - xv).abs() < FLOAT_BOUNDARY_MARGIN {
            return check_membership(g, t).map(FastCheck::Exact);
        }
        x[v] = Some(xv);
        if xv >= 1.0 {
            return Ok(FastCheck::Float(FloatCheckReport {
                x,
                verdict: Verdict::OutOfL,
                bound: None,
                witness: Some(v),
            }));
        }
    }
    let bound = x.iter().flatten().map(|xv| 1.0 - xv).product();
    Ok(FastCheck::Float(FloatCheckReport {
        x,
        verdict: Verdict::InL,
        bound: Some(bound),
        witness: None,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::build_tree_order;
    use crate::fixtures;
    use crate::oracle::DEFAULT_ORACLE_CAP;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn goldner_harary_eighth() {
        let g = fixtures::goldner_harary(q(1, 8));
        let t = fixtures::goldner_harary_reference_order(&g);
        let r = check_membership(&g, &t).unwrap();
        assert_eq!(r.verdict, Verdict::InL);
        let at = |s: &str| r.x_of(g.index_of(s).unwrap()).unwrap().clone();
        for leaf in ["a", "c", "d", "h", "i", "k"] {
            assert_eq!(at(leaf), q(1, 8));
        }
        assert_eq!(at("b"), q(64, 343));
        assert_eq!(at("j"), q(64, 343));
        assert_eq!(at("e"), q(25088, 77841));
        assert_eq!(at("f"), q(25088, 52753));
        assert_eq!(at("g"), q(25088, 27665));
        assert_eq!(r.bound, Some(q(2577, 262144)));
    }

    #[test]
    fn goldner_harary_boundary_pair() {
        let g = fixtures::goldner_harary(q(102, 800));
        let t = fixtures::goldner_harary_reference_order(&g);
        let r = check_membership(&g, &t).unwrap();
        assert_eq!(r.verdict, Verdict::OutOfL);
        assert_eq!(r.witness, g.index_of("g").ok());
        assert!(r.bound.is_none());

        let g = g.with_uniform_label(&q(101, 800)).unwrap();
        assert_eq!(check_membership(&g, &t).unwrap().verdict, Verdict::InL);
    }

    #[test]
    fn complete_graph_boundary() {
        for n in 2..7i64 {
            let g = fixtures::complete(n as usize, q(1, n));
            let t = build_tree_order(&g).unwrap();
            let r = check_membership(&g, &t).unwrap();
            assert_eq!(r.verdict, Verdict::OutOfL);
            let last = *r.order.as_slice().last().unwrap();
            assert_eq!(r.witness, Some(last));
            assert_eq!(r.x_of(last), Some(&Rational::one()));
        }
    }

    #[test]
    fn path_of_three() {
        let g = fixtures::path(3, q(1, 4));
        let t = TreeOrder::from_successors(vec![Some(1), Some(2), None]).unwrap();
        let r = check_membership(&g, &t).unwrap();
        assert_eq!(r.verdict, Verdict::InL);
        let x: Vec<_> = r.x.into_iter().flatten().collect();
        assert_eq!(x, vec![q(1, 4), q(1, 3), q(3, 8)]);
        assert_eq!(r.bound, Some(q(5, 16)));
    }

    #[test]
    fn rejects_bad_orders() {
        let g = fixtures::complete(2, q(1, 4));
        let t = TreeOrder::from_successors(vec![None, None]).unwrap();
        assert!(check_membership(&g, &t).is_err());
    }

    #[test]
    fn crosscheck_examples() {
        let k2 = fixtures::complete(2, q(2, 5));
        let t = build_tree_order(&k2).unwrap();
        assert_eq!(
            bound_crosscheck(&k2, &t, DEFAULT_ORACLE_CAP).unwrap(),
            Ok(())
        );
        assert_eq!(check_membership(&k2, &t).unwrap().bound, Some(q(1, 5)));

        let single = fixtures::complete(1, Rational::zero());
        let t = build_tree_order(&single).unwrap();
        assert_eq!(
            check_membership(&single, &t).unwrap().bound,
            Some(Rational::one())
        );
        assert_eq!(
            bound_crosscheck(&single, &t, DEFAULT_ORACLE_CAP).unwrap(),
            Ok(())
        );

        let gh = fixtures::goldner_harary(q(1, 8));
        let t = fixtures::goldner_harary_reference_order(&gh);
        assert_eq!(
            bound_crosscheck(&gh, &t, DEFAULT_ORACLE_CAP).unwrap(),
            Ok(())
        );
    }

    #[test]
    fn float_path_agrees_and_defers_at_the_boundary() {
        let gh = fixtures::goldner_harary(q(1, 8));
        let t = fixtures::goldner_harary_reference_order(&gh);
        match check_membership_fast(&gh, &t).unwrap() {
            FastCheck::Float(r) => {
                assert_eq!(r.verdict, Verdict::InL);
                let g = gh.index_of("g").unwrap();
                assert!((r.x[g].unwrap() - 25088.0 / 27665.0).abs() < 1e-12);
            }
            FastCheck::Exact(_) => panic!("far from the boundary"),
        }
        let k4 = fixtures::complete(4, q(1, 4));
        let t = build_tree_order(&k4).unwrap();
        let fast = check_membership_fast(&k4, &t).unwrap();
        assert!(matches!(fast, FastCheck::Exact(_)));
        assert_eq!(fast.verdict(), Verdict::OutOfL);
    }
}
