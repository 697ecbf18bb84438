//! Uniform-label thresholds.
//!
//! With every label set to the same `p`, membership is monotone in `p`, so
//! the threshold can be bracketed by bisection. Independently, running the
//! recursion over rational functions of `p` gives one polynomial constraint
//! per vertex, and the threshold is the smallest root among them.

use crate::checker::check_membership;
use crate::chordal::TreeOrder;
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexIdx};
use crate::numerics::{refine_bracket, smallest_root, IntPolynomial, Rational, RationalFunction};
use crate::oracle::Verdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    /// Largest probed `p` still in the family.
    pub lo: Rational,
    /// Smallest probed `p` out of the family.
    pub hi: Rational,
    /// Checker witness at `hi`.
    pub critical_vertex: VertexIdx,
    pub critical_poly: Option<IntPolynomial>,
    /// Every probe in the order it was made.
    pub trace: Vec<(Rational, Verdict)>,
}

/// Default tolerance, one part in a million.
pub fn default_tolerance() -> Rational {
    Rational::frac(1, 1_000_000)
}

fn verdict_at(
    g: &LabeledGraph,
    t: &TreeOrder,
    p: &Rational,
) -> Result<(Verdict, Option<VertexIdx>)> {
    let r = check_membership(&g.with_uniform_label(p)?, t)?;
    Ok((r.verdict, r.witness))
}

/// Bisects `p` over `[0, 1]` with dyadic midpoints. Stops once `[lo, hi]`
/// is no wider than `tol` and sits inside one cell `[k*tol, (k+1)*tol]`.
/// Stored labels are ignored.
pub fn threshold_bisect(
    g: &LabeledGraph,
    t: &TreeOrder,
    tol: &Rational,
) -> Result<ThresholdReport> {
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut trace = Vec::new();
    let (lo, hi) = (Rational::zero(), Rational::one());
    for p in [&lo, &hi] {
        trace.push((p.clone(), verdict_at(g, t, p)?.0));
    }
    // x_v >= p_v, so p = 1 always fails; p = 0 always passes
    debug_assert_eq!(trace[0].1, Verdict::InL);
    debug_assert_eq!(trace[1].1, Verdict::OutOfL);

    let mut failure = None;
    let (lo, hi) = refine_bracket(
        |p| match verdict_at(g, t, p) {
            Ok((v, _)) => {
                trace.push((p.clone(), v));
                if v.is_in() {
                    1
                } else {
                    -1
                }
            }
            Err(e) => {
                failure.get_or_insert(e);
                1
            }
        },
        lo,
        hi,
        tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let critical_vertex = verdict_at(g, t, &hi)?.1.expect("out of the family at hi");
    Ok(ThresholdReport {
        lo,
        hi,
        critical_vertex,
        critical_poly: None,
        trace,
    })
}

/// `x_v(p)` for uniform labels `p`, indexed by vertex.
pub fn symbolic_assignment(g: &LabeledGraph, t: &TreeOrder) -> Result<Vec<RationalFunction>> {
    crate::chordal::verify_lefthanded(g, t)?.into_result(g)?;
    let mut x: Vec<Option<RationalFunction>> = vec![None; g.n()];
    // den_u - num_u, i.e. the numerator of 1 - x_u
    let mut slack: Vec<Option<IntPolynomial>> = vec![None; g.n()];
    for &v in t.linear_extension().as_slice() {
        let mut num = IntPolynomial::var();
        let mut den = IntPolynomial::one();
        for u in t.down_neighbors(g, v) {
            let xu = x[u].as_ref().expect("lower vertices come first");
            num = &num * xu.den();
            den = &den * slack[u].as_ref().unwrap();
        }
        let xv = RationalFunction::new(num, den)
            .ok_or_else(|| Error::DegenerateRecursion(g.name(v).to_string()))?;
        slack[v] = Some(xv.den() - xv.num());
        x[v] = Some(xv);
    }
    Ok(x.into_iter()
        .map(|f| f.expect("every vertex visited"))
        .collect())
}

/// `primitive(den_v - num_v)`: positive at `p = 0`, and vanishing exactly
/// where `x_v` reaches 1.
pub fn constraint_polynomial(x: &RationalFunction) -> Result<IntPolynomial> {
    (x.den() - x.num()).primitive()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPolynomial {
    pub vertex: VertexIdx,
    pub poly: IntPolynomial,
    pub lo: Rational,
    pub hi: Rational,
}

/// Smallest sign-change root in `(0, 1]` of a constraint polynomial.
/// A root at exactly 1 is reported as `[1, 1]`.
fn first_root(c: &IntPolynomial, tol: &Rational) -> Result<Option<(Rational, Rational)>> {
    let (at_one, rest) = c.strip_root_at_one();
    if !rest.is_constant() {
        if let Some(b) = smallest_root(&rest, &Rational::zero(), &Rational::one(), tol)? {
            return Ok(Some(b));
        }
    }
    // odd multiplicity at 1 means a sign change there
    Ok((at_one % 2 == 1).then(|| (Rational::one(), Rational::one())))
}

/// Builds every vertex's constraint polynomial and returns the one whose
/// smallest root in `(0, 1]` is least. Ties go to the vertex processed
/// first.
pub fn critical_polynomial(
    g: &LabeledGraph,
    t: &TreeOrder,
    tol: &Rational,
) -> Result<CriticalPolynomial> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let x = symbolic_assignment(g, t)?;
    let mut best: Option<CriticalPolynomial> = None;
    for &v in t.linear_extension().as_slice() {
        let c = constraint_polynomial(&x[v])?;
        let Some((lo, hi)) = first_root(&c, tol)? else {
            continue;
        };
        if best.as_ref().is_none_or(|b| lo < b.lo) {
            best = Some(CriticalPolynomial {
                vertex: v,
                poly: c,
                lo,
                hi,
            });
        }
    }
    best.ok_or(Error::NoCriticalRoot)
}

/// Bisection bracket plus the binding vertex's constraint polynomial.
pub fn threshold(g: &LabeledGraph, t: &TreeOrder, tol: &Rational) -> Result<ThresholdReport> {
    let mut report = threshold_bisect(g, t, tol)?;
    let x = symbolic_assignment(g, t)?;
    report.critical_poly = Some(constraint_polynomial(&x[report.critical_vertex])?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::build_tree_order;
    use crate::fixtures;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn single_vertex() {
        let g = fixtures::complete(1, q(1, 2));
        let t = build_tree_order(&g).unwrap();
        let tol = default_tolerance();
        let r = threshold_bisect(&g, &t, &tol).unwrap();
        assert_eq!(r.hi, Rational::one());
        assert!(&r.hi - &r.lo <= tol);
        let x = symbolic_assignment(&g, &t).unwrap();
        assert_eq!(x[0], RationalFunction::from_poly(p(&[0, 1])));
        let c = critical_polynomial(&g, &t, &tol).unwrap();
        assert_eq!(c.poly, p(&[1, -1]));
        assert_eq!((c.lo, c.hi), (Rational::one(), Rational::one()));
    }

    #[test]
    fn complete_two() {
        let g = fixtures::complete(2, q(1, 2));
        let t = TreeOrder::from_successors(vec![Some(1), None]).unwrap();
        let x = symbolic_assignment(&g, &t).unwrap();
        assert_eq!(x[0], RationalFunction::from_poly(p(&[0, 1])));
        assert_eq!(
            x[1],
            RationalFunction::new(p(&[0, 1]), p(&[1, -1])).unwrap()
        );
        let c = critical_polynomial(&g, &t, &default_tolerance()).unwrap();
        assert_eq!(c.vertex, 1);
        assert_eq!(c.poly, p(&[1, -2]));
        assert!(c.lo < q(1, 2) && q(1, 2) <= c.hi);
    }

    #[test]
    fn complete_three_forms() {
        let g = fixtures::complete(3, q(1, 4));
        let t = TreeOrder::from_successors(vec![Some(1), Some(2), None]).unwrap();
        let x = symbolic_assignment(&g, &t).unwrap();
        assert_eq!(
            x[2],
            RationalFunction::new(p(&[0, 1]), p(&[1, -2])).unwrap()
        );
        let at: Vec<_> = x.iter().map(|f| f.eval(&q(1, 4)).unwrap()).collect();
        assert_eq!(at, vec![q(1, 4), q(1, 3), q(1, 2)]);
    }

    #[test]
    fn complete_four_bracket_contains_quarter() {
        let g = fixtures::complete(4, q(1, 8));
        let t = build_tree_order(&g).unwrap();
        let tol = default_tolerance();
        let r = threshold_bisect(&g, &t, &tol).unwrap();
        assert!(r.lo <= q(1, 4) && q(1, 4) <= r.hi);
        assert!(&r.hi - &r.lo <= tol);
    }

    #[test]
    fn goldner_harary_threshold() {
        let g = fixtures::goldner_harary(q(1, 8));
        let t = fixtures::goldner_harary_reference_order(&g);
        let tol = default_tolerance();
        let (lo_ok, hi_ok) = (q(12689, 100000), q(126891, 1000000));
        let r = threshold(&g, &t, &tol).unwrap();
        assert!(lo_ok < r.lo && r.hi < hi_ok, "[{}, {}]", r.lo, r.hi);
        assert_eq!(g.name(r.critical_vertex), "g");
        let sextic = p(&[1, -11, 28, -29, 17, -6, 1]);
        assert_eq!(r.critical_poly.as_ref(), Some(&sextic));

        let c = critical_polynomial(&g, &t, &tol).unwrap();
        assert_eq!(g.name(c.vertex), "g");
        assert_eq!(c.poly, sextic);
        assert!(lo_ok < c.lo && c.hi < hi_ok);
        assert!(c.lo <= r.hi && r.lo <= c.hi);
        for (p, v) in &r.trace {
            assert_eq!(v.is_in(), *p <= r.lo);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = fixtures::complete(1, q(1, 2));
        let t = build_tree_order(&g).unwrap();
        assert_eq!(
            threshold_bisect(&g, &t, &Rational::zero()),
            Err(Error::NonPositiveTolerance)
        );
        let empty = LabeledGraph::from_indices(vec![], &[]).unwrap();
        let t = TreeOrder::from_successors(vec![]).unwrap();
        assert_eq!(
            threshold_bisect(&empty, &t, &q(1, 10)),
            Err(Error::EmptyGraph)
        );
    }
}
