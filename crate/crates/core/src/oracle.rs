//! Brute-force evaluation of Shearer's sums and the signed independence
//! polynomial. Exponential in the number of vertices; ground truth for small
//! graphs only.
//!
//! For a labeled graph and a vertex set `S`:
//!
//! * `sigma(S)` is the sum over independent `I ⊇ S` of
//!   `(-1)^(|I|-|S|) * prod_{v in I} p_v`;
//! * `B(S)` is the sum over independent `I ⊆ S` of
//!   `(-1)^|I| * prod_{v in I} p_v`.
//!
//! The graph belongs to Shearer's family iff every `sigma(S) >= 0` and
//! `sigma(∅) > 0`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::chordal::{verify_lefthanded, TreeOrder};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexIdx};
use crate::numerics::Rational;

pub const DEFAULT_ORACLE_CAP: usize = 20;

/// Vertex sets are bitmasks, so no cap may exceed this.
pub const MAX_ORACLE_CAP: usize = 63;

type Mask = u64;

fn mask_of(s: &[VertexIdx]) -> Mask {
    s.iter().fold(0, |m, &v| m | (1 << v))
}

fn members(mut m: Mask) -> Vec<VertexIdx> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn check_cap(g: &LabeledGraph, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_ORACLE_CAP);
    if g.n() > cap {
        return Err(Error::OracleCapExceeded { n: g.n(), cap });
    }
    Ok(())
}

fn check_members(g: &LabeledGraph, s: &[VertexIdx]) -> Result<()> {
    match s.iter().find(|&&v| v >= g.n()) {
        Some(v) => Err(Error::UnknownVertex(format!("#{v}"))),
        None => Ok(()),
    }
}

/// Closed-neighborhood masks.
fn closed_nbhd(g: &LabeledGraph) -> Vec<Mask> {
    (0..g.n())
        .map(|v| mask_of(g.neighbors(v)) | (1 << v))
        .collect()
}

/// Calls `f` on every independent subset of `allowed`, each once.
fn for_each_independent(nbhd: &[Mask], allowed: Mask, f: &mut impl FnMut(Mask)) {
    fn go(nbhd: &[Mask], chosen: Mask, rest: Mask, f: &mut impl FnMut(Mask)) {
        if rest == 0 {
            f(chosen);
            return;
        }
        let v = rest.trailing_zeros() as usize;
        let without = rest & !(1 << v);
        go(nbhd, chosen, without, f);
        go(nbhd, chosen | (1 << v), rest & !nbhd[v], f);
    }
    go(nbhd, 0, allowed, f);
}

fn sort_sets(sets: &mut [Mask]) {
    sets.sort_by_cached_key(|&m| (m.count_ones(), members(m)));
}

/// Every independent set, ordered by size and then lexicographically by
/// vertex index.
pub fn independent_sets(g: &LabeledGraph, cap: usize) -> Result<Vec<Vec<VertexIdx>>> {
    check_cap(g, cap)?;
    Ok(independent_masks(g).into_iter().map(members).collect())
}

fn independent_masks(g: &LabeledGraph) -> Vec<Mask> {
    let nbhd = closed_nbhd(g);
    let all = if g.n() == 0 {
        0
    } else {
        Mask::MAX >> (64 - g.n())
    };
    let mut sets = Vec::new();
    for_each_independent(&nbhd, all, &mut |m| sets.push(m));
    sort_sets(&mut sets);
    sets
}

fn product(g: &LabeledGraph, s: Mask) -> Rational {
    members(s).into_iter().map(|v| g.label(v)).product()
}

/// `sigma(S)`, summing over the independent supersets of `s` one by one.
/// Zero when `s` itself is not independent.
pub fn sigma(g: &LabeledGraph, s: &[VertexIdx], cap: usize) -> Result<Rational> {
    check_cap(g, cap)?;
    check_members(g, s)?;
    if !g.is_independent_idx(s) {
        return Ok(Rational::zero());
    }
    let nbhd = closed_nbhd(g);
    let base = mask_of(s);
    let blocked = members(base).iter().fold(0, |m, &v| m | nbhd[v]);
    let all = if g.n() == 0 {
        0
    } else {
        Mask::MAX >> (64 - g.n())
    };
    let mut total = Rational::zero();
    for_each_independent(&nbhd, all & !blocked, &mut |extra| {
        let term = product(g, base | extra);
        if extra.count_ones() % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    });
    Ok(total)
}

/// `B(S)`: the signed independence polynomial of the subgraph induced on `s`,
/// evaluated at the labels. Uses `B(S) = B(S - v) - p_v B(S - N[v])`.
pub fn bfunc(g: &LabeledGraph, s: &[VertexIdx], cap: usize) -> Result<Rational> {
    check_cap(g, cap)?;
    check_members(g, s)?;
    let nbhd = closed_nbhd(g);
    let mut memo = HashMap::new();
    Ok(bfunc_mask(g, &nbhd, mask_of(s), &mut memo))
}

fn bfunc_mask(
    g: &LabeledGraph,
    nbhd: &[Mask],
    s: Mask,
    memo: &mut HashMap<Mask, Rational>,
) -> Rational {
    if s == 0 {
        return Rational::one();
    }
    if let Some(b) = memo.get(&s) {
        return b.clone();
    }
    let v = s.trailing_zeros() as usize;
    let without = bfunc_mask(g, nbhd, s & !(1 << v), memo);
    let blocked = bfunc_mask(g, nbhd, s & !nbhd[v], memo);
    let b = without - g.label(v) * blocked;
    memo.insert(s, b.clone());
    b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "in_L")]
    InL,
    #[serde(rename = "out_of_L")]
    OutOfL,
}

impl Verdict {
    pub fn is_in(self) -> bool {
        self == Verdict::InL
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::InL => "in_L",
            Verdict::OutOfL => "out_of_L",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShearerReport {
    /// `sigma(S)` for every independent `S`, in [`independent_sets`] order.
    /// Dependent sets are absent; their sum is empty, so zero.
    pub sigma: Vec<(Vec<VertexIdx>, Rational)>,
    pub sigma_empty: Rational,
    pub min_sigma: Rational,
    pub verdict: Verdict,
    /// First independent set, in the order above, with a negative sum.
    pub witness: Option<Vec<VertexIdx>>,
}

impl ShearerReport {
    pub fn sigma_of(&self, s: &[VertexIdx]) -> Rational {
        let mut key = s.to_vec();
        key.sort_unstable();
        self.sigma
            .iter()
            .find(|(set, _)| *set == key)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// Evaluates `sigma` on every independent set and decides membership.
///
/// All sums are formed over the common denominator `prod_v den(p_v)` so the
/// superset transform runs on integers. Before returning, checks that the
/// sums add up to 1 and that `sigma(∅) = B(V)`.
pub fn shearer_check(g: &LabeledGraph, cap: usize) -> Result<ShearerReport> {
    check_cap(g, cap)?;
    let n = g.n();
    let sets = independent_masks(g);
    let index: HashMap<Mask, usize> = sets.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    // weight(I) * scale = (-1)^|I| prod_{v in I} num_v prod_{v not in I} den_v
    let scale: BigInt = (0..n).map(|v| g.label(v).denom().clone()).product();
    let mut acc: Vec<BigInt> = sets
        .iter()
        .map(|&m| {
            let mut w = BigInt::one();
            for v in 0..n {
                let p = g.label(v);
                w *= if m & (1 << v) != 0 {
                    p.numer()
                } else {
                    p.denom()
                };
            }
            if m.count_ones() % 2 == 1 {
                -w
            } else {
                w
            }
        })
        .collect();
    // superset sums within the down-closed family of independent sets
    for v in 0..n {
        let bit = 1 << v;
        for (i, &m) in sets.iter().enumerate() {
            if m & bit == 0 {
                if let Some(&j) = index.get(&(m | bit)) {
                    let add = acc[j].clone();
                    acc[i] += add;
                }
            }
        }
    }

    let scale = Rational::from_integer(scale);
    let sigma: Vec<(Vec<VertexIdx>, Rational)> = sets
        .iter()
        .zip(acc)
        .map(|(&m, f)| {
            let f = if m.count_ones() % 2 == 1 { -f } else { f };
            (members(m), Rational::from_integer(f) / &scale)
        })
        .collect();

    let total: Rational = sigma.iter().map(|(_, s)| s).sum();
    if !total.is_one() {
        return Err(Error::IdentityViolated(format!(
            "sum of sigma over independent sets is {total}, expected 1"
        )));
    }
    let sigma_empty = sigma[0].1.clone();
    let all: Vec<VertexIdx> = (0..n).collect();
    let b_all = bfunc(g, &all, cap)?;
    if b_all != sigma_empty {
        return Err(Error::IdentityViolated(format!(
            "sigma(∅) = {sigma_empty} but B(V) = {b_all}"
        )));
    }

    let min_sigma = sigma
        .iter()
        .map(|(_, s)| s)
        .min()
        .cloned()
        .expect("the empty set is independent");
    let witness = sigma
        .iter()
        .find(|(_, s)| s.is_negative())
        .map(|(set, _)| set.clone());
    let verdict = if !min_sigma.is_negative() && sigma_empty.is_positive() {
        Verdict::InL
    } else {
        Verdict::OutOfL
    };
    Ok(ShearerReport {
        sigma,
        sigma_empty,
        min_sigma,
        verdict,
        witness,
    })
}

/// The assignment `x_v = p_v B(F_v) / B(D_v)` built from oracle values of `B`.
pub fn canonical_assignment(g: &LabeledGraph, t: &TreeOrder, cap: usize) -> Result<Vec<Rational>> {
    check_cap(g, cap)?;
    verify_lefthanded(g, t)?.into_result(g)?;
    let nbhd = closed_nbhd(g);
    let mut memo = HashMap::new();
    (0..g.n())
        .map(|v| {
            let down = mask_of(&t.strict_down_set(v));
            let far = down & !nbhd[v];
            let b_down = bfunc_mask(g, &nbhd, down, &mut memo);
            if b_down.is_zero() {
                return Err(Error::DegenerateAssignment(g.name(v).to_string()));
            }
            let b_far = bfunc_mask(g, &nbhd, far, &mut memo);
            Ok(g.label(v) * b_far / b_down)
        })
        .collect()
}
