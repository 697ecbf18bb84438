//! Exact membership tests for Shearer's family on labeled chordal graphs.
//!
//! The pipeline is: recognize chordality, build a lefthanded tree-order from
//! a clique tree, then run the recursion `x_v = p_v / prod (1 - x_u)` over the
//! lower neighbors of each vertex. [`oracle`] recomputes everything by brute
//! force for cross-checking, and [`threshold`] finds the largest uniform label
//! that stays in the family.

pub mod checker;
pub mod chordal;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod numerics;
pub mod oracle;
pub mod threshold;

pub use checker::{
    bound_crosscheck, check_membership, check_membership_fast, CheckReport, Discrepancy, FastCheck,
    FloatCheckReport,
};
pub use chordal::{
    build_tree_order, build_tree_order_with, check_chordal, chordality, mcs_order,
    verify_lefthanded, Chordality, ChordlessWitness, EliminationOrdering, RootChoice, TieBreak,
    TreeOrder, TreeOrderConfig,
};
pub use error::{Error, Result};
pub use generate::{random_chordal, LabelMode};
pub use graph::{parse_graph, serialize_graph, Format, LabeledGraph, VertexIdx};
pub use numerics::{IntPolynomial, Rational, RationalFunction};
pub use oracle::{shearer_check, ShearerReport, Verdict, DEFAULT_ORACLE_CAP};
pub use threshold::{
    critical_polynomial, symbolic_assignment, threshold, threshold_bisect, CriticalPolynomial,
    ThresholdReport,
};
