//! Chordality recognition, clique trees, and lefthanded tree-orders.

mod clique_tree;
mod mcs;
mod tree_order;

pub use clique_tree::{build_clique_tree, CliqueTree, NodeIdx};
pub use mcs::{
    check_chordal, chordality, mcs_order, Chordality, ChordlessWitness, EliminationOrdering,
};
pub use tree_order::{
    build_tree_order, build_tree_order_with, verify_lefthanded, LefthandViolation, Lefthandedness,
    RootChoice, TieBreak, TreeOrder, TreeOrderConfig,
};
