//! Graph families: self-similar k-ary trees, the spine-with-pendants
//! counterexample, small fixtures, and the JSON wire format.

mod counterexample;
pub mod fixtures;
mod json;
mod tree;

pub use counterexample::{build_counterexample, build_counterexample_capped, CounterexampleSpec};
pub use json::{load_graph, save_graph, GraphDocument};
pub use tree::{
    build_kary_tree, build_kary_tree_capped, words, Address, AddressTable, TreeFamilySpec, DEFAULT_VERTEX_CAP,
};
