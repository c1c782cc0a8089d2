//! Conjugacy class prime graphs of finite groups: enumeration, structure
//! tests, cut-vertex classification and realization of graph shapes.

pub mod arith;
pub mod census;
pub mod class_graph;
pub mod classifier;
pub mod error;
pub mod group;
pub mod realizer;
pub mod structure;

pub use error::{Error, Result};
pub use group::{enumerate_group, Group, GroupSpec, Subgroup};
