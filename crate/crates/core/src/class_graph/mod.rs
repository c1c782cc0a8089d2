//! Conjugacy class data, the prime graph on class sizes, and the small graph
//! algorithms the classifier needs.

mod classes;
mod graph;

pub use classes::{conjugacy_class_data, ClassData, ConjugacyClass, CROSS_CHECK_LIMIT};
pub use graph::{
    articulation_points_bruteforce, articulation_points_lowlink, graph_analysis, prime_graph,
    two_clique_cover, Diameter, GraphAnalysis, PrimeGraph, CUT_VERTEX_STYLE,
};
