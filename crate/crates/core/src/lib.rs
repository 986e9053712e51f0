//! Degree-weighted adjacency matrices `A_f(G)`, their spectral radii, the
//! edge-moving transformations that increase them, and exhaustive
//! verification of extremal trees.

pub mod enumeration;
pub mod graph;
pub mod harness;
pub mod spectral;
pub mod transforms;
pub mod weight;
