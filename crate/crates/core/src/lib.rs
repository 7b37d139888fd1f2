//! Greedy minimum clique cover (minimum piercing) and maximum independent set
//! heuristics for intersection graphs of random axis-parallel rectangles,
//! together with exact oracles for small instances and a benchmark harness.
//!
//! Rectangles intersect when their open interiors do. Since boxes have the
//! Helly property, a clique of the intersection graph is exactly a set of
//! rectangles sharing an interior point, so a clique cover is the same thing
//! as a set of stabbing points.

pub mod bench;
pub mod bitset;
pub mod clique;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod heuristics;
pub mod io;
pub mod oracles;
pub mod segtree;

pub use clique::{
    find_simplicial, find_simplicial_with_stats, is_clique, max_clique_sweep, CliqueWitness,
    SimplicialWitness,
};
pub use error::{Error, Result};
pub use geometry::{
    common_intersection, contains, filter_dominated, generate_instance, interiors_intersect,
    make_rectangle, Instance, Point, Rectangle, Region,
};
pub use graph::IntersectionGraph;
pub use heuristics::{
    gcc, gcc_i, mis_greedy, mis_i, Algorithm, CoverResult, IndependentSetResult, Solution,
};
