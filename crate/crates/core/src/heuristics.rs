//! Greedy clique cover (GCC, GCC_I) and independent set (MIS, MIS_I)
//! heuristics.
//!
//! Every heuristic first drops dominated rectangles and works on the
//! intersection graph of the rest. Cover heuristics hand each dominated
//! rectangle the stab point of a kept rectangle it contains afterwards.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::clique::{find_simplicial, max_clique_sweep_among};
use crate::error::{Error, Result};
use crate::geometry::{contained_witnesses, filter_dominated, Instance, Point, Rectangle};
use crate::graph::IntersectionGraph;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverResult {
    pub points: Vec<Point>,
    /// For each instance rectangle, the index of a point stabbing it.
    pub assignment: Vec<usize>,
    /// Stabs placed on the closed neighborhood of a simplicial rectangle.
    pub theta_count: usize,
    /// Stabs placed on a maximum clique.
    pub phi_count: usize,
    pub iterations: usize,
    pub elapsed: Duration,
}

impl CoverResult {
    pub fn size(&self) -> usize {
        self.points.len()
    }
}

impl PartialEq for CoverResult {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
            && self.assignment == other.assignment
            && self.theta_count == other.theta_count
            && self.phi_count == other.phi_count
            && self.iterations == other.iterations
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndependentSetResult {
    /// Instance indices, ascending.
    pub members: Vec<usize>,
    pub iterations: usize,
    pub elapsed: Duration,
}

impl IndependentSetResult {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl PartialEq for IndependentSetResult {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.iterations == other.iterations
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    Gcc,
    GccI,
    Mis,
    MisI,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Gcc,
        Algorithm::GccI,
        Algorithm::Mis,
        Algorithm::MisI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gcc => "gcc",
            Algorithm::GccI => "gcc-i",
            Algorithm::Mis => "mis",
            Algorithm::MisI => "mis-i",
        }
    }

    /// Whether the algorithm calls the simplicial search.
    pub fn uses_simplicial(self) -> bool {
        !matches!(self, Algorithm::Gcc)
    }

    pub fn is_cover(self) -> bool {
        matches!(self, Algorithm::Gcc | Algorithm::GccI)
    }

    pub fn run(self, instance: &Instance) -> Solution {
        match self {
            Algorithm::Gcc => Solution::Cover(gcc(instance)),
            Algorithm::GccI => Solution::Cover(gcc_i(instance)),
            Algorithm::Mis => Solution::Independent(mis_greedy(instance)),
            Algorithm::MisI => Solution::Independent(mis_i(instance)),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "gcc" => Ok(Algorithm::Gcc),
            "gcc-i" => Ok(Algorithm::GccI),
            "mis" => Ok(Algorithm::Mis),
            "mis-i" => Ok(Algorithm::MisI),
            _ => Err(Error::UnknownAlgorithm(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Cover(CoverResult),
    Independent(IndependentSetResult),
}

impl Solution {
    pub fn size(&self) -> usize {
        match self {
            Solution::Cover(c) => c.size(),
            Solution::Independent(s) => s.size(),
        }
    }

    pub fn elapsed(&self) -> Duration {
        match self {
            Solution::Cover(c) => c.elapsed,
            Solution::Independent(s) => s.elapsed,
        }
    }
}

/// Stab points in the order they are placed, with the kept rectangles each
/// one was charged for.
struct CoverBuilder<'a> {
    rects: &'a [Rectangle],
    points: Vec<Point>,
    assignment: Vec<Option<usize>>,
}

impl<'a> CoverBuilder<'a> {
    fn new(rects: &'a [Rectangle]) -> Self {
        Self {
            rects,
            points: Vec::new(),
            assignment: vec![None; rects.len()],
        }
    }

    fn stab(&mut self, point: Point, rect_ids: impl IntoIterator<Item = usize>) {
        let k = self.points.len();
        self.points.push(point);
        for i in rect_ids {
            debug_assert!(self.rects[i].contains_point(point));
            self.assignment[i] = Some(k);
        }
    }

    fn finish(
        mut self,
        dominated: &[(usize, usize)],
        theta_count: usize,
        phi_count: usize,
        iterations: usize,
        started: Instant,
    ) -> CoverResult {
        for &(outer, inner) in dominated {
            self.assignment[outer] = self.assignment[inner];
        }
        CoverResult {
            points: self.points,
            assignment: self
                .assignment
                .into_iter()
                .map(|a| a.expect("every rectangle is stabbed"))
                .collect(),
            theta_count,
            phi_count,
            iterations,
            elapsed: started.elapsed(),
        }
    }
}

/// Greedy clique cover: repeatedly stab and delete a maximum clique.
pub fn gcc(instance: &Instance) -> CoverResult {
    let started = Instant::now();
    let rects = &instance.rects;
    let split = filter_dominated(rects);
    let mut cover = CoverBuilder::new(rects);
    let mut residual = split.kept.clone();
    let mut iterations = 0;
    while !residual.is_empty() {
        iterations += 1;
        let clique = max_clique_sweep_among(rects, &residual).expect("residual is nonempty");
        cover.stab(clique.stab, clique.members.iter().copied());
        // members are a subsequence of residual
        let mut it = clique.members.iter().peekable();
        residual.retain(|i| {
            if it.peek() == Some(&i) {
                it.next();
                false
            } else {
                true
            }
        });
    }
    let dominated = contained_witnesses(rects, &split);
    cover.finish(&dominated, 0, iterations, iterations, started)
}

struct Residual {
    graph: IntersectionGraph,
    dominated: Vec<(usize, usize)>,
}

fn prepare(instance: &Instance, with_witnesses: bool) -> Residual {
    let split = filter_dominated(&instance.rects);
    let graph = IntersectionGraph::build_subset(&instance.rects, &split.kept);
    let dominated = if with_witnesses {
        contained_witnesses(&instance.rects, &split)
    } else {
        Vec::new()
    };
    Residual { graph, dominated }
}

/// Live vertices of `g` and a maximum clique among them, as vertex ids.
fn residual_max_clique(g: &IntersectionGraph, rects: &[Rectangle]) -> (Vec<usize>, Point) {
    let live: Vec<usize> = g.vertices().collect();
    let inst_ids: Vec<usize> = live.iter().map(|&v| g.rect_index(v)).collect();
    let clique = max_clique_sweep_among(rects, &inst_ids).expect("residual is nonempty");
    let members = live
        .into_iter()
        .filter(|&v| rects[g.rect_index(v)].contains_point(clique.stab))
        .collect();
    (members, clique.stab)
}

/// Improved greedy clique cover: stab the closed neighborhood of a
/// simplicial rectangle whenever one exists, else a maximum clique.
pub fn gcc_i(instance: &Instance) -> CoverResult {
    let started = Instant::now();
    let rects = &instance.rects;
    let Residual {
        mut graph,
        dominated,
    } = prepare(instance, true);
    let mut cover = CoverBuilder::new(rects);
    let (mut theta, mut phi, mut iterations) = (0, 0, 0);
    while !graph.is_empty() {
        iterations += 1;
        let (removed, stab) = match find_simplicial(&graph, rects) {
            Some(w) => {
                theta += 1;
                (w.neighborhood, w.stab)
            }
            None => {
                phi += 1;
                residual_max_clique(&graph, rects)
            }
        };
        cover.stab(stab, removed.iter().map(|&v| graph.rect_index(v)));
        graph.remove_in_place(&removed);
    }
    cover.finish(&dominated, theta, phi, iterations, started)
}

/// Greedy independent set: take a simplicial rectangle and drop its
/// neighborhood, or failing that drop the vertex of maximum residual degree.
pub fn mis_greedy(instance: &Instance) -> IndependentSetResult {
    independent_set(instance, |g| {
        vec![g.max_degree_vertex().expect("residual is nonempty")]
    })
}

/// Variant of [`mis_greedy`] that drops a whole maximum clique when no
/// simplicial rectangle exists.
pub fn mis_i(instance: &Instance) -> IndependentSetResult {
    independent_set(instance, |g| residual_max_clique(g, &instance.rects).0)
}

fn independent_set(
    instance: &Instance,
    mut fallback: impl FnMut(&IntersectionGraph) -> Vec<usize>,
) -> IndependentSetResult {
    let started = Instant::now();
    let rects = &instance.rects;
    let Residual { mut graph, .. } = prepare(instance, false);
    let mut members = Vec::new();
    let mut iterations = 0;
    while !graph.is_empty() {
        iterations += 1;
        match find_simplicial(&graph, rects) {
            Some(w) => {
                members.push(graph.rect_index(w.vertex));
                graph.remove_in_place(&w.neighborhood);
            }
            None => {
                let drop = fallback(&graph);
                graph.remove_in_place(&drop);
            }
        }
    }
    members.sort_unstable();
    IndependentSetResult {
        members,
        iterations,
        elapsed: started.elapsed(),
    }
}
