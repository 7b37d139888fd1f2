//! The two subroutines every heuristic is built from: the maximum-depth
//! sweep (a maximum clique of a box intersection graph together with a point
//! stabbing all of its members) and the search for a simplicial vertex.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::geometry::{common_intersection, Point, Rectangle};
use crate::graph::IntersectionGraph;
use crate::segtree::MaxAddTree;

/// A clique and a point lying in the open interior of every member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliqueWitness {
    pub members: Vec<usize>,
    pub stab: Point,
}

impl CliqueWitness {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A simplicial vertex, its closed neighborhood and a common stab point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplicialWitness {
    pub vertex: usize,
    pub neighborhood: Vec<usize>,
    pub stab: Point,
}

/// Maximum clique of the intersection graph of `rects`. Members are indices
/// into `rects`.
pub fn max_clique_sweep(rects: &[Rectangle]) -> Result<CliqueWitness> {
    let (_, stab) = deepest_point(rects.iter()).ok_or(Error::Empty)?;
    let members = (0..rects.len())
        .filter(|&i| rects[i].contains_point(stab))
        .collect();
    Ok(CliqueWitness { members, stab })
}

/// Same as [`max_clique_sweep`] restricted to `rects[ids]`; members are
/// reported as elements of `ids`.
pub fn max_clique_sweep_among(rects: &[Rectangle], ids: &[usize]) -> Result<CliqueWitness> {
    let (_, stab) = deepest_point(ids.iter().map(|&i| &rects[i])).ok_or(Error::Empty)?;
    let members = ids
        .iter()
        .copied()
        .filter(|&i| rects[i].contains_point(stab))
        .collect();
    Ok(CliqueWitness { members, stab })
}

/// Maximum overlap depth and a point realizing it.
///
/// The x axis is cut into elementary intervals between consecutive distinct
/// x coordinates. A horizontal line sweeps downward; each rectangle adds one
/// over its open x-span from its top edge until its bottom edge. After all
/// events sharing a y value are applied, the tree describes the open gap down
/// to the next event y. The first strict maximum in sweep order wins, and
/// the stab point is the midpoint of the winning (x-interval, y-gap) cell.
fn deepest_point<'a, I>(rects: I) -> Option<(usize, Point)>
where
    I: Iterator<Item = &'a Rectangle> + Clone,
{
    let mut xs: Vec<f64> = rects.clone().flat_map(|r| [r.lo.x, r.hi.x]).collect();
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let slot = |x: f64| xs.partition_point(|&v| v < x);

    // (y, delta, lo slot, hi slot)
    let mut events: Vec<(f64, i32, usize, usize)> = Vec::new();
    for r in rects {
        let (lo, hi) = (slot(r.lo.x), slot(r.hi.x));
        events.push((r.hi.y, 1, lo, hi));
        events.push((r.lo.y, -1, lo, hi));
    }
    events.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut tree = MaxAddTree::new(xs.len() - 1);
    let mut best: Option<(i32, usize, f64, f64)> = None;
    let mut i = 0;
    while i < events.len() {
        let y = events[i].0;
        while i < events.len() && events[i].0 == y {
            let (_, delta, lo, hi) = events[i];
            tree.add(lo, hi, delta);
            i += 1;
        }
        let Some(&(y_below, ..)) = events.get(i) else {
            break;
        };
        let (depth, at) = tree.max_leftmost().expect("at least one interval");
        if best.is_none_or(|b| depth > b.0) {
            best = Some((depth, at, y_below, y));
        }
    }
    let (depth, at, y_lo, y_hi) = best?;
    let stab = Point::new(midpoint(xs[at], xs[at + 1]), midpoint(y_lo, y_hi));
    Some((depth as usize, stab))
}

fn midpoint(a: f64, b: f64) -> f64 {
    a + (b - a) / 2.0
}

/// Every pair of `s` adjacent.
pub fn is_clique(g: &IntersectionGraph, s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &a)| s[i + 1..].iter().all(|&b| g.adjacent(a, b)))
}

/// Bookkeeping from one [`find_simplicial_with_stats`] call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Adjacency matrix entries read.
    pub matrix_reads: u64,
    /// Vertices whose neighborhood was tested.
    pub examined: usize,
    /// Vertices marked as non-simplicial when the call returned.
    pub marked: usize,
}

#[derive(Debug, Clone)]
pub struct SimplicialSearch {
    pub witness: Option<SimplicialWitness>,
    /// Vertices ruled out, in id space. Never contains a simplicial vertex.
    pub marked: BitSet,
    pub stats: SearchStats,
}

/// A simplicial vertex of the residual graph `g`, if one exists.
///
/// `rects` is indexed through [`IntersectionGraph::rect_index`].
pub fn find_simplicial(g: &IntersectionGraph, rects: &[Rectangle]) -> Option<SimplicialWitness> {
    find_simplicial_with_stats(g, rects).witness
}

/// Scans live vertices by ascending residual degree (ties by id), skipping
/// marked ones. When the closed neighborhood N(v) of the scanned vertex is
/// not a clique:
///
/// * every member of N(v) is marked. A neighbor u with N(u) = N(v) inherits
///   the missing edge; otherwise N(u) has a vertex outside N(v), because
///   v has minimum degree among the unmarked vertices, and that vertex is
///   not adjacent to v.
/// * for each non-adjacent pair a, b in N(v), every common neighbor of a and
///   b is marked.
///
/// Marked vertices are never simplicial, so the scan returns `None` only if
/// the graph has no simplicial vertex. A non-adjacent pair is expanded at
/// most once per call: a later scanned vertex adjacent to both would already
/// be marked.
pub fn find_simplicial_with_stats(g: &IntersectionGraph, rects: &[Rectangle]) -> SimplicialSearch {
    let mut stats = SearchStats::default();
    let mut marked = BitSet::new(g.capacity());
    let mut witness = None;

    for v in degree_order(g) {
        if marked.contains(v) {
            continue;
        }
        stats.examined += 1;
        let nbhd = g.closed_neighborhood(v);
        let mut missing = Vec::new();
        for (i, &a) in nbhd.iter().enumerate() {
            for &b in &nbhd[i + 1..] {
                stats.matrix_reads += 1;
                if !g.adjacent(a, b) {
                    missing.push((a, b));
                }
            }
        }
        if missing.is_empty() {
            let stab = common_intersection(nbhd.iter().map(|&u| &rects[g.rect_index(u)]))
                .expect("pairwise intersecting boxes share an open region")
                .center();
            witness = Some(SimplicialWitness {
                vertex: v,
                neighborhood: nbhd,
                stab,
            });
            break;
        }
        for &u in &nbhd {
            marked.insert(u);
        }
        for (a, b) in missing {
            let (small, other) = if g.degree(a) <= g.degree(b) {
                (a, b)
            } else {
                (b, a)
            };
            for u in g.neighbors(small) {
                stats.matrix_reads += 2;
                if g.adjacent(other, u) {
                    marked.insert(u);
                }
            }
        }
    }
    stats.marked = marked.count();
    SimplicialSearch {
        witness,
        marked,
        stats,
    }
}

/// Live vertices sorted by (residual degree, id) with a counting sort.
fn degree_order(g: &IntersectionGraph) -> Vec<usize> {
    let max_deg = g.vertices().map(|v| g.degree(v)).max().unwrap_or(0);
    let mut buckets = vec![Vec::new(); max_deg + 1];
    for v in g.vertices() {
        buckets[g.degree(v)].push(v);
    }
    buckets.into_iter().flatten().collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn r(xl: f64, yl: f64, xr: f64, yr: f64) -> Rectangle {
        Rectangle::from_bounds(xl, yl, xr, yr).unwrap()
    }

    fn chain() -> Vec<Rectangle> {
        vec![
            r(0.0, 0.0, 3.0, 1.0),
            r(2.0, 0.0, 5.0, 1.0),
            r(4.0, 0.0, 7.0, 1.0),
        ]
    }

    fn triangle() -> Vec<Rectangle> {
        vec![
            r(0.0, 0.0, 2.0, 2.0),
            r(1.0, 0.0, 3.0, 2.0),
            r(0.0, 1.0, 3.0, 3.0),
        ]
    }

    pub(crate) fn picture_frame() -> Vec<Rectangle> {
        vec![
            r(0.0, 2.0, 3.0, 3.0),
            r(0.0, 0.0, 3.0, 1.0),
            r(-0.5, -0.5, 0.5, 3.5),
            r(2.5, -0.5, 3.5, 3.5),
        ]
    }

    #[test]
    fn sweep_examples() {
        let disjoint = [
            r(0.0, 0.0, 1.0, 1.0),
            r(2.0, 0.0, 3.0, 1.0),
            r(0.0, 2.0, 1.0, 3.0),
        ];
        assert_eq!(max_clique_sweep(&disjoint).unwrap().size(), 1);

        let w = max_clique_sweep(&triangle()).unwrap();
        assert_eq!(w.members, vec![0, 1, 2]);
        assert!(1.0 < w.stab.x && w.stab.x < 2.0 && 1.0 < w.stab.y && w.stab.y < 2.0);

        let w = max_clique_sweep(&chain()).unwrap();
        assert_eq!(w.size(), 2);
        // first maximum in sweep order is the leftmost one
        assert_eq!(w.members, vec![0, 1]);

        assert!(matches!(max_clique_sweep(&[]), Err(Error::Empty)));
    }

    #[test]
    fn sweep_respects_open_edges() {
        // top edge of one at the bottom edge of the other
        let stacked = [r(0.0, 0.0, 2.0, 1.0), r(0.0, 1.0, 2.0, 2.0)];
        assert_eq!(max_clique_sweep(&stacked).unwrap().size(), 1);
        let side = [r(0.0, 0.0, 1.0, 1.0), r(1.0, 0.0, 2.0, 1.0)];
        assert_eq!(max_clique_sweep(&side).unwrap().size(), 1);
        let dup = [r(0.0, 0.0, 1.0, 1.0), r(0.0, 0.0, 1.0, 1.0)];
        assert_eq!(max_clique_sweep(&dup).unwrap().size(), 2);
    }

    #[test]
    fn sweep_among_subset() {
        let rects = triangle();
        let w = max_clique_sweep_among(&rects, &[0, 2]).unwrap();
        assert_eq!(w.members, vec![0, 2]);
        assert!(max_clique_sweep_among(&rects, &[]).is_err());
    }

    #[test]
    fn is_clique_examples() {
        let g = IntersectionGraph::build(&chain());
        assert!(is_clique(&g, &[]));
        assert!(is_clique(&g, &[1]));
        assert!(is_clique(&g, &[0, 1]));
        assert!(!is_clique(&g, &[0, 2]));
    }

    #[test]
    fn simplicial_in_triangle() {
        let rects = triangle();
        let g = IntersectionGraph::build(&rects);
        let w = find_simplicial(&g, &rects).unwrap();
        assert_eq!(w.neighborhood, vec![0, 1, 2]);
        assert!(rects.iter().all(|r| r.contains_point(w.stab)));
    }

    #[test]
    fn simplicial_in_chain_is_an_endpoint() {
        let rects = chain();
        let g = IntersectionGraph::build(&rects);
        let w = find_simplicial(&g, &rects).unwrap();
        assert_eq!(w.vertex, 0);
        assert_eq!(w.neighborhood, vec![0, 1]);
        assert!(rects[0].contains_point(w.stab) && rects[1].contains_point(w.stab));
    }

    #[test]
    fn picture_frame_has_no_simplicial_vertex() {
        let rects = picture_frame();
        let g = IntersectionGraph::build(&rects);
        assert_eq!(g.edge_count(), 4);
        let search = find_simplicial_with_stats(&g, &rects);
        assert!(search.witness.is_none());
        assert_eq!(search.stats.marked, 4);
    }

    #[test]
    fn simplicial_after_removal() {
        let rects = picture_frame();
        let g = IntersectionGraph::build(&rects).remove_vertices(&[0]);
        let w = find_simplicial(&g, &rects).unwrap();
        // bottom bar now only sees the two side bars, which do not meet;
        // the side bars have closed neighborhood {side, bottom}
        assert_eq!(w.vertex, 2);
        assert_eq!(w.neighborhood, vec![1, 2]);
    }

    #[test]
    fn empty_graph_has_no_witness() {
        let g = IntersectionGraph::build(&[]);
        assert!(find_simplicial(&g, &[]).is_none());
    }
}
