//! Brute-force ground truth for small instances.
//!
//! Candidate points are the midpoints of the elementary cells of the grid
//! induced by all distinct edge coordinates. Membership in an open box is
//! constant on each open cell, and every nonempty open intersection of boxes
//! contains a whole cell, so these midpoints are a complete candidate set for
//! both maximum depth and minimum piercing.

use crate::bitset::BitSet;
use crate::clique::CliqueWitness;
use crate::error::{Error, Result};
use crate::geometry::{interiors_intersect, Point, Rectangle};
use crate::graph::IntersectionGraph;

/// Size limits for the exponential oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub mis: usize,
    pub mcc: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self { mis: 25, mcc: 18 }
    }
}

/// Midpoints of all elementary cells.
pub fn candidate_points(rects: &[Rectangle]) -> Vec<Point> {
    let axis = |f: &dyn Fn(&Rectangle) -> [f64; 2]| {
        let mut v: Vec<f64> = rects.iter().flat_map(f).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v.windows(2)
            .map(|w| w[0] + (w[1] - w[0]) / 2.0)
            .collect::<Vec<_>>()
    };
    let xs = axis(&|r| [r.lo.x, r.hi.x]);
    let ys = axis(&|r| [r.lo.y, r.hi.y]);
    xs.iter()
        .flat_map(|&x| ys.iter().map(move |&y| Point::new(x, y)))
        .collect()
}

/// Maximum clique by scanning every candidate cell.
pub fn max_clique_candidates(rects: &[Rectangle]) -> Result<CliqueWitness> {
    if rects.is_empty() {
        return Err(Error::Empty);
    }
    let mut best: Option<(usize, Point)> = None;
    for p in candidate_points(rects) {
        let depth = rects.iter().filter(|r| r.contains_point(p)).count();
        if best.is_none_or(|(d, _)| depth > d) {
            best = Some((depth, p));
        }
    }
    let (_, stab) = best.expect("a nonempty set has at least one cell");
    Ok(CliqueWitness {
        members: (0..rects.len())
            .filter(|&i| rects[i].contains_point(stab))
            .collect(),
        stab,
    })
}

/// Maximum independent set of the live part of `g`, as vertex ids.
pub fn exact_mis(g: &IntersectionGraph) -> Result<Vec<usize>> {
    exact_mis_capped(g, OracleCaps::default().mis)
}

pub fn exact_mis_capped(g: &IntersectionGraph, cap: usize) -> Result<Vec<usize>> {
    let n = g.n();
    if n > cap.min(64) {
        return Err(Error::CapExceeded { n, cap });
    }
    let ids: Vec<usize> = g.vertices().collect();
    let nbr: Vec<u64> = ids
        .iter()
        .map(|&u| {
            ids.iter()
                .enumerate()
                .filter(|&(_, &w)| g.adjacent(u, w))
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut best = 0u64;
    mis_branch(&nbr, all, 0, &mut best);
    Ok(bits(best).map(|j| ids[j]).collect())
}

/// Branch on the candidate of maximum degree within `cand`: include it
/// (dropping its neighbors) or exclude it.
fn mis_branch(nbr: &[u64], mut cand: u64, chosen: u64, best: &mut u64) {
    // isolated candidates can always be taken
    let mut chosen = chosen;
    for v in bits(cand) {
        if nbr[v] & cand == 0 {
            chosen |= 1 << v;
            cand &= !(1 << v);
        }
    }
    if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    if cand == 0 {
        *best = chosen;
        return;
    }
    let v = bits(cand)
        .max_by_key(|&v| ((nbr[v] & cand).count_ones(), std::cmp::Reverse(v)))
        .expect("cand is nonempty");
    mis_branch(nbr, cand & !(1 << v) & !nbr[v], chosen | 1 << v, best);
    mis_branch(nbr, cand & !(1 << v), chosen, best);
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

/// Minimum number of points piercing every rectangle, with one optimal
/// choice of points.
pub fn exact_mcc(rects: &[Rectangle]) -> Result<Vec<Point>> {
    exact_mcc_capped(rects, OracleCaps::default().mcc)
}

pub fn exact_mcc_capped(rects: &[Rectangle], cap: usize) -> Result<Vec<Point>> {
    let n = rects.len();
    if n > cap.min(64) {
        return Err(Error::CapExceeded { n, cap });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // one representative per coverage set, then only the maximal sets
    let mut sets: Vec<(u64, Point)> = Vec::new();
    for p in candidate_points(rects) {
        let cov = (0..n)
            .filter(|&i| rects[i].contains_point(p))
            .fold(0u64, |m, i| m | 1 << i);
        if cov != 0 {
            sets.push((cov, p));
        }
    }
    sets.sort_by_key(|&(c, _)| (std::cmp::Reverse(c.count_ones()), c));
    sets.dedup_by_key(|&mut (c, _)| c);
    let mut maximal: Vec<(u64, Point)> = Vec::new();
    for (c, p) in sets {
        if !maximal.iter().any(|&(m, _)| c & !m == 0) {
            maximal.push((c, p));
        }
    }
    let covers: Vec<u64> = maximal.iter().map(|&(c, _)| c).collect();
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };

    let upper = greedy_cover(&covers, all);
    let widest = covers.iter().map(|c| c.count_ones()).max().unwrap_or(1);
    let lower = (n as u32).div_ceil(widest) as usize;
    for depth in lower..upper.len() {
        let mut picked = Vec::with_capacity(depth);
        if cover_dfs(&covers, all, 0, depth, widest, &mut picked) {
            return Ok(picked.into_iter().map(|k| maximal[k].1).collect());
        }
    }
    Ok(upper.into_iter().map(|k| maximal[k].1).collect())
}

fn greedy_cover(covers: &[u64], all: u64) -> Vec<usize> {
    let mut covered = 0u64;
    let mut picked = Vec::new();
    while covered != all {
        let k = (0..covers.len())
            .max_by_key(|&k| ((covers[k] & !covered).count_ones(), std::cmp::Reverse(k)))
            .expect("every rectangle has a candidate cell");
        covered |= covers[k];
        picked.push(k);
    }
    picked
}

/// Depth-limited search: branch over the sets covering the uncovered
/// rectangle with the fewest options.
fn cover_dfs(
    covers: &[u64],
    all: u64,
    covered: u64,
    budget: usize,
    widest: u32,
    picked: &mut Vec<usize>,
) -> bool {
    let open = all & !covered;
    if open == 0 {
        return true;
    }
    if budget == 0 || (open.count_ones()).div_ceil(widest) as usize > budget {
        return false;
    }
    let target = bits(open)
        .min_by_key(|&e| covers.iter().filter(|&&c| c >> e & 1 == 1).count())
        .expect("open is nonempty");
    for (k, &c) in covers.iter().enumerate() {
        if c >> target & 1 == 1 {
            picked.push(k);
            if cover_dfs(covers, all, covered | c, budget - 1, widest, picked) {
                return true;
            }
            picked.pop();
        }
    }
    false
}

/// Live vertices whose closed neighborhood is a clique.
pub fn simplicial_scan(g: &IntersectionGraph) -> Vec<usize> {
    g.vertices()
        .filter(|&v| {
            let nbhd = g.closed_neighborhood(v);
            nbhd.iter()
                .enumerate()
                .all(|(i, &a)| nbhd[i + 1..].iter().all(|&b| g.adjacent(a, b)))
        })
        .collect()
}

/// Every rectangle has some point in its open interior.
pub fn verify_cover(rects: &[Rectangle], points: &[Point]) -> bool {
    rects
        .iter()
        .all(|r| points.iter().any(|&p| r.contains_point(p)))
}

/// Members are pairwise interior-disjoint.
pub fn verify_independent(rects: &[Rectangle], members: &[usize]) -> bool {
    members.iter().enumerate().all(|(i, &a)| {
        members[i + 1..]
            .iter()
            .all(|&b| a != b && !interiors_intersect(&rects[a], &rects[b]))
    })
}

/// Independent of the graph: used to sanity check witness sets by id.
pub fn members_form_clique(rects: &[Rectangle], members: &[usize]) -> bool {
    let set: BitSet = members.iter().copied().collect();
    set.iter().all(|a| {
        set.iter()
            .all(|b| a == b || interiors_intersect(&rects[a], &rects[b]))
    })
}

#[cfg(test)]
mod tests {
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

    fn frame() -> Vec<Rectangle> {
        vec![
            r(0.0, 2.0, 3.0, 3.0),
            r(0.0, 0.0, 3.0, 1.0),
            r(-0.5, -0.5, 0.5, 3.5),
            r(2.5, -0.5, 3.5, 3.5),
        ]
    }

    fn disjoint(k: usize) -> Vec<Rectangle> {
        (0..k)
            .map(|i| r(i as f64, 0.0, i as f64 + 0.5, 1.0))
            .collect()
    }

    #[test]
    fn candidate_clique_examples() {
        assert_eq!(
            max_clique_candidates(&[r(0.0, 0.0, 1.0, 1.0)])
                .unwrap()
                .size(),
            1
        );
        assert_eq!(max_clique_candidates(&chain()).unwrap().size(), 2);
        let w = max_clique_candidates(&triangle()).unwrap();
        assert_eq!(w.members, vec![0, 1, 2]);
        assert!(max_clique_candidates(&[]).is_err());
    }

    #[test]
    fn mis_examples() {
        let g = IntersectionGraph::build(&disjoint(5));
        assert_eq!(exact_mis(&g).unwrap().len(), 5);
        let nested: Vec<Rectangle> = (0..6)
            .map(|i| r(0.0, i as f64, 10.0, 10.0 + i as f64))
            .collect();
        assert_eq!(
            exact_mis(&IntersectionGraph::build(&nested)).unwrap().len(),
            1
        );
        assert_eq!(
            exact_mis(&IntersectionGraph::build(&chain())).unwrap(),
            vec![0, 2]
        );
        assert_eq!(
            exact_mis(&IntersectionGraph::build(&frame()))
                .unwrap()
                .len(),
            2
        );
        assert_eq!(exact_mis(&IntersectionGraph::build(&[])).unwrap().len(), 0);
    }

    #[test]
    fn mis_respects_removed_vertices() {
        let g = IntersectionGraph::build(&chain()).remove_vertices(&[0]);
        assert_eq!(exact_mis(&g).unwrap().len(), 1);
    }

    #[test]
    fn mcc_examples() {
        assert_eq!(exact_mcc(&disjoint(4)).unwrap().len(), 4);
        assert_eq!(exact_mcc(&triangle()).unwrap().len(), 1);
        assert_eq!(exact_mcc(&frame()).unwrap().len(), 2);
        assert_eq!(exact_mcc(&chain()).unwrap().len(), 2);
        assert!(exact_mcc(&[]).unwrap().is_empty());
        let p = exact_mcc(&frame()).unwrap();
        assert!(verify_cover(&frame(), &p));
    }

    #[test]
    fn caps_are_enforced() {
        let big = disjoint(19);
        assert!(matches!(
            exact_mcc(&big),
            Err(Error::CapExceeded { n: 19, cap: 18 })
        ));
        assert!(exact_mcc_capped(&big, 19).is_ok());
        let g = IntersectionGraph::build(&disjoint(26));
        assert!(matches!(exact_mis(&g), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn simplicial_scan_examples() {
        assert_eq!(
            simplicial_scan(&IntersectionGraph::build(&triangle())),
            vec![0, 1, 2]
        );
        assert!(simplicial_scan(&IntersectionGraph::build(&frame())).is_empty());
        assert_eq!(
            simplicial_scan(&IntersectionGraph::build(&chain())),
            vec![0, 2]
        );
    }

    #[test]
    fn verify_examples() {
        assert!(verify_cover(&[], &[]));
        let unit = r(0.0, 0.0, 1.0, 1.0);
        assert!(verify_cover(&[unit], &[Point::new(0.5, 0.5)]));
        assert!(!verify_cover(&[unit], &[Point::new(0.0, 0.0)]));
        assert!(!verify_cover(&[unit], &[Point::new(1.0, 0.5)]));

        assert!(verify_independent(&[], &[]));
        let nested = [r(0.0, 0.0, 4.0, 4.0), r(1.0, 1.0, 2.0, 2.0)];
        assert!(!verify_independent(&nested, &[0, 1]));
        let touching = [r(0.0, 0.0, 1.0, 1.0), r(1.0, 0.0, 2.0, 1.0)];
        assert!(verify_independent(&touching, &[0, 1]));
        assert!(!verify_independent(&touching, &[0, 0]));
    }

    #[test]
    fn clique_membership_check() {
        assert!(members_form_clique(&triangle(), &[0, 1, 2]));
        assert!(!members_form_clique(&chain(), &[0, 1, 2]));
    }
}
