//! Intersection graph of a rectangle set.
//!
//! The adjacency matrix and lists are built once and shared between views.
//! Vertex deletion only flips bits in the view's `alive` mask and adjusts
//! the residual degrees of the deleted vertices' neighbors, so a vertex id
//! keeps naming the same rectangle for the lifetime of every derived view.

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::geometry::{interiors_intersect, Rectangle};

#[derive(Debug)]
struct Adjacency {
    rows: Vec<BitSet>,
    lists: Vec<Vec<u32>>,
    rect_index: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct IntersectionGraph {
    adj: Arc<Adjacency>,
    alive: BitSet,
    degree: Vec<u32>,
    live: usize,
}

impl IntersectionGraph {
    /// Builds the graph with a plane sweep over x. Vertex `i` is `rects[i]`.
    pub fn build(rects: &[Rectangle]) -> Self {
        Self::from_edges(rects.len(), sweep_edges(rects), (0..rects.len()).collect())
    }

    /// Quadratic reference construction; must agree with [`Self::build`].
    pub fn build_pairwise(rects: &[Rectangle]) -> Self {
        let mut edges = Vec::new();
        for i in 0..rects.len() {
            for j in i + 1..rects.len() {
                if interiors_intersect(&rects[i], &rects[j]) {
                    edges.push((i, j));
                }
            }
        }
        Self::from_edges(rects.len(), edges, (0..rects.len()).collect())
    }

    /// Graph over `all[subset[k]]`; vertex `k` maps back to instance index
    /// `subset[k]`.
    pub fn build_subset(all: &[Rectangle], subset: &[usize]) -> Self {
        let rects: Vec<Rectangle> = subset.iter().map(|&i| all[i]).collect();
        Self::from_edges(rects.len(), sweep_edges(&rects), subset.to_vec())
    }

    fn from_edges(n: usize, edges: Vec<(usize, usize)>, rect_index: Vec<usize>) -> Self {
        let mut rows = vec![BitSet::new(n); n];
        let mut lists = vec![Vec::new(); n];
        for (a, b) in edges {
            if rows[a].insert(b) {
                rows[b].insert(a);
                lists[a].push(b as u32);
                lists[b].push(a as u32);
            }
        }
        for l in &mut lists {
            l.sort_unstable();
        }
        let degree = lists.iter().map(|l| l.len() as u32).collect();
        Self {
            adj: Arc::new(Adjacency {
                rows,
                lists,
                rect_index,
            }),
            alive: BitSet::full(n),
            degree,
            live: n,
        }
    }

    /// Number of live vertices.
    pub fn n(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Size of the underlying id space (live and deleted vertices).
    pub fn capacity(&self) -> usize {
        self.adj.rows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive.iter()
    }

    pub fn alive(&self) -> &BitSet {
        &self.alive
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.contains(v)
    }

    pub fn rect_index(&self, v: usize) -> usize {
        self.adj.rect_index[v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj.rows[u].contains(v)
    }

    /// Full adjacency row of `v`, including deleted vertices. Mask with
    /// [`Self::alive`] for the residual row.
    pub fn row(&self, v: usize) -> &BitSet {
        &self.adj.rows[v]
    }

    /// Residual degree (self excluded).
    pub fn degree(&self, v: usize) -> usize {
        self.degree[v] as usize
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.lists[v]
            .iter()
            .map(|&u| u as usize)
            .filter(|&u| self.alive.contains(u))
    }

    /// `v` together with its live neighbors, ascending.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.neighbors(v).collect();
        let at = out.partition_point(|&u| u < v);
        out.insert(at, v);
        out
    }

    pub fn closed_neighborhood_set(&self, v: usize) -> BitSet {
        let mut s = self.adj.rows[v].clone();
        s.intersect_with(&self.alive);
        s.insert(v);
        s
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Live vertex of maximum residual degree; ties go to the lowest id.
    pub fn max_degree_vertex(&self) -> Option<usize> {
        self.vertices().fold(None, |best, v| match best {
            Some(b) if self.degree(b) >= self.degree(v) => Some(b),
            _ => Some(v),
        })
    }

    /// Induced subgraph on the live vertices outside `s`.
    pub fn remove_vertices(&self, s: &[usize]) -> Self {
        let mut g = self.clone();
        g.remove_in_place(s);
        g
    }

    pub fn remove_in_place(&mut self, s: &[usize]) {
        for &v in s {
            if self.alive.remove(v) {
                self.live -= 1;
                self.degree[v] = 0;
                for &u in &self.adj.lists[v] {
                    if self.alive.contains(u as usize) {
                        self.degree[u as usize] -= 1;
                    }
                }
            }
        }
    }
}

/// Sweep over x: a rectangle meets the active rectangles whose right edge lies
/// strictly to the right of its left edge, subject to an open y test.
fn sweep_edges(rects: &[Rectangle]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..rects.len()).collect();
    order.sort_by(|&a, &b| rects[a].lo.x.total_cmp(&rects[b].lo.x).then(a.cmp(&b)));
    let mut active: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    for &i in &order {
        let r = &rects[i];
        active.retain(|&j| rects[j].hi.x > r.lo.x);
        for &j in &active {
            let s = &rects[j];
            if s.lo.y < r.hi.y && r.lo.y < s.hi.y {
                edges.push((i.min(j), i.max(j)));
            }
        }
        active.push(i);
    }
    edges
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

    #[test]
    fn disjoint_is_edgeless() {
        let g = IntersectionGraph::build(&[
            r(0.0, 0.0, 1.0, 1.0),
            r(1.0, 0.0, 2.0, 1.0),
            r(0.0, 1.0, 1.0, 2.0),
        ]);
        assert_eq!(g.edge_count(), 0);
        assert!(g.vertices().all(|v| g.degree(v) == 0));
    }

    #[test]
    fn chain_is_a_path() {
        let g = IntersectionGraph::build(&chain());
        assert_eq!(
            (0..3).map(|v| g.degree(v)).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
        assert!(g.adjacent(0, 1) && g.adjacent(1, 2) && !g.adjacent(0, 2));
        assert_eq!(g.closed_neighborhood(1), vec![0, 1, 2]);
        assert_eq!(g.closed_neighborhood(0), vec![0, 1]);
        assert_eq!(g.max_degree_vertex(), Some(1));
    }

    #[test]
    fn triangle() {
        let g = IntersectionGraph::build(&[
            r(0.0, 0.0, 2.0, 2.0),
            r(1.0, 0.0, 3.0, 2.0),
            r(0.0, 1.0, 3.0, 3.0),
        ]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.closed_neighborhood(2), vec![0, 1, 2]);
        // all degrees tie at 2
        assert_eq!(g.max_degree_vertex(), Some(0));
    }

    #[test]
    fn isolated_vertex_neighborhood() {
        let g = IntersectionGraph::build(&[r(0.0, 0.0, 1.0, 1.0)]);
        assert_eq!(g.closed_neighborhood(0), vec![0]);
    }

    #[test]
    fn removal() {
        let g = IntersectionGraph::build(&chain());
        let h = g.remove_vertices(&[1]);
        assert_eq!(h.n(), 2);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(h.vertices().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(h.closed_neighborhood(0), vec![0]);
        assert_eq!(h.rect_index(2), 2);
        // original view untouched
        assert_eq!(g.n(), 3);
        assert_eq!(g.degree(1), 2);

        let none = g.remove_vertices(&[]);
        assert_eq!(none.n(), 3);
        assert_eq!(none.edge_count(), 2);

        let all = g.remove_vertices(&[0, 1, 2]);
        assert!(all.is_empty());
        assert_eq!(all.max_degree_vertex(), None);
    }

    #[test]
    fn subset_keeps_rect_index() {
        let rects = chain();
        let g = IntersectionGraph::build_subset(&rects, &[0, 2]);
        assert_eq!(g.n(), 2);
        assert_eq!(g.rect_index(1), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn touching_edges_do_not_connect() {
        let rects = [
            r(0.0, 0.0, 1.0, 1.0),
            r(1.0, 0.5, 2.0, 2.0),
            r(0.5, 1.0, 1.5, 3.0),
        ];
        let g = IntersectionGraph::build(&rects);
        let p = IntersectionGraph::build_pairwise(&rects);
        assert_eq!(g.edge_count(), p.edge_count());
        assert!(g.adjacent(1, 2));
        assert!(!g.adjacent(0, 1) && !g.adjacent(0, 2));
    }
}
