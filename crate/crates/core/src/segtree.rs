//! Lazy segment tree over integer depths: range add and global maximum with
//! the leftmost position attaining it.

#[derive(Debug, Clone)]
pub struct MaxAddTree {
    n: usize,
    max: Vec<i32>,
    lazy: Vec<i32>,
}

impl MaxAddTree {
    pub fn new(n: usize) -> Self {
        let size = 4 * n.max(1);
        Self {
            n,
            max: vec![0; size],
            lazy: vec![0; size],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Adds `delta` to every leaf in `lo..hi`.
    pub fn add(&mut self, lo: usize, hi: usize, delta: i32) {
        if lo < hi && hi <= self.n {
            self.add_rec(1, 0, self.n, lo, hi, delta);
        }
    }

    fn add_rec(&mut self, node: usize, l: usize, r: usize, lo: usize, hi: usize, delta: i32) {
        if hi <= l || r <= lo {
            return;
        }
        if lo <= l && r <= hi {
            self.max[node] += delta;
            self.lazy[node] += delta;
            return;
        }
        let mid = (l + r) / 2;
        self.add_rec(2 * node, l, mid, lo, hi, delta);
        self.add_rec(2 * node + 1, mid, r, lo, hi, delta);
        self.max[node] = self.lazy[node] + self.max[2 * node].max(self.max[2 * node + 1]);
    }

    /// Global maximum and the leftmost leaf holding it.
    pub fn max_leftmost(&self) -> Option<(i32, usize)> {
        if self.n == 0 {
            return None;
        }
        let best = self.max[1];
        let (mut node, mut l, mut r) = (1, 0, self.n);
        // `need` is the value the subtree must reach below the pending lazies
        let mut need = best;
        while r - l > 1 {
            need -= self.lazy[node];
            let mid = (l + r) / 2;
            if self.max[2 * node] == need {
                node *= 2;
                r = mid;
            } else {
                node = 2 * node + 1;
                l = mid;
            }
        }
        Some((best, l))
    }

    pub fn get(&self, i: usize) -> i32 {
        let (mut node, mut l, mut r) = (1, 0, self.n);
        let mut acc = 0;
        while r - l > 1 {
            acc += self.lazy[node];
            let mid = (l + r) / 2;
            if i < mid {
                node *= 2;
                r = mid;
            } else {
                node = 2 * node + 1;
                l = mid;
            }
        }
        acc + self.max[node]
    }
}
