//! Rectangle primitives, random instance generation and domination filtering.
//!
//! All predicates use open interiors: two rectangles that only share an edge
//! or a corner do not intersect, and a point on a rectangle's boundary does
//! not stab it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Closed axis-parallel box with `lo` bottom-left and `hi` top-right.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub lo: Point,
    pub hi: Point,
}

impl Rectangle {
    /// Normalizes two opposite corners into a rectangle.
    pub fn from_corners(p: Point, q: Point) -> Result<Self> {
        if !p.is_finite() || !q.is_finite() {
            return Err(Error::NonFinite);
        }
        if p.x == q.x || p.y == q.y {
            return Err(Error::Degenerate { p, q });
        }
        Ok(Self {
            lo: Point::new(p.x.min(q.x), p.y.min(q.y)),
            hi: Point::new(p.x.max(q.x), p.y.max(q.y)),
        })
    }

    /// Builds from `xl yl xr yr`, requiring the corners to already be ordered.
    pub fn from_bounds(xl: f64, yl: f64, xr: f64, yr: f64) -> Result<Self> {
        let (lo, hi) = (Point::new(xl, yl), Point::new(xr, yr));
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::NonFinite);
        }
        if !(xl < xr && yl < yr) {
            return Err(Error::Degenerate { p: lo, q: hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi.x - self.lo.x
    }

    pub fn height(&self) -> f64 {
        self.hi.y - self.lo.y
    }

    pub fn center(&self) -> Point {
        Point::new(
            self.lo.x + self.width() / 2.0,
            self.lo.y + self.height() / 2.0,
        )
    }

    /// True iff `p` lies strictly inside the box.
    pub fn contains_point(&self, p: Point) -> bool {
        self.lo.x < p.x && p.x < self.hi.x && self.lo.y < p.y && p.y < self.hi.y
    }

    pub fn interiors_intersect(&self, other: &Rectangle) -> bool {
        interiors_intersect(self, other)
    }

    pub fn contains(&self, inner: &Rectangle) -> bool {
        contains(self, inner)
    }
}

pub fn make_rectangle(p: Point, q: Point) -> Result<Rectangle> {
    Rectangle::from_corners(p, q)
}

pub fn interiors_intersect(a: &Rectangle, b: &Rectangle) -> bool {
    a.lo.x < b.hi.x && b.lo.x < a.hi.x && a.lo.y < b.hi.y && b.lo.y < a.hi.y
}

/// Closed-box containment, excluding exact equality.
pub fn contains(outer: &Rectangle, inner: &Rectangle) -> bool {
    outer.lo.x <= inner.lo.x
        && outer.lo.y <= inner.lo.y
        && inner.hi.x <= outer.hi.x
        && inner.hi.y <= outer.hi.y
        && outer != inner
}

/// Common open region of a set of rectangles, or `None` when it is empty
/// (or the list is).
pub fn common_intersection<'a, I>(rects: I) -> Option<Rectangle>
where
    I: IntoIterator<Item = &'a Rectangle>,
{
    let mut it = rects.into_iter();
    let first = *it.next()?;
    let (mut lo, mut hi) = (first.lo, first.hi);
    for r in it {
        lo.x = lo.x.max(r.lo.x);
        lo.y = lo.y.max(r.lo.y);
        hi.x = hi.x.min(r.hi.x);
        hi.y = hi.y.min(r.hi.y);
    }
    (lo.x < hi.x && lo.y < hi.y).then_some(Rectangle { lo, hi })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Region {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let r = Self {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn unit() -> Self {
        Self {
            x_min: 0.0,
            x_max: 1.0,
            y_min: 0.0,
            y_max: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if finite && self.x_min < self.x_max && self.y_min < self.y_max {
            Ok(())
        } else {
            Err(Error::InvalidRegion(*self))
        }
    }

    pub fn contains_rect(&self, r: &Rectangle) -> bool {
        self.x_min <= r.lo.x && r.hi.x <= self.x_max && self.y_min <= r.lo.y && r.hi.y <= self.y_max
    }
}

impl Default for Region {
    fn default() -> Self {
        Self::unit()
    }
}

impl std::str::FromStr for Region {
    type Err = Error;

    /// Parses `x_min,x_max,y_min,y_max`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad region {s:?}")))?;
        match parts[..] {
            [a, b, c, d] => Region::new(a, b, c, d),
            _ => Err(Error::Parse(format!(
                "region needs 4 comma-separated numbers, got {s:?}"
            ))),
        }
    }
}

/// A rectangle set in generation order. Indices into `rects` are the
/// canonical rectangle ids everywhere else in the crate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub rects: Vec<Rectangle>,
    pub seed: u64,
    pub region: Region,
    pub n_requested: usize,
}

impl Instance {
    pub fn from_rects(rects: Vec<Rectangle>) -> Self {
        let n = rects.len();
        Self {
            rects,
            seed: 0,
            region: Region::unit(),
            n_requested: n,
        }
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }
}

/// Draws `n` rectangles, each spanned by two points sampled uniformly in
/// `region`. Pairs sharing an x or y coordinate are redrawn.
///
/// The generator is ChaCha8 seeded with `seed`, so an identical
/// `(n, region, seed)` reproduces the instance exactly.
pub fn generate_instance(n: usize, region: Region, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rects = Vec::with_capacity(n);
    let draw = |rng: &mut ChaCha8Rng| {
        Point::new(
            region.x_min + (region.x_max - region.x_min) * rng.gen::<f64>(),
            region.y_min + (region.y_max - region.y_min) * rng.gen::<f64>(),
        )
    };
    while rects.len() < n {
        let p = draw(&mut rng);
        let q = draw(&mut rng);
        if let Ok(r) = Rectangle::from_corners(p, q) {
            rects.push(r);
        }
    }
    Instance {
        rects,
        seed,
        region,
        n_requested: n,
    }
}

/// Result of [`filter_dominated`]: two disjoint index lists covering the
/// whole instance, both in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DominationSplit {
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
}

/// Splits rectangles into non-dominated (`kept`) and dominated (`removed`).
/// A rectangle is dominated when it contains some other rectangle of the
/// original set; all removals are decided against the original set.
pub fn filter_dominated(rects: &[Rectangle]) -> DominationSplit {
    let by_lo_x = sorted_by_lo_x(rects);
    let mut split = DominationSplit::default();
    for (i, r) in rects.iter().enumerate() {
        if find_contained(rects, &by_lo_x, r, |j| j != i).is_some() {
            split.removed.push(i);
        } else {
            split.kept.push(i);
        }
    }
    split
}

/// For every dominated rectangle, one kept rectangle it contains.
///
/// Containment is a strict partial order, so a minimal element below any
/// dominated rectangle exists and is itself non-dominated.
pub fn contained_witnesses(rects: &[Rectangle], split: &DominationSplit) -> Vec<(usize, usize)> {
    let kept_rects: Vec<Rectangle> = split.kept.iter().map(|&k| rects[k]).collect();
    let by_lo_x = sorted_by_lo_x(&kept_rects);
    split
        .removed
        .iter()
        .map(|&i| {
            let local = find_contained(&kept_rects, &by_lo_x, &rects[i], |_| true)
                .expect("dominated rectangle contains a non-dominated one");
            (i, split.kept[local])
        })
        .collect()
}

fn sorted_by_lo_x(rects: &[Rectangle]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..rects.len()).collect();
    order.sort_by(|&a, &b| rects[a].lo.x.total_cmp(&rects[b].lo.x).then(a.cmp(&b)));
    order
}

fn find_contained(
    rects: &[Rectangle],
    by_lo_x: &[usize],
    outer: &Rectangle,
    accept: impl Fn(usize) -> bool,
) -> Option<usize> {
    // candidates have lo.x in [outer.lo.x, outer.hi.x)
    let start = by_lo_x.partition_point(|&j| rects[j].lo.x < outer.lo.x);
    by_lo_x[start..]
        .iter()
        .take_while(|&&j| rects[j].lo.x < outer.hi.x)
        .copied()
        .find(|&j| accept(j) && contains(outer, &rects[j]))
}
