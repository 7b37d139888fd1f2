#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rectcover::{generate_instance, Instance, Rectangle, Region};

/// `count` uniform instances with sizes drawn from `sizes`, reproducible
/// from `seed`.
pub fn random_instances(
    count: usize,
    sizes: std::ops::RangeInclusive<usize>,
    seed: u64,
) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(sizes.clone());
            generate_instance(n, Region::unit(), rng.gen())
        })
        .collect()
}

/// Rectangles with integer corners in `0..=side`, so that shared edges,
/// shared corners and duplicates are common.
pub fn grid_instance(n: usize, side: u32, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rects = Vec::with_capacity(n);
    while rects.len() < n {
        let mut c = || rng.gen_range(0..=side) as f64;
        let (a, b, p, q) = (c(), c(), c(), c());
        if a != b && p != q {
            rects.push(Rectangle::from_bounds(a.min(b), p.min(q), a.max(b), p.max(q)).unwrap());
        }
    }
    let mut inst = Instance::from_rects(rects);
    inst.seed = seed;
    inst
}

pub fn grid_instances(
    count: usize,
    sizes: std::ops::RangeInclusive<usize>,
    seed: u64,
) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            grid_instance(
                rng.gen_range(sizes.clone()),
                rng.gen_range(3..=8),
                rng.gen(),
            )
        })
        .collect()
}
