#![allow(dead_code)]

use mag_core::generate::{random_mag, GenSpec};
use mag_core::{Aspect, DuplicatePolicy, MagGraph, SubDetSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn mag_r() -> MagGraph {
    MagGraph::from_labels(
        vec![
            Aspect::new("vertex", ["1", "2", "3"]).unwrap(),
            Aspect::new("time", ["T1", "T2"]).unwrap(),
        ],
        [
            ["1", "T1", "1", "T2"],
            ["2", "T1", "3", "T1"],
            ["2", "T1", "2", "T2"],
            ["3", "T1", "3", "T2"],
            ["1", "T2", "2", "T2"],
        ],
        DuplicatePolicy::Reject,
    )
    .unwrap()
}

/// Random aspect sizes with `order` aspects, every size ≥ 2 and product in
/// `4..=max_n`.
pub fn random_sizes(rng: &mut impl Rng, order: usize, max_n: usize) -> Vec<usize> {
    loop {
        let sizes: Vec<usize> = (0..order).map(|_| rng.gen_range(2..=6)).collect();
        if sizes.iter().product::<usize>() <= max_n {
            return sizes;
        }
    }
}

/// A random MAG with arc density in `density`.
pub fn random_test_mag(seed: u64, order: usize, max_n: usize, density: (f64, f64)) -> MagGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes = random_sizes(&mut rng, order, max_n);
    let n: usize = sizes.iter().product();
    let d = rng.gen_range(density.0..=density.1);
    let m = ((n * (n - 1)) as f64 * d).round() as usize;
    random_mag(&GenSpec::new(sizes, m, rng.gen())).unwrap()
}

pub fn proper_zetas(order: usize) -> Vec<SubDetSpec> {
    (1..(1u64 << order) - 1)
        .map(|z| SubDetSpec::from_integer(z, order).unwrap())
        .collect()
}
