//! Random spaces shared by the integration tests.
//!
//! Distances are dyadic (multiples of 1/8) or integers so every
//! computation on them is exact in binary floating point.

#![allow(dead_code)]

use ghdist::{CombinatorialSpace, FiniteMetricSpace, MapPair, Norm};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Off-diagonal entries drawn from {1, 9/8, ..., 2}; any such matrix
/// satisfies the triangle inequality.
pub fn random_band_space(rng: &mut TestRng, n: usize) -> FiniteMetricSpace {
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = rng.gen_range(8..=16) as f64 / 8.0;
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    FiniteMetricSpace::validate(m).unwrap()
}

/// Distinct integer points of the 5x5 grid under the l1 norm.
pub fn random_grid_space(rng: &mut TestRng, n: usize) -> FiniteMetricSpace {
    let mut cells: Vec<(i32, i32)> = (0..5).flat_map(|a| (0..5).map(move |b| (a, b))).collect();
    cells.shuffle(rng);
    let points: Vec<Vec<f64>> = cells[..n]
        .iter()
        .map(|&(a, b)| vec![a as f64, b as f64])
        .collect();
    FiniteMetricSpace::from_points(&points, Norm::L1).unwrap()
}

pub fn random_space(rng: &mut TestRng, max_points: usize) -> FiniteMetricSpace {
    let n = rng.gen_range(1..=max_points);
    if rng.gen_bool(0.5) {
        random_band_space(rng, n)
    } else {
        random_grid_space(rng, n)
    }
}

pub fn random_edges(rng: &mut TestRng, x: FiniteMetricSpace) -> CombinatorialSpace {
    let n = x.len();
    let p = rng.gen_range(0.0..0.7);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    CombinatorialSpace::new(x, edges).unwrap()
}

pub fn random_model(rng: &mut TestRng, max_points: usize) -> CombinatorialSpace {
    let x = random_space(rng, max_points);
    random_edges(rng, x)
}

pub fn random_map(rng: &mut TestRng, from: usize, to: usize) -> Vec<usize> {
    (0..from).map(|_| rng.gen_range(0..to)).collect()
}

pub fn random_pair(rng: &mut TestRng, x: usize, y: usize) -> MapPair {
    MapPair::new(random_map(rng, x, y), random_map(rng, y, x)).unwrap()
}
