//! Benchmark inputs shared by the criterion suites.

use bucolic::corpus::{self, random_bucolic};
use bucolic::generators::{grid, hamming, hypercube, torus, wheel};
use bucolic::Graph;

/// Named graphs of increasing size for recognition and hull benchmarks.
pub fn recognition_inputs() -> Vec<(String, Graph)> {
    let mut r = corpus::rng(11);
    vec![
        ("Q4".into(), hypercube(4).unwrap()),
        ("grid-6x6".into(), grid(6, 6).unwrap()),
        ("K3xK3xK2".into(), hamming(&[3, 3, 2]).unwrap()),
        (
            "W5xP3".into(),
            wheel(5).unwrap().cartesian_product(&grid(1, 3).unwrap()),
        ),
        ("random-bucolic-16".into(), random_bucolic(&mut r, 16)),
    ]
}

/// Inputs for the cover unfolding benchmark: the base graph and a radius.
pub fn cover_inputs() -> Vec<(String, Graph, usize)> {
    vec![
        ("C5xC5".into(), torus(5, 5).unwrap(), 4),
        ("Q4".into(), hypercube(4).unwrap(), 4),
        ("grid-5x5".into(), grid(5, 5).unwrap(), 8),
    ]
}
