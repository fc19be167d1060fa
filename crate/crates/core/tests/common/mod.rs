#![allow(dead_code)]

use ftrs_core::Digraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn path() -> Digraph {
    Digraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
}

pub fn diamond() -> Digraph {
    Digraph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

/// s -> u_i -> v for i in 1..=paths; v = paths + 1.
pub fn star_of_paths(paths: usize) -> Digraph {
    let v = paths + 1;
    let mut g = Digraph::new(paths + 2);
    for i in 1..=paths {
        g.add_edge(0, i).unwrap();
        g.add_edge(i, v).unwrap();
    }
    g
}

/// Random loop-free multigraph; parallel edges allowed.
pub fn random_multigraph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Digraph {
    let mut g = Digraph::new(n);
    if n < 2 {
        return g;
    }
    for _ in 0..m {
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        g.add_edge(u, v).unwrap();
    }
    g
}

/// Seeded catalog of small multigraphs with `n` in `2..=max_n` and `m` up to
/// `max_m`.
pub fn catalog(count: usize, max_n: usize, max_m: usize, seed: u64) -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=max_n);
            let m = rng.random_range(0..=max_m);
            random_multigraph(&mut rng, n, m)
        })
        .collect()
}

pub fn fixtures() -> Vec<Digraph> {
    vec![path(), diamond(), star_of_paths(3), star_of_paths(6)]
}
