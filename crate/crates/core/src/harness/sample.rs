//! Seeded random graphs for the sampling experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Independent generator per trial: the run seed picks the key, the trial
/// index picks the ChaCha stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Connected `G(n, p)` with `p` drawn uniformly from `[ln n / n, 0.6]`,
/// retried up to `max_tries` times.
pub fn random_connected_gnp<R: Rng>(
    rng: &mut R,
    n: usize,
    max_tries: usize,
) -> Option<(Graph, f64)> {
    let lo = ((n as f64).ln() / n as f64).min(0.6);
    for _ in 0..max_tries {
        let p = rng.random_range(lo..=0.6);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).expect("sampled edges are simple");
        if g.is_connected() {
            return Some((g, p));
        }
    }
    None
}

/// Uniform labeled tree on `n >= 2` vertices via a random Prüfer sequence.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 2, "random trees need at least two vertices");
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always remains");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Two distinct vertices of `0..n`.
pub fn random_pair<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}
