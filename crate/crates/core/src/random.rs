//! Seeded random digraph generators. All randomness flows through a
//! caller-owned [`ChaCha8Rng`], so a seed fixes every sample.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::Digraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Orients every edge of an undirected graph uniformly at random.
pub fn random_orientation(rng: &mut ChaCha8Rng, n: usize, edges: &[(usize, usize)]) -> Digraph {
    let arcs: Vec<(usize, usize)> =
        edges.iter().map(|&(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) }).collect();
    Digraph::from_arcs(n, &arcs).expect("orienting a simple graph gives an oriented graph")
}

/// Oriented `G(n, p)`: each unordered pair becomes an arc with probability
/// `p`, in a uniformly random direction.
pub fn random_oriented(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    random_orientation(rng, n, &edges)
}

pub fn random_tournament(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
    random_oriented(rng, n, 1.0)
}

/// A strongly connected oriented graph: a random Hamiltonian circuit plus
/// each remaining pair as an arc with probability `p`. Needs `n >= 3`.
pub fn random_strong(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Digraph {
    assert!(n >= 3, "a strongly connected oriented graph needs 3 vertices");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    for u in 0..n {
        for v in u + 1..n {
            if arcs.contains(&(u, v)) || arcs.contains(&(v, u)) {
                continue;
            }
            if rng.gen_bool(p) {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    Digraph::from_arcs(n, &arcs).expect("circuit plus fresh pairs is oriented")
}

/// A sample of `count` oriented graphs, orders uniform in `orders`, edge
/// densities uniform in `0.3..0.95`.
pub fn oriented_sample(seed: u64, count: usize, orders: std::ops::RangeInclusive<usize>) -> Vec<Digraph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(orders.clone());
            let p = r.gen_range(0.3..0.95);
            random_oriented(&mut r, n, p)
        })
        .collect()
}

/// Like [`oriented_sample`] but every member is strongly connected.
pub fn strong_sample(seed: u64, count: usize, orders: std::ops::RangeInclusive<usize>) -> Vec<Digraph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(orders.clone());
            let p = r.gen_range(0.2..0.9);
            random_strong(&mut r, n, p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::is_strongly_connected;

    #[test]
    fn same_seed_same_sample() {
        assert_eq!(oriented_sample(7, 20, 4..=9), oriented_sample(7, 20, 4..=9));
        assert_ne!(oriented_sample(7, 20, 4..=9), oriented_sample(8, 20, 4..=9));
    }

    #[test]
    fn strong_sample_is_strong() {
        for d in strong_sample(3, 50, 3..=9) {
            assert!(is_strongly_connected(&d));
            assert!(d.is_oriented());
        }
    }

    #[test]
    fn tournaments_are_complete() {
        let mut r = rng(1);
        for n in 1..8 {
            assert!(random_tournament(&mut r, n).is_tournament());
        }
    }
}
