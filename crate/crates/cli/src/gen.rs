//! Seeded generators for random instances and graphs.

use polyresolve_core::graph::{EdgeSet, SimpleGraph};
use polyresolve_core::perm::{CycleSeq, Partition};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random cluster sizes: `n` positive parts summing to `m`.
pub fn random_shape(m: usize, n: usize, r: &mut impl Rng) -> Vec<usize> {
    assert!(n >= 1 && m >= n);
    let mut shape = vec![1; n];
    for _ in n..m {
        shape[r.gen_range(0..n)] += 1;
    }
    shape
}

/// Uniform partition with the given cluster sizes.
pub fn random_partition(shape: &[usize], r: &mut impl Rng) -> Partition {
    let mut assign = Partition::blocks(shape).into_assign();
    assign.shuffle(r);
    Partition::new(shape.len(), assign).expect("shuffled blocks keep the cluster count")
}

/// Two independent partitions of the same shape with at most `max_m` items
/// and at most `max_n` clusters.
pub fn random_instance(max_m: usize, max_n: usize, r: &mut impl Rng) -> (Partition, Partition) {
    let n = r.gen_range(1..=max_n);
    let m = r.gen_range(n..=max_m.max(n));
    let shape = random_shape(m, n, r);
    (random_partition(&shape, r), random_partition(&shape, r))
}

/// Random instance whose largest cluster has exactly `kappa` items.
pub fn random_instance_with_max(kappa: usize, max_n: usize, r: &mut impl Rng) -> (Partition, Partition) {
    let n = r.gen_range(1..=max_n);
    let mut shape: Vec<usize> = (0..n).map(|_| r.gen_range(1..=kappa)).collect();
    shape[r.gen_range(0..n)] = kappa;
    (random_partition(&shape, r), random_partition(&shape, r))
}

/// A random p-cycle of `p` with at least two items, if `p` has two
/// non-empty clusters.
pub fn random_p_cycle(p: &Partition, r: &mut impl Rng) -> Option<CycleSeq> {
    let mut clusters: Vec<usize> = (0..p.n()).filter(|&c| !p.items_of(c).is_empty()).collect();
    if clusters.len() < 2 {
        return None;
    }
    clusters.shuffle(r);
    let k = r.gen_range(2..=clusters.len());
    let items = clusters[..k]
        .iter()
        .map(|&c| *p.items_of(c).choose(r).expect("non-empty cluster"))
        .collect();
    Some(CycleSeq::new(items).expect("one item per cluster"))
}

/// Edge-disjoint random cycles added while every degree stays at most
/// `cap`.
pub fn random_eulerian(n: usize, cap: usize, tries: usize, r: &mut impl Rng) -> SimpleGraph {
    let mut edges = EdgeSet::new();
    if n >= 3 {
        for _ in 0..tries {
            let len = r.gen_range(3..=n);
            let mut verts: Vec<usize> = (0..n).collect();
            verts.shuffle(r);
            verts.truncate(len);
            let cyc = EdgeSet::cycle(&verts);
            if !cyc.is_disjoint(&edges) {
                continue;
            }
            let merged = edges.union(&cyc);
            if merged.degrees().values().all(|&d| d <= cap) {
                edges = merged;
            }
        }
    }
    SimpleGraph::from_edge_set(n, edges).expect("vertices below n")
}

/// Eulerian graph whose maximum degree is exactly `delta` (even, at
/// least 2); `n` must exceed `delta`.
pub fn random_eulerian_with_delta(n: usize, delta: usize, r: &mut impl Rng) -> SimpleGraph {
    assert!(delta >= 2 && delta.is_multiple_of(2) && n > delta);
    loop {
        let g = random_eulerian(n, delta, 4 * n, r);
        if g.degrees().delta == delta {
            return g;
        }
    }
}

/// Erdős–Rényi graph.
pub fn random_graph(n: usize, p: f64, r: &mut impl Rng) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_bool(p) {
                g.add_edge(a, b).expect("fresh edge");
            }
        }
    }
    g
}

/// Random graph with maximum degree exactly 4: edges are offered in random
/// order and kept while both ends have degree below 4.
pub fn random_max_degree_4(n: usize, r: &mut impl Rng) -> SimpleGraph {
    assert!(n >= 5);
    loop {
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        pairs.shuffle(r);
        let keep = r.gen_range(n..=2 * n);
        let mut g = SimpleGraph::new(n);
        let mut deg = vec![0; n];
        for (a, b) in pairs.into_iter().take(3 * keep) {
            if deg[a] < 4 && deg[b] < 4 && g.edge_count() < keep {
                g.add_edge(a, b).expect("fresh edge");
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        if g.degrees().delta == 4 {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eulerian_generator_hits_delta() {
        let mut r = rng(1);
        for delta in [2, 4, 6, 8] {
            let g = random_eulerian_with_delta(12, delta, &mut r);
            assert!(g.is_eulerian());
            assert_eq!(g.degrees().delta, delta);
        }
    }

    #[test]
    fn instances_share_shape() {
        let mut r = rng(2);
        for _ in 0..50 {
            let (p, q) = random_instance(30, 10, &mut r);
            assert_eq!(p.shape(), q.shape());
            assert!(p.m() <= 30 && p.n() <= 10);
        }
    }

    #[test]
    fn degree_four_generator() {
        let mut r = rng(3);
        for n in 5..16 {
            assert_eq!(random_max_degree_4(n, &mut r).degrees().delta, 4);
        }
    }
}
