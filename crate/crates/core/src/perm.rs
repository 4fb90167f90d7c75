//! Partitions of items into clusters, permutations of items, cyclic exchanges
//! and the two equivalent certificate forms for a walk between partitions.
//!
//! Composition is right to left throughout: `a.compose(&b)` is the map
//! `x ↦ a(b(x))`, and a partition composed with a permutation is
//! `(p∘π)(x) = p(π(x))`. A resolution `τ_1, …, τ_t` replays as
//! `p_i = p_{i−1}∘τ_i`, while a decomposition `σ_1, …, σ_t` describes the
//! single product `p∘σ_t∘⋯∘σ_1` in which `σ_1` acts first.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::Digraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("item {item} out of range for {m} items")]
    ItemOutOfRange { item: usize, m: usize },
    #[error("item {item} assigned to cluster {cluster}, but there are only {n} clusters")]
    ClusterOutOfRange { item: usize, cluster: usize, n: usize },
    #[error("image is not a bijection (value {value} repeated)")]
    NotBijection { value: usize },
    #[error("item {item} repeated in a cycle")]
    RepeatedItem { item: usize },
    #[error("factor {0} is not a p-cycle")]
    NotPCycle(usize),
    #[error("step {0} of the resolution is invalid")]
    InvalidResolution(usize),
}

/// An `(m, n)`-partition: item `x` lies in cluster `assign[x] < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    assign: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, assign: Vec<usize>) -> Result<Self, PermError> {
        if let Some((item, &cluster)) = assign.iter().enumerate().find(|(_, &c)| c >= n) {
            return Err(PermError::ClusterOutOfRange { item, cluster, n });
        }
        Ok(Partition { n, assign })
    }

    /// Items `0..κ_1` in cluster 0, the next `κ_2` in cluster 1, and so on.
    pub fn blocks(shape: &[usize]) -> Self {
        let assign = shape
            .iter()
            .enumerate()
            .flat_map(|(c, &k)| core::iter::repeat_n(c, k))
            .collect();
        Partition {
            n: shape.len(),
            assign,
        }
    }

    pub fn m(&self) -> usize {
        self.assign.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cluster(&self, item: usize) -> usize {
        self.assign[item]
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    pub fn into_assign(self) -> Vec<usize> {
        self.assign
    }

    /// Cluster sizes indexed by cluster.
    pub fn shape(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.n];
        for &c in &self.assign {
            sizes[c] += 1;
        }
        sizes
    }

    /// Cluster sizes in non-increasing order.
    pub fn sorted_shape(&self) -> Vec<usize> {
        let mut s = self.shape();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    pub fn items_of(&self, cluster: usize) -> Vec<usize> {
        (0..self.m()).filter(|&x| self.assign[x] == cluster).collect()
    }

    /// `p∘π`, i.e. item `x` goes to cluster `p(π(x))`.
    pub fn compose(&self, pi: &Permutation) -> Result<Partition, PermError> {
        same_size(self.m(), pi.m())?;
        let assign = (0..self.m()).map(|x| self.assign[pi.apply(x)]).collect();
        Ok(Partition { n: self.n, assign })
    }

    /// `p∘τ` for a cyclic exchange given by its items.
    pub fn apply_cycle(&self, tau: &CycleSeq) -> Partition {
        let mut assign = self.assign.clone();
        let k = tau.len();
        for i in 0..k {
            assign[tau.0[i]] = self.assign[tau.0[(i + 1) % k]];
        }
        Partition { n: self.n, assign }
    }

    /// Renames clusters: item `x` goes to `map[p(x)]`.
    pub fn relabel(&self, map: &[usize]) -> Partition {
        Partition {
            n: self.n,
            assign: self.assign.iter().map(|&c| map[c]).collect(),
        }
    }
}

fn same_size(left: usize, right: usize) -> Result<(), PermError> {
    if left == right {
        Ok(())
    } else {
        Err(PermError::SizeMismatch { left, right })
    }
}

/// A permutation of `0..m` stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            image: (0..m).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self, PermError> {
        let m = image.len();
        let mut seen = vec![false; m];
        for &v in &image {
            if v >= m {
                return Err(PermError::ItemOutOfRange { item: v, m });
            }
            if core::mem::replace(&mut seen[v], true) {
                return Err(PermError::NotBijection { value: v });
            }
        }
        Ok(Permutation { image })
    }

    pub fn from_cycle(m: usize, cycle: &CycleSeq) -> Result<Self, PermError> {
        Self::from_cycles(m, core::slice::from_ref(cycle))
    }

    /// Product of cycles with pairwise disjoint supports.
    pub fn from_cycles(m: usize, cycles: &[CycleSeq]) -> Result<Self, PermError> {
        let mut image: Vec<usize> = (0..m).collect();
        let mut seen = vec![false; m];
        for c in cycles {
            for &x in &c.0 {
                if x >= m {
                    return Err(PermError::ItemOutOfRange { item: x, m });
                }
                if core::mem::replace(&mut seen[x], true) {
                    return Err(PermError::RepeatedItem { item: x });
                }
            }
            let k = c.len();
            for i in 0..k {
                image[c.0[i]] = c.0[(i + 1) % k];
            }
        }
        Ok(Permutation { image })
    }

    pub fn m(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self∘b`: apply `b` first.
    pub fn compose(&self, b: &Permutation) -> Result<Permutation, PermError> {
        same_size(self.m(), b.m())?;
        Ok(Permutation {
            image: b.image.iter().map(|&y| self.image[y]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.m()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Moved items in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.m()).filter(|&x| self.image[x] != x).collect()
    }

    /// Non-trivial cycles, each starting at its smallest item, ordered by
    /// that item.
    pub fn cycles(&self) -> Vec<CycleSeq> {
        let mut seen = vec![false; self.m()];
        let mut out = Vec::new();
        for start in 0..self.m() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut items = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                items.push(x);
                x = self.image[x];
            }
            out.push(CycleSeq(items));
        }
        out
    }

    /// `pi⁻¹∘self∘pi`.
    pub fn conjugate(&self, pi: &Permutation) -> Result<Permutation, PermError> {
        pi.inverse().compose(&self.compose(pi)?)
    }
}

/// A cyclic exchange `(x_1 x_2 ⋯ x_k)` sending `x_i` to `x_{i+1}`. Lists of
/// length at most one denote the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleSeq(Vec<usize>);

impl CycleSeq {
    pub fn new(items: Vec<usize>) -> Result<Self, PermError> {
        let mut seen = BTreeSet::new();
        for &x in &items {
            if !seen.insert(x) {
                return Err(PermError::RepeatedItem { item: x });
            }
        }
        Ok(CycleSeq(items))
    }

    pub fn trivial() -> Self {
        CycleSeq(Vec::new())
    }

    pub fn items(&self) -> &[usize] {
        &self.0
    }

    pub fn into_items(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn to_permutation(&self, m: usize) -> Result<Permutation, PermError> {
        Permutation::from_cycle(m, self)
    }

    /// The cycle `(f(x_1) ⋯ f(x_k))`.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> CycleSeq {
        CycleSeq(self.0.iter().map(|&x| f(x)).collect())
    }

    /// True iff every item is in range and the items lie in distinct
    /// clusters of `p`.
    pub fn is_p_cycle(&self, p: &Partition) -> bool {
        let mut clusters = BTreeSet::new();
        let mut items = BTreeSet::new();
        self.0
            .iter()
            .all(|&x| x < p.m() && items.insert(x) && clusters.insert(p.cluster(x)))
    }
}

impl fmt::Display for CycleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// A walk of cyclic exchanges starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub start: Partition,
    pub taus: Vec<CycleSeq>,
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }

    /// `p_0, p_1, …, p_t`, or the index of the first exchange that is not a
    /// `p_{i−1}`-cycle.
    pub fn replay(&self) -> Result<Vec<Partition>, PermError> {
        let mut states = vec![self.start.clone()];
        for (i, tau) in self.taus.iter().enumerate() {
            let cur = states.last().unwrap();
            if !tau.is_p_cycle(cur) {
                return Err(PermError::InvalidResolution(i));
            }
            states.push(cur.apply_cycle(tau));
        }
        Ok(states)
    }

    pub fn end(&self) -> Result<Partition, PermError> {
        Ok(self.replay()?.pop().unwrap())
    }
}

pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation, PermError> {
    a.compose(b)
}

/// `p` is injective on the support of `pi`.
pub fn is_p_balanced(pi: &Permutation, p: &Partition) -> Result<bool, PermError> {
    same_size(pi.m(), p.m())?;
    let mut clusters = BTreeSet::new();
    Ok(pi.support().into_iter().all(|x| clusters.insert(p.cluster(x))))
}

/// `sigma` is p-balanced and has at most one non-trivial cycle.
pub fn is_p_cycle(sigma: &Permutation, p: &Partition) -> Result<bool, PermError> {
    Ok(is_p_balanced(sigma, p)? && sigma.cycles().len() <= 1)
}

/// Clustering difference graph: one arc `p(x) → q(x)` per item `x`, so arc id
/// equals item id.
pub fn cdg(p: &Partition, q: &Partition) -> Result<Digraph, PermError> {
    same_size(p.m(), q.m())?;
    same_size(p.n(), q.n())?;
    let mut g = Digraph::new(p.n());
    for x in 0..p.m() {
        g.add_arc(p.cluster(x), q.cluster(x))
            .expect("cluster ids are range-checked at construction");
    }
    Ok(g)
}

/// Converts `p∘σ_t∘⋯∘σ_1` (all `σ_i` p-cycles) into a resolution with
/// `τ_i = P⁻¹σ_iP`, `P = σ_{i−1}∘⋯∘σ_1`.
pub fn resolution_from_decomposition(p: &Partition, sigmas: &[CycleSeq]) -> Result<Resolution, PermError> {
    let m = p.m();
    for (i, s) in sigmas.iter().enumerate() {
        if !s.is_p_cycle(p) {
            return Err(PermError::NotPCycle(i));
        }
    }
    let mut prefix_sigma = Permutation::identity(m);
    let mut prefix_tau = Permutation::identity(m);
    let mut taus = Vec::with_capacity(sigmas.len());
    for s in sigmas {
        let p_inv = prefix_sigma.inverse();
        let tau = s.map(|x| p_inv.apply(x));
        prefix_tau = prefix_tau.compose(&tau.to_permutation(m)?)?;
        prefix_sigma = s.to_permutation(m)?.compose(&prefix_sigma)?;
        assert_eq!(prefix_tau, prefix_sigma, "τ_1⋯τ_i must equal σ_i⋯σ_1");
        taus.push(tau);
    }
    Ok(Resolution {
        start: p.clone(),
        taus,
    })
}

/// Inverse of [`resolution_from_decomposition`]: `σ_i = Qτ_iQ⁻¹` with
/// `Q = τ_1∘⋯∘τ_{i−1}`.
pub fn decomposition_from_resolution(r: &Resolution) -> Result<Vec<CycleSeq>, PermError> {
    r.replay()?;
    let m = r.start.m();
    let mut prefix_tau = Permutation::identity(m);
    let mut prefix_sigma = Permutation::identity(m);
    let mut sigmas = Vec::with_capacity(r.len());
    for tau in &r.taus {
        let sigma = tau.map(|x| prefix_tau.apply(x));
        prefix_tau = prefix_tau.compose(&tau.to_permutation(m)?)?;
        prefix_sigma = sigma.to_permutation(m)?.compose(&prefix_sigma)?;
        assert_eq!(prefix_tau, prefix_sigma, "τ_1⋯τ_i must equal σ_i⋯σ_1");
        sigmas.push(sigma);
    }
    Ok(sigmas)
}

/// Why a proposed resolution is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionFault {
    #[error("size mismatch: {0}")]
    Size(PermError),
    #[error("step {step}: item {item} out of range")]
    ItemOutOfRange { step: usize, item: usize },
    #[error("step {step}: item {item} repeated")]
    RepeatedItem { step: usize, item: usize },
    #[error("step {step}: cluster {cluster} hit twice, exchange is not balanced")]
    Unbalanced { step: usize, cluster: usize },
    #[error("final partition differs from the target at item {item}")]
    WrongTarget { item: usize },
}

/// Replays `taus` from `p` and checks every step and the endpoint.
pub fn check_resolution(p: &Partition, q: &Partition, taus: &[CycleSeq]) -> Result<(), ResolutionFault> {
    same_size(p.m(), q.m()).map_err(ResolutionFault::Size)?;
    same_size(p.n(), q.n()).map_err(ResolutionFault::Size)?;
    let mut cur = p.clone();
    for (step, tau) in taus.iter().enumerate() {
        let mut items = BTreeSet::new();
        let mut clusters = BTreeSet::new();
        for &item in tau.items() {
            if item >= cur.m() {
                return Err(ResolutionFault::ItemOutOfRange { step, item });
            }
            if !items.insert(item) {
                return Err(ResolutionFault::RepeatedItem { step, item });
            }
            let cluster = cur.cluster(item);
            if !clusters.insert(cluster) {
                return Err(ResolutionFault::Unbalanced { step, cluster });
            }
        }
        cur = cur.apply_cycle(tau);
    }
    match (0..p.m()).find(|&x| cur.cluster(x) != q.cluster(x)) {
        Some(item) => Err(ResolutionFault::WrongTarget { item }),
        None => Ok(()),
    }
}

pub fn verify_resolution(p: &Partition, q: &Partition, taus: &[CycleSeq]) -> bool {
    check_resolution(p, q, taus).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(items: &[usize]) -> CycleSeq {
        CycleSeq::new(items.to_vec()).unwrap()
    }

    fn perm(m: usize, cycles: &[&[usize]]) -> Permutation {
        let cs: Vec<CycleSeq> = cycles.iter().map(|c| cyc(c)).collect();
        Permutation::from_cycles(m, &cs).unwrap()
    }

    #[test]
    fn compose_is_right_to_left() {
        let a = perm(3, &[&[0, 1]]);
        let b = perm(3, &[&[1, 2]]);
        assert_eq!(a.compose(&b).unwrap().image(), &[1, 2, 0]);
        assert_eq!(Permutation::identity(3).compose(&a).unwrap(), a);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert_eq!(
            a.compose(&Permutation::identity(4)),
            Err(PermError::SizeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn balance_checks() {
        let p = Partition::new(2, vec![0, 0, 1]).unwrap();
        let id = Permutation::identity(3);
        assert!(is_p_balanced(&id, &p).unwrap());
        assert!(is_p_cycle(&id, &p).unwrap());
        assert!(!is_p_balanced(&perm(3, &[&[0, 1]]), &p).unwrap());
        let q = Partition::new(4, (0..8).map(|j| j % 4).collect()).unwrap();
        let s = perm(8, &[&[0, 1, 2, 3]]);
        assert!(is_p_cycle(&s, &q).unwrap());
        // balanced but two cycles
        let two = perm(8, &[&[0, 1], &[2, 3]]);
        assert!(is_p_balanced(&two, &q).unwrap());
        assert!(!is_p_cycle(&two, &q).unwrap());
    }

    #[test]
    fn cdg_of_four_clusters() {
        let p = Partition::new(4, vec![0, 0, 1, 1, 2, 2, 3, 3, 3]).unwrap();
        let q = Partition::new(4, vec![1, 2, 0, 0, 3, 3, 1, 2, 3]).unwrap();
        let g = cdg(&p, &q).unwrap();
        assert_eq!(g.m(), 9);
        assert_eq!(g.non_loop_arcs().len(), 8);
        assert!(g.is_loop(8));
        assert_eq!(g.tail(8), 3);
        assert!(g.is_eulerian());
    }

    #[test]
    fn cdg_of_identity_is_loops() {
        let p = Partition::blocks(&[2, 3]);
        let g = cdg(&p, &p).unwrap();
        assert_eq!(g.m(), 5);
        assert!(g.non_loop_arcs().is_empty());
    }

    #[test]
    fn cdg_of_swap_is_doubled_two_cycle() {
        let p = Partition::blocks(&[2, 2]);
        let q = Partition::new(2, vec![1, 1, 0, 0]).unwrap();
        let g = cdg(&p, &q).unwrap();
        let forward = g.arcs().filter(|&(_, t, h)| (t, h) == (0, 1)).count();
        let back = g.arcs().filter(|&(_, t, h)| (t, h) == (1, 0)).count();
        assert_eq!((forward, back), (2, 2));
    }

    #[test]
    fn prop21_small_example() {
        let p = Partition::new(3, vec![0, 1, 2]).unwrap();
        let sigmas = [cyc(&[0, 1]), cyc(&[0, 2])];
        let r = resolution_from_decomposition(&p, &sigmas).unwrap();
        assert_eq!(r.taus, vec![cyc(&[0, 1]), cyc(&[1, 2])]);
        let t1 = r.taus[0].to_permutation(3).unwrap();
        let t2 = r.taus[1].to_permutation(3).unwrap();
        let s1 = sigmas[0].to_permutation(3).unwrap();
        let s2 = sigmas[1].to_permutation(3).unwrap();
        let product = t1.compose(&t2).unwrap();
        assert_eq!(product, s2.compose(&s1).unwrap());
        assert_eq!(product.cycles().len(), 1);
        assert_eq!(product.support().len(), 3);
        assert_eq!(decomposition_from_resolution(&r).unwrap(), sigmas.to_vec());
    }

    #[test]
    fn prop21_degenerate_lengths() {
        let p = Partition::blocks(&[1, 1, 1]);
        let r = resolution_from_decomposition(&p, &[]).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.end().unwrap(), p);
        let r = resolution_from_decomposition(&p, &[cyc(&[2, 0])]).unwrap();
        assert_eq!(r.taus, vec![cyc(&[2, 0])]);
        assert_eq!(decomposition_from_resolution(&r).unwrap(), vec![cyc(&[2, 0])]);
    }

    #[test]
    fn rejects_non_p_cycle_factor() {
        let p = Partition::new(2, vec![0, 0, 1]).unwrap();
        assert_eq!(
            resolution_from_decomposition(&p, &[cyc(&[0, 2]), cyc(&[0, 1])]),
            Err(PermError::NotPCycle(1))
        );
        let bad = Resolution {
            start: p,
            taus: vec![cyc(&[0, 1])],
        };
        assert_eq!(
            decomposition_from_resolution(&bad),
            Err(PermError::InvalidResolution(0))
        );
    }

    #[test]
    fn verify_twelve_point_decomposition() {
        // π has cycles (0..3)(4..8)(9..11); every item in its own cluster.
        let p = Partition::new(12, (0..12).collect()).unwrap();
        let sigma1 = cyc(&(0..12).collect::<Vec<_>>());
        let sigma2 = cyc(&[9, 4, 0]);
        let pi = perm(12, &[&[0, 1, 2, 3], &[4, 5, 6, 7, 8], &[9, 10, 11]]);
        let q = p.compose(&pi).unwrap();
        let r = resolution_from_decomposition(&p, &[sigma1, sigma2]).unwrap();
        assert!(verify_resolution(&p, &q, &r.taus));
    }

    #[test]
    fn verify_rejects_faults() {
        let p = Partition::new(2, vec![0, 0, 1, 1]).unwrap();
        assert!(verify_resolution(&p, &p, &[]));
        assert_eq!(
            check_resolution(&p, &p, &[cyc(&[0, 1])]),
            Err(ResolutionFault::Unbalanced { step: 0, cluster: 0 })
        );
        let q = Partition::new(2, vec![1, 0, 0, 1]).unwrap();
        assert!(verify_resolution(&p, &q, &[cyc(&[0, 2])]));
        assert_eq!(
            check_resolution(&p, &q, &[]),
            Err(ResolutionFault::WrongTarget { item: 0 })
        );
        assert_eq!(
            check_resolution(&p, &q, &[cyc(&[0, 9])]),
            Err(ResolutionFault::ItemOutOfRange { step: 0, item: 9 })
        );
    }
}
