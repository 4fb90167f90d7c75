//! Short resolutions between partitions of equal shape, together with the
//! lower-bound instance families and the progress-measure bound they admit.
//!
//! The upper-bound pipeline factors `q = p∘σ⋯σ∘π⋯π` through a polycycle
//! decomposition of the CDG, rewrites every pair of balanced permutations as
//! three cyclic exchanges (and a leftover one as two), then converts the
//! resulting decomposition into a resolution.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::Digraph;
use crate::perm::{
    cdg, check_resolution, is_p_balanced, resolution_from_decomposition, CycleSeq, Partition, PermError,
    Permutation, Resolution,
};
use crate::polycycle::{balanced_permutation_factorization, PolycycleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("permutation is not balanced with respect to the partition")]
    NotBalanced,
    #[error("permutations have overlapping supports")]
    SupportsOverlap,
    #[error("partitions do not have the same shape")]
    ShapeMismatch,
    #[error("edge list is not a matching on {n} clusters")]
    NotAMatching { n: usize },
    #[error("shape must have at least 4 non-increasing cluster sizes")]
    BadShape,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Polycycle(#[from] PolycycleError),
}

/// A split of the clusters `0..n` into two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorClasses {
    first: Vec<bool>,
}

impl ColorClasses {
    pub fn in_s1(&self, cluster: usize) -> bool {
        self.first[cluster]
    }

    pub fn s1(&self) -> Vec<usize> {
        (0..self.first.len()).filter(|&c| self.first[c]).collect()
    }

    pub fn s2(&self) -> Vec<usize> {
        (0..self.first.len()).filter(|&c| !self.first[c]).collect()
    }

    fn swap(&mut self) {
        self.first.iter_mut().for_each(|b| *b = !*b);
    }

    /// Every pair has exactly one endpoint on each side.
    pub fn splits(&self, pairs: &[(usize, usize)]) -> bool {
        pairs.iter().all(|&(a, b)| self.first[a] != self.first[b])
    }
}

fn check_matching(m: &[(usize, usize)], n: usize) -> Result<(), ResolveError> {
    let mut seen = BTreeSet::new();
    for &(a, b) in m {
        if a == b || a >= n || b >= n || !seen.insert(a) || !seen.insert(b) {
            return Err(ResolveError::NotAMatching { n });
        }
    }
    Ok(())
}

/// Properly 2-colours the union of two matchings on `0..n` (it has no odd
/// cycle). The smallest cluster of each component, and every isolated
/// cluster, goes to the first side.
pub fn two_color_matchings(
    m1: &[(usize, usize)],
    m2: &[(usize, usize)],
    n: usize,
) -> Result<ColorClasses, ResolveError> {
    check_matching(m1, n)?;
    check_matching(m2, n)?;
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in m1.iter().chain(m2) {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(true);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let cu = color[u].unwrap();
            for &w in &adj[u] {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        stack.push(w);
                    }
                    Some(cw) => debug_assert_ne!(cw, cu, "union of two matchings is bipartite"),
                }
            }
        }
    }
    Ok(ColorClasses {
        first: color.into_iter().map(Option::unwrap).collect(),
    })
}

fn nontrivial(c: CycleSeq) -> CycleSeq {
    if c.is_trivial() {
        CycleSeq::trivial()
    } else {
        c
    }
}

/// Writes a balanced permutation as `s2∘s1` with both factors p-cycles:
/// `s1` concatenates the cycles (ordered and rotated by smallest item), `s2`
/// runs backwards through their first items. Trivial factors come back empty.
pub fn pcycles_from_balanced(p: &Partition, pi: &Permutation) -> Result<(CycleSeq, CycleSeq), ResolveError> {
    if !is_p_balanced(pi, p)? {
        return Err(ResolveError::NotBalanced);
    }
    let cycles = pi.cycles();
    let s1: Vec<usize> = cycles.iter().flat_map(|c| c.items().iter().copied()).collect();
    let s2: Vec<usize> = cycles.iter().rev().map(|c| c.items()[0]).collect();
    let s1 = nontrivial(CycleSeq::new(s1)?);
    let s2 = nontrivial(CycleSeq::new(s2)?);
    let m = p.m();
    debug_assert_eq!(s2.to_permutation(m)?.compose(&s1.to_permutation(m)?)?, *pi);
    Ok((s1, s2))
}

fn rotate_to(items: &mut [usize], lead: usize) {
    let at = items
        .iter()
        .position(|&x| x == lead)
        .expect("lead item lies on the cycle");
    items.rotate_left(at);
}

/// Three p-cycles `s1, s2, s3` (in application order, trivial ones dropped)
/// with `p∘s3∘s2∘s1 = p∘pi2∘pi1` and the same support.
pub fn pcycles_from_pair(
    p: &Partition,
    pi1: &Permutation,
    pi2: &Permutation,
) -> Result<Vec<CycleSeq>, ResolveError> {
    if !is_p_balanced(pi1, p)? || !is_p_balanced(pi2, p)? {
        return Err(ResolveError::NotBalanced);
    }
    let sup1 = pi1.support();
    let sup2 = pi2.support();
    let sup2_set: BTreeSet<usize> = sup2.iter().copied().collect();
    if sup1.iter().any(|x| sup2_set.contains(x)) {
        return Err(ResolveError::SupportsOverlap);
    }
    let m = p.m();
    let product = pi2.compose(pi1)?;
    if is_p_balanced(&product, p)? {
        let (s1, s2) = pcycles_from_balanced(p, &product)?;
        return Ok([s1, s2].into_iter().filter(|c| !c.is_empty()).collect());
    }
    let (x, y) = sup1
        .iter()
        .flat_map(|&x| sup2.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| p.cluster(x) == p.cluster(y))
        .expect("an unbalanced product has a colliding pair");

    let mut cs: Vec<Vec<usize>> = pi1.cycles().into_iter().map(CycleSeq::into_items).collect();
    let first = cs.iter().position(|c| c.contains(&x)).unwrap();
    let c1 = cs.remove(first);
    cs.insert(0, c1);
    let mut ds: Vec<Vec<usize>> = pi2.cycles().into_iter().map(CycleSeq::into_items).collect();
    let last = ds.iter().position(|d| d.contains(&y)).unwrap();
    let ds_last = ds.remove(last);
    ds.push(ds_last);

    let pair = |c: &[usize]| (p.cluster(c[0]), p.cluster(c[1]));
    let e: Vec<(usize, usize)> = cs.iter().map(|c| pair(c)).collect();
    let mut f: Vec<(usize, usize)> = ds.iter().map(|d| pair(d)).collect();
    *f.last_mut().unwrap() = (p.cluster(y), p.cluster(pi2.apply(y)));
    let mut classes = two_color_matchings(&e, &f, p.n())?;
    if !classes.in_s1(p.cluster(x)) {
        classes.swap();
    }

    for (i, c) in cs.iter_mut().enumerate() {
        let lead = if i == 0 {
            x
        } else {
            *c.iter().find(|&&z| classes.in_s1(p.cluster(z))).unwrap()
        };
        rotate_to(c, lead);
    }
    let s = ds.len();
    for (i, d) in ds.iter_mut().enumerate() {
        let lead = if i + 1 == s {
            pi2.apply(y)
        } else {
            *d.iter().find(|&&z| !classes.in_s1(p.cluster(z))).unwrap()
        };
        rotate_to(d, lead);
    }
    debug_assert_eq!(*ds[s - 1].last().unwrap(), y);

    let sigma1: Vec<usize> = cs.iter().flatten().copied().collect();
    let mut sigma2: Vec<usize> = ds.iter().flatten().copied().collect();
    sigma2.pop();
    sigma2.push(x);
    let mut sigma3: Vec<usize> = ds.iter().rev().map(|d| d[0]).collect();
    sigma3.extend(cs[1..].iter().rev().map(|c| c[0]));
    sigma3.push(y);

    let sigmas = [sigma1, sigma2, sigma3].map(|s| nontrivial(CycleSeq::new(s).unwrap()));
    let mut composite = Permutation::identity(m);
    for s in &sigmas {
        assert!(s.is_p_cycle(p), "three-step factor {s} is not a p-cycle");
        composite = s.to_permutation(m)?.compose(&composite)?;
    }
    let swap = CycleSeq::new(vec![x, y])?.to_permutation(m)?;
    assert_eq!(swap.compose(&composite)?, product, "π2π1 = (x y)σ3σ2σ1 must hold");
    Ok(sigmas.into_iter().filter(|c| !c.is_empty()).collect())
}

/// `κ_1 + ⌈κ_2/2⌉` for the two largest entries of `shape`.
pub fn resolution_length_bound(shape: &[usize]) -> usize {
    let mut s = shape.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    let k1 = s.first().copied().unwrap_or(0);
    let k2 = s.get(1).copied().unwrap_or(0);
    k1 + k2.div_ceil(2)
}

/// A verified resolution of `(p, q)` of length at most `κ_1 + ⌈κ_2/2⌉`.
pub fn resolve(p: &Partition, q: &Partition) -> Result<Resolution, ResolveError> {
    if p.m() != q.m() || p.n() != q.n() || p.shape() != q.shape() {
        return Err(ResolveError::ShapeMismatch);
    }
    let f = balanced_permutation_factorization(p, q)?;
    let mut sigmas = f.sigmas;
    for pair in f.pis.chunks(2) {
        match pair {
            [a, b] => sigmas.extend(pcycles_from_pair(p, a, b)?),
            [a] => {
                let (s1, s2) = pcycles_from_balanced(p, a)?;
                sigmas.extend([s1, s2].into_iter().filter(|c| !c.is_empty()));
            }
            _ => unreachable!(),
        }
    }
    let r = resolution_from_decomposition(p, &sigmas)?;
    if let Err(fault) = check_resolution(p, q, &r.taus) {
        panic!("constructed resolution failed verification: {fault}");
    }
    assert!(r.len() <= resolution_length_bound(&p.shape()));
    Ok(r)
}

/// Which lower-bound CDG a generated instance realises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LowerBoundFamily {
    /// Disjoint doubled 2-cycles on clusters `(0,1), (2,3), …`.
    EvenTwoCycles,
    /// Doubled 2-cycles plus one 3-cycle on the last three clusters.
    OddTwoCyclesThreeCycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundInstance {
    pub p: Partition,
    pub q: Partition,
    pub bound: usize,
    pub family: LowerBoundFamily,
}

fn check_shape(shape: &[usize]) -> Result<(), ResolveError> {
    if shape.len() < 4 || shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(ResolveError::BadShape);
    }
    Ok(())
}

/// The lower bound for a non-increasing shape with at least four clusters.
pub fn lower_bound_formula(shape: &[usize]) -> Result<usize, ResolveError> {
    check_shape(shape)?;
    let n = shape.len();
    // κ_2, κ_4, … sit at even 1-based positions
    let (weight, denom) = if n.is_multiple_of(2) {
        let w: usize = (1..n).step_by(2).map(|i| 2 * shape[i]).sum();
        (w, 3 * n)
    } else {
        let w: usize = (1..n - 3).step_by(2).map(|i| 2 * shape[i]).sum::<usize>() + 3 * shape[n - 1];
        (w, 3 * n + 1)
    };
    Ok((4 * weight).div_ceil(denom))
}

/// The lower-bound instance on a non-increasing `shape`: items are laid out
/// cluster by cluster, and the first `k` items of each cluster in a
/// multiplicity-`k` cycle move one cluster along it.
pub fn gen_lower_bound_instance(shape: &[usize]) -> Result<LowerBoundInstance, ResolveError> {
    let bound = lower_bound_formula(shape)?;
    let n = shape.len();
    let p = Partition::blocks(shape);
    let mut offset = vec![0; n + 1];
    for c in 0..n {
        offset[c + 1] = offset[c] + shape[c];
    }
    let mut target = p.assign().to_vec();
    let mut rotate = |cycle: &[usize], k: usize| {
        for (i, &c) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            target[offset[c]..offset[c] + k].fill(next);
        }
    };
    let (pairs, family) = if n.is_multiple_of(2) {
        (n / 2, LowerBoundFamily::EvenTwoCycles)
    } else {
        (n.saturating_sub(3) / 2, LowerBoundFamily::OddTwoCyclesThreeCycle)
    };
    for i in 0..pairs {
        rotate(&[2 * i, 2 * i + 1], shape[2 * i + 1]);
    }
    if family == LowerBoundFamily::OddTwoCyclesThreeCycle {
        rotate(&[n - 3, n - 2, n - 1], shape[n - 1]);
    }
    let q = Partition::new(n, target)?;
    Ok(LowerBoundInstance { p, q, bound, family })
}

/// True when the non-loop arcs of `g` form vertex-disjoint doubled 2-cycles
/// (equal multiplicity both ways) plus at most one 3-cycle of equal
/// multiplicity on every arc.
pub fn in_two_cycle_family(g: &Digraph) -> bool {
    let n = g.n();
    let mut count = alloc::collections::BTreeMap::new();
    for a in g.non_loop_arcs() {
        *count.entry((g.tail(a), g.head(a))).or_insert(0usize) += 1;
    }
    let mut succ = vec![None; n];
    for &(t, h) in count.keys() {
        if succ[t].replace(h).is_some() {
            return false;
        }
    }
    let mut seen = vec![false; n];
    let mut triangles = 0;
    for start in 0..n {
        if seen[start] || succ[start].is_none() {
            continue;
        }
        let mut cycle = vec![start];
        let mut cur = start;
        seen[start] = true;
        loop {
            match succ[cur] {
                Some(next) if next == start => break,
                Some(next) if !seen[next] => {
                    seen[next] = true;
                    cycle.push(next);
                    cur = next;
                }
                _ => return false,
            }
        }
        let k = count[&(cycle[cycle.len() - 1], cycle[0])];
        if cycle.windows(2).any(|w| count[&(w[0], w[1])] != k) {
            return false;
        }
        match cycle.len() {
            2 => {}
            3 => triangles += 1,
            _ => return false,
        }
    }
    triangles <= 1
}

/// Largest possible progress gain `s_i − s_{i−1}` of one exchange: for the
/// two-cycle family at most `⌊(n+1)/2⌋` items can make a whole move, and in
/// general every one of at most `n` moved items gains at most 2.
pub fn progress_gain_cap(g: &Digraph) -> usize {
    let n = g.n();
    if n >= 4 && in_two_cycle_family(g) {
        n + n.div_ceil(2)
    } else {
        2 * n
    }
}

/// `⌈2|S| / cap⌉` where `S` is the set of items that change cluster.
pub fn progress_lower_bound(p: &Partition, q: &Partition) -> Result<usize, ResolveError> {
    if p.m() != q.m() || p.n() != q.n() || p.shape() != q.shape() {
        return Err(ResolveError::ShapeMismatch);
    }
    let g = cdg(p, q)?;
    let moved = g.non_loop_arcs().len();
    if moved == 0 {
        return Ok(0);
    }
    Ok((2 * moved).div_ceil(progress_gain_cap(&g)))
}

/// Item ids of the two item families in the six-cluster instance:
/// `a(i, j)` for `i, j ∈ 0..3` is the `j`-th item starting in `B_i`.
pub fn pp36_a(i: usize, j: usize) -> usize {
    3 * i + j
}

/// `b(i, j)`: the `j`-th item starting in `A_i`.
pub fn pp36_b(i: usize, j: usize) -> usize {
    9 + 3 * i + j
}

/// Clusters `A_i = i`, `B_i = 3 + i`. Every `a`-item swaps from `B_i` to
/// `A_i` and every `b`-item from `A_i` to `B_i`.
pub fn gen_pp36_instance() -> (Partition, Partition) {
    let mut p = vec![0; 18];
    let mut q = vec![0; 18];
    for i in 0..3 {
        for j in 0..3 {
            p[pp36_a(i, j)] = 3 + i;
            q[pp36_a(i, j)] = i;
            p[pp36_b(i, j)] = i;
            q[pp36_b(i, j)] = 3 + i;
        }
    }
    (Partition::new(6, p).unwrap(), Partition::new(6, q).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::verify_resolution;

    fn cyc(items: &[usize]) -> CycleSeq {
        CycleSeq::new(items.to_vec()).unwrap()
    }

    fn perm(m: usize, cycles: &[&[usize]]) -> Permutation {
        let cs: Vec<CycleSeq> = cycles.iter().map(|c| cyc(c)).collect();
        Permutation::from_cycles(m, &cs).unwrap()
    }

    #[test]
    fn coloring_examples() {
        let c = two_color_matchings(&[(0, 1), (2, 3)], &[(1, 2)], 4).unwrap();
        assert_eq!((c.s1(), c.s2()), (vec![0, 2], vec![1, 3]));
        let c = two_color_matchings(&[], &[], 3).unwrap();
        assert_eq!(c.s1(), vec![0, 1, 2]);
        let c = two_color_matchings(&[(0, 1)], &[(0, 1)], 2).unwrap();
        assert_eq!((c.s1(), c.s2()), (vec![0], vec![1]));
        assert_eq!(
            two_color_matchings(&[(0, 1), (1, 2)], &[], 3),
            Err(ResolveError::NotAMatching { n: 3 })
        );
    }

    #[test]
    fn balanced_examples() {
        let p = Partition::new(12, (0..12).collect()).unwrap();
        let pi = perm(12, &[&[0, 1, 2, 3], &[4, 5, 6, 7, 8], &[9, 10, 11]]);
        let (s1, s2) = pcycles_from_balanced(&p, &pi).unwrap();
        assert_eq!(s1, cyc(&(0..12).collect::<Vec<_>>()));
        assert_eq!(s2, cyc(&[9, 4, 0]));

        let single = perm(12, &[&[3, 7, 5]]);
        let (s1, s2) = pcycles_from_balanced(&p, &single).unwrap();
        assert_eq!((s1, s2), (cyc(&[3, 7, 5]), CycleSeq::trivial()));

        let (s1, s2) = pcycles_from_balanced(&p, &Permutation::identity(12)).unwrap();
        assert!(s1.is_empty() && s2.is_empty());

        let q = Partition::new(2, vec![0, 0, 1]).unwrap();
        assert_eq!(
            pcycles_from_balanced(&q, &perm(3, &[&[0, 1]])),
            Err(ResolveError::NotBalanced)
        );
    }

    #[test]
    fn three_step_small_example() {
        let p = Partition::new(3, vec![0, 1, 0, 2]).unwrap();
        let pi1 = perm(4, &[&[0, 1]]);
        let pi2 = perm(4, &[&[2, 3]]);
        let s = pcycles_from_pair(&p, &pi1, &pi2).unwrap();
        assert_eq!(s, vec![cyc(&[0, 1]), cyc(&[3, 0]), cyc(&[3, 2])]);
    }

    #[test]
    fn three_step_balanced_shortcut() {
        let p = Partition::new(4, vec![0, 1, 2, 3]).unwrap();
        let s = pcycles_from_pair(&p, &perm(4, &[&[0, 1]]), &perm(4, &[&[2, 3]])).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn three_step_decomposition_lengths() {
        // π1 has cycles of lengths 4, 5, 3 over clusters 0..11, π2 cycles
        // of lengths 4, 3, 3 over clusters 0..9.
        let mut assign: Vec<usize> = (0..12).collect();
        assign.extend(0..10);
        let p = Partition::new(12, assign).unwrap();
        let pi1 = perm(22, &[&[0, 1, 2, 3], &[4, 5, 6, 7, 8], &[9, 10, 11]]);
        let pi2 = perm(22, &[&[12, 13, 14, 15], &[16, 17, 18], &[19, 20, 21]]);
        let s = pcycles_from_pair(&p, &pi1, &pi2).unwrap();
        let lens: Vec<usize> = s.iter().map(CycleSeq::len).collect();
        assert_eq!(lens, vec![12, 10, 6]);
    }

    #[test]
    fn three_step_rejects_overlap() {
        let p = Partition::new(4, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(
            pcycles_from_pair(&p, &perm(4, &[&[0, 1]]), &perm(4, &[&[1, 2]])),
            Err(ResolveError::SupportsOverlap)
        );
    }

    #[test]
    fn resolve_small_cases() {
        let p = Partition::blocks(&[2, 2, 2, 2]);
        assert!(resolve(&p, &p).unwrap().is_empty());
        let inst = gen_lower_bound_instance(&[2, 2, 2, 2]).unwrap();
        let r = resolve(&inst.p, &inst.q).unwrap();
        assert!(r.len() <= 3);
        assert!(verify_resolution(&inst.p, &inst.q, &r.taus));
        let (p, q) = gen_pp36_instance();
        let r = resolve(&p, &q).unwrap();
        assert!(r.len() <= 5);
        assert!(verify_resolution(&p, &q, &r.taus));
    }

    #[test]
    fn resolve_rejects_shape_mismatch() {
        let p = Partition::new(2, vec![0, 0, 1]).unwrap();
        let q = Partition::new(2, vec![0, 1, 1]).unwrap();
        assert_eq!(resolve(&p, &q), Err(ResolveError::ShapeMismatch));
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(gen_lower_bound_instance(&[2, 2, 2, 2]).unwrap().bound, 3);
        assert_eq!(gen_lower_bound_instance(&[3; 6]).unwrap().bound, 4);
        let long_odd = [3, 3, 3, 3, 2, 2, 2, 2, 2, 2, 2];
        let inst = gen_lower_bound_instance(&long_odd).unwrap();
        assert_eq!(inst.family, LowerBoundFamily::OddTwoCyclesThreeCycle);
        // 2·3 + 2·3 + 2·2 + 2·2 + 3·2 = 26 moved items, 4·26/34 rounds up to 4
        assert_eq!(inst.bound, 4);
        let g = cdg(&inst.p, &inst.q).unwrap();
        assert_eq!(g.non_loop_arcs().len(), 26);
        assert!(in_two_cycle_family(&g));
        assert_eq!(progress_lower_bound(&inst.p, &inst.q).unwrap(), 4);
        assert_eq!(gen_lower_bound_instance(&[1, 1, 1]), Err(ResolveError::BadShape));
        assert_eq!(
            gen_lower_bound_instance(&[1, 2, 1, 1]),
            Err(ResolveError::BadShape)
        );
    }

    #[test]
    fn progress_examples() {
        let inst = gen_lower_bound_instance(&[2, 2, 2, 2]).unwrap();
        assert_eq!(progress_lower_bound(&inst.p, &inst.q).unwrap(), 3);
        assert_eq!(progress_lower_bound(&inst.p, &inst.p).unwrap(), 0);
    }

    #[test]
    fn pp36_shape() {
        let (p, q) = gen_pp36_instance();
        assert_eq!(p.shape(), vec![3; 6]);
        assert_eq!(q.shape(), vec![3; 6]);
        let g = cdg(&p, &q).unwrap();
        assert_eq!(g.non_loop_arcs().len(), 18);
        assert!(in_two_cycle_family(&g));
        assert_eq!(progress_gain_cap(&g), 9);
    }
}
