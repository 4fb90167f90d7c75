//! Decompositions of Eulerian (di)graphs into polycycles, the induced
//! factorization of a partition pair into balanced permutations, and the
//! two-part odd-cover of a polycycle.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{
    classify, components, cycle_vertices, eulerian_orientation, Digraph, Edge, EdgeSet, GraphError, Kind,
    SimpleGraph,
};
use crate::perm::{cdg, CycleSeq, Partition, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolycycleError {
    #[error("graph is not Eulerian (vertex {vertex})")]
    NotEulerian { vertex: usize },
    #[error("threshold {threshold} exceeded at vertices {vertices:?}")]
    ThresholdViolated { threshold: usize, vertices: Vec<usize> },
    #[error("partition shapes differ")]
    ShapeMismatch,
    #[error("edge set is not a polycycle")]
    NotPolycycle,
    #[error(transparent)]
    Perm(#[from] PermError),
}

impl From<GraphError> for PolycycleError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NotEulerian { vertex, .. } => PolycycleError::NotEulerian { vertex },
            _ => unreachable!("only the Eulerian check can fail on a validated graph"),
        }
    }
}

/// Edge-disjoint parts covering every non-loop edge; the last
/// `cycle_suffix_len` parts are single cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolycycleDecomposition<P> {
    pub parts: Vec<P>,
    pub cycle_suffix_len: usize,
}

/// Arc ids of `g` per part.
pub type DirectedDecomposition = PolycycleDecomposition<Vec<usize>>;
pub type UndirectedDecomposition = PolycycleDecomposition<EdgeSet>;

/// Hopcroft–Karp on a bipartite multigraph whose left and right sides are
/// both `0..n`; `arcs[i] = (left, right)`. Returns the matched arc per left
/// vertex.
struct Matcher<'a> {
    arcs: &'a [(usize, usize)],
    adj: Vec<Vec<usize>>,
    match_l: Vec<Option<usize>>,
    match_r: Vec<Option<usize>>,
    dist: Vec<usize>,
    cursor: Vec<usize>,
}

impl<'a> Matcher<'a> {
    const INF: usize = usize::MAX;

    fn new(n: usize, arcs: &'a [(usize, usize)], alive: &[bool]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (i, &(l, _)) in arcs.iter().enumerate() {
            if alive[i] {
                adj[l].push(i);
            }
        }
        Matcher {
            arcs,
            adj,
            match_l: vec![None; n],
            match_r: vec![None; n],
            dist: vec![0; n],
            cursor: vec![0; n],
        }
    }

    fn bfs(&mut self) -> bool {
        let n = self.adj.len();
        let mut queue = Vec::with_capacity(n);
        for u in 0..n {
            if self.match_l[u].is_none() {
                self.dist[u] = 0;
                queue.push(u);
            } else {
                self.dist[u] = Self::INF;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &a in &self.adj[u] {
                match self.match_r[self.arcs[a].1] {
                    None => found = true,
                    Some(b) => {
                        let w = self.arcs[b].0;
                        if self.dist[w] == Self::INF {
                            self.dist[w] = self.dist[u] + 1;
                            queue.push(w);
                        }
                    }
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        while self.cursor[u] < self.adj[u].len() {
            let a = self.adj[u][self.cursor[u]];
            self.cursor[u] += 1;
            let r = self.arcs[a].1;
            let ok = match self.match_r[r] {
                None => true,
                Some(b) => {
                    let w = self.arcs[b].0;
                    self.dist[w] == self.dist[u] + 1 && self.dfs(w)
                }
            };
            if ok {
                self.match_l[u] = Some(a);
                self.match_r[r] = Some(a);
                return true;
            }
        }
        self.dist[u] = Self::INF;
        false
    }

    fn run(mut self) -> Vec<Option<usize>> {
        while self.bfs() {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            for u in 0..self.adj.len() {
                if self.match_l[u].is_none() {
                    self.dfs(u);
                }
            }
        }
        self.match_l
    }
}

/// Splits an Eulerian digraph with all out-degrees at most `rounds` into
/// `rounds` directed polycycles by padding loops and peeling perfect
/// matchings. `arcs` lists `(tail, head, id)`; padded loops carry no id.
fn peel(n: usize, arcs: &[(usize, usize, usize)], rounds: usize) -> Vec<Vec<usize>> {
    let mut out = vec![0usize; n];
    for &(t, _, _) in arcs {
        out[t] += 1;
    }
    let mut pairs: Vec<(usize, usize)> = arcs.iter().map(|&(t, h, _)| (t, h)).collect();
    let mut ids: Vec<Option<usize>> = arcs.iter().map(|&(_, _, id)| Some(id)).collect();
    for (v, &d) in out.iter().enumerate() {
        assert!(d <= rounds, "out-degree above the number of rounds");
        for _ in d..rounds {
            pairs.push((v, v));
            ids.push(None);
        }
    }
    let mut alive = vec![true; pairs.len()];
    let mut parts = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let matching = Matcher::new(n, &pairs, &alive).run();
        let mut part = Vec::new();
        for a in matching {
            let a = a.expect("a regular bipartite multigraph has a perfect matching");
            alive[a] = false;
            if let Some(id) = ids[a] {
                if pairs[a].0 != pairs[a].1 {
                    part.push(id);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// Pulls one simple directed cycle through `v` out of the unused arcs:
/// follow the lowest-id unused arc; whenever the walk revisits a vertex other
/// than `v`, drop the closed detour. A loop at `v` yields an empty cycle.
fn cycle_through(g: &Digraph, v: usize, used: &mut [bool], out_arcs: &[Vec<usize>]) -> Vec<usize> {
    let mut blocked = vec![false; g.m()];
    let mut path: Vec<usize> = Vec::new();
    let mut pos = vec![usize::MAX; g.n()];
    pos[v] = 0;
    let mut cur = v;
    loop {
        let a = *out_arcs[cur]
            .iter()
            .find(|&&a| !used[a] && !blocked[a] && !path.contains(&a))
            .expect("balanced residual always continues the walk");
        let next = g.head(a);
        if next == v {
            path.push(a);
            break;
        }
        if pos[next] != usize::MAX {
            // detour next → … → cur → next is closed; cut it off
            let keep = pos[next];
            for &b in &path[keep..] {
                blocked[b] = true;
                pos[g.head(b)] = usize::MAX;
            }
            blocked[a] = true;
            path.truncate(keep);
            pos[next] = keep;
            cur = next;
            continue;
        }
        path.push(a);
        pos[next] = path.len();
        cur = next;
    }
    for &a in &path {
        used[a] = true;
    }
    path.retain(|&a| !g.is_loop(a));
    path.sort_unstable();
    path
}

/// Decomposes an Eulerian digraph into `Δ` directed polycycles (`Δ` the
/// maximum out-degree, loops counted). When `t < Δ`, the last `Δ − t` parts
/// are single directed cycles through the unique vertex of out-degree
/// above `t`.
pub fn directed_polycycle_decomposition(
    g: &Digraph,
    t: usize,
) -> Result<DirectedDecomposition, PolycycleError> {
    let outd = g.out_degrees();
    let ind = g.in_degrees();
    if let Some(vertex) = (0..g.n()).find(|&v| outd[v] != ind[v]) {
        return Err(PolycycleError::NotEulerian { vertex });
    }
    let delta = outd.iter().copied().max().unwrap_or(0);
    let t = t.min(delta);
    let mut used = vec![false; g.m()];
    let mut suffix = Vec::new();
    if t < delta {
        let high: Vec<usize> = (0..g.n()).filter(|&v| outd[v] > t).collect();
        if high.len() > 1 {
            return Err(PolycycleError::ThresholdViolated {
                threshold: t,
                vertices: high,
            });
        }
        let v = high[0];
        let mut out_arcs = vec![Vec::new(); g.n()];
        for (a, tail, _) in g.arcs() {
            out_arcs[tail].push(a);
        }
        for _ in t..delta {
            suffix.push(cycle_through(g, v, &mut used, &out_arcs));
        }
    }
    let rest: Vec<(usize, usize, usize)> = g
        .arcs()
        .filter(|&(a, _, _)| !used[a])
        .map(|(a, tl, hd)| (tl, hd, a))
        .collect();
    let mut parts = peel(g.n(), &rest, t);
    let cycle_suffix_len = suffix.len();
    parts.extend(suffix);
    Ok(PolycycleDecomposition {
        parts,
        cycle_suffix_len,
    })
}

/// Decomposes an Eulerian graph into `Δ/2` polycycles via an Eulerian
/// orientation. When `t < Δ/2` and only one vertex has degree above `2t`,
/// the last `Δ/2 − t` parts are single cycles through it.
pub fn undirected_polycycle_decomposition(
    g: &SimpleGraph,
    t: usize,
) -> Result<UndirectedDecomposition, PolycycleError> {
    let oriented = eulerian_orientation(g)?;
    let edges: Vec<Edge> = g.edges().iter().collect();
    let d = directed_polycycle_decomposition(&oriented, t)?;
    let parts = d
        .parts
        .iter()
        .map(|arcs| arcs.iter().map(|&a| edges[a]).collect())
        .collect();
    Ok(PolycycleDecomposition {
        parts,
        cycle_suffix_len: d.cycle_suffix_len,
    })
}

/// `q = p∘σ_k∘⋯∘σ_1∘π_l∘⋯∘π_1` with all factors on disjoint supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedFactorization {
    /// p-cycles from the single-cycle suffix, identities dropped.
    pub sigmas: Vec<CycleSeq>,
    /// p-balanced permutations, identities dropped.
    pub pis: Vec<Permutation>,
}

/// The permutation that moves each item of `part` to the item whose arc
/// continues its cycle.
fn successor_permutation(g: &Digraph, part: &[usize]) -> Permutation {
    let mut image: Vec<usize> = (0..g.m()).collect();
    let mut leaving = vec![usize::MAX; g.n()];
    for &a in part {
        leaving[g.tail(a)] = a;
    }
    for &a in part {
        image[a] = leaving[g.head(a)];
    }
    Permutation::from_image(image).expect("successor map of a polycycle is a bijection")
}

/// Factors the pair `(p, q)` through a polycycle decomposition of its CDG
/// with `Δ = κ_1` and threshold `κ_2`.
pub fn balanced_permutation_factorization(
    p: &Partition,
    q: &Partition,
) -> Result<BalancedFactorization, PolycycleError> {
    if p.m() != q.m() || p.n() != q.n() || p.shape() != q.shape() {
        return Err(PolycycleError::ShapeMismatch);
    }
    let shape = p.sorted_shape();
    let kappa2 = shape.get(1).copied().unwrap_or(0);
    let g = cdg(p, q)?;
    let d = directed_polycycle_decomposition(&g, kappa2)?;
    let split = d.parts.len() - d.cycle_suffix_len;
    let pis = d.parts[..split]
        .iter()
        .filter(|part| !part.is_empty())
        .map(|part| successor_permutation(&g, part))
        .collect();
    let sigmas = d.parts[split..]
        .iter()
        .filter(|part| !part.is_empty())
        .map(|part| {
            let mut c = successor_permutation(&g, part).cycles();
            debug_assert_eq!(c.len(), 1);
            c.pop().unwrap()
        })
        .collect();
    Ok(BalancedFactorization { sigmas, pis })
}

/// At most two paths (or cycles) whose xor is the polycycle `h`; linear
/// forests are served by the path construction. Each
/// component `C_i` (ordered by smallest vertex `s_i`) contributes the edge
/// `u_i v_i` two steps along from `s_i` toward its smaller neighbour.
pub fn polycycle_odd_cover(h: &EdgeSet, kind: Kind) -> Result<Vec<EdgeSet>, PolycycleError> {
    if h.is_empty() {
        return Ok(Vec::new());
    }
    if !classify(h).is_polycycle() {
        return Err(PolycycleError::NotPolycycle);
    }
    let comps = components(h);
    if kind == Kind::Cycle && comps.len() == 1 {
        return Ok(vec![h.clone()]);
    }
    let chosen: Vec<(usize, usize)> = comps
        .iter()
        .map(|c| {
            let order = cycle_vertices(c).expect("component of a polycycle is a cycle");
            (order[1], order[2])
        })
        .collect();
    let mut p1 = EdgeSet::new();
    let mut p2 = EdgeSet::new();
    for (c, &(u, v)) in comps.iter().zip(&chosen) {
        let e = Edge::new(u, v);
        p1.extend(c.iter().filter(|&f| f != e));
        p2.insert(e);
    }
    let mut links: Vec<Edge> = chosen.windows(2).map(|w| Edge::new(w[0].1, w[1].0)).collect();
    if kind == Kind::Cycle {
        links.push(Edge::new(chosen[chosen.len() - 1].1, chosen[0].0));
    }
    p1.extend(links.iter().copied());
    p2.extend(links.iter().copied());
    Ok(vec![p1, p2])
}

/// Vertices that every part of `parts` touches.
pub fn common_vertices(parts: &[EdgeSet]) -> BTreeSet<usize> {
    let mut it = parts.iter();
    let mut acc = match it.next() {
        Some(first) => first.vertices(),
        None => return BTreeSet::new(),
    };
    for p in it {
        let vs = p.vertices();
        acc.retain(|v| vs.contains(v));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{symmetric_difference, SubgraphShape};

    fn assert_directed_ok(g: &Digraph, d: &DirectedDecomposition) {
        let mut seen = vec![false; g.m()];
        for part in &d.parts {
            let mut outd = vec![0; g.n()];
            let mut ind = vec![0; g.n()];
            for &a in part {
                assert!(!g.is_loop(a));
                assert!(!core::mem::replace(&mut seen[a], true), "arc {a} reused");
                outd[g.tail(a)] += 1;
                ind[g.head(a)] += 1;
            }
            for v in 0..g.n() {
                assert!(outd[v] <= 1 && outd[v] == ind[v]);
            }
        }
        for a in g.non_loop_arcs() {
            assert!(seen[a], "arc {a} uncovered");
        }
        let split = d.parts.len() - d.cycle_suffix_len;
        for part in &d.parts[split..] {
            let sub = Digraph::from_arcs(g.n(), part.iter().map(|&a| (g.tail(a), g.head(a)))).unwrap();
            let succ = successor_permutation(&sub, &(0..sub.m()).collect::<Vec<_>>());
            assert!(succ.cycles().len() <= 1, "suffix part is not a single cycle");
        }
    }

    #[test]
    fn directed_triangle() {
        let g = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let d = directed_polycycle_decomposition(&g, 1).unwrap();
        assert_eq!(d.parts, vec![vec![0, 1, 2]]);
        assert_directed_ok(&g, &d);
    }

    #[test]
    fn doubled_two_cycle() {
        let g = Digraph::from_arcs(2, [(0, 1), (0, 1), (1, 0), (1, 0)]).unwrap();
        let d = directed_polycycle_decomposition(&g, 2).unwrap();
        assert_eq!(d.parts.len(), 2);
        assert!(d.parts.iter().all(|p| p.len() == 2));
        assert_directed_ok(&g, &d);
    }

    #[test]
    fn threshold_suffix_passes_through_big_cluster() {
        // shape (3,2,2): cluster 0 sends one item to each other cluster and
        // keeps one; clusters 1 and 2 swap one item each with 0 and each other.
        let p = Partition::new(3, vec![0, 0, 0, 1, 1, 2, 2]).unwrap();
        let q = Partition::new(3, vec![1, 2, 0, 0, 2, 1, 0]).unwrap();
        let g = cdg(&p, &q).unwrap();
        let d = directed_polycycle_decomposition(&g, 2).unwrap();
        assert_eq!(d.parts.len(), 3);
        assert_eq!(d.cycle_suffix_len, 1);
        assert_directed_ok(&g, &d);
        let last = d.parts.last().unwrap();
        assert!(last.is_empty() || last.iter().any(|&a| g.tail(a) == 0));
    }

    #[test]
    fn rejects_unbalanced_and_two_high_vertices() {
        let g = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(
            directed_polycycle_decomposition(&g, 1),
            Err(PolycycleError::NotEulerian { vertex: 0 })
        );
        let g = Digraph::from_arcs(2, [(0, 1), (0, 1), (1, 0), (1, 0)]).unwrap();
        assert!(matches!(
            directed_polycycle_decomposition(&g, 1),
            Err(PolycycleError::ThresholdViolated { .. })
        ));
    }

    #[test]
    fn undirected_examples() {
        let c6 = SimpleGraph::spanning(EdgeSet::cycle(&[0, 1, 2, 3, 4, 5]));
        let d = undirected_polycycle_decomposition(&c6, 1).unwrap();
        assert_eq!(d.parts, vec![c6.edges().clone()]);

        let k5 = SimpleGraph::complete(5);
        let d = undirected_polycycle_decomposition(&k5, 2).unwrap();
        assert_eq!(d.parts.len(), 2);
        for part in &d.parts {
            assert_eq!(classify(part), SubgraphShape::Cycle);
            assert_eq!(part.vertices().len(), 5);
        }
        assert_eq!(symmetric_difference(&d.parts), *k5.edges());

        let two = k5.disjoint_union(&k5);
        let d = undirected_polycycle_decomposition(&two, 2).unwrap();
        for part in &d.parts {
            assert_eq!(classify(part), SubgraphShape::Polycycle);
            assert!(components(part).iter().all(|c| c.len() == 5));
        }
        assert_eq!(common_vertices(&d.parts).len(), 10);
    }

    #[test]
    fn factorization_examples() {
        let p = Partition::blocks(&[2, 2]);
        let f = balanced_permutation_factorization(&p, &p).unwrap();
        assert!(f.sigmas.is_empty() && f.pis.is_empty());

        let q = Partition::new(2, vec![1, 1, 0, 0]).unwrap();
        let f = balanced_permutation_factorization(&p, &q).unwrap();
        assert!(f.sigmas.is_empty());
        assert_eq!(f.pis.len(), 2);
        let mut acc = Permutation::identity(4);
        for pi in &f.pis {
            assert_eq!(pi.support().len(), 2);
            assert_ne!(p.cluster(pi.support()[0]), p.cluster(pi.support()[1]));
            acc = pi.compose(&acc).unwrap();
        }
        assert_eq!(p.compose(&acc).unwrap(), q);

        // shape (2,1,1): CDG is the 2-cycles 0↔1 and 0↔2.
        let p = Partition::new(3, vec![0, 0, 1, 2]).unwrap();
        let q = Partition::new(3, vec![1, 2, 0, 0]).unwrap();
        let f = balanced_permutation_factorization(&p, &q).unwrap();
        assert_eq!((f.sigmas.len(), f.pis.len()), (1, 1));
        let s = f.sigmas[0].to_permutation(4).unwrap();
        let sup_s: BTreeSet<usize> = s.support().into_iter().collect();
        assert!(f.pis[0].support().iter().all(|x| !sup_s.contains(x)));
        assert_eq!(p.compose(&s.compose(&f.pis[0]).unwrap()).unwrap(), q);
    }

    #[test]
    fn factorization_rejects_shape_mismatch() {
        let p = Partition::new(2, vec![0, 0, 1]).unwrap();
        let q = Partition::new(2, vec![0, 1, 1]).unwrap();
        assert_eq!(
            balanced_permutation_factorization(&p, &q),
            Err(PolycycleError::ShapeMismatch)
        );
    }

    #[test]
    fn triangle_covers() {
        let tri = EdgeSet::cycle(&[0, 1, 2]);
        assert_eq!(polycycle_odd_cover(&tri, Kind::Cycle).unwrap(), vec![tri.clone()]);
        let parts = polycycle_odd_cover(&tri, Kind::Path).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| classify(p).is_path()));
        assert_eq!(symmetric_difference(&parts), tri);
        assert!(polycycle_odd_cover(&EdgeSet::new(), Kind::Path)
            .unwrap()
            .is_empty());
        assert_eq!(
            polycycle_odd_cover(&EdgeSet::path(&[0, 1, 2]), Kind::Path),
            Err(PolycycleError::NotPolycycle)
        );
    }

    #[test]
    fn three_cycle_polycycle_cover() {
        let h = EdgeSet::cycle(&[0, 1, 2, 3])
            .union(&EdgeSet::cycle(&[4, 5, 6, 7, 8]))
            .union(&EdgeSet::cycle(&[9, 10, 11]));
        let paths = polycycle_odd_cover(&h, Kind::Path).unwrap();
        // long parts avoid the second edge of each cycle
        let expect_p1 = EdgeSet::from_pairs([
            (1, 0),
            (0, 3),
            (3, 2),
            (2, 5),
            (5, 4),
            (4, 8),
            (8, 7),
            (7, 6),
            (6, 10),
            (10, 9),
            (9, 11),
        ]);
        let expect_p2 = EdgeSet::from_pairs([(1, 2), (2, 5), (5, 6), (6, 10), (10, 11)]);
        assert_eq!(paths, vec![expect_p1.clone(), expect_p2.clone()]);
        let cycles = polycycle_odd_cover(&h, Kind::Cycle).unwrap();
        let close = EdgeSet::from_pairs([(11, 1)]);
        assert_eq!(cycles, vec![expect_p1.union(&close), expect_p2.union(&close)]);
        assert!(cycles.iter().all(|c| classify(c).is_cycle()));
        assert_eq!(symmetric_difference(&cycles), h);
    }
}
