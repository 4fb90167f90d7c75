//! Brute-force and pruned-search oracles used to cross-check the
//! constructions on small inputs.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;
use thiserror::Error;

use crate::graph::{Edge, EdgeSet, Kind, SimpleGraph};
use crate::oddcover::{check_cover, OddCoverCert};
use crate::perm::{cdg, check_resolution, CycleSeq, Partition, PermError};
use crate::resolve::{gen_pp36_instance, in_two_cycle_family, pp36_a, pp36_b, progress_gain_cap};

/// Largest polytope (vertex count) or search space explored by default.
pub const DEFAULT_STATE_CAP: usize = 100_000;
/// Largest vertex count accepted by the exhaustive odd-cover oracle.
pub const ODD_COVER_VERTEX_CAP: usize = 8;
/// Vertex counts up to this get a full distance table.
pub const ODD_COVER_TABLE_CAP: usize = 7;
/// Largest cover size the eight-vertex search can certify.
pub const MEET_IN_MIDDLE_DEPTH: usize = 4;
pub const HAMILTON_VERTEX_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what}: size {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("instance is not a doubled two-cycle configuration")]
    FamilyMismatch,
    #[error("partitions have different shapes")]
    ShapeMismatch,
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn too_large(what: &'static str, size: impl Into<u128>, cap: impl Into<u128>) -> OracleError {
    OracleError::TooLarge {
        what,
        size: size.into(),
        cap: cap.into(),
    }
}

/// Number of partitions with the given cluster sizes, if it fits in `u128`.
pub fn vertex_count(shape: &[usize]) -> Option<u128> {
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    for &k in shape {
        for i in 1..=k as u128 {
            placed += 1;
            // C(placed, i) built up one factor at a time stays integral
            total = total.checked_mul(placed)? / i;
        }
    }
    Some(total)
}

const PACK_BITS: usize = 4;

fn pack(assign: &[usize]) -> u128 {
    assign
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &c)| acc | ((c as u128) << (PACK_BITS * i)))
}

fn packable(m: usize, n: usize) -> Result<(), OracleError> {
    if m * PACK_BITS > 128 {
        return Err(too_large("items", m as u64, (128 / PACK_BITS) as u64));
    }
    if n > 1 << PACK_BITS {
        return Err(too_large("clusters", n as u64, 1u64 << PACK_BITS));
    }
    Ok(())
}

/// Calls `f(items, score)` for every p-cycle of length at least 2 whose
/// total score reaches `min_score`. The score of an item is
/// `score(item, destination cluster)`; every item scores at most `best`.
/// Each cycle is produced once, starting in its smallest cluster.
/// Returning `false` from `f` stops the walk.
fn for_each_p_cycle<S, F>(assign: &[usize], n: usize, score: &S, best: i64, min_score: i64, f: &mut F)
where
    S: Fn(usize, usize) -> i64,
    F: FnMut(&[usize], i64) -> bool,
{
    let mut by_cluster = vec![Vec::new(); n];
    for (x, &c) in assign.iter().enumerate() {
        by_cluster[c].push(x);
    }
    struct Walk<'a, S, F> {
        assign: &'a [usize],
        by_cluster: Vec<Vec<usize>>,
        score: &'a S,
        best: i64,
        min_score: i64,
        f: &'a mut F,
        seq: Vec<usize>,
        used: u32,
    }
    impl<S: Fn(usize, usize) -> i64, F: FnMut(&[usize], i64) -> bool> Walk<'_, S, F> {
        /// `partial` scores every item but the last, whose destination is
        /// still open.
        fn grow(&mut self, first: usize, partial: i64) -> bool {
            let last = *self.seq.last().unwrap();
            let n = self.by_cluster.len();
            if self.seq.len() >= 2 {
                let total = partial + (self.score)(last, self.assign[self.seq[0]]);
                if total >= self.min_score && !(self.f)(&self.seq, total) {
                    return false;
                }
            }
            let free = n - self.used.count_ones() as usize;
            // last item plus every further item scores at most `best`
            if partial + self.best * (free as i64 + 1) < self.min_score {
                return true;
            }
            for c in first + 1..n {
                if self.used & (1 << c) != 0 {
                    continue;
                }
                let gain = (self.score)(last, c);
                if partial + gain + self.best * (free as i64) < self.min_score {
                    continue;
                }
                self.used |= 1 << c;
                for i in 0..self.by_cluster[c].len() {
                    let y = self.by_cluster[c][i];
                    self.seq.push(y);
                    let go = self.grow(first, partial + gain);
                    self.seq.pop();
                    if !go {
                        self.used &= !(1 << c);
                        return false;
                    }
                }
                self.used &= !(1 << c);
            }
            true
        }
    }
    let mut walk = Walk {
        assign,
        by_cluster,
        score,
        best,
        min_score,
        f,
        seq: Vec::new(),
        used: 0,
    };
    for c0 in 0..n {
        for i in 0..walk.by_cluster[c0].len() {
            let x = walk.by_cluster[c0][i];
            walk.seq.push(x);
            walk.used = 1 << c0;
            let go = walk.grow(c0, 0);
            walk.seq.pop();
            if !go {
                return;
            }
        }
    }
}

fn apply_items(assign: &[usize], items: &[usize]) -> Vec<usize> {
    let mut next = assign.to_vec();
    let k = items.len();
    for i in 0..k {
        next[items[i]] = assign[items[(i + 1) % k]];
    }
    next
}

/// Breadth-first layers from `start`; `stop` ends the search early and
/// reports the depth. Returns the eccentricity of `start` otherwise.
fn polytope_bfs(
    start: Vec<usize>,
    n: usize,
    cap: usize,
    mut stop: impl FnMut(&[usize]) -> bool,
) -> Result<usize, OracleError> {
    packable(start.len(), n)?;
    if stop(&start) {
        return Ok(0);
    }
    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(pack(&start));
    let mut frontier = vec![start];
    let mut depth = 0;
    let zero = |_: usize, _: usize| 0i64;
    loop {
        let mut next = Vec::new();
        let mut hit = false;
        for cur in &frontier {
            for_each_p_cycle(cur, n, &zero, 0, 0, &mut |items: &[usize], _| {
                let nb = apply_items(cur, items);
                if seen.insert(pack(&nb)) {
                    if stop(&nb) {
                        hit = true;
                        return false;
                    }
                    next.push(nb);
                }
                true
            });
            if hit {
                return Ok(depth + 1);
            }
            if seen.len() > cap {
                return Err(too_large("visited partitions", seen.len() as u64, cap as u64));
            }
        }
        if next.is_empty() {
            return Ok(depth);
        }
        depth += 1;
        frontier = next;
    }
}

/// Combinatorial diameter of the partition polytope with the given cluster
/// sizes. Item relabelling acts transitively on the vertices and preserves
/// edges, so the eccentricity of one vertex is the diameter.
pub fn exact_diameter_bfs(shape: &[usize], cap: usize) -> Result<usize, OracleError> {
    let count = vertex_count(shape).ok_or(too_large("vertices", u128::MAX, cap as u128))?;
    if count > cap as u128 {
        return Err(too_large("vertices", count, cap as u128));
    }
    let start = Partition::blocks(shape).into_assign();
    polytope_bfs(start, shape.len(), cap, |_| false)
}

/// Length of a shortest resolution of `(p, q)`.
pub fn min_resolution_length(p: &Partition, q: &Partition, cap: usize) -> Result<usize, OracleError> {
    if p.n() != q.n() || p.m() != q.m() || p.shape() != q.shape() {
        return Err(OracleError::ShapeMismatch);
    }
    let target = q.assign().to_vec();
    polytope_bfs(p.assign().to_vec(), p.n(), cap, |a| a == target.as_slice())
}

/// Whole and half moves made by one exchange relative to the pair `(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MoveAccounting {
    /// Items moved straight from their start cluster to their target.
    pub whole_moves: usize,
    /// Items that either leave their start cluster or reach their target,
    /// but not both.
    pub half_moves: usize,
    /// `2·whole + half`, an upper bound on the progress of the step.
    pub gain: usize,
}

impl MoveAccounting {
    pub fn of(p: &Partition, q: &Partition, before: &[usize], tau: &[usize]) -> Self {
        let mut acc = MoveAccounting::default();
        let k = tau.len();
        for i in 0..k {
            let x = tau[i];
            if p.cluster(x) == q.cluster(x) {
                continue;
            }
            let from = before[x];
            let to = before[tau[(i + 1) % k]];
            match (from == p.cluster(x), to == q.cluster(x)) {
                (true, true) => acc.whole_moves += 1,
                (true, false) | (false, true) => acc.half_moves += 1,
                (false, false) => {}
            }
        }
        acc.gain = 2 * acc.whole_moves + acc.half_moves;
        acc
    }
}

/// Progress of `cur`: moved items that left their start cluster, plus
/// those already at their target.
pub fn progress(p: &Partition, q: &Partition, cur: &[usize]) -> usize {
    (0..p.m())
        .filter(|&x| p.cluster(x) != q.cluster(x))
        .map(|x| usize::from(cur[x] != p.cluster(x)) + usize::from(cur[x] == q.cluster(x)))
        .sum()
}

/// Outcome of the pruned resolution search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedOutcome {
    /// No resolution of length at most `L` exists.
    pub no_short: bool,
    /// A resolution of length at most `L`, when one was found.
    pub witness: Option<Vec<CycleSeq>>,
    /// Search nodes expanded.
    pub nodes: u64,
    /// Whether the first exchange was fixed by symmetry.
    pub first_step_fixed: bool,
    /// Exchanges examined at full-gain steps.
    pub tight_steps: u64,
}

struct Pruned<'a> {
    p: &'a Partition,
    q: &'a Partition,
    n: usize,
    cap: usize,
    target: usize,
    failed: HashSet<(u128, usize)>,
    nodes: u64,
    tight_steps: u64,
    /// Expected accounting at a step that must reach the gain cap.
    tight: Option<(usize, usize)>,
    path: Vec<CycleSeq>,
}

impl Pruned<'_> {
    fn search(&mut self, cur: &[usize], s: usize, left: usize) -> bool {
        self.nodes += 1;
        if cur == self.q.assign() {
            return true;
        }
        if left == 0 || s + self.cap * left < self.target {
            return false;
        }
        let key = (pack(cur), left);
        if self.failed.contains(&key) {
            return false;
        }
        let need = self.target as i64 - s as i64 - (self.cap * (left - 1)) as i64;
        let (p, q) = (self.p, self.q);
        let score = |x: usize, to: usize| -> i64 {
            let (from_p, to_q) = (p.cluster(x), q.cluster(x));
            if from_p == to_q {
                return 0;
            }
            let before = i64::from(cur[x] != from_p) + i64::from(cur[x] == to_q);
            let after = i64::from(to != from_p) + i64::from(to == to_q);
            after - before
        };
        let mut moves: Vec<(Vec<usize>, i64)> = Vec::new();
        for_each_p_cycle(
            cur,
            self.n,
            &score,
            2,
            need.max(i64::MIN + 1),
            &mut |items, gain| {
                moves.push((items.to_vec(), gain));
                true
            },
        );
        for (items, gain) in moves {
            let acc = MoveAccounting::of(p, q, cur, &items);
            assert!(gain <= acc.gain as i64, "progress gain exceeds move accounting");
            assert!(acc.gain <= self.cap, "move accounting exceeds the gain cap");
            if need >= self.cap as i64 {
                self.tight_steps += 1;
                if let Some((whole, half)) = self.tight {
                    assert_eq!((acc.whole_moves, acc.half_moves), (whole, half));
                }
            }
            let next = apply_items(cur, &items);
            self.path.push(CycleSeq::new(items).expect("distinct items"));
            if self.search(&next, (s as i64 + gain) as usize, left - 1) {
                return true;
            }
            self.path.pop();
        }
        self.failed.insert(key);
        false
    }
}

/// Exhaustive search for a resolution of length at most `max_len`, pruned
/// by the progress measure and the family's per-step gain cap. For the
/// six-cluster swap instance with `max_len = 4` the first exchange is fixed
/// to `(a11 b11 a21 b21 a31 b31)`.
pub fn pruned_search(p: &Partition, q: &Partition, max_len: usize) -> Result<PrunedOutcome, OracleError> {
    pruned_search_with(p, q, max_len, true)
}

/// [`pruned_search`] with the first-exchange symmetry fixing optional.
pub fn pruned_search_with(
    p: &Partition,
    q: &Partition,
    max_len: usize,
    use_symmetry: bool,
) -> Result<PrunedOutcome, OracleError> {
    if p.n() != q.n() || p.m() != q.m() || p.shape() != q.shape() {
        return Err(OracleError::ShapeMismatch);
    }
    packable(p.m(), p.n())?;
    let g = cdg(p, q)?;
    if !in_two_cycle_family(&g) {
        return Err(OracleError::FamilyMismatch);
    }
    let cap = progress_gain_cap(&g);
    let target = 2 * g.non_loop_arcs().len();
    let (p6, q6) = gen_pp36_instance();
    let pp36 = *p == p6 && *q == q6;
    let fix_first = use_symmetry && max_len == 4 && pp36;
    let mut st = Pruned {
        p,
        q,
        n: p.n(),
        cap,
        target,
        failed: HashSet::new(),
        nodes: 0,
        tight_steps: 0,
        tight: (pp36 && max_len == 4).then_some((3, 3)),
        path: Vec::new(),
    };
    let found = if fix_first {
        let first: Vec<usize> = (0..3).flat_map(|i| [pp36_a(i, 0), pp36_b(i, 0)]).collect();
        let acc = MoveAccounting::of(p, q, p.assign(), &first);
        assert_eq!((acc.whole_moves, acc.half_moves, acc.gain), (3, 3, 9));
        let next = apply_items(p.assign(), &first);
        let s = progress(p, q, &next);
        assert_eq!(s, 9);
        st.path.push(CycleSeq::new(first).expect("distinct items"));
        st.search(&next, s, max_len - 1)
    } else {
        st.search(p.assign(), 0, max_len)
    };
    let witness = found.then(|| core::mem::take(&mut st.path));
    if let Some(w) = &witness {
        assert_eq!(check_resolution(p, q, w), Ok(()));
    }
    Ok(PrunedOutcome {
        no_short: !found,
        witness,
        nodes: st.nodes,
        first_step_fixed: fix_first,
        tight_steps: st.tight_steps,
    })
}

/// True when no resolution of length at most `max_len` exists.
pub fn pruned_no_short_resolution(p: &Partition, q: &Partition, max_len: usize) -> Result<bool, OracleError> {
    Ok(pruned_search(p, q, max_len)?.no_short)
}

/// Bit index of edge `{a, b}` in the lexicographic order of `K_n`.
fn edge_bit(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

fn edge_mask(n: usize, edges: &EdgeSet) -> u32 {
    edges.iter().fold(0, |m, e| m | (1 << edge_bit(n, e.u(), e.v())))
}

/// Every path (at least one edge) or cycle of `K_n`, as edge masks.
pub fn complete_graph_parts(n: usize, kind: Kind) -> Vec<u32> {
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(n);
    fn walk(n: usize, kind: Kind, seq: &mut Vec<usize>, mask: u32, out: &mut Vec<u32>) {
        let first = seq[0];
        let last = *seq.last().unwrap();
        match kind {
            Kind::Cycle => {
                // start at the smallest vertex, second vertex below the last
                if seq.len() >= 3 && seq[1] < last {
                    out.push(mask | 1 << edge_bit(n, last, first));
                }
            }
            _ => {
                if seq.len() >= 2 && first < last {
                    out.push(mask);
                }
            }
        }
        for v in 0..n {
            if seq.contains(&v) || (kind == Kind::Cycle && v < first) {
                continue;
            }
            seq.push(v);
            walk(n, kind, seq, mask | 1 << edge_bit(n, last, v), out);
            seq.pop();
        }
    }
    for s in 0..n {
        seq.push(s);
        walk(n, kind, &mut seq, 0, &mut out);
        seq.pop();
    }
    out
}

/// Minimum number of parts for every subgraph of `K_n`, `n ≤ 7`.
pub struct OddCoverTable {
    n: usize,
    kind: Kind,
    dist: Vec<u8>,
}

const UNREACHED: u8 = u8::MAX;

impl OddCoverTable {
    pub fn build(n: usize, kind: Kind) -> Result<Self, OracleError> {
        if n > ODD_COVER_TABLE_CAP {
            return Err(too_large("table vertices", n as u64, ODD_COVER_TABLE_CAP as u64));
        }
        let kind = if kind == Kind::LinearForest {
            Kind::Path
        } else {
            kind
        };
        let edges = n * n.saturating_sub(1) / 2;
        let size = 1usize << edges;
        let gens = complete_graph_parts(n, kind);
        let mut dist = vec![UNREACHED; size];
        dist[0] = 0;
        let mut frontier = vec![0u32];
        let mut unvisited = size - 1;
        let mut level: u8 = 0;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            // cycles only reach Eulerian sets, so scanning unvisited states
            // would waste work; paths reach everything
            let bottom_up = kind != Kind::Cycle && frontier.len() > unvisited / 4;
            if bottom_up {
                for x in 0..size {
                    if dist[x] == UNREACHED && gens.iter().any(|&g| dist[x ^ g as usize] == level) {
                        next.push(x as u32);
                    }
                }
                for &x in &next {
                    dist[x as usize] = level + 1;
                }
            } else {
                for &x in &frontier {
                    for &g in &gens {
                        let y = (x ^ g) as usize;
                        if dist[y] == UNREACHED {
                            dist[y] = level + 1;
                            next.push(y as u32);
                        }
                    }
                }
            }
            unvisited -= next.len();
            level += 1;
            frontier = next;
        }
        Ok(OddCoverTable { n, kind, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Minimum part count for the subgraph with this edge mask.
    pub fn lookup_mask(&self, mask: u32) -> Option<usize> {
        match self.dist[mask as usize] {
            UNREACHED => None,
            d => Some(d as usize),
        }
    }

    pub fn lookup(&self, edges: &EdgeSet) -> Option<usize> {
        self.lookup_mask(edge_mask(self.n, edges))
    }

    /// Number of subgraphs needing exactly `k` parts.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::new();
        for &d in &self.dist {
            if d != UNREACHED {
                if sizes.len() <= d as usize {
                    sizes.resize(d as usize + 1, 0);
                }
                sizes[d as usize] += 1;
            }
        }
        sizes
    }
}

/// Eight-vertex search: parts are held in a hash set, pairs of parts in a
/// bitmap over all subgraphs, so covers of up to four parts are decided.
fn min_cover_meet_in_middle(
    n: usize,
    target: u32,
    kind: Kind,
    max_size: usize,
) -> Result<Option<usize>, OracleError> {
    let gens = complete_graph_parts(n, kind);
    let single: HashSet<u32> = gens.iter().copied().collect();
    if target == 0 {
        return Ok(Some(0));
    }
    if max_size >= 1 && single.contains(&target) {
        return Ok(Some(1));
    }
    if max_size < 2 {
        return Ok(None);
    }
    let edges = n * (n - 1) / 2;
    let mut pairs = vec![0u64; (1usize << edges) / 64 + 1];
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let x = (a ^ b) as usize;
            pairs[x / 64] |= 1 << (x % 64);
        }
    }
    let in_pairs = |x: u32| pairs[x as usize / 64] >> (x as usize % 64) & 1 == 1;
    if in_pairs(target) {
        return Ok(Some(2));
    }
    if max_size >= 3 && gens.iter().any(|&a| in_pairs(target ^ a)) {
        return Ok(Some(3));
    }
    if max_size >= 4 {
        for (i, &a) in gens.iter().enumerate() {
            if gens[i + 1..].iter().any(|&b| in_pairs(target ^ a ^ b)) {
                return Ok(Some(4));
            }
        }
    }
    if max_size > MEET_IN_MIDDLE_DEPTH {
        return Err(too_large(
            "cover size on eight vertices",
            max_size as u64,
            MEET_IN_MIDDLE_DEPTH as u64,
        ));
    }
    Ok(None)
}

/// Smallest number of paths (or cycles) of `K_n` whose xor is `g`, if it is
/// at most `max_size`.
pub fn min_odd_cover_exhaustive(
    g: &SimpleGraph,
    kind: Kind,
    max_size: usize,
) -> Result<Option<usize>, OracleError> {
    let n = g.n();
    if n > ODD_COVER_VERTEX_CAP {
        return Err(too_large(
            "odd-cover vertices",
            n as u64,
            ODD_COVER_VERTEX_CAP as u64,
        ));
    }
    let kind = if kind == Kind::LinearForest {
        Kind::Path
    } else {
        kind
    };
    if n <= ODD_COVER_TABLE_CAP {
        let table = OddCoverTable::build(n, kind)?;
        return Ok(table.lookup(g.edges()).filter(|&k| k <= max_size));
    }
    min_cover_meet_in_middle(n, edge_mask(n, g.edges()), kind, max_size)
}

/// `max{⌈v_odd/2⌉, ⌈Δ/2⌉}`: every odd vertex ends some path and every part
/// covers at most two edges at a vertex.
pub fn trivial_lower_bound(g: &SimpleGraph) -> usize {
    let s = g.degrees();
    s.v_odd.div_ceil(2).max(s.delta.div_ceil(2))
}

/// Hamiltonian cycle search by backtracking from vertex 0.
pub fn is_hamiltonian(g: &SimpleGraph) -> Result<bool, OracleError> {
    let n = g.n();
    if n > HAMILTON_VERTEX_CAP {
        return Err(too_large(
            "Hamiltonicity vertices",
            n as u64,
            HAMILTON_VERTEX_CAP as u64,
        ));
    }
    if n < 3 {
        return Ok(false);
    }
    let adj: Vec<u32> = g
        .adjacency()
        .iter()
        .map(|l| l.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    if adj.iter().any(|a| a.count_ones() < 2) {
        return Ok(false);
    }
    let all = (1u32 << n) - 1;
    let mut reach = 1u32;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        let mut fresh = adj[v] & !reach;
        reach |= fresh;
        while fresh != 0 {
            stack.push(fresh.trailing_zeros() as usize);
            fresh &= fresh - 1;
        }
    }
    if reach != all {
        return Ok(false);
    }
    fn extend(adj: &[u32], all: u32, visited: u32, cur: usize) -> bool {
        if visited == all {
            return adj[cur] & 1 != 0;
        }
        let mut options = adj[cur] & !visited;
        while options != 0 {
            let v = options.trailing_zeros() as usize;
            options &= options - 1;
            let now = visited | 1 << v;
            // every unvisited vertex still needs a way in and a way out
            let stuck = (0..adj.len())
                .any(|w| now & (1 << w) == 0 && (adj[w] & (!now | 1 | 1 << v)).count_ones() < 2);
            if !stuck && extend(adj, all, now, v) {
                return true;
            }
        }
        false
    }
    Ok(extend(&adj, all, 1, 0))
}

/// What a certificate claims to settle.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Resolution {
        p: &'a Partition,
        q: &'a Partition,
        bound: Option<usize>,
    },
    Graph {
        graph: &'a SimpleGraph,
        bound: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug)]
pub enum Certificate<'a> {
    Resolution(&'a [CycleSeq]),
    Cover(&'a OddCoverCert),
}

/// Outcome of a single verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl Report {
    pub fn new(check: &str, pass: bool, detail: impl Into<String>) -> Self {
        Report {
            check: check.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Checks a resolution or a cover against its target and names the first
/// violated condition.
pub fn verify_certificate(target: Target<'_>, cert: Certificate<'_>) -> Report {
    match (target, cert) {
        (Target::Resolution { p, q, bound }, Certificate::Resolution(taus)) => {
            let check = "resolution";
            if let Err(fault) = check_resolution(p, q, taus) {
                return Report::new(check, false, fault.to_string());
            }
            match bound {
                Some(b) if taus.len() > b => {
                    Report::new(check, false, format!("length {} exceeds bound {}", taus.len(), b))
                }
                _ => Report::new(check, true, format!("length {}", taus.len())),
            }
        }
        (Target::Graph { graph, bound }, Certificate::Cover(c)) => {
            let check = if c.kind == Kind::LinearForest {
                "linear_forest_decomposition"
            } else {
                "odd_cover"
            };
            if let Err(fault) = check_cover(graph, c) {
                return Report::new(check, false, fault.to_string());
            }
            match bound {
                Some(b) if c.len() > b => {
                    Report::new(check, false, format!("{} parts exceed bound {}", c.len(), b))
                }
                _ => Report::new(check, true, format!("{} {} parts", c.len(), c.kind.name())),
            }
        }
        _ => Report::new("certificate", false, "certificate type does not match the target"),
    }
}

/// Edge of `K_n` for bit `i`, the inverse of the table indexing.
pub fn edge_of_bit(n: usize, i: usize) -> Edge {
    let mut a = 0;
    let mut start = 0;
    while start + (n - a - 1) <= i {
        start += n - a - 1;
        a += 1;
    }
    Edge::new(a, a + 1 + (i - start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolve::{gen_lower_bound_instance, resolve};

    #[test]
    fn polytope_sizes() {
        assert_eq!(vertex_count(&[1, 1, 1, 1]), Some(24));
        assert_eq!(vertex_count(&[2, 2, 2, 2]), Some(2520));
        assert_eq!(vertex_count(&[3; 6]), Some(137_225_088_000));
    }

    #[test]
    fn small_diameters() {
        assert_eq!(exact_diameter_bfs(&[1, 1, 1, 1], DEFAULT_STATE_CAP), Ok(2));
        assert_eq!(exact_diameter_bfs(&[2, 2], DEFAULT_STATE_CAP), Ok(2));
        assert_eq!(exact_diameter_bfs(&[1, 2], DEFAULT_STATE_CAP), Ok(1));
        assert!(matches!(
            exact_diameter_bfs(&[3; 6], DEFAULT_STATE_CAP),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn shortest_resolutions() {
        let p = Partition::blocks(&[2, 2]);
        assert_eq!(min_resolution_length(&p, &p, DEFAULT_STATE_CAP), Ok(0));
        let q = Partition::new(2, vec![1, 1, 0, 0]).unwrap();
        assert_eq!(min_resolution_length(&p, &q, DEFAULT_STATE_CAP), Ok(2));
        let q = Partition::new(3, vec![1, 2, 0]).unwrap();
        let p = Partition::blocks(&[1, 1, 1]);
        assert_eq!(min_resolution_length(&p, &q, DEFAULT_STATE_CAP), Ok(1));
    }

    #[test]
    fn pruned_search_on_four_pairs() {
        let inst = gen_lower_bound_instance(&[2, 2, 2, 2]).unwrap();
        assert_eq!(pruned_no_short_resolution(&inst.p, &inst.q, 2), Ok(true));
        let out = pruned_search(&inst.p, &inst.q, 3).unwrap();
        assert!(!out.no_short);
        assert_eq!(out.witness.unwrap().len(), 3);
        assert_eq!(min_resolution_length(&inst.p, &inst.q, DEFAULT_STATE_CAP), Ok(3));
        assert!(resolve(&inst.p, &inst.q).unwrap().len() <= 3);
    }

    #[test]
    fn pruned_search_rejects_other_families() {
        let p = Partition::blocks(&[1, 1, 1, 1]);
        let q = Partition::new(4, vec![1, 2, 3, 0]).unwrap();
        assert_eq!(
            pruned_no_short_resolution(&p, &q, 2),
            Err(OracleError::FamilyMismatch)
        );
    }

    #[test]
    fn accounting_of_fixed_first_exchange() {
        let (p, q) = gen_pp36_instance();
        let first: Vec<usize> = (0..3).flat_map(|i| [pp36_a(i, 0), pp36_b(i, 0)]).collect();
        let acc = MoveAccounting::of(&p, &q, p.assign(), &first);
        assert_eq!(
            acc,
            MoveAccounting {
                whole_moves: 3,
                half_moves: 3,
                gain: 9
            }
        );
    }

    #[test]
    fn part_counts_of_complete_graphs() {
        assert_eq!(complete_graph_parts(7, Kind::Path).len(), 6846);
        assert_eq!(complete_graph_parts(7, Kind::Cycle).len(), 1172);
        assert_eq!(complete_graph_parts(3, Kind::Cycle).len(), 1);
        assert_eq!(complete_graph_parts(3, Kind::Path).len(), 6);
    }

    #[test]
    fn edge_bits_round_trip() {
        for n in 2..9 {
            for i in 0..n * (n - 1) / 2 {
                let e = edge_of_bit(n, i);
                assert_eq!(edge_bit(n, e.u(), e.v()), i);
            }
        }
    }

    #[test]
    fn tiny_exhaustive_covers() {
        let tri = SimpleGraph::spanning(EdgeSet::cycle(&[0, 1, 2]));
        assert_eq!(min_odd_cover_exhaustive(&tri, Kind::Cycle, 5), Ok(Some(1)));
        let p3 = SimpleGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(min_odd_cover_exhaustive(&p3, Kind::Path, 5), Ok(Some(1)));
        assert_eq!(min_odd_cover_exhaustive(&p3, Kind::Cycle, 5), Ok(None));
        let star = SimpleGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(min_odd_cover_exhaustive(&star, Kind::Path, 5), Ok(Some(2)));
        let k5 = SimpleGraph::complete(5);
        assert_eq!(min_odd_cover_exhaustive(&k5, Kind::Cycle, 5), Ok(Some(2)));
    }

    #[test]
    fn hamiltonicity() {
        let petersen = SimpleGraph::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(is_hamiltonian(&petersen), Ok(false));
        assert_eq!(is_hamiltonian(&SimpleGraph::complete(5)), Ok(true));
        let two = SimpleGraph::complete(5).disjoint_union(&SimpleGraph::complete(5));
        assert_eq!(is_hamiltonian(&two), Ok(false));
        assert_eq!(
            is_hamiltonian(&SimpleGraph::spanning(EdgeSet::cycle(&[0, 1, 2, 3]))),
            Ok(true)
        );
    }

    #[test]
    fn certificate_reports() {
        let g = SimpleGraph::complete(5).disjoint_union(&SimpleGraph::complete(5));
        let bad = OddCoverCert {
            kind: Kind::Cycle,
            parts: vec![
                EdgeSet::cycle(&[0, 1, 2]),
                EdgeSet::cycle(&[0, 1, 3]),
                EdgeSet::cycle(&[5, 6, 7]).union(&EdgeSet::cycle(&[0, 2, 4])),
            ],
        };
        let r = verify_certificate(
            Target::Graph {
                graph: &g,
                bound: None,
            },
            Certificate::Cover(&bad),
        );
        assert!(!r.pass);
        assert!(r.detail.starts_with("part 2 not a cycle"), "{}", r.detail);

        let p = Partition::blocks(&[1, 1]);
        let q = Partition::new(2, vec![1, 0]).unwrap();
        let taus = [CycleSeq::new(vec![0, 1]).unwrap()];
        let r = verify_certificate(
            Target::Resolution {
                p: &p,
                q: &q,
                bound: Some(1),
            },
            Certificate::Resolution(&taus),
        );
        assert!(r.pass);
        let p = Partition::blocks(&[2]);
        let taus = [CycleSeq::new(vec![0, 1]).unwrap()];
        let r = verify_certificate(
            Target::Resolution {
                p: &p,
                q: &p,
                bound: None,
            },
            Certificate::Resolution(&taus),
        );
        assert!(!r.pass);
        assert!(r.detail.contains("not balanced"));
    }
}
