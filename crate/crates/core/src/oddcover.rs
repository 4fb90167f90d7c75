//! Odd-covers of graphs by paths, cycles and linear forests.
//!
//! The Δ ≤ 4 constructions start from a decomposition into two polycycles
//! `H1, H2`, pick one edge from every cycle of each (a transversal pair),
//! turn that into three linear forests whose xor is `H1 ∪ H2`, and then
//! glue forest components together with edges shared by two forests until
//! every forest is a single path or, closing up, a single cycle.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{
    classify, components, cycle_vertices, path_vertices, symmetric_difference, Edge, EdgeSet, GraphError,
    Kind, SimpleGraph,
};
use crate::polycycle::{polycycle_odd_cover, undirected_polycycle_decomposition, PolycycleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OddCoverError {
    #[error("graph is not Eulerian (vertex {vertex})")]
    NotEulerian { vertex: usize },
    #[error("maximum degree {delta} exceeds 4")]
    DegreeTooLarge { delta: usize },
    #[error("edge set is not a polycycle")]
    NotPolycycle,
    #[error("polycycles share an edge")]
    NotEdgeDisjoint,
    #[error("exactly one polycycle is empty")]
    OneSideEmpty,
    #[error("matching is not a transversal of its polycycle")]
    NotTransversal,
    #[error("part {0} is not a linear forest")]
    NotLinearForest(usize),
    #[error("forest endpoints do not pair up")]
    ParityInconsistent,
    #[error("polycycles share no vertex")]
    NoCommonVertex,
    #[error("no crossing pair of components")]
    CrossingPairMissing,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("construction failed: {0}")]
    Construction(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<PolycycleError> for OddCoverError {
    fn from(e: PolycycleError) -> Self {
        match e {
            PolycycleError::NotEulerian { vertex } => OddCoverError::NotEulerian { vertex },
            PolycycleError::NotPolycycle => OddCoverError::NotPolycycle,
            _ => OddCoverError::Construction("polycycle decomposition"),
        }
    }
}

/// A family of subgraphs claimed to odd-cover (or, for linear forests,
/// decompose) some graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCoverCert {
    pub kind: Kind,
    pub parts: Vec<EdgeSet>,
}

impl OddCoverCert {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverFault {
    #[error("part {part} not a {kind} ({shape})")]
    WrongShape {
        part: usize,
        shape: &'static str,
        kind: &'static str,
    },
    #[error("part {part} uses vertex {vertex} outside the graph")]
    VertexOutsideHost { part: usize, vertex: usize },
    #[error("xor of the parts differs from the graph in {count} edges")]
    XorMismatch { count: usize },
    #[error("parts {first} and {second} share an edge")]
    Overlap { first: usize, second: usize },
    #[error("union of the parts differs from the graph")]
    UnionMismatch,
}

fn shape_name(e: &EdgeSet) -> &'static str {
    use crate::graph::SubgraphShape::*;
    match classify(e) {
        Empty => "empty set",
        Path => "path",
        Cycle => "cycle",
        Polycycle => "polycycle",
        LinearForest => "linear forest",
        Other => "general subgraph",
    }
}

/// Checks an odd-cover, or a decomposition when the kind is
/// [`Kind::LinearForest`].
pub fn check_cover(g: &SimpleGraph, cert: &OddCoverCert) -> Result<(), CoverFault> {
    for (i, p) in cert.parts.iter().enumerate() {
        if let Some(&vertex) = p.vertices().iter().find(|&&v| v >= g.n()) {
            return Err(CoverFault::VertexOutsideHost { part: i, vertex });
        }
        if !cert.kind.admits(classify(p)) {
            return Err(CoverFault::WrongShape {
                part: i,
                shape: shape_name(p),
                kind: cert.kind.name(),
            });
        }
    }
    if cert.kind == Kind::LinearForest {
        for i in 0..cert.parts.len() {
            for j in i + 1..cert.parts.len() {
                if !cert.parts[i].is_disjoint(&cert.parts[j]) {
                    return Err(CoverFault::Overlap { first: i, second: j });
                }
            }
        }
        let mut all = EdgeSet::new();
        for p in &cert.parts {
            all.extend(p.iter());
        }
        if &all != g.edges() {
            return Err(CoverFault::UnionMismatch);
        }
    } else {
        let diff = symmetric_difference(&cert.parts).xor(g.edges());
        if !diff.is_empty() {
            return Err(CoverFault::XorMismatch { count: diff.len() });
        }
    }
    Ok(())
}

/// One edge from every cycle of `H1` and of `H2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalPair {
    pub m1: EdgeSet,
    pub m2: EdgeSet,
}

impl TransversalPair {
    /// `|V(M1) ∩ V(M2)|`.
    pub fn intersection(&self) -> usize {
        let a = self.m1.vertices();
        self.m2.vertices().intersection(&a).count()
    }
}

/// A transversal pair with even intersection plus a vertex `u` and
/// neighbours with `u·v1 ∈ M1`, `u·v2 ∈ M2`, `v1 ∉ V(M2)`, `v2 ∉ V(M1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenPair {
    pub pair: TransversalPair,
    pub u: usize,
    pub v1: usize,
    pub v2: usize,
}

/// Endpoint bookkeeping for three linear forests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestStats {
    /// `|R12|, |R13|, |R23|`, where `Rij = end(Fi) ∩ end(Fj)`.
    pub r: [usize; 3],
    /// Components of `Fi` running from `Rij` to `Rik`.
    pub t: [usize; 3],
    /// Common parity of all six counts.
    pub parity: usize,
}

impl ForestStats {
    pub fn r_sum(&self) -> usize {
        self.r.iter().sum()
    }
}

/// Three linear forests with their stats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestTriple {
    pub forests: [EdgeSet; 3],
    pub stats: ForestStats,
}

/// Index into `ForestStats::r` for the pair `{i, j}`.
fn pair_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 1) => 0,
        (0, 2) => 1,
        (1, 2) => 2,
        _ => unreachable!("forest indices are 0..3 and distinct"),
    }
}

fn third(i: usize, j: usize) -> usize {
    3 - i - j
}

struct Ends {
    end: [BTreeSet<usize>; 3],
    partner: [BTreeMap<usize, usize>; 3],
}

impl Ends {
    fn new(f: &[EdgeSet; 3]) -> Result<Self, OddCoverError> {
        let mut end: [BTreeSet<usize>; 3] = Default::default();
        let mut partner: [BTreeMap<usize, usize>; 3] = Default::default();
        for i in 0..3 {
            if !classify(&f[i]).is_linear_forest() {
                return Err(OddCoverError::NotLinearForest(i));
            }
            for comp in components(&f[i]) {
                let order = path_vertices(&comp).expect("component of a linear forest");
                let (a, b) = (order[0], order[order.len() - 1]);
                end[i].insert(a);
                end[i].insert(b);
                partner[i].insert(a, b);
                partner[i].insert(b, a);
            }
        }
        Ok(Ends { end, partner })
    }

    fn r(&self, i: usize, j: usize) -> BTreeSet<usize> {
        self.end[i].intersection(&self.end[j]).copied().collect()
    }

    /// Components of `Fi` from `Rij` to `Rik`, as `(Rij end, Rik end)`.
    fn straddling(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let k = third(i, j);
        let (rij, rik) = (self.r(i, j), self.r(i, k));
        self.partner[i]
            .iter()
            .filter(|(a, b)| rij.contains(a) && rik.contains(b))
            .map(|(&a, &b)| (a, b))
            .collect()
    }

    fn stats(&self) -> Result<ForestStats, OddCoverError> {
        let r = [self.r(0, 1).len(), self.r(0, 2).len(), self.r(1, 2).len()];
        let t = [
            self.straddling(0, 1).len(),
            self.straddling(1, 0).len(),
            self.straddling(2, 0).len(),
        ];
        // every endpoint must lie in exactly two of the three end sets
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.end {
            for &v in e {
                *count.entry(v).or_default() += 1;
            }
        }
        if count.values().any(|&c| c != 2) {
            return Err(OddCoverError::ParityInconsistent);
        }
        let parity = r[0] % 2;
        if r.iter().chain(&t).any(|&x| x % 2 != parity) {
            return Err(OddCoverError::ParityInconsistent);
        }
        Ok(ForestStats { r, t, parity })
    }
}

/// Endpoint counts of three linear forests whose xor is Eulerian.
pub fn forest_stats(f: &[EdgeSet; 3]) -> Result<ForestStats, OddCoverError> {
    Ends::new(f)?.stats()
}

fn check_polycycle(h: &EdgeSet) -> Result<(), OddCoverError> {
    if h.is_empty() || classify(h).is_polycycle() {
        Ok(())
    } else {
        Err(OddCoverError::NotPolycycle)
    }
}

fn is_transversal(h: &EdgeSet, m: &EdgeSet) -> bool {
    let comps = components(h);
    m.is_subset(h)
        && comps.len() == m.len()
        && comps
            .iter()
            .all(|c| m.iter().filter(|&e| c.contains(e)).count() == 1)
}

/// One edge per cycle of `h`: the forced edge where given, otherwise the
/// smallest edge avoiding `avoid`.
pub fn transversal(h: &EdgeSet, forced: &[Edge], avoid: Option<usize>) -> Option<EdgeSet> {
    let mut m = EdgeSet::new();
    for c in components(h) {
        let mut hits = forced.iter().copied().filter(|&e| c.contains(e));
        let e = match hits.next() {
            Some(e) => {
                if hits.next().is_some() {
                    return None;
                }
                e
            }
            None => c.iter().find(|e| avoid.is_none_or(|x| !e.contains(x)))?,
        };
        if avoid.is_some_and(|x| e.contains(x)) {
            return None;
        }
        m.insert(e);
    }
    Some(m)
}

/// Splits a polycycle pair along a transversal pair into three linear
/// forests `F1 = (H1∖M1) ∪ M′`, `F2 = M1 ∪ (M2∖M′)`, `F3 = H2∖M2`, where `M′`
/// holds the smallest `M2` edge of every cycle of `M1 ∪ M2`.
pub fn linear_forests_from_transversal(
    h1: &EdgeSet,
    h2: &EdgeSet,
    tp: &TransversalPair,
) -> Result<ForestTriple, OddCoverError> {
    check_polycycle(h1)?;
    check_polycycle(h2)?;
    if h1.is_empty() != h2.is_empty() {
        return Err(OddCoverError::OneSideEmpty);
    }
    if !h1.is_disjoint(h2) {
        return Err(OddCoverError::NotEdgeDisjoint);
    }
    if !is_transversal(h1, &tp.m1) || !is_transversal(h2, &tp.m2) {
        return Err(OddCoverError::NotTransversal);
    }
    let union = tp.m1.union(&tp.m2);
    let mut closing = EdgeSet::new();
    for comp in components(&union) {
        if classify(&comp).is_cycle() {
            closing.insert(comp.intersection(&tp.m2).first().expect("alternating cycle"));
        }
    }
    let forests = [
        h1.difference(&tp.m1).union(&closing),
        tp.m1.union(&tp.m2.difference(&closing)),
        h2.difference(&tp.m2),
    ];
    let ends = Ends::new(&forests)?;
    let v1 = tp.m1.vertices();
    let v2 = tp.m2.vertices();
    let sym = |a: &BTreeSet<usize>, b: &BTreeSet<usize>| -> BTreeSet<usize> {
        a.symmetric_difference(b).copied().collect()
    };
    assert_eq!(ends.end[0], sym(&v1, &closing.vertices()));
    assert_eq!(ends.end[1], sym(&v1, &tp.m2.difference(&closing).vertices()));
    assert_eq!(ends.end[2], v2);
    let stats = ends.stats()?;
    assert_eq!(stats.parity, tp.intersection() % 2);
    Ok(ForestTriple { forests, stats })
}

/// Parity of `|e ∩ V|` for each edge of a cycle, first even and first odd
/// in cyclic order.
fn even_odd_edges(cycle: &[usize], v: &BTreeSet<usize>) -> (Option<Edge>, Option<Edge>) {
    let mut e0 = None;
    let mut e1 = None;
    for i in 0..cycle.len() {
        let e = Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]);
        if e.hits(v).is_multiple_of(2) {
            e0.get_or_insert(e);
        } else {
            e1.get_or_insert(e);
        }
    }
    (e0, e1)
}

/// Result of the flexible-set exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exchange {
    /// The set the cycle is flexible with respect to: `V` or `V ∪ {z} ∖ {x}`.
    pub set: BTreeSet<usize>,
    pub switched: bool,
    /// Edge meeting `set` in an even number of vertices.
    pub e0: Edge,
    /// Edge meeting `set` in exactly one vertex.
    pub e1: Edge,
}

/// Given a cycle `c`, `x ∈ V ∩ V(c)` and `z ∉ V`, returns a set among
/// `V` and `V ∪ {z} ∖ {x}` for which `c` has both an even and an odd edge.
pub fn flexible_exchange(
    c: &EdgeSet,
    v: &BTreeSet<usize>,
    x: usize,
    z: usize,
) -> Result<Exchange, OddCoverError> {
    let order = cycle_vertices(c).ok_or(OddCoverError::Precondition("not a cycle"))?;
    if !v.contains(&x) || !order.contains(&x) {
        return Err(OddCoverError::Precondition("x must lie in V and on the cycle"));
    }
    if v.contains(&z) || x == z {
        return Err(OddCoverError::Precondition("z must lie outside V"));
    }
    if let (Some(e0), Some(e1)) = even_odd_edges(&order, v) {
        return Ok(Exchange {
            set: v.clone(),
            switched: false,
            e0,
            e1,
        });
    }
    let mut alt = v.clone();
    alt.remove(&x);
    alt.insert(z);
    match even_odd_edges(&order, &alt) {
        (Some(e0), Some(e1)) => Ok(Exchange {
            set: alt,
            switched: true,
            e0,
            e1,
        }),
        _ => Err(OddCoverError::Construction("cycle is rigid for both sets")),
    }
}

fn component_of(comps: &[EdgeSet], x: usize) -> Option<usize> {
    comps.iter().position(|c| c.degree(x) > 0)
}

/// Transversal pair with odd intersection for polycycles sharing a vertex.
pub fn transversal_odd_intersection(h1: &EdgeSet, h2: &EdgeSet) -> Result<TransversalPair, OddCoverError> {
    check_polycycle(h1)?;
    check_polycycle(h2)?;
    if !h1.is_disjoint(h2) {
        return Err(OddCoverError::NotEdgeDisjoint);
    }
    let shared = h1.vertices();
    let s = *h2
        .vertices()
        .iter()
        .find(|v| shared.contains(v))
        .ok_or(OddCoverError::NoCommonVertex)?;
    let comps1 = components(h1);
    let comps2 = components(h2);
    let ci = component_of(&comps1, s).expect("s lies on H1");
    let d = &comps2[component_of(&comps2, s).expect("s lies on H2")];
    let order = cycle_vertices(&comps1[ci]).expect("cycle");
    let at = order.iter().position(|&w| w == s).expect("s on C");
    let x: Vec<usize> = (0..3).map(|k| order[(at + k) % order.len()]).collect();

    let rest1 = comps1
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != ci)
        .flat_map(|(_, c)| c.iter())
        .collect::<EdgeSet>();
    let m1_rest = transversal(&rest1, &[], None).expect("unconstrained transversal");
    let mut v = m1_rest.vertices();
    v.insert(x[0]);
    v.insert(x[1]);
    let ex = flexible_exchange(d, &v, x[0], x[2])?;
    let e = if ex.switched {
        Edge::new(x[1], x[2])
    } else {
        Edge::new(x[0], x[1])
    };
    let mut m1 = m1_rest;
    m1.insert(e);
    debug_assert_eq!(m1.vertices(), ex.set);

    let rest2 = h2.difference(d);
    let mut m2 = transversal(&rest2, &[], None).expect("unconstrained transversal");
    let base = TransversalPair {
        m1: m1.clone(),
        m2: m2.clone(),
    }
    .intersection();
    m2.insert(if base % 2 == 1 { ex.e0 } else { ex.e1 });
    let tp = TransversalPair { m1, m2 };
    if tp.intersection() % 2 != 1 || !is_transversal(h1, &tp.m1) || !is_transversal(h2, &tp.m2) {
        return Err(OddCoverError::Construction("odd transversal pair"));
    }
    Ok(tp)
}

/// Components `(a, a′)` of `H1` and `(b, b′)` of `H2` with `a` meeting `b`
/// and `a′` meeting `b′`.
pub fn find_crossing(h1: &EdgeSet, h2: &EdgeSet) -> Option<[usize; 4]> {
    crossings(&components(h1), &components(h2)).into_iter().next()
}

fn meets(a: &EdgeSet, b: &EdgeSet) -> bool {
    let va = a.vertices();
    b.vertices().iter().any(|v| va.contains(v))
}

fn crossings(ca: &[EdgeSet], cb: &[EdgeSet]) -> Vec<[usize; 4]> {
    let mut touching = Vec::new();
    for (i, a) in ca.iter().enumerate() {
        for (j, b) in cb.iter().enumerate() {
            if meets(a, b) {
                touching.push((i, j));
            }
        }
    }
    let mut out = Vec::new();
    for &(a, b) in &touching {
        for &(a2, b2) in &touching {
            if a != a2 && b != b2 {
                out.push([a, a2, b, b2]);
            }
        }
    }
    out
}

fn neighbours(c: &EdgeSet, x: usize) -> Vec<usize> {
    c.incident(x).iter().map(|e| e.other(x)).collect()
}

fn flatten_except(comps: &[EdgeSet], skip: usize) -> EdgeSet {
    comps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .flat_map(|(_, c)| c.iter())
        .collect()
}

fn valid_even(a: &EdgeSet, b: &EdgeSet, cand: &EvenPair) -> bool {
    let tp = &cand.pair;
    is_transversal(a, &tp.m1)
        && is_transversal(b, &tp.m2)
        && tp.intersection().is_multiple_of(2)
        && tp.m1.contains(Edge::new(cand.u, cand.v1))
        && tp.m2.contains(Edge::new(cand.u, cand.v2))
        && !tp.m2.vertices().contains(&cand.v1)
        && !tp.m1.vertices().contains(&cand.v2)
}

/// Finishes the first case: `M_A` is fixed, `C′` is the `B`-cycle whose
/// flexible edges are still open.
fn finish_with_flexible(
    cb: &[EdgeSet],
    b_flex: usize,
    m_a: EdgeSet,
    u: usize,
    v1: usize,
    v2: usize,
) -> Option<EvenPair> {
    let (e0, e1) = even_odd_edges(&cycle_vertices(&cb[b_flex])?, &m_a.vertices());
    let (e0, e1) = (e0?, e1?);
    let rest = flatten_except(cb, b_flex);
    let mut m_b = transversal(&rest, &[Edge::new(u, v2)], Some(v1))?;
    let base = TransversalPair {
        m1: m_a.clone(),
        m2: m_b.clone(),
    }
    .intersection();
    m_b.insert(if base.is_multiple_of(2) { e0 } else { e1 });
    Some(EvenPair {
        pair: TransversalPair { m1: m_a, m2: m_b },
        u,
        v1,
        v2,
    })
}

fn even_case_1a(a: &EdgeSet, b: &EdgeSet, ca: &[EdgeSet], cb: &[EdgeSet]) -> Option<EvenPair> {
    for [ia, ia2, ib, ib2] in crossings(ca, cb) {
        let vb = cb[ib].vertices();
        let vb2 = cb[ib2].vertices();
        let va2 = ca[ia2].vertices();
        let x = *va2.iter().find(|v| vb2.contains(v))?;
        let y = neighbours(&ca[ia2], x).into_iter().min()?;
        let z = neighbours(&ca[ia2], y).into_iter().find(|&w| w != x)?;
        for e in ca[ia].iter() {
            for (u, v1) in [(e.u(), e.v()), (e.v(), e.u())] {
                if !vb.contains(&u) || vb2.contains(&v1) {
                    continue;
                }
                for v2 in neighbours(&cb[ib], u) {
                    if va2.contains(&v2) {
                        continue;
                    }
                    let rest = flatten_except(ca, ia2);
                    let Some(m_rest) = transversal(&rest, &[Edge::new(u, v1)], Some(v2)) else {
                        continue;
                    };
                    let mut vset = m_rest.vertices();
                    vset.insert(x);
                    vset.insert(y);
                    let Ok(ex) = flexible_exchange(&cb[ib2], &vset, x, z) else {
                        continue;
                    };
                    let mut m_a = m_rest;
                    m_a.insert(if ex.switched {
                        Edge::new(y, z)
                    } else {
                        Edge::new(x, y)
                    });
                    if let Some(p) = finish_with_flexible(cb, ib2, m_a, u, v1, v2) {
                        if valid_even(a, b, &p) {
                            return Some(p);
                        }
                    }
                }
            }
        }
    }
    None
}

fn even_case_1b(a: &EdgeSet, b: &EdgeSet, ca: &[EdgeSet], cb: &[EdgeSet]) -> Option<EvenPair> {
    for [ia, ia2, ib, ib2] in crossings(ca, cb) {
        let vb = cb[ib].vertices();
        let vb2 = cb[ib2].vertices();
        let va2 = ca[ia2].vertices();
        let bridge: Vec<(usize, usize)> = ca[ia2]
            .iter()
            .flat_map(|e| [(e.u(), e.v()), (e.v(), e.u())])
            .filter(|(x, y)| vb2.contains(x) && !vb2.contains(y))
            .collect();
        for e in ca[ia].iter() {
            for (u, v1) in [(e.u(), e.v()), (e.v(), e.u())] {
                if !vb.contains(&u) || vb2.contains(&v1) {
                    continue;
                }
                let nb = neighbours(&cb[ib], u);
                if !nb.iter().all(|w| va2.contains(w)) {
                    continue;
                }
                for &(x, y) in &bridge {
                    for &v2 in nb.iter().filter(|&&w| w != y) {
                        let forced = [Edge::new(u, v1), Edge::new(x, y)];
                        let Some(m_a) = transversal(a, &forced, Some(v2)) else {
                            continue;
                        };
                        if let Some(p) = finish_with_flexible(cb, ib2, m_a, u, v1, v2) {
                            if valid_even(a, b, &p) {
                                return Some(p);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn even_case_2(a: &EdgeSet, b: &EdgeSet, ca: &[EdgeSet], cb: &[EdgeSet]) -> Option<EvenPair> {
    for [ia, ia2, ib, ib2] in crossings(ca, cb) {
        let vb = cb[ib].vertices();
        let vb2 = cb[ib2].vertices();
        let links: Vec<(usize, usize)> = ca[ia2]
            .iter()
            .flat_map(|e| [(e.u(), e.v()), (e.v(), e.u())])
            .filter(|(w1, x1)| vb.contains(w1) && vb2.contains(x1))
            .collect();
        for u1 in ca[ia].vertices().into_iter().filter(|v| vb.contains(v)) {
            for v1 in neighbours(&ca[ia], u1) {
                for &(w1, x1) in &links {
                    for w in neighbours(&cb[ib], u1).into_iter().filter(|&w| w != w1) {
                        for v in neighbours(&cb[ib2], x1).into_iter().filter(|&v| v != v1) {
                            let Some(m_a) = transversal(a, &[Edge::new(u1, v1), Edge::new(w1, x1)], None)
                            else {
                                continue;
                            };
                            let Some(m_b) = transversal(b, &[Edge::new(u1, w), Edge::new(v, x1)], None)
                            else {
                                continue;
                            };
                            let p = EvenPair {
                                pair: TransversalPair { m1: m_a, m2: m_b },
                                u: u1,
                                v1,
                                v2: w,
                            };
                            if valid_even(a, b, &p) {
                                return Some(p);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Transversal pair with even intersection and a witness, for polycycles
/// with a crossing pair of components.
pub fn transversal_even_intersection(h1: &EdgeSet, h2: &EdgeSet) -> Result<EvenPair, OddCoverError> {
    check_polycycle(h1)?;
    check_polycycle(h2)?;
    if !h1.is_disjoint(h2) {
        return Err(OddCoverError::NotEdgeDisjoint);
    }
    let c1 = components(h1);
    let c2 = components(h2);
    if crossings(&c1, &c2).is_empty() {
        return Err(OddCoverError::CrossingPairMissing);
    }
    type Case = fn(&EdgeSet, &EdgeSet, &[EdgeSet], &[EdgeSet]) -> Option<EvenPair>;
    let cases: [Case; 3] = [even_case_1a, even_case_1b, even_case_2];
    for case in cases {
        if let Some(p) = case(h1, h2, &c1, &c2) {
            return Ok(p);
        }
        if let Some(p) = case(h2, h1, &c2, &c1) {
            let TransversalPair { m1, m2 } = p.pair;
            return Ok(EvenPair {
                pair: TransversalPair { m1: m2, m2: m1 },
                u: p.u,
                v1: p.v2,
                v2: p.v1,
            });
        }
    }
    Err(OddCoverError::Construction(
        "no case of the even-intersection construction applies",
    ))
}

fn pick_pair(stats: &ForestStats, at_least: usize) -> Option<(usize, usize)> {
    [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(i, j)| stats.r[pair_index(i, j)] >= at_least)
}

fn add_shared(f: &mut [EdgeSet; 3], i: usize, j: usize, e: Edge) {
    assert!(f[i].insert(e) && f[j].insert(e), "joining edge already present");
}

/// Repeatedly joins two forests until every `Rij` has one vertex; each
/// forest is then a single path.
pub fn join_to_paths(mut f: [EdgeSet; 3]) -> Result<[EdgeSet; 3], OddCoverError> {
    let mut ends = Ends::new(&f)?;
    let mut stats = ends.stats()?;
    if stats.parity != 1 {
        return Err(OddCoverError::Precondition("path joining needs odd parity"));
    }
    while let Some((i, j)) = pick_pair(&stats, 3) {
        let k = third(i, j);
        let rij = ends.r(i, j);
        let rik = ends.r(i, k);
        let u = *rij
            .iter()
            .find(|u| rik.contains(&ends.partner[i][u]))
            .ok_or(OddCoverError::Construction("no straddling component"))?;
        let w = ends.partner[j][&u];
        let v = *rij
            .iter()
            .find(|&&v| v != u && v != w)
            .ok_or(OddCoverError::Construction("no second endpoint"))?;
        add_shared(&mut f, i, j, Edge::new(u, v));
        ends = Ends::new(&f)?;
        let next = ends.stats()?;
        assert_eq!(next.r_sum() + 2, stats.r_sum());
        assert_eq!(next.parity, 1);
        stats = next;
    }
    assert_eq!(stats.r, [1, 1, 1]);
    Ok(f)
}

/// Joins forests with parity zero until every `Rij` has two vertices and
/// closes each forest into a cycle.
pub fn join_to_cycles(mut f: [EdgeSet; 3]) -> Result<[EdgeSet; 3], OddCoverError> {
    let mut ends = Ends::new(&f)?;
    let mut stats = ends.stats()?;
    if stats.parity != 0 || stats.t.contains(&0) {
        return Err(OddCoverError::Precondition(
            "cycle joining needs even parity and straddling components",
        ));
    }
    while let Some((i, j)) = pick_pair(&stats, 4) {
        let own = ends.straddling(i, j);
        let other = ends.straddling(j, i);
        let (u, x1) = match own.as_slice() {
            [first, second, ..] => (first.0, second.0),
            _ => {
                return Err(OddCoverError::Construction(
                    "fewer than two straddling components",
                ))
            }
        };
        let xj = other
            .iter()
            .map(|&(a, _)| a)
            .find(|&a| a != u)
            .ok_or(OddCoverError::Construction(
                "no straddling component in the partner forest",
            ))?;
        let w = ends.partner[j][&u];
        let rij = ends.r(i, j);
        let blocked = if rij.contains(&w) { [u, x1, w] } else { [u, x1, xj] };
        let v = *rij
            .iter()
            .find(|v| !blocked.contains(v))
            .ok_or(OddCoverError::Construction("no free endpoint"))?;
        add_shared(&mut f, i, j, Edge::new(u, v));
        ends = Ends::new(&f)?;
        let next = ends.stats()?;
        assert_eq!(next.r_sum() + 2, stats.r_sum());
        assert_eq!(next.parity, 0);
        assert!(next.t.iter().all(|&t| t >= 2));
        stats = next;
    }
    assert_eq!(stats.r, [2, 2, 2]);
    let closing: Vec<Edge> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| {
            let r: Vec<usize> = ends.r(i, j).into_iter().collect();
            Edge::new(r[0], r[1])
        })
        .collect();
    for (idx, &(i, j)) in [(0, 1), (0, 2), (1, 2)].iter().enumerate() {
        add_shared(&mut f, i, j, closing[idx]);
    }
    for part in &f {
        assert!(classify(part).is_cycle());
    }
    Ok(f)
}

/// At most three paths odd-covering the union of two edge-disjoint
/// polycycles.
pub fn paths_for_pair(h1: &EdgeSet, h2: &EdgeSet) -> Result<Vec<EdgeSet>, OddCoverError> {
    if h1.is_empty() || h2.is_empty() || !meets(h1, h2) {
        return Ok(polycycle_odd_cover(&h1.union(h2), Kind::Path)?);
    }
    let tp = transversal_odd_intersection(h1, h2)?;
    let triple = linear_forests_from_transversal(h1, h2, &tp)?;
    Ok(join_to_paths(triple.forests)?.into())
}

/// At most three cycles odd-covering the union of two edge-disjoint
/// polycycles.
pub fn cycles_for_pair(h1: &EdgeSet, h2: &EdgeSet) -> Result<Vec<EdgeSet>, OddCoverError> {
    if h1.is_empty() || h2.is_empty() {
        return Ok(polycycle_odd_cover(&h1.union(h2), Kind::Cycle)?);
    }
    let c1 = components(h1);
    let c2 = components(h2);
    if crossings(&c1, &c2).is_empty() {
        // the touching components form a star; its centre is covered alone
        let mut touching = Vec::new();
        for (i, a) in c1.iter().enumerate() {
            for (j, b) in c2.iter().enumerate() {
                if meets(a, b) {
                    touching.push((i, j));
                }
            }
        }
        let Some(&(a0, b0)) = touching.first() else {
            return Ok(polycycle_odd_cover(&h1.union(h2), Kind::Cycle)?);
        };
        let (centre, rest) = if touching.iter().all(|&(a, _)| a == a0) {
            (c1[a0].clone(), h2.union(&flatten_except(&c1, a0)))
        } else {
            (c2[b0].clone(), h1.union(&flatten_except(&c2, b0)))
        };
        let mut parts = polycycle_odd_cover(&rest, Kind::Cycle)?;
        parts.push(centre);
        return Ok(parts);
    }
    let even = transversal_even_intersection(h1, h2)?;
    let triple = linear_forests_from_transversal(h1, h2, &even.pair)?;
    Ok(join_to_cycles(triple.forests)?.into())
}

fn eulerian_max_degree(g: &SimpleGraph) -> Result<usize, OddCoverError> {
    g.check_eulerian().map_err(|e| match e {
        GraphError::NotEulerian { vertex, .. } => OddCoverError::NotEulerian { vertex },
        other => OddCoverError::Graph(other),
    })?;
    Ok(g.degrees().delta)
}

/// Three paths odd-covering an Eulerian graph of maximum degree at most 4.
pub fn path_odd_cover_delta4(g: &SimpleGraph) -> Result<OddCoverCert, OddCoverError> {
    let delta = eulerian_max_degree(g)?;
    if delta > 4 {
        return Err(OddCoverError::DegreeTooLarge { delta });
    }
    odd_cover_eulerian(g, Kind::Path)
}

/// Three cycles odd-covering an Eulerian graph of maximum degree at most 4.
pub fn cycle_odd_cover_delta4(g: &SimpleGraph) -> Result<OddCoverCert, OddCoverError> {
    let delta = eulerian_max_degree(g)?;
    if delta > 4 {
        return Err(OddCoverError::DegreeTooLarge { delta });
    }
    odd_cover_eulerian(g, Kind::Cycle)
}

/// Odd-cover of an Eulerian graph by at most `⌈3Δ/4⌉` paths, or by at most
/// `d1/2 + ⌈d2/4⌉` cycles where `d1 ≥ d2` are the two largest degrees.
pub fn odd_cover_eulerian(g: &SimpleGraph, kind: Kind) -> Result<OddCoverCert, OddCoverError> {
    let delta = eulerian_max_degree(g)?;
    let kind = match kind {
        Kind::LinearForest => Kind::Path,
        k => k,
    };
    let mut parts = Vec::new();
    if delta == 0 {
        return Ok(OddCoverCert { kind, parts });
    }
    match kind {
        Kind::Path => {
            let d = undirected_polycycle_decomposition(g, delta / 2)?;
            for chunk in d.parts.chunks(2) {
                match chunk {
                    [h1, h2] => parts.extend(paths_for_pair(h1, h2)?),
                    [h] => parts.extend(polycycle_odd_cover(h, Kind::Path)?),
                    _ => unreachable!(),
                }
            }
        }
        _ => {
            let mut degs = g.degree_vector();
            degs.sort_unstable_by(|a, b| b.cmp(a));
            let d2 = degs.get(1).copied().unwrap_or(0);
            let d = undirected_polycycle_decomposition(g, d2 / 2)?;
            let split = d.parts.len() - d.cycle_suffix_len;
            for chunk in d.parts[..split].chunks(2) {
                match chunk {
                    [h1, h2] => parts.extend(cycles_for_pair(h1, h2)?),
                    [h] => parts.extend(polycycle_odd_cover(h, Kind::Cycle)?),
                    _ => unreachable!(),
                }
            }
            parts.extend(d.parts[split..].iter().filter(|c| !c.is_empty()).cloned());
        }
    }
    let cert = OddCoverCert { kind, parts };
    debug_assert_eq!(check_cover(g, &cert), Ok(()));
    Ok(cert)
}

/// `⌈3Δ/4⌉` for Eulerian graphs.
pub fn eulerian_path_bound(delta: usize) -> usize {
    (3 * delta).div_ceil(4)
}

/// `d1/2 + ⌈d2/4⌉` for Eulerian graphs.
pub fn eulerian_cycle_bound(g: &SimpleGraph) -> usize {
    let mut degs = g.degree_vector();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let d1 = degs.first().copied().unwrap_or(0);
    let d2 = degs.get(1).copied().unwrap_or(0);
    d1 / 2 + d2.div_ceil(4)
}

/// `v_odd/2 + ⌈3Δe/4⌉`.
pub fn general_path_bound(g: &SimpleGraph) -> usize {
    let s = g.degrees();
    s.v_odd / 2 + (3 * s.delta_e).div_ceil(4)
}

/// Path odd-cover of any graph: odd vertices are paired off by a matching
/// `M` on `K_n`, `G ⊕ M` is covered as an Eulerian graph and each edge of
/// `M` becomes its own path.
pub fn path_odd_cover_general(g: &SimpleGraph) -> Result<OddCoverCert, OddCoverError> {
    let degs = g.degree_vector();
    let odd: Vec<usize> = (0..g.n()).filter(|&v| degs[v] % 2 == 1).collect();
    let m: EdgeSet = odd.chunks(2).map(|p| Edge::new(p[0], p[1])).collect();
    let even = SimpleGraph::from_edge_set(g.n(), g.edges().xor(&m))?;
    let mut cert = odd_cover_eulerian(&even, Kind::Path)?;
    cert.parts.extend(m.iter().map(|e| EdgeSet::from_iter([e])));
    debug_assert_eq!(check_cover(g, &cert), Ok(()));
    Ok(cert)
}

/// Decomposes a graph of maximum degree at most 4 into three linear forests.
/// The graph is made Eulerian by doubling it and joining each odd vertex to
/// its copy; the forests of the doubled graph are restricted back.
pub fn linear_forest_decomposition(g: &SimpleGraph) -> Result<OddCoverCert, OddCoverError> {
    let s = g.degrees();
    if s.delta > 4 {
        return Err(OddCoverError::DegreeTooLarge { delta: s.delta });
    }
    let n = g.n();
    let mut doubled = g.disjoint_union(g);
    for v in (0..n).filter(|&v| s.degrees[v] % 2 == 1) {
        doubled.add_edge(v, v + n)?;
    }
    let d = undirected_polycycle_decomposition(&doubled, 2)?;
    let forests: [EdgeSet; 3] = match d.parts.as_slice() {
        [] => Default::default(),
        [h] => {
            let m = transversal(h, &[], None).expect("unconstrained transversal");
            [h.difference(&m), m, EdgeSet::new()]
        }
        [h1, h2] => {
            let tp = TransversalPair {
                m1: transversal(h1, &[], None).expect("unconstrained transversal"),
                m2: transversal(h2, &[], None).expect("unconstrained transversal"),
            };
            linear_forests_from_transversal(h1, h2, &tp)?.forests
        }
        _ => unreachable!("maximum degree 4 yields at most two polycycles"),
    };
    let parts = forests.iter().map(|f| f.intersection(g.edges())).collect();
    let cert = OddCoverCert {
        kind: Kind::LinearForest,
        parts,
    };
    debug_assert_eq!(check_cover(g, &cert), Ok(()));
    Ok(cert)
}
