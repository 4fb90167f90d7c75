//! Labeled simple graphs, directed multigraphs with loops, and the structural
//! queries the decompositions depend on (degrees, components, Eulerian
//! orientation, path/cycle recognition).
//!
//! Vertices are dense integers `0..n`. Undirected edges are stored in
//! canonical `(min, max)` form so that edge sets compare and xor cheaply.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {{{vertex},{vertex}}} is a loop")]
    LoopEdge { vertex: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {{{u},{v}}} listed twice")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {vertex} has odd degree {degree}")]
    NotEulerian { vertex: usize, degree: usize },
}

/// An undirected edge `{u, v}` with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        Self::try_new(a, b).expect("an edge needs two distinct endpoints")
    }

    pub fn try_new(a: usize, b: usize) -> Option<Self> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            core::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            core::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn contains(self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`. Panics if `x` is not an endpoint.
    pub fn other(self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v, "{x} is not an endpoint of {self}");
            self.u
        }
    }

    /// Number of endpoints lying in `set`.
    pub fn hits(self, set: &BTreeSet<usize>) -> usize {
        set.contains(&self.u) as usize + set.contains(&self.v) as usize
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.u, self.v)
    }
}

/// A set of undirected edges. Graphs are identified with their edge sets, so
/// `V(E)` is the set of vertices touched by some edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    /// Builds a set from vertex pairs; panics on loops.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        pairs.into_iter().map(|(a, b)| Edge::new(a, b)).collect()
    }

    /// The cycle through `verts` in the given cyclic order.
    pub fn cycle(verts: &[usize]) -> Self {
        let k = verts.len();
        (0..k).map(|i| Edge::new(verts[i], verts[(i + 1) % k])).collect()
    }

    /// The path through `verts` in the given order.
    pub fn path(verts: &[usize]) -> Self {
        verts.windows(2).map(|w| Edge::new(w[0], w[1])).collect()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: Edge) -> bool {
        self.0.remove(&e)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0.contains(&e)
    }

    /// Adds `e` if absent, removes it otherwise.
    pub fn toggle(&mut self, e: Edge) {
        if !self.0.remove(&e) {
            self.0.insert(e);
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Edge> {
        self.0.first().copied()
    }

    pub fn xor(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.symmetric_difference(&other.0).copied().collect())
    }

    pub fn xor_assign(&mut self, other: &EdgeSet) {
        for e in other.iter() {
            self.toggle(e);
        }
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// `V(E)`.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.iter().flat_map(|e| [e.u, e.v]).collect()
    }

    pub fn degrees(&self) -> BTreeMap<usize, usize> {
        let mut deg = BTreeMap::new();
        for e in self.iter() {
            *deg.entry(e.u).or_insert(0) += 1;
            *deg.entry(e.v).or_insert(0) += 1;
        }
        deg
    }

    pub fn degree(&self, x: usize) -> usize {
        self.iter().filter(|e| e.contains(x)).count()
    }

    /// Vertices of degree one.
    pub fn endpoints(&self) -> BTreeSet<usize> {
        self.degrees()
            .into_iter()
            .filter(|&(_, d)| d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    /// Edges incident to `x`, in increasing order.
    pub fn incident(&self, x: usize) -> Vec<Edge> {
        self.iter().filter(|e| e.contains(x)).collect()
    }

    /// Largest vertex label plus one (0 for the empty set).
    pub fn vertex_bound(&self) -> usize {
        self.iter().map(|e| e.v + 1).max().unwrap_or(0)
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl Extend<Edge> for EdgeSet {
    fn extend<I: IntoIterator<Item = Edge>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = Edge;
    type IntoIter = core::iter::Copied<alloc::collections::btree_set::Iter<'a, Edge>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Xor of all parts: an edge survives iff it lies in an odd number of parts.
pub fn symmetric_difference<'a, I>(parts: I) -> EdgeSet
where
    I: IntoIterator<Item = &'a EdgeSet>,
{
    let mut acc = EdgeSet::new();
    for part in parts {
        acc.xor_assign(part);
    }
    acc
}

/// Connected components of an edge set, ordered by smallest vertex.
pub fn components(edges: &EdgeSet) -> Vec<EdgeSet> {
    let verts: Vec<usize> = edges.vertices().into_iter().collect();
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges.iter() {
        let a = find(&mut parent, index[&e.u]);
        let b = find(&mut parent, index[&e.v]);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut by_root: BTreeMap<usize, EdgeSet> = BTreeMap::new();
    for e in edges.iter() {
        let r = find(&mut parent, index[&e.u]);
        by_root.entry(r).or_default().insert(e);
    }
    // roots are the smallest index of their class, so map order is min-vertex order
    by_root.into_values().collect()
}

/// Structural class of an edge set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgraphShape {
    Empty,
    Path,
    Cycle,
    /// At least two components, every one a cycle.
    Polycycle,
    /// At least two components, every one a path.
    LinearForest,
    Other,
}

impl SubgraphShape {
    pub fn is_path(self) -> bool {
        self == SubgraphShape::Path
    }

    pub fn is_cycle(self) -> bool {
        self == SubgraphShape::Cycle
    }

    /// A single cycle also counts as a polycycle.
    pub fn is_polycycle(self) -> bool {
        matches!(self, SubgraphShape::Cycle | SubgraphShape::Polycycle)
    }

    pub fn is_linear_forest(self) -> bool {
        matches!(
            self,
            SubgraphShape::Empty | SubgraphShape::Path | SubgraphShape::LinearForest
        )
    }
}

impl fmt::Display for SubgraphShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubgraphShape::Empty => "empty",
            SubgraphShape::Path => "path",
            SubgraphShape::Cycle => "cycle",
            SubgraphShape::Polycycle => "polycycle",
            SubgraphShape::LinearForest => "linear forest",
            SubgraphShape::Other => "other",
        };
        f.write_str(s)
    }
}

pub fn classify(edges: &EdgeSet) -> SubgraphShape {
    if edges.is_empty() {
        return SubgraphShape::Empty;
    }
    let deg = edges.degrees();
    if deg.values().any(|&d| d > 2) {
        return SubgraphShape::Other;
    }
    let comps = components(edges);
    let mut paths = 0;
    let mut cycles = 0;
    for c in &comps {
        let nv = c.vertices().len();
        if c.len() + 1 == nv {
            paths += 1;
        } else if c.len() == nv {
            cycles += 1;
        } else {
            return SubgraphShape::Other;
        }
    }
    match (paths, cycles, comps.len()) {
        (1, 0, 1) => SubgraphShape::Path,
        (0, 1, 1) => SubgraphShape::Cycle,
        (0, _, _) => SubgraphShape::Polycycle,
        (_, 0, _) => SubgraphShape::LinearForest,
        _ => SubgraphShape::Other,
    }
}

/// The class every part of a cover must belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Path,
    Cycle,
    LinearForest,
}

impl Kind {
    pub fn admits(self, shape: SubgraphShape) -> bool {
        match self {
            Kind::Path => shape.is_path(),
            Kind::Cycle => shape.is_cycle(),
            Kind::LinearForest => shape.is_linear_forest(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Path => "path",
            Kind::Cycle => "cycle",
            Kind::LinearForest => "linear_forest",
        }
    }
}

/// Vertices of a single cycle in cyclic order, starting at its smallest vertex
/// and stepping first to the smaller of that vertex's two neighbours.
pub fn cycle_vertices(cycle: &EdgeSet) -> Option<Vec<usize>> {
    if !classify(cycle).is_cycle() {
        return None;
    }
    let start = *cycle.vertices().first()?;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = cycle.incident(start).iter().map(|e| e.other(start)).min()?;
    while cur != start {
        order.push(cur);
        let next = cycle
            .incident(cur)
            .iter()
            .map(|e| e.other(cur))
            .find(|&w| w != prev)?;
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Vertices of a single path from its smaller endpoint to the other.
pub fn path_vertices(path: &EdgeSet) -> Option<Vec<usize>> {
    if !classify(path).is_path() {
        return None;
    }
    let start = *path.endpoints().first()?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = path
            .incident(cur)
            .iter()
            .map(|e| e.other(cur))
            .find(|&w| w != prev);
        match next {
            Some(w) => {
                order.push(w);
                prev = cur;
                cur = w;
            }
            None => break,
        }
    }
    Some(order)
}

/// Summary of the degree sequence of a simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    /// Maximum degree.
    pub delta: usize,
    /// Number of odd-degree vertices.
    pub v_odd: usize,
    /// Smallest even number at least `delta`.
    pub delta_e: usize,
    pub degrees: Vec<usize>,
}

/// A labeled simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: EdgeSet,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: EdgeSet::new(),
        }
    }

    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = SimpleGraph::new(n);
        for (a, b) in pairs {
            if !g.add_edge(a, b)? {
                return Err(GraphError::DuplicateEdge {
                    u: a.min(b),
                    v: a.max(b),
                });
            }
        }
        Ok(g)
    }

    pub fn from_edge_set(n: usize, edges: EdgeSet) -> Result<Self, GraphError> {
        if let Some(e) = edges.iter().find(|e| e.v >= n) {
            return Err(GraphError::VertexOutOfRange { vertex: e.v, n });
        }
        Ok(SimpleGraph { n, edges })
    }

    /// Smallest vertex range holding `edges`.
    pub fn spanning(edges: EdgeSet) -> Self {
        SimpleGraph {
            n: edges.vertex_bound(),
            edges,
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| Edge::new(a, b)))
            .collect();
        SimpleGraph { n, edges }
    }

    /// Returns `false` when the edge was already present.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool, GraphError> {
        for x in [a, b] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        let e = Edge::try_new(a, b).ok_or(GraphError::LoopEdge { vertex: a })?;
        Ok(self.edges.insert(e))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree_vector(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in self.edges.iter() {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn degrees(&self) -> DegreeStats {
        let degrees = self.degree_vector();
        let delta = degrees.iter().copied().max().unwrap_or(0);
        DegreeStats {
            delta,
            v_odd: degrees.iter().filter(|&&d| d % 2 == 1).count(),
            delta_e: 2 * delta.div_ceil(2),
            degrees,
        }
    }

    pub fn is_eulerian(&self) -> bool {
        self.check_eulerian().is_ok()
    }

    pub fn check_eulerian(&self) -> Result<(), GraphError> {
        match self.degree_vector().iter().enumerate().find(|(_, &d)| d % 2 == 1) {
            Some((vertex, &degree)) => Err(GraphError::NotEulerian { vertex, degree }),
            None => Ok(()),
        }
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in self.edges.iter() {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Vertex-disjoint union; `other` is shifted past this graph's vertices.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge::new(e.u + shift, e.v + shift)));
        SimpleGraph {
            n: self.n + other.n,
            edges,
        }
    }
}

/// Convenience wrapper matching [`SimpleGraph::degrees`].
pub fn degrees(g: &SimpleGraph) -> DegreeStats {
    g.degrees()
}

/// A directed multigraph with loops: arc `e` runs from `tail[e]` to `head[e]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    tail: Vec<usize>,
    head: Vec<usize>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            tail: Vec::new(),
            head: Vec::new(),
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Digraph::new(n);
        for (t, h) in arcs {
            g.add_arc(t, h)?;
        }
        Ok(g)
    }

    /// Appends an arc and returns its id.
    pub fn add_arc(&mut self, tail: usize, head: usize) -> Result<usize, GraphError> {
        for x in [tail, head] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        self.tail.push(tail);
        self.head.push(head);
        Ok(self.tail.len() - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arcs, loops included.
    pub fn m(&self) -> usize {
        self.tail.len()
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tail[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.head[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.tail[e] == self.head[e]
    }

    /// `(id, tail, head)` triples in id order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.m()).map(move |e| (e, self.tail[e], self.head[e]))
    }

    pub fn non_loop_arcs(&self) -> Vec<usize> {
        (0..self.m()).filter(|&e| !self.is_loop(e)).collect()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &t in &self.tail {
            d[t] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &h in &self.head {
            d[h] += 1;
        }
        d
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.tail.iter().filter(|&&t| t == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.head.iter().filter(|&&h| h == v).count()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_degrees().into_iter().max().unwrap_or(0)
    }

    pub fn is_eulerian(&self) -> bool {
        self.out_degrees() == self.in_degrees()
    }

    /// The undirected edge set of the non-loop arcs, or `None` if two arcs
    /// share an underlying edge.
    pub fn underlying_simple(&self) -> Option<EdgeSet> {
        let mut set = EdgeSet::new();
        for e in self.non_loop_arcs() {
            if !set.insert(Edge::new(self.tail[e], self.head[e])) {
                return None;
            }
        }
        Some(set)
    }
}

/// Orients an Eulerian graph so that every vertex has equal in- and
/// out-degree. Arc `i` of the result corresponds to the `i`-th edge of
/// `g.edges()` in iteration order; directions follow closed trails walked
/// with the smallest unused edge first.
pub fn eulerian_orientation(g: &SimpleGraph) -> Result<Digraph, GraphError> {
    g.check_eulerian()?;
    let edges: Vec<Edge> = g.edges().iter().collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, e) in edges.iter().enumerate() {
        incident[e.u].push(i);
        incident[e.v].push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut cursor = vec![0usize; g.n()];
    let mut tail = vec![0; edges.len()];
    let mut head = vec![0; edges.len()];
    for start in 0..g.n() {
        loop {
            // closed trail from `start`; even degrees force it to return here
            let mut cur = start;
            let mut moved = false;
            loop {
                while cursor[cur] < incident[cur].len() && used[incident[cur][cursor[cur]]] {
                    cursor[cur] += 1;
                }
                if cursor[cur] == incident[cur].len() {
                    break;
                }
                let id = incident[cur][cursor[cur]];
                used[id] = true;
                moved = true;
                let next = edges[id].other(cur);
                tail[id] = cur;
                head[id] = next;
                cur = next;
            }
            debug_assert_eq!(cur, start);
            if !moved {
                break;
            }
        }
    }
    Ok(Digraph { n: g.n(), tail, head })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> SimpleGraph {
        SimpleGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn degree_examples() {
        let empty = SimpleGraph::new(3);
        assert_eq!(
            empty.degrees(),
            DegreeStats {
                delta: 0,
                v_odd: 0,
                delta_e: 0,
                degrees: vec![0, 0, 0]
            }
        );
        let k5 = SimpleGraph::complete(5);
        assert_eq!(
            k5.degrees(),
            DegreeStats {
                delta: 4,
                v_odd: 0,
                delta_e: 4,
                degrees: vec![4; 5]
            }
        );
        assert_eq!(
            star3().degrees(),
            DegreeStats {
                delta: 3,
                v_odd: 4,
                delta_e: 4,
                degrees: vec![3, 1, 1, 1]
            }
        );
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            SimpleGraph::from_edges(3, [(1, 1)]),
            Err(GraphError::LoopEdge { vertex: 1 })
        );
        assert_eq!(
            SimpleGraph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            SimpleGraph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
    }

    #[test]
    fn orientation_of_four_cycle() {
        let c4 = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let d = eulerian_orientation(&c4).unwrap();
        assert_eq!(d.out_degrees(), vec![1; 4]);
        assert_eq!(d.in_degrees(), vec![1; 4]);
        assert_eq!(d.underlying_simple().unwrap(), *c4.edges());
    }

    #[test]
    fn orientation_of_empty_and_k5() {
        let d = eulerian_orientation(&SimpleGraph::new(0)).unwrap();
        assert_eq!(d.m(), 0);
        let k5 = SimpleGraph::complete(5);
        let d = eulerian_orientation(&k5).unwrap();
        assert_eq!(d.out_degrees(), vec![2; 5]);
        assert_eq!(d.in_degrees(), vec![2; 5]);
        assert_eq!(d.underlying_simple().unwrap(), *k5.edges());
    }

    #[test]
    fn orientation_rejects_odd_degrees() {
        assert_eq!(
            eulerian_orientation(&star3()),
            Err(GraphError::NotEulerian { vertex: 0, degree: 3 })
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&EdgeSet::from_pairs([(0, 1), (1, 2)])),
            SubgraphShape::Path
        );
        assert_eq!(
            classify(&EdgeSet::from_pairs([(0, 1), (1, 2), (2, 0)])),
            SubgraphShape::Cycle
        );
        assert_eq!(
            classify(&EdgeSet::from_pairs([
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3)
            ])),
            SubgraphShape::Polycycle
        );
        assert_eq!(
            classify(&EdgeSet::from_pairs([(0, 1), (2, 3)])),
            SubgraphShape::LinearForest
        );
        assert_eq!(classify(&EdgeSet::new()), SubgraphShape::Empty);
        assert_eq!(classify(star3().edges()), SubgraphShape::Other);
        // a path next to a cycle is neither
        assert_eq!(
            classify(&EdgeSet::from_pairs([(0, 1), (1, 2), (2, 0), (3, 4)])),
            SubgraphShape::Other
        );
    }

    #[test]
    fn xor_examples() {
        let a = EdgeSet::from_pairs([(0, 1)]);
        assert!(symmetric_difference([&a, &a]).is_empty());
        let b = EdgeSet::from_pairs([(0, 1), (1, 2)]);
        let c = EdgeSet::from_pairs([(1, 2), (2, 0)]);
        assert_eq!(
            symmetric_difference([&b, &c]),
            EdgeSet::from_pairs([(0, 1), (2, 0)])
        );
    }

    #[test]
    fn cycle_and_path_orders() {
        let c = EdgeSet::cycle(&[4, 7, 5, 9]);
        assert_eq!(cycle_vertices(&c).unwrap(), vec![4, 7, 5, 9]);
        let c = EdgeSet::cycle(&[4, 9, 5, 7]);
        assert_eq!(cycle_vertices(&c).unwrap(), vec![4, 7, 5, 9]);
        let p = EdgeSet::path(&[6, 2, 8, 1]);
        assert_eq!(path_vertices(&p).unwrap(), vec![1, 8, 2, 6]);
        assert!(cycle_vertices(&p).is_none());
    }

    #[test]
    fn components_are_ordered_by_min_vertex() {
        let e = EdgeSet::from_pairs([(5, 6), (0, 9), (9, 3), (6, 7)]);
        let comps = components(&e);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], EdgeSet::from_pairs([(0, 9), (9, 3)]));
        assert_eq!(comps[1], EdgeSet::from_pairs([(5, 6), (6, 7)]));
    }
}
