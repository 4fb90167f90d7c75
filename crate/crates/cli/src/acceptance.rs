//! The acceptance suite: eleven criteria with fixed sizes, seeds and
//! thresholds. Shared by `polyresolve selftest` and the `acceptance` test
//! target.

use std::fmt;
use std::time::{Duration, Instant};

use polyresolve_core::graph::{EdgeSet, Kind, SimpleGraph};
use polyresolve_core::oddcover::{
    check_cover, cycle_odd_cover_delta4, eulerian_cycle_bound, eulerian_path_bound, general_path_bound,
    linear_forest_decomposition, odd_cover_eulerian, path_odd_cover_delta4, path_odd_cover_general,
};
use polyresolve_core::oracles::{
    exact_diameter_bfs, is_hamiltonian, pruned_search, trivial_lower_bound, OddCoverTable, DEFAULT_STATE_CAP,
};
use polyresolve_core::perm::{
    check_resolution, decomposition_from_resolution, resolution_from_decomposition, CycleSeq, Partition,
    Permutation, Resolution,
};
use polyresolve_core::resolve::{
    gen_lower_bound_instance, gen_pp36_instance, resolution_length_bound, resolve,
};
use rand::Rng;

use crate::gen;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {}: {} ({:.2?})",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed
        )
    }
}

type Outcome = Result<String, String>;

fn timed(id: usize, title: &'static str, f: impl FnOnce() -> Outcome) -> CriterionResult {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let (pass, detail) = match out {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id,
        title,
        pass,
        detail,
        elapsed,
    }
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {took:.2?}, limit {limit:?}"));
    }
    Ok(())
}

/// Resolves, checks the certificate independently and returns its length.
fn resolve_checked(p: &Partition, q: &Partition) -> Result<usize, String> {
    let r = resolve(p, q).map_err(|e| format!("resolve failed: {e}"))?;
    check_resolution(p, q, &r.taus).map_err(|e| format!("certificate rejected: {e}"))?;
    Ok(r.len())
}

/// `κ1 + ⌈κ2/2⌉` from the two largest cluster sizes.
fn upper_bound(shape: &[usize]) -> usize {
    let mut s = shape.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    let k1 = s.first().copied().unwrap_or(0);
    let k2 = s.get(1).copied().unwrap_or(0);
    k1 + k2.div_ceil(2)
}

pub fn criterion_1() -> CriterionResult {
    timed(1, "upper bound on 10000 random instances", || {
        let start = Instant::now();
        let mut r = gen::rng(0x5eed_0001);
        let mut longest = 0;
        for i in 0..10_000 {
            let (p, q) = gen::random_instance(30, 10, &mut r);
            let len = resolve_checked(&p, &q).map_err(|e| format!("instance {i}: {e}"))?;
            let bound = upper_bound(&p.shape());
            if len > bound {
                return Err(format!("instance {i}: length {len} > bound {bound}"));
            }
            debug_assert_eq!(bound, resolution_length_bound(&p.shape()));
            longest = longest.max(len);
        }
        within(Duration::from_secs(30), start, "10000 resolutions")?;
        Ok(format!("10000/10000 verified, longest {longest}"))
    })
}

pub fn criterion_2() -> CriterionResult {
    timed(2, "largest cluster 2 needs at most 3 steps", || {
        let mut r = gen::rng(0x5eed_0002);
        for i in 0..2_000 {
            let (p, q) = gen::random_instance_with_max(2, 12, &mut r);
            let len = resolve_checked(&p, &q).map_err(|e| format!("instance {i}: {e}"))?;
            if len > 3 {
                return Err(format!("instance {i}: length {len} > 3"));
            }
        }
        Ok("2000/2000 verified with length <= 3".into())
    })
}

pub fn criterion_3() -> CriterionResult {
    timed(3, "exact diameters of (1,1,1,1) and (2,2,2,2)", || {
        let mut found = Vec::new();
        for (shape, expected) in [(vec![1, 1, 1, 1], 2), (vec![2, 2, 2, 2], 3)] {
            let start = Instant::now();
            let d = exact_diameter_bfs(&shape, DEFAULT_STATE_CAP).map_err(|e| e.to_string())?;
            within(Duration::from_secs(10), start, "diameter search")?;
            if d != expected {
                return Err(format!("diameter of {shape:?} is {d}, expected {expected}"));
            }
            found.push(format!("{shape:?} -> {d}"));
        }
        Ok(found.join(", "))
    })
}

/// The displayed lower-bound formula, written out from the cluster sizes
/// `κ1 ≥ ⋯ ≥ κn` (1-based in the formula).
fn displayed_formula(shape: &[usize]) -> usize {
    let n = shape.len();
    let k = |i: usize| shape[i - 1];
    if n.is_multiple_of(2) {
        let s: usize = (1..=n / 2).map(|j| 2 * k(2 * j)).sum();
        (4 * s).div_ceil(3 * n)
    } else {
        let s: usize = (1..=(n - 3) / 2).map(|j| 2 * k(2 * j)).sum::<usize>() + 3 * k(n);
        (4 * s).div_ceil(3 * n + 1)
    }
}

fn non_increasing_shapes(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in (1..=cap).rev() {
            cur.push(k);
            go(n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, &mut Vec::new(), &mut out);
    out
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "lower-bound instances over the shape grid", || {
        let mut count = 0;
        for n in 4..=11 {
            for shape in non_increasing_shapes(n, 4) {
                let inst = gen_lower_bound_instance(&shape).map_err(|e| format!("{shape:?}: {e}"))?;
                let expected = displayed_formula(&shape);
                if inst.bound != expected {
                    return Err(format!("{shape:?}: bound {} vs formula {expected}", inst.bound));
                }
                let len = resolve_checked(&inst.p, &inst.q).map_err(|e| format!("{shape:?}: {e}"))?;
                if len < inst.bound {
                    return Err(format!(
                        "{shape:?}: resolution of length {len} beats bound {}",
                        inst.bound
                    ));
                }
                count += 1;
            }
        }
        Ok(format!(
            "{count} shapes, bound matches formula and resolve length >= bound"
        ))
    })
}

pub fn criterion_5() -> CriterionResult {
    timed(5, "PP(3,3,3,3,3,3) has diameter exactly 5", || {
        let (p, q) = gen_pp36_instance();
        let len = resolve_checked(&p, &q)?;
        if len > 5 {
            return Err(format!("resolution of length {len} > 5"));
        }
        let start = Instant::now();
        let out = pruned_search(&p, &q, 4).map_err(|e| e.to_string())?;
        within(Duration::from_secs(600), start, "pruned search")?;
        if !out.no_short {
            return Err("pruned search found a resolution of length 4".into());
        }
        Ok(format!(
            "resolve length {len}; no length-4 resolution ({} nodes, first exchange fixed: {})",
            out.nodes, out.first_step_fixed
        ))
    })
}

fn check_parts(
    g: &SimpleGraph,
    cert: &polyresolve_core::oddcover::OddCoverCert,
    max: usize,
) -> Result<(), String> {
    check_cover(g, cert).map_err(|e| e.to_string())?;
    if cert.len() > max {
        return Err(format!("{} {} parts > {max}", cert.len(), cert.kind.name()));
    }
    Ok(())
}

pub fn criterion_6() -> CriterionResult {
    timed(6, "three paths and three cycles at maximum degree 4", || {
        let start = Instant::now();
        let mut r = gen::rng(0x5eed_0006);
        for i in 0..500 {
            let n = r.gen_range(5..=16);
            let g = gen::random_eulerian_with_delta(n, 4, &mut r);
            let p = path_odd_cover_delta4(&g).map_err(|e| format!("graph {i}: {e}"))?;
            check_parts(&g, &p, 3).map_err(|e| format!("graph {i} paths: {e}"))?;
            let c = cycle_odd_cover_delta4(&g).map_err(|e| format!("graph {i}: {e}"))?;
            check_parts(&g, &c, 3).map_err(|e| format!("graph {i} cycles: {e}"))?;
        }
        within(Duration::from_secs(60), start, "500 graphs")?;
        Ok("500/500 graphs covered by <= 3 paths and <= 3 cycles".into())
    })
}

pub fn two_k5() -> SimpleGraph {
    SimpleGraph::complete(5).disjoint_union(&SimpleGraph::complete(5))
}

pub fn criterion_7() -> CriterionResult {
    timed(7, "two disjoint K5 need three cycles", || {
        let g = two_k5();
        let cert = cycle_odd_cover_delta4(&g).map_err(|e| e.to_string())?;
        check_cover(&g, &cert).map_err(|e| e.to_string())?;
        if cert.len() != 3 {
            return Err(format!("{} cycles, expected exactly 3", cert.len()));
        }
        if is_hamiltonian(&g).map_err(|e| e.to_string())? {
            return Err("graph reported Hamiltonian".into());
        }
        let half_dn = g.degrees().delta * g.n() / 2;
        if g.edge_count() != 20 || half_dn != 20 {
            return Err(format!("|E| = {}, Δn/2 = {half_dn}", g.edge_count()));
        }
        Ok("3 cycles verified; not Hamiltonian; |E| = 20 = Δn/2".into())
    })
}

pub fn criterion_8() -> CriterionResult {
    timed(8, "Eulerian path and cycle bounds", || {
        let mut r = gen::rng(0x5eed_0008);
        for i in 0..200 {
            let delta = [2, 4, 6, 8][i % 4];
            let n = r.gen_range(delta + 1..=delta + 10);
            let g = gen::random_eulerian_with_delta(n, delta, &mut r);
            let p = odd_cover_eulerian(&g, Kind::Path).map_err(|e| format!("graph {i}: {e}"))?;
            check_parts(&g, &p, eulerian_path_bound(delta)).map_err(|e| format!("graph {i} paths: {e}"))?;
            let c = odd_cover_eulerian(&g, Kind::Cycle).map_err(|e| format!("graph {i}: {e}"))?;
            check_parts(&g, &c, eulerian_cycle_bound(&g)).map_err(|e| format!("graph {i} cycles: {e}"))?;
        }
        Ok("200/200 graphs within both bounds".into())
    })
}

/// Checks every labelled graph without isolated vertices on `n` vertices
/// against the exhaustive tables. Returns the number of graphs checked.
fn vertex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    out.push(cur.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            cur.swap(if i % 2 == 0 { 0 } else { c[i] }, i);
            out.push(cur.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// One edge mask per isomorphism class of graphs on `n` labelled vertices,
/// the smallest mask of each orbit.
pub fn class_representatives(n: usize) -> Vec<u32> {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| edges.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
    let images: Vec<Vec<u32>> = vertex_permutations(n)
        .iter()
        .map(|pi| edges.iter().map(|&(a, b)| 1u32 << index(pi[a], pi[b])).collect())
        .collect();
    let full = (1u64 << edges.len()) as usize;
    let mut seen = vec![false; full];
    let mut reps = Vec::new();
    for mask in 0..full {
        if seen[mask] {
            continue;
        }
        reps.push(mask as u32);
        for image in &images {
            let mut m = 0u32;
            for (i, bit) in image.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m |= bit;
                }
            }
            seen[m as usize] = true;
        }
    }
    reps
}

/// Checks every graph on `n` vertices without isolated vertices, one per
/// isomorphism class, against the exact odd-cover tables. Returns the
/// number of classes checked.
pub fn exhaustive_sweep(n: usize) -> Result<usize, String> {
    let paths = OddCoverTable::build(n, Kind::Path).map_err(|e| e.to_string())?;
    let cycles = OddCoverTable::build(n, Kind::Cycle).map_err(|e| e.to_string())?;
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let check = |mask: u32| -> Result<bool, String> {
        let mut set = EdgeSet::new();
        let mut seen = 0u32;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                set.insert(polyresolve_core::graph::Edge::new(a, b));
                seen |= 1 << a | 1 << b;
            }
        }
        if seen != (1 << n) - 1 {
            return Ok(false);
        }
        let g = SimpleGraph::from_edge_set(n, set).expect("edges inside K_n");
        let floor = trivial_lower_bound(&g);
        let best = paths.lookup(g.edges()).ok_or("path table misses a graph")?;
        if best < floor {
            return Err(format!(
                "mask {mask:#x}: path optimum {best} below trivial bound {floor}"
            ));
        }
        let cert = path_odd_cover_general(&g).map_err(|e| e.to_string())?;
        check_cover(&g, &cert).map_err(|e| format!("mask {mask:#x}: {e}"))?;
        if cert.len() < best || cert.len() > general_path_bound(&g) {
            return Err(format!("mask {mask:#x}: {} paths vs optimum {best}", cert.len()));
        }
        if g.is_eulerian() {
            let best = cycles
                .lookup(g.edges())
                .ok_or("cycle table misses an Eulerian graph")?;
            if best < g.degrees().delta.div_ceil(2) {
                return Err(format!("mask {mask:#x}: cycle optimum {best} below ⌈Δ/2⌉"));
            }
            let cert = odd_cover_eulerian(&g, Kind::Cycle).map_err(|e| e.to_string())?;
            check_cover(&g, &cert).map_err(|e| format!("mask {mask:#x}: {e}"))?;
            if cert.len() < best {
                return Err(format!(
                    "mask {mask:#x}: {} cycles beat optimum {best}",
                    cert.len()
                ));
            }
        } else if cycles.lookup(g.edges()).is_some() {
            return Err(format!(
                "mask {mask:#x}: non-Eulerian graph has a cycle odd-cover"
            ));
        }
        Ok(true)
    };
    let mut count = 0;
    for mask in class_representatives(n) {
        if check(mask)? {
            count += 1;
        }
    }
    Ok(count)
}

pub fn criterion_9() -> CriterionResult {
    timed(9, "general path covers and exhaustive optima", || {
        let mut r = gen::rng(0x5eed_0009);
        for i in 0..500 {
            let n = r.gen_range(1..=14);
            let density = r.gen_range(0.05..0.95);
            let g = gen::random_graph(n, density, &mut r);
            let cert = path_odd_cover_general(&g).map_err(|e| format!("graph {i}: {e}"))?;
            check_parts(&g, &cert, general_path_bound(&g)).map_err(|e| format!("graph {i}: {e}"))?;
        }
        let mut swept = Vec::new();
        for n in 2..=7 {
            swept.push(exhaustive_sweep(n)?);
        }
        Ok(format!(
            "500/500 random graphs within bound; exhaustive sweep over {} graph classes (n=2..7: {:?})",
            swept.iter().sum::<usize>(),
            swept
        ))
    })
}

pub fn criterion_10() -> CriterionResult {
    timed(10, "three linear forests at maximum degree 4", || {
        let mut r = gen::rng(0x5eed_0010);
        for i in 0..200 {
            let n = r.gen_range(5..=20);
            let g = gen::random_max_degree_4(n, &mut r);
            let cert = linear_forest_decomposition(&g).map_err(|e| format!("graph {i}: {e}"))?;
            check_parts(&g, &cert, 3).map_err(|e| format!("graph {i}: {e}"))?;
        }
        Ok("200/200 graphs split into 3 linear forests".into())
    })
}

fn perm_of(m: usize, seq: &[CycleSeq]) -> Permutation {
    seq.iter().fold(Permutation::identity(m), |acc, c| {
        acc.compose(&c.to_permutation(m).expect("items below m"))
            .expect("same size")
    })
}

/// Independent check that `τ1⋯τi = σi⋯σ1` for every prefix.
fn prefixes_agree(m: usize, taus: &[CycleSeq], sigmas: &[CycleSeq]) -> bool {
    (0..=taus.len()).all(|i| {
        let mut rev: Vec<CycleSeq> = sigmas[..i].to_vec();
        rev.reverse();
        perm_of(m, &taus[..i]) == perm_of(m, &rev)
    })
}

pub fn criterion_11() -> CriterionResult {
    timed(11, "resolution and decomposition round trips", || {
        let mut r = gen::rng(0x5eed_0011);
        for i in 0..1_000 {
            let (p, _) = gen::random_instance(12, 6, &mut r);
            let steps = r.gen_range(1..=6);
            let m = p.m();
            if i % 2 == 0 {
                let mut cur = p.clone();
                let mut taus = Vec::new();
                for _ in 0..steps {
                    if let Some(t) = gen::random_p_cycle(&cur, &mut r) {
                        cur = cur.apply_cycle(&t);
                        taus.push(t);
                    }
                }
                let res = Resolution {
                    start: p.clone(),
                    taus: taus.clone(),
                };
                let sigmas = decomposition_from_resolution(&res).map_err(|e| format!("case {i}: {e}"))?;
                let back =
                    resolution_from_decomposition(&p, &sigmas).map_err(|e| format!("case {i}: {e}"))?;
                if back.taus != taus || !prefixes_agree(m, &taus, &sigmas) {
                    return Err(format!("case {i}: resolution did not round-trip"));
                }
            } else {
                let sigmas: Vec<CycleSeq> = (0..steps)
                    .filter_map(|_| gen::random_p_cycle(&p, &mut r))
                    .collect();
                let res = resolution_from_decomposition(&p, &sigmas).map_err(|e| format!("case {i}: {e}"))?;
                let end = p
                    .compose(&perm_of(m, &{
                        let mut rev = sigmas.clone();
                        rev.reverse();
                        rev
                    }))
                    .map_err(|e| e.to_string())?;
                check_resolution(&p, &end, &res.taus).map_err(|e| format!("case {i}: {e}"))?;
                let back = decomposition_from_resolution(&res).map_err(|e| format!("case {i}: {e}"))?;
                if back != sigmas || !prefixes_agree(m, &res.taus, &sigmas) {
                    return Err(format!("case {i}: decomposition did not round-trip"));
                }
            }
        }
        Ok("1000/1000 round trips with matching prefixes".into())
    })
}

pub fn all_criteria() -> Vec<fn() -> CriterionResult> {
    vec![
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ]
}

/// Runs every criterion, handing each result to `report` as it completes.
pub fn run_all(mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    all_criteria()
        .into_iter()
        .map(|c| {
            let res = c();
            report(&res);
            res
        })
        .collect()
}
