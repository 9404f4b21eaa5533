#![allow(dead_code)] // each integration target uses its own subset

//! Shared corpus generators and independent oracles for the integration
//! suites. Everything here stays deliberately naive: these are the
//! reference implementations the optimized paths are judged against.

use stz_core::combinatorics::{next_combination, unrank_combination};
use stz_core::kn::{CompleteGraph, EdgePartition, Label};
use stz_core::orient::Digraph;
use stz_core::rng::XorShift64Star;

/// Every labeling of the edges of `K_n` over {S, T, Z} (3^m of them).
pub fn for_each_labeling<F: FnMut(&EdgePartition)>(n: usize, mut f: F) {
    let graph = CompleteGraph::new(n).unwrap();
    let m = graph.edge_count();
    let classes = [Label::S, Label::T, Label::Z];
    let mut labels = vec![Label::S; m];
    let total = 3usize.pow(m as u32);
    for code in 0..total {
        let mut c = code;
        for l in labels.iter_mut() {
            *l = classes[c % 3];
            c /= 3;
        }
        let p = EdgePartition::new(graph, labels.clone()).unwrap();
        f(&p);
    }
}

/// Every theorem-mode partition of `K_n` (each Z set of size n-3, each S/T
/// split of the rest), enumerated independently of the search engine.
pub fn for_each_theorem_partition<F: FnMut(&EdgePartition)>(n: usize, mut f: F) {
    let graph = CompleteGraph::new(n).unwrap();
    let m = graph.edge_count();
    let zk = n - 3;
    let mut z_set = unrank_combination(m, zk, 0);
    loop {
        let free: Vec<usize> = (0..m).filter(|e| !z_set.contains(e)).collect();
        for mask in 0u64..1 << free.len() {
            let mut labels = vec![Label::S; m];
            for &e in &z_set {
                labels[e] = Label::Z;
            }
            for (bit, &e) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    labels[e] = Label::T;
                }
            }
            f(&EdgePartition::new(graph, labels).unwrap());
        }
        if !next_combination(m, &mut z_set) {
            break;
        }
    }
}

/// Uniform random labeling (any mode), one independent stream per index.
pub fn random_any_partition(n: usize, seed: u64, index: u64) -> EdgePartition {
    let graph = CompleteGraph::new(n).unwrap();
    let mut rng = XorShift64Star::stream(seed, index);
    let classes = [Label::S, Label::T, Label::Z];
    let labels = (0..graph.edge_count())
        .map(|_| classes[rng.below(3) as usize])
        .collect();
    EdgePartition::new(graph, labels).unwrap()
}

/// Random simple digraph on 2..=6 vertices.
pub fn random_digraph(seed: u64, index: u64) -> Digraph {
    let mut rng = XorShift64Star::stream(seed, index);
    let n = 2 + rng.below(5) as usize;
    let percent = 15 + rng.below(70);
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.below(100) < percent {
                arcs.push((a, b));
            }
        }
    }
    Digraph::new(n, arcs)
}

/// Independent reachability (plain DFS, no flow machinery).
fn reaches(n: usize, arcs: &[(usize, usize)], from: usize, to: usize, banned: &[bool]) -> bool {
    if banned[from] || banned[to] {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for &(a, b) in arcs {
            if a == x && !banned[b] && !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    false
}

/// Brute-force maximum internally-disjoint path count: direct arcs plus
/// the smallest internal vertex set whose deletion (with direct arcs
/// ignored) disconnects the pair, found by trying every subset.
pub fn brute_disjoint_paths(dg: &Digraph, u: usize, v: usize) -> usize {
    let n = dg.vertex_count();
    let direct = dg.has_arc(u, v) as usize;
    let arcs: Vec<(usize, usize)> = dg
        .arcs()
        .iter()
        .copied()
        .filter(|&(a, b)| !(a == u && b == v))
        .collect();
    let others: Vec<usize> = (0..n).filter(|&w| w != u && w != v).collect();
    let mut best = others.len();
    for mask in 0u32..1 << others.len() {
        let mut banned = vec![false; n];
        let mut size = 0;
        for (i, &w) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                banned[w] = true;
                size += 1;
            }
        }
        if size < best && !reaches(n, &arcs, u, v, &banned) {
            best = size;
        }
    }
    direct + best
}
