//! Strong k-node-connectivity certification for digraphs.
//!
//! For an ordered pair `(u, v)` the maximum number of internally
//! vertex-disjoint directed u-to-v paths is computed by unit-capacity
//! max-flow on the split graph: every vertex `w` becomes `w_in -> w_out`
//! with capacity 1 (the queried endpoints get unbounded through-capacity),
//! and every arc `(a, b)` becomes `a_out -> b_in` with capacity 1. A direct
//! `u -> v` arc counts as one path of its own.
//!
//! Certificates are self-contained: a `Certified` result carries k disjoint
//! paths per checked pair, a `Refuted` result carries a separator (plus the
//! count of direct arcs it cannot cut) witnessing that fewer than k paths
//! exist. Both can be re-checked by the linear-scan validators at the
//! bottom of this module without trusting the flow code.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orient::euler::Orientation;
use crate::orient::linegraph::SimpleGraph;
use crate::rng::XorShift64Star;

/// A simple directed graph on vertices `0..n`.
#[derive(Clone, Debug)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Digraph {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        let mut out_adj = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        for &(a, b) in &arcs {
            assert!(a < n && b < n && a != b, "bad arc ({a}, {b})");
            out_adj[a].push(b);
            matrix[a * n + b] = true;
        }
        Digraph {
            n,
            arcs,
            out_adj,
            matrix,
        }
    }

    pub fn from_orientation(graph: &SimpleGraph, orientation: &Orientation) -> Self {
        Digraph::new(graph.vertex_count(), orientation.arcs(graph).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.n + b]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Is `to` reachable from `from` when the `banned` vertices are deleted
    /// and (optionally) the direct `from -> to` arc is ignored?
    pub fn reaches_avoiding(
        &self,
        from: usize,
        to: usize,
        banned: &[usize],
        skip_direct: bool,
    ) -> bool {
        let mut blocked = vec![false; self.n];
        for &b in banned {
            blocked[b] = true;
        }
        if blocked[from] || blocked[to] {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.out_adj[x] {
                if blocked[y] || seen[y] {
                    continue;
                }
                if x == from && y == to && skip_direct {
                    continue;
                }
                if y == to {
                    return true;
                }
                seen[y] = true;
                stack.push(y);
            }
        }
        false
    }
}

/// Which ordered pairs a certification run checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "policy")]
pub enum PairPolicy {
    /// Every ordered pair; the only certifying mode.
    AllPairs,
    /// `count` pairs drawn from the seeded generator. Useful as a spot
    /// check on graphs too big for all pairs, but not certifying.
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refuted,
}

/// k internally disjoint paths for one ordered pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPaths {
    pub from: usize,
    pub to: usize,
    pub paths: Vec<Vec<usize>>,
}

/// A separator showing some pair admits fewer than k disjoint paths.
/// `direct_arcs` counts `from -> to` arcs, which no vertex set can cut;
/// deleting `separator` kills every other path, so the pair admits exactly
/// `separator.len() + direct_arcs < k` disjoint paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutedWitness {
    pub from: usize,
    pub to: usize,
    pub separator: Vec<usize>,
    pub direct_arcs: usize,
    pub disjoint_paths_found: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityCertificate {
    pub k: usize,
    pub verdict: Verdict,
    pub coverage: PairPolicy,
    /// Per checked ordered pair, k disjoint paths (certified runs only).
    pub pairs: Vec<PairPaths>,
    pub refutation: Option<RefutedWitness>,
}

/// Certify strong k-node connectivity of an orientation's digraph.
pub fn is_strongly_k_connected(
    graph: &SimpleGraph,
    orientation: &Orientation,
    k: usize,
    policy: PairPolicy,
) -> Result<ConnectivityCertificate> {
    certify_strong_connectivity(&Digraph::from_orientation(graph, orientation), k, policy)
}

pub fn certify_strong_connectivity(
    dg: &Digraph,
    k: usize,
    policy: PairPolicy,
) -> Result<ConnectivityCertificate> {
    if k == 0 {
        return Err(Error::Domain("connectivity target k must be >= 1".into()));
    }
    let n = dg.vertex_count();
    if n < 2 {
        return Err(Error::Domain("need at least two vertices".into()));
    }
    if matches!(policy, PairPolicy::AllPairs) && k > n - 2 {
        return Err(Error::Refused(format!(
            "k = {k} exceeds the {} internal vertices available between a \
             non-adjacent pair on {n} vertices; no graph this size can be \
             certified at that k",
            n - 2
        )));
    }

    let pairs: Vec<(usize, usize)> = match policy {
        PairPolicy::AllPairs => (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect(),
        PairPolicy::Sampled { count, seed } => {
            let mut rng = XorShift64Star::stream(seed, 0);
            (0..count)
                .map(|_| {
                    let u = rng.below(n as u64) as usize;
                    let mut v = rng.below(n as u64 - 1) as usize;
                    if v >= u {
                        v += 1;
                    }
                    (u, v)
                })
                .collect()
        }
    };

    let mut certified_pairs = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        let outcome = disjoint_paths(dg, u, v, k);
        if outcome.paths.len() >= k {
            certified_pairs.push(PairPaths {
                from: u,
                to: v,
                paths: outcome.paths,
            });
        } else {
            return Ok(ConnectivityCertificate {
                k,
                verdict: Verdict::Refuted,
                coverage: policy,
                pairs: Vec::new(),
                refutation: Some(outcome.into_witness(u, v)),
            });
        }
    }
    Ok(ConnectivityCertificate {
        k,
        verdict: Verdict::Certified,
        coverage: policy,
        pairs: certified_pairs,
        refutation: None,
    })
}

/// Outcome of the flow computation for one ordered pair.
pub struct PairFlow {
    /// Up to `limit` internally disjoint paths (vertex sequences).
    pub paths: Vec<Vec<usize>>,
    /// Max-flow value (capped at the requested limit).
    pub value: usize,
    separator: Vec<usize>,
    direct_arcs: usize,
}

impl PairFlow {
    fn into_witness(self, from: usize, to: usize) -> RefutedWitness {
        RefutedWitness {
            from,
            to,
            separator: self.separator,
            direct_arcs: self.direct_arcs,
            disjoint_paths_found: self.value,
        }
    }
}

/// Maximum internally disjoint directed paths from `u` to `v`, stopping
/// early once `limit` paths exist. When fewer exist, the returned
/// separator plus direct-arc count explains the deficit.
pub fn disjoint_paths(dg: &Digraph, u: usize, v: usize, limit: usize) -> PairFlow {
    assert_ne!(u, v);
    let n = dg.vertex_count();
    let big = (n + 1) as i64;

    // Split graph: w_in = 2w, w_out = 2w + 1.
    let mut net = FlowNetwork::new(2 * n);
    for w in 0..n {
        let cap = if w == u || w == v { big } else { 1 };
        net.add_edge(2 * w, 2 * w + 1, cap);
    }
    for &(a, b) in dg.arcs() {
        net.add_edge(2 * a + 1, 2 * b, 1);
    }
    let source = 2 * u + 1;
    let sink = 2 * v;

    let value = net.max_flow(source, sink, limit as i64) as usize;

    let paths = if value >= limit {
        decompose_paths(&net, source, sink, n)
    } else {
        Vec::new()
    };

    let (separator, direct_arcs) = if value < limit {
        extract_separator(&net, dg, source, u, v, n)
    } else {
        (Vec::new(), 0)
    };

    PairFlow {
        paths,
        value,
        separator,
        direct_arcs,
    }
}

fn decompose_paths(net: &FlowNetwork, source: usize, sink: usize, n: usize) -> Vec<Vec<usize>> {
    let mut remaining = net.flows();
    let mut paths = Vec::new();
    loop {
        // Walk greedily along positive flow. Unit vertex capacities keep
        // the walk simple and off any stray flow cycles, which cannot
        // touch path vertices.
        let mut node = source;
        let mut path = vec![source / 2];
        let mut moved = false;
        for _ in 0..2 * n + 2 {
            let Some(edge_idx) = net.adj[node]
                .iter()
                .copied()
                .find(|&e| e % 2 == 0 && remaining[e] > 0)
            else {
                break;
            };
            remaining[edge_idx] -= 1;
            node = net.to[edge_idx];
            moved = true;
            if node.is_multiple_of(2) && node / 2 != path[path.len() - 1] {
                path.push(node / 2);
            }
            if node == sink {
                break;
            }
        }
        if !moved || node != sink {
            break;
        }
        paths.push(path);
    }
    paths
}

fn extract_separator(
    net: &FlowNetwork,
    dg: &Digraph,
    source: usize,
    u: usize,
    v: usize,
    _n: usize,
) -> (Vec<usize>, usize) {
    let reach = net.residual_reachable(source);
    let mut separator = Vec::new();
    let mut direct = 0usize;
    for e in (0..net.to.len()).step_by(2) {
        let from = net.to[e ^ 1];
        let to = net.to[e];
        if !(reach[from] && !reach[to]) {
            continue;
        }
        if from.is_multiple_of(2) && to == from + 1 {
            // Splitter edge: the vertex itself separates.
            separator.push(from / 2);
        } else {
            // Arc edge a_out -> b_in: charge an endpoint, or record a
            // direct arc that no vertex deletion can cut.
            let a = (from - 1) / 2;
            let b = to / 2;
            if a == u && b == v {
                direct += 1;
            } else if a != u {
                separator.push(a);
            } else {
                separator.push(b);
            }
        }
    }
    separator.sort_unstable();
    separator.dedup();
    debug_assert!(direct <= dg.has_arc(u, v) as usize);
    (separator, direct)
}

/// Minimal augmenting-path max flow (breadth-first, unit-ish capacities).
struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    /// Forward edges get even indices; `e ^ 1` is the reverse edge.
    fn add_edge(&mut self, from: usize, to: usize, cap: i64) {
        self.adj[from].push(self.to.len());
        self.to.push(to);
        self.cap.push(cap);
        self.adj[to].push(self.to.len());
        self.to.push(from);
        self.cap.push(0);
    }

    fn max_flow(&mut self, source: usize, sink: usize, limit: i64) -> i64 {
        let mut total = 0i64;
        while total < limit {
            let mut parent_edge = vec![usize::MAX; self.adj.len()];
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(source);
            let mut found = false;
            'bfs: while let Some(x) = queue.pop_front() {
                for &e in &self.adj[x] {
                    let y = self.to[e];
                    if self.cap[e] > 0 && parent_edge[y] == usize::MAX && y != source {
                        parent_edge[y] = e;
                        if y == sink {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if !found {
                break;
            }
            // Bottleneck along the path (1 in practice: every path crosses
            // a unit arc or unit splitter).
            let mut bottleneck = i64::MAX;
            let mut node = sink;
            while node != source {
                let e = parent_edge[node];
                bottleneck = bottleneck.min(self.cap[e]);
                node = self.to[e ^ 1];
            }
            let push = bottleneck.min(limit - total);
            let mut node = sink;
            while node != source {
                let e = parent_edge[node];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                node = self.to[e ^ 1];
            }
            total += push;
        }
        total
    }

    /// Flow on each forward edge (reverse edge's gained capacity).
    fn flows(&self) -> Vec<i64> {
        (0..self.to.len())
            .map(|e| if e % 2 == 0 { self.cap[e ^ 1] } else { 0 })
            .collect()
    }

    fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(x) = stack.pop() {
            for &e in &self.adj[x] {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Re-check a certified certificate by direct inspection: every listed
/// path must be a real directed path with the right endpoints, internally
/// disjoint from its siblings, and each pair must carry at least k paths.
pub fn validate_certified(
    dg: &Digraph,
    cert: &ConnectivityCertificate,
) -> std::result::Result<(), String> {
    if cert.verdict != Verdict::Certified {
        return Err("certificate is not a certification".into());
    }
    for pair in &cert.pairs {
        if pair.paths.len() < cert.k {
            return Err(format!(
                "pair ({}, {}) has only {} paths, need {}",
                pair.from,
                pair.to,
                pair.paths.len(),
                cert.k
            ));
        }
        // A simple digraph has at most one direct arc, so at most one
        // listed path may be the bare two-vertex path.
        let direct_paths = pair.paths.iter().filter(|p| p.len() == 2).count();
        if direct_paths > 1 {
            return Err(format!(
                "pair ({}, {}) lists {direct_paths} copies of the direct arc",
                pair.from, pair.to
            ));
        }
        let mut internal_seen = std::collections::HashSet::new();
        for path in &pair.paths {
            if path.first() != Some(&pair.from) || path.last() != Some(&pair.to) {
                return Err(format!("path {path:?} has wrong endpoints"));
            }
            for w in path.windows(2) {
                if !dg.has_arc(w[0], w[1]) {
                    return Err(format!("path {path:?} uses missing arc {w:?}"));
                }
            }
            for &x in &path[1..path.len() - 1] {
                if x == pair.from || x == pair.to {
                    return Err(format!("path {path:?} revisits an endpoint"));
                }
                if !internal_seen.insert(x) {
                    return Err(format!(
                        "vertex {x} is internal to two paths of pair ({}, {})",
                        pair.from, pair.to
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Re-check a refutation: the separator must be small enough and, once
/// deleted (together with ignoring direct arcs), must disconnect the pair.
pub fn validate_refuted(
    dg: &Digraph,
    cert: &ConnectivityCertificate,
) -> std::result::Result<(), String> {
    let w = cert
        .refutation
        .as_ref()
        .ok_or("certificate has no refutation witness")?;
    if cert.verdict != Verdict::Refuted {
        return Err("certificate is not a refutation".into());
    }
    if w.separator.contains(&w.from) || w.separator.contains(&w.to) {
        return Err("separator contains an endpoint".into());
    }
    let actual_direct = dg.has_arc(w.from, w.to) as usize;
    if w.direct_arcs != actual_direct {
        return Err(format!(
            "witness claims {} direct arcs, digraph has {}",
            w.direct_arcs, actual_direct
        ));
    }
    if w.separator.len() + w.direct_arcs >= cert.k {
        return Err(format!(
            "separator of {} plus {} direct arcs does not refute k = {}",
            w.separator.len(),
            w.direct_arcs,
            cert.k
        ));
    }
    if dg.reaches_avoiding(w.from, w.to, &w.separator, true) {
        return Err("separator does not disconnect the pair".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orient::euler::{enumerate_eulerian_orientations, Orientation};
    use crate::orient::linegraph::build_line_graph;

    #[test]
    fn directed_triangle_is_strongly_1_connected() {
        let dg = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]);
        let cert = certify_strong_connectivity(&dg, 1, PairPolicy::AllPairs).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        validate_certified(&dg, &cert).unwrap();
    }

    #[test]
    fn all_octahedron_eulerian_orientations_are_2_connected() {
        let lg = build_line_graph(4).unwrap();
        let all = enumerate_eulerian_orientations(&lg, usize::MAX);
        assert!(!all.truncated);
        for o in &all.orientations {
            let dg = Digraph::from_orientation(lg.graph(), o);
            let cert = certify_strong_connectivity(&dg, 2, PairPolicy::AllPairs).unwrap();
            assert_eq!(cert.verdict, Verdict::Certified);
            validate_certified(&dg, &cert).unwrap();
        }
    }

    #[test]
    fn low_to_high_orientation_is_refuted_with_empty_separator() {
        let lg = build_line_graph(4).unwrap();
        let o = Orientation::new(4, vec![true; 12]);
        let dg = Digraph::from_orientation(lg.graph(), &o);
        let cert = certify_strong_connectivity(&dg, 1, PairPolicy::AllPairs).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted);
        let w = cert.refutation.as_ref().unwrap();
        assert!(w.separator.is_empty());
        validate_refuted(&dg, &cert).unwrap();
    }

    #[test]
    fn sampled_policy_is_deterministic() {
        let lg = build_line_graph(5).unwrap();
        let o = crate::orient::euler::eulerian_orientation(&lg, 11);
        let dg = Digraph::from_orientation(lg.graph(), &o);
        let policy = PairPolicy::Sampled { count: 20, seed: 3 };
        let a = certify_strong_connectivity(&dg, 3, policy).unwrap();
        let b = certify_strong_connectivity(&dg, 3, policy).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_k_is_refused() {
        let dg = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]);
        assert!(certify_strong_connectivity(&dg, 2, PairPolicy::AllPairs).is_err());
        assert!(certify_strong_connectivity(&dg, 0, PairPolicy::AllPairs).is_err());
    }

    #[test]
    fn direct_arc_counts_as_a_path() {
        // Just the arc 0 -> 1 plus a return path; (0, 1) admits one path.
        let dg = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]);
        let flow = disjoint_paths(&dg, 0, 1, 1);
        assert_eq!(flow.value, 1);
        assert_eq!(flow.paths, vec![vec![0, 1]]);
    }
}
