//! Eulerian orientations: sampling one by a randomized circuit walk, and
//! exhaustively enumerating all of them at small sizes.
//!
//! An orientation stores one direction bit per edge in the graph's
//! canonical edge order: `true` orients the edge from its lower-id
//! endpoint to the higher one. The text format is two lines:
//!
//! ```text
//! n=<base n>
//! <one 0/1 character per edge, 1 = low-to-high>
//! ```
//!
//! Sampling walks a Hierholzer circuit over adjacency lists shuffled by
//! the seeded generator from [`crate::rng`]. That makes every output a
//! valid Eulerian orientation reproducible from its seed, but the
//! distribution over orientations is not uniform; where uniformity
//! matters, use the exhaustive enumerator.

use crate::error::{Error, Result};
use crate::orient::linegraph::{LineGraph, SimpleGraph};
use crate::rng::XorShift64Star;

/// One direction bit per edge, in canonical edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    base_n: usize,
    bits: Vec<bool>,
}

impl Orientation {
    pub fn new(base_n: usize, bits: Vec<bool>) -> Self {
        Orientation { base_n, bits }
    }

    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Directed arcs under this orientation of `graph`'s edges.
    pub fn arcs<'a>(&'a self, graph: &'a SimpleGraph) -> impl Iterator<Item = (usize, usize)> + 'a {
        assert_eq!(graph.edge_count(), self.bits.len());
        graph
            .edges()
            .iter()
            .zip(&self.bits)
            .map(|(&(a, b), &forward)| if forward { (a, b) } else { (b, a) })
    }

    pub fn out_degrees(&self, graph: &SimpleGraph) -> Vec<usize> {
        let mut out = vec![0; graph.vertex_count()];
        for (a, _) in self.arcs(graph) {
            out[a] += 1;
        }
        out
    }

    pub fn in_degrees(&self, graph: &SimpleGraph) -> Vec<usize> {
        let mut ind = vec![0; graph.vertex_count()];
        for (_, b) in self.arcs(graph) {
            ind[b] += 1;
        }
        ind
    }

    /// Indegree equals outdegree at every vertex.
    pub fn is_eulerian(&self, graph: &SimpleGraph) -> bool {
        self.out_degrees(graph)
            .iter()
            .zip(self.in_degrees(graph))
            .all(|(&o, i)| o == i)
    }

    pub fn to_file_string(&self) -> String {
        let bits: String = self
            .bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        format!("n={}\n{}\n", self.base_n, bits)
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "empty orientation file".into(),
        })?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                column: 1,
                message: format!("expected `n=<count>` header, got `{header}`"),
            })?;
        let body = lines.next().unwrap_or("");
        let mut bits = Vec::with_capacity(body.len());
        for (i, c) in body.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::Parse {
                        line: 2,
                        column: i + 1,
                        message: format!("invalid direction bit `{c}`"),
                    })
                }
            }
        }
        let expected = n * (n - 1) / 2 * (n.saturating_sub(2));
        if bits.len() != expected {
            return Err(Error::Parse {
                line: 2,
                column: body.len() + 1,
                message: format!(
                    "expected {expected} direction bits for n = {n}, got {}",
                    bits.len()
                ),
            });
        }
        Ok(Orientation { base_n: n, bits })
    }
}

/// Orient all edges along a randomized Eulerian circuit. Every vertex of
/// the line graph has even degree and the graph is connected, so the
/// circuit exists and the result is balanced at `n-2` in and out.
pub fn eulerian_orientation(lg: &LineGraph, seed: u64) -> Orientation {
    let graph = lg.graph();
    let v = graph.vertex_count();

    let mut rng = XorShift64Star::new(seed);
    // Adjacency with edge ids, independently shuffled per vertex.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); v];
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    for list in adj.iter_mut() {
        rng.shuffle(list);
    }

    let mut used = vec![false; graph.edge_count()];
    let mut cursor = vec![0usize; v];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(graph.edge_count() + 1);
    while let Some(&at) = stack.last() {
        let mut advanced = false;
        while cursor[at] < adj[at].len() {
            let (to, e) = adj[at][cursor[at]];
            cursor[at] += 1;
            if !used[e] {
                used[e] = true;
                stack.push(to);
                advanced = true;
                break;
            }
        }
        if !advanced {
            circuit.push(stack.pop().unwrap());
        }
    }

    let mut bits = vec![false; graph.edge_count()];
    for pair in circuit.windows(2) {
        let (from, to) = (pair[0], pair[1]);
        let lo = from.min(to);
        let hi = from.max(to);
        let e = graph
            .edges()
            .binary_search(&(lo, hi))
            .expect("circuit step follows an edge");
        bits[e] = from == lo;
    }
    Orientation::new(lg.base_n(), bits)
}

/// Result of exhaustive enumeration, possibly cut off at `cap`.
#[derive(Clone, Debug)]
pub struct EnumeratedOrientations {
    pub orientations: Vec<Orientation>,
    pub truncated: bool,
}

/// All Eulerian orientations, emitted in increasing lexicographic order of
/// their bit strings (`0` before `1` at the first differing edge). Intended
/// for small graphs; `cap` bounds the output and sets `truncated` when the
/// full count exceeds it.
pub fn enumerate_eulerian_orientations(lg: &LineGraph, cap: usize) -> EnumeratedOrientations {
    let graph = lg.graph();
    let half: Vec<usize> = (0..graph.vertex_count())
        .map(|w| graph.degree(w) / 2)
        .collect();
    let mut state = EnumState {
        graph,
        base_n: lg.base_n(),
        half,
        out: vec![0; graph.vertex_count()],
        inn: vec![0; graph.vertex_count()],
        bits: vec![false; graph.edge_count()],
        found: Vec::new(),
        cap,
        truncated: false,
    };
    state.recurse(0);
    EnumeratedOrientations {
        orientations: state.found,
        truncated: state.truncated,
    }
}

struct EnumState<'a> {
    graph: &'a SimpleGraph,
    base_n: usize,
    half: Vec<usize>,
    out: Vec<usize>,
    inn: Vec<usize>,
    bits: Vec<bool>,
    found: Vec<Orientation>,
    cap: usize,
    truncated: bool,
}

impl EnumState<'_> {
    fn recurse(&mut self, idx: usize) {
        if self.truncated {
            return;
        }
        if idx == self.graph.edge_count() {
            if self.found.len() == self.cap {
                self.truncated = true;
                return;
            }
            self.found
                .push(Orientation::new(self.base_n, self.bits.clone()));
            return;
        }
        let (a, b) = self.graph.edges()[idx];
        // bit false = high-to-low first, keeping emission order ascending.
        for forward in [false, true] {
            let (from, to) = if forward { (a, b) } else { (b, a) };
            if self.out[from] == self.half[from] || self.inn[to] == self.half[to] {
                continue;
            }
            self.out[from] += 1;
            self.inn[to] += 1;
            self.bits[idx] = forward;
            self.recurse(idx + 1);
            self.out[from] -= 1;
            self.inn[to] -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orient::linegraph::build_line_graph;

    #[test]
    fn sampled_orientation_is_balanced() {
        for n in [4, 5, 6] {
            let lg = build_line_graph(n).unwrap();
            for seed in [0u64, 1, 2, 42] {
                let o = eulerian_orientation(&lg, seed);
                let target = n - 2;
                assert!(o.out_degrees(lg.graph()).iter().all(|&d| d == target));
                assert!(o.is_eulerian(lg.graph()));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let lg = build_line_graph(6).unwrap();
        assert_eq!(eulerian_orientation(&lg, 9), eulerian_orientation(&lg, 9));
    }

    #[test]
    fn triangle_has_exactly_two_orientations() {
        let lg = build_line_graph(3).unwrap();
        let all = enumerate_eulerian_orientations(&lg, 100);
        assert!(!all.truncated);
        assert_eq!(all.orientations.len(), 2);
        for o in &all.orientations {
            assert!(o.is_eulerian(lg.graph()));
        }
        let sampled = eulerian_orientation(&lg, 7);
        assert!(all.orientations.contains(&sampled));
    }

    #[test]
    fn cap_truncates() {
        let lg = build_line_graph(3).unwrap();
        let one = enumerate_eulerian_orientations(&lg, 1);
        assert_eq!(one.orientations.len(), 1);
        assert!(one.truncated);
    }

    #[test]
    fn octahedron_enumeration_matches_brute_force() {
        let lg = build_line_graph(4).unwrap();
        let enumerated = enumerate_eulerian_orientations(&lg, usize::MAX);
        assert!(!enumerated.truncated);

        // Independent filter over all 2^12 direction words.
        let graph = lg.graph();
        let mut balanced = Vec::new();
        for word in 0u32..1 << 12 {
            let bits: Vec<bool> = (0..12).map(|i| word >> i & 1 == 1).collect();
            let o = Orientation::new(4, bits);
            if o.is_eulerian(graph) {
                balanced.push(o);
            }
        }
        assert_eq!(enumerated.orientations.len(), balanced.len());
        for o in &enumerated.orientations {
            assert!(balanced.contains(o));
        }
        // Emission order is ascending in the bit strings.
        let words: Vec<String> = enumerated
            .orientations
            .iter()
            .map(|o| {
                o.bits()
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect()
            })
            .collect();
        assert!(words.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn file_round_trip() {
        let lg = build_line_graph(4).unwrap();
        let o = eulerian_orientation(&lg, 3);
        let text = o.to_file_string();
        assert!(text.starts_with("n=4\n"));
        let back = Orientation::parse_file(&text).unwrap();
        assert_eq!(back, o);
    }

    #[test]
    fn parse_rejects_bad_bits_and_truncation() {
        assert!(Orientation::parse_file("n=4\n01x").is_err());
        assert!(Orientation::parse_file("n=4\n0101\n").is_err());
    }
}
