//! Complete-graph model: lexicographic edge ids, three-class edge partitions,
//! and per-vertex degree profiles.
//!
//! Vertices of `K_n` are `0..n-1`. Edges are the pairs `(u, v)` with `u < v`,
//! ordered lexicographically; the id of `(u, v)` is
//! `u*n - u*(u+1)/2 + (v - u - 1)`. Every file format and report in this
//! crate uses these ids, so they are part of the compatibility surface.
//!
//! The partition text format is one partition per line:
//!
//! ```text
//! n=<n> labels=<m characters over S, T, Z in edge-id order>
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The complete graph `K_n`: vertex count plus derived edge indexing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompleteGraph {
    n: usize,
    m: usize,
}

impl CompleteGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("need n >= 3 vertices, got {n}")));
        }
        Ok(CompleteGraph {
            n,
            m: n * (n - 1) / 2,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, `n*(n-1)/2`.
    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Lexicographic edge id of `(u, v)`; requires `u < v < n`.
    pub fn edge_id(&self, u: usize, v: usize) -> Result<usize> {
        if u >= v || v >= self.n {
            return Err(Error::Domain(format!(
                "edge ({u}, {v}) is not a valid ordered pair for n = {}",
                self.n
            )));
        }
        Ok(u * self.n - u * (u + 1) / 2 + (v - u - 1))
    }

    /// Endpoints `(u, v)` with `u < v` of an edge id.
    ///
    /// Panics on an out-of-range id; callers index edges they obtained
    /// from this same context.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        assert!(e < self.m, "edge id {e} out of range for n = {}", self.n);
        let mut u = 0;
        let mut row_start = 0;
        loop {
            let row_len = self.n - u - 1;
            if e < row_start + row_len {
                return (u, u + 1 + (e - row_start));
            }
            row_start += row_len;
            u += 1;
        }
    }

    /// All edges in id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v)))
    }
}

/// Edge class label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    S,
    T,
    Z,
}

impl Label {
    pub fn as_char(self) -> char {
        match self {
            Label::S => 'S',
            Label::T => 'T',
            Label::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Label> {
        match c {
            'S' => Some(Label::S),
            'T' => Some(Label::T),
            'Z' => Some(Label::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Whether a partition has exactly `n-3` Z edges (the theorem hypothesis)
/// or some other Z size (sharpness family, oracles).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionMode {
    Theorem,
    General,
}

/// An assignment of every edge of `K_n` to exactly one of S, T, Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    graph: CompleteGraph,
    labels: Vec<Label>,
}

impl EdgePartition {
    pub fn new(graph: CompleteGraph, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != graph.edge_count() {
            return Err(Error::Domain(format!(
                "expected {} labels for n = {}, got {}",
                graph.edge_count(),
                graph.n(),
                labels.len()
            )));
        }
        Ok(EdgePartition { graph, labels })
    }

    /// Build from explicit S and Z edge lists; everything else becomes T.
    /// Listing an edge in both classes is an error.
    pub fn from_classes(
        n: usize,
        s_edges: &[(usize, usize)],
        z_edges: &[(usize, usize)],
    ) -> Result<Self> {
        let graph = CompleteGraph::new(n)?;
        let mut labels = vec![Label::T; graph.edge_count()];
        for &(u, v) in z_edges {
            labels[graph.edge_id(u.min(v), u.max(v))?] = Label::Z;
        }
        for &(u, v) in s_edges {
            let id = graph.edge_id(u.min(v), u.max(v))?;
            if labels[id] == Label::Z {
                return Err(Error::Domain(format!(
                    "edge ({u}, {v}) listed in both S and Z"
                )));
            }
            labels[id] = Label::S;
        }
        EdgePartition::new(graph, labels)
    }

    pub fn graph(&self) -> &CompleteGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, edge: usize) -> Label {
        self.labels[edge]
    }

    pub fn class_size(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Edges of one class, as endpoint pairs in id order.
    pub fn class_edges(&self, label: Label) -> Vec<(usize, usize)> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(e, _)| self.graph.endpoints(e))
            .collect()
    }

    pub fn mode(&self) -> PartitionMode {
        if self.class_size(Label::Z) == self.n() - 3 {
            PartitionMode::Theorem
        } else {
            PartitionMode::General
        }
    }

    /// Errors unless `|Z| = n-3`.
    pub fn require_theorem_mode(&self) -> Result<()> {
        let actual = self.class_size(Label::Z);
        if actual != self.n() - 3 {
            return Err(Error::Mode {
                n: self.n(),
                expected: self.n() - 3,
                actual,
            });
        }
        Ok(())
    }

    /// Per-vertex counts of incident S/T/Z edges.
    pub fn degree_profile(&self) -> DegreeProfile {
        let n = self.n();
        let mut s = vec![0i64; n];
        let mut t = vec![0i64; n];
        let mut z = vec![0i64; n];
        for (e, &label) in self.labels.iter().enumerate() {
            let (u, v) = self.graph.endpoints(e);
            let target = match label {
                Label::S => &mut s,
                Label::T => &mut t,
                Label::Z => &mut z,
            };
            target[u] += 1;
            target[v] += 1;
        }
        DegreeProfile { n, s, t, z }
    }

    /// One-line text form: `n=<n> labels=<STZ string>`.
    pub fn to_line(&self) -> String {
        let labels: String = self.labels.iter().map(|l| l.as_char()).collect();
        format!("n={} labels={}", self.n(), labels)
    }

    /// Parse one line of the partition text format. `line_no` is 1-based and
    /// only used for diagnostics.
    pub fn parse_line(line: &str, line_no: usize) -> Result<Self> {
        let err = |column: usize, message: String| Error::Parse {
            line: line_no,
            column,
            message,
        };

        let rest = line
            .strip_prefix("n=")
            .ok_or_else(|| err(1, "expected `n=<count>`".into()))?;
        let space = rest.find(' ').ok_or_else(|| {
            err(
                line.len() + 1,
                "expected ` labels=` after vertex count".into(),
            )
        })?;
        let n: usize = rest[..space]
            .parse()
            .map_err(|_| err(3, format!("invalid vertex count `{}`", &rest[..space])))?;
        let graph = CompleteGraph::new(n).map_err(|e| err(3, e.to_string()))?;

        // "n=" occupies columns 1-2, so rest[i] sits at column i + 3.
        let labels_part_col = space + 4;
        let labels_part = &rest[space + 1..];
        let body = labels_part
            .strip_prefix("labels=")
            .ok_or_else(|| err(labels_part_col, "expected `labels=<STZ string>`".into()))?;
        let labels_start = labels_part_col + "labels=".len();

        let mut labels = Vec::with_capacity(graph.edge_count());
        for (i, c) in body.chars().enumerate() {
            match Label::from_char(c) {
                Some(l) => labels.push(l),
                None => {
                    return Err(err(
                        labels_start + i,
                        format!("invalid label `{c}` (expected S, T or Z)"),
                    ))
                }
            }
        }
        if labels.len() != graph.edge_count() {
            return Err(err(
                labels_start + body.len(),
                format!(
                    "expected {} labels for n = {}, got {}",
                    graph.edge_count(),
                    n,
                    labels.len()
                ),
            ));
        }
        EdgePartition::new(graph, labels)
    }
}

/// Per-vertex class degrees of a partition (or a candidate one).
///
/// Always satisfies `s[i] + t[i] + z[i] = n - 1` with all entries in
/// `0..=n-1`; construction rejects anything else.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub n: usize,
    pub s: Vec<i64>,
    pub t: Vec<i64>,
    pub z: Vec<i64>,
}

impl DegreeProfile {
    pub fn new(n: usize, s: Vec<i64>, t: Vec<i64>, z: Vec<i64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("need n >= 3, got {n}")));
        }
        if s.len() != n || t.len() != n || z.len() != n {
            return Err(Error::Domain(
                "degree vectors must all have length n".into(),
            ));
        }
        let max = (n - 1) as i64;
        for i in 0..n {
            for (name, v) in [("s", s[i]), ("t", t[i]), ("z", z[i])] {
                if !(0..=max).contains(&v) {
                    return Err(Error::Domain(format!(
                        "{name}[{i}] = {v} is outside 0..={max}"
                    )));
                }
            }
            if s[i] + t[i] + z[i] != max {
                return Err(Error::Domain(format!(
                    "degree identity fails at vertex {i}: {} + {} + {} != {max}",
                    s[i], t[i], z[i]
                )));
            }
        }
        Ok(DegreeProfile { n, s, t, z })
    }

    /// Build from `s` and `z` only; `t` is forced by the degree identity.
    pub fn from_sz(n: usize, s: Vec<i64>, z: Vec<i64>) -> Result<Self> {
        if s.len() != n || z.len() != n {
            return Err(Error::Domain(
                "degree vectors must all have length n".into(),
            ));
        }
        let t = s
            .iter()
            .zip(&z)
            .map(|(&si, &zi)| (n as i64 - 1) - si - zi)
            .collect();
        DegreeProfile::new(n, s, t, z)
    }

    pub fn sum_s(&self) -> i64 {
        self.s.iter().sum()
    }

    pub fn sum_t(&self) -> i64 {
        self.t.iter().sum()
    }

    pub fn sum_z(&self) -> i64 {
        self.z.iter().sum()
    }

    /// True when the z degrees sum to `2(n-3)`, the theorem-mode handshake.
    pub fn is_theorem_mode(&self) -> bool {
        self.sum_z() == 2 * (self.n as i64 - 3)
    }

    /// Vertex-order-independent form: the per-vertex `(s, t, z)` triples,
    /// sorted. Two profiles are relabelings of each other iff these match.
    pub fn canonical_triples(&self) -> Vec<(i64, i64, i64)> {
        let mut triples: Vec<_> = (0..self.n)
            .map(|i| (self.s[i], self.t[i], self.z[i]))
            .collect();
        triples.sort_unstable();
        triples
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_ids_are_lexicographic() {
        let g = CompleteGraph::new(5).unwrap();
        assert_eq!(g.edge_id(0, 1).unwrap(), 0);
        assert_eq!(g.edge_id(3, 4).unwrap(), 9);
        assert_eq!(g.edge_id(1, 3).unwrap(), 5);
    }

    #[test]
    fn edge_ids_round_trip_and_cover() {
        for n in 3..=12 {
            let g = CompleteGraph::new(n).unwrap();
            let mut seen = vec![false; g.edge_count()];
            for (u, v) in g.edges() {
                let e = g.edge_id(u, v).unwrap();
                assert!(!seen[e], "edge id {e} repeated");
                seen[e] = true;
                assert_eq!(g.endpoints(e), (u, v));
            }
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn rejects_bad_edges_and_small_n() {
        let g = CompleteGraph::new(5).unwrap();
        assert!(g.edge_id(2, 2).is_err());
        assert!(g.edge_id(3, 1).is_err());
        assert!(g.edge_id(0, 5).is_err());
        assert!(CompleteGraph::new(2).is_err());
    }

    #[test]
    fn degree_profile_of_section3_style_family() {
        // n=5: S = {01, 12}, Z = {02, 13, 14}, T = rest.
        let p =
            EdgePartition::from_classes(5, &[(0, 1), (1, 2)], &[(0, 2), (1, 3), (1, 4)]).unwrap();
        let profile = p.degree_profile();
        assert_eq!(profile.s, vec![1, 2, 1, 0, 0]);
        assert_eq!(profile.z, vec![1, 2, 1, 1, 1]);
        assert_eq!(profile.t, vec![2, 0, 2, 3, 3]);
        assert_eq!(p.mode(), PartitionMode::General); // |Z| = n-2
    }

    #[test]
    fn degree_profile_single_class() {
        let g = CompleteGraph::new(3).unwrap();
        let p = EdgePartition::new(g, vec![Label::S; 3]).unwrap();
        let profile = p.degree_profile();
        assert_eq!(profile.s, vec![2, 2, 2]);
        assert_eq!(profile.t, vec![0, 0, 0]);
        assert_eq!(profile.z, vec![0, 0, 0]);
    }

    #[test]
    fn degree_profile_hand_counted_n4() {
        let p = EdgePartition::from_classes(4, &[(0, 2), (1, 2)], &[(0, 1)]).unwrap();
        let profile = p.degree_profile();
        assert_eq!(profile.s, vec![1, 1, 2, 0]);
        assert_eq!(profile.t, vec![1, 1, 1, 3]);
        assert_eq!(profile.z, vec![1, 1, 0, 0]);
        assert_eq!(p.mode(), PartitionMode::Theorem);
    }

    #[test]
    fn text_format_round_trip() {
        let p = EdgePartition::from_classes(4, &[(0, 2), (1, 2)], &[(0, 1)]).unwrap();
        let line = p.to_line();
        assert_eq!(line, "n=4 labels=ZSTSTT");
        let back = EdgePartition::parse_line(&line, 1).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn parse_reports_position_of_first_bad_character() {
        let err = EdgePartition::parse_line("n=4 labels=ZSXSTT", 7).unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 7);
                // "n=4 labels=" is 11 characters; the X sits at column 14.
                assert_eq!(column, 14);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_reports_truncation_offset() {
        let err = EdgePartition::parse_line("n=4 labels=ZST", 1).unwrap_err();
        match err {
            Error::Parse {
                column, message, ..
            } => {
                assert_eq!(column, 15);
                assert!(message.contains("expected 6 labels"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn profile_validation() {
        assert!(DegreeProfile::new(4, vec![3, 3, 3, 3], vec![0; 4], vec![0; 4]).is_ok());
        assert!(DegreeProfile::new(4, vec![3, 3, 3, 2], vec![0; 4], vec![0; 4]).is_err());
        assert!(DegreeProfile::from_sz(4, vec![0; 4], vec![4, 0, 0, 0]).is_err());
    }
}
