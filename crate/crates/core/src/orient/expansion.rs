//! Neighborhood-expansion condition: for vertex sets S with
//! `1 <= |S| <= V/2`, compare `|N(S)|` against
//! `min(k^2 - 1, (k-1)(|S|+1))`. Sets up to `size_cap` are checked
//! exhaustively; each larger size up to `V/2` is spot-checked with seeded
//! random samples.

use serde::{Deserialize, Serialize};

use crate::combinatorics::next_combination;
use crate::error::{Error, Result};
use crate::orient::linegraph::SimpleGraph;
use crate::rng::XorShift64Star;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub size: usize,
    pub neighborhood: usize,
    pub threshold: i64,
    pub satisfied: bool,
    /// The witness set, kept only for unsatisfied records.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub graph_id: String,
    pub k: usize,
    pub vertex_count: usize,
    pub size_cap: usize,
    pub samples_per_size: usize,
    pub seed: u64,
    pub coverage: String,
    pub all_satisfied: bool,
    pub records: Vec<ExpansionRecord>,
}

pub fn expansion_threshold(k: usize, set_size: usize) -> i64 {
    let k = k as i64;
    let s = set_size as i64;
    (k * k - 1).min((k - 1) * (s + 1))
}

/// Check the expansion condition on `graph`.
pub fn expansion_condition(
    graph: &SimpleGraph,
    graph_id: &str,
    k: usize,
    size_cap: usize,
    samples: usize,
    seed: u64,
) -> Result<ExpansionReport> {
    let v = graph.vertex_count();
    if size_cap == 0 || size_cap > v / 2 {
        return Err(Error::Domain(format!(
            "size cap must lie in 1..={} for {v} vertices, got {size_cap}",
            v / 2
        )));
    }

    let mut records = Vec::new();
    let check = |set: &[usize], records: &mut Vec<ExpansionRecord>| {
        let neighborhood = graph.neighborhood_of_set(set).len();
        let threshold = expansion_threshold(k, set.len());
        let satisfied = (neighborhood as i64) > threshold;
        records.push(ExpansionRecord {
            size: set.len(),
            neighborhood,
            threshold,
            satisfied,
            set: (!satisfied).then(|| set.to_vec()),
        });
    };

    for size in 1..=size_cap {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            check(&combo, &mut records);
            if !next_combination(v, &mut combo) {
                break;
            }
        }
    }
    for size in size_cap + 1..=v / 2 {
        let mut rng = XorShift64Star::stream(seed, size as u64);
        for _ in 0..samples {
            let set = rng.subset(v, size);
            check(&set, &mut records);
        }
    }

    let all_satisfied = records.iter().all(|r| r.satisfied);
    Ok(ExpansionReport {
        graph_id: graph_id.to_string(),
        k,
        vertex_count: v,
        size_cap,
        samples_per_size: samples,
        seed,
        coverage: format!(
            "exhaustive for |S| <= {size_cap}, {samples} samples per size up to {}",
            v / 2
        ),
        all_satisfied,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orient::linegraph::build_line_graph;

    #[test]
    fn single_vertex_in_j52() {
        let lg = build_line_graph(5).unwrap();
        let report = expansion_condition(lg.graph(), &lg.id(), 3, 1, 0, 0).unwrap();
        for r in report.records.iter().filter(|r| r.size == 1) {
            assert_eq!(r.neighborhood, 6);
            assert_eq!(r.threshold, 4); // min(8, 2*2)
            assert!(r.satisfied);
        }
    }

    #[test]
    fn single_vertex_in_octahedron() {
        let lg = build_line_graph(4).unwrap();
        let report = expansion_condition(lg.graph(), &lg.id(), 2, 1, 0, 0).unwrap();
        for r in report.records.iter().filter(|r| r.size == 1) {
            assert_eq!(r.neighborhood, 4);
            assert_eq!(r.threshold, 2); // min(3, 1*2)
            assert!(r.satisfied);
        }
        assert!(report.all_satisfied);
    }

    #[test]
    fn zero_size_cap_is_rejected() {
        let lg = build_line_graph(5).unwrap();
        assert!(expansion_condition(lg.graph(), &lg.id(), 3, 0, 0, 0).is_err());
    }

    #[test]
    fn sampled_sizes_are_deterministic() {
        let lg = build_line_graph(6).unwrap();
        let a = expansion_condition(lg.graph(), &lg.id(), 4, 2, 5, 77).unwrap();
        let b = expansion_condition(lg.graph(), &lg.id(), 4, 2, 5, 77).unwrap();
        assert_eq!(a, b);
    }
}
