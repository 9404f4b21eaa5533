//! Report connecting an edge partition of `K_n` to vertex subsets of its
//! line graph.
//!
//! The S/T/Z edge classes become vertex sets of J(n,2). This report
//! computes, for `k = n-2`, the neighborhood size of the S-set together
//! with both candidate lower-bound expressions `min(k|Z|, |S||Z|)` and the
//! expansion threshold `min(k^2-1, (k-1)(|S|+1))`. It deliberately asserts
//! nothing: how the quantities chain together depends on a correspondence
//! that is outside this toolkit's scope, so the numbers are emitted for
//! inspection instead.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::incidence::incidence_sums;
use crate::kn::{EdgePartition, Label};
use crate::orient::expansion::expansion_threshold;
use crate::orient::linegraph::build_line_graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub n: usize,
    pub k: usize,
    pub s_hat_size: usize,
    pub t_hat_size: usize,
    pub z_hat_size: usize,
    /// `|N(S-set)|` in J(n,2), by direct neighborhood expansion.
    pub neighborhood_s_hat: usize,
    pub i_st: i64,
    pub i_zt: i64,
    pub i_zs: i64,
    /// `min(k * |Z-set|, |S-set| * |Z-set|)`.
    pub incidence_side_min: i64,
    /// `min(k^2 - 1, (k-1)(|S-set|+1))`.
    pub expansion_threshold: i64,
}

pub fn line_graph_bridge_report(partition: &EdgePartition) -> Result<BridgeReport> {
    let n = partition.n();
    let k = n - 2;
    let lg = build_line_graph(n)?;

    let class_vertices = |label: Label| -> Vec<usize> {
        partition
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(e, _)| e)
            .collect()
    };
    let s_hat = class_vertices(Label::S);
    let t_hat = class_vertices(Label::T);
    let z_hat = class_vertices(Label::Z);

    let neighborhood_s_hat = lg.graph().neighborhood_of_set(&s_hat).len();
    let sums = incidence_sums(&partition.degree_profile());

    let ki = k as i64;
    let s_size = s_hat.len() as i64;
    let z_size = z_hat.len() as i64;

    Ok(BridgeReport {
        n,
        k,
        s_hat_size: s_hat.len(),
        t_hat_size: t_hat.len(),
        z_hat_size: z_hat.len(),
        neighborhood_s_hat,
        i_st: sums.i_st,
        i_zt: sums.i_zt,
        i_zs: sums.i_zs,
        incidence_side_min: (ki * z_size).min(s_size * z_size),
        expansion_threshold: expansion_threshold(k, s_hat.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kn::CompleteGraph;
    use crate::orient::linegraph::build_line_graph;

    #[test]
    fn family_quantities() {
        let p =
            EdgePartition::from_classes(5, &[(0, 1), (1, 2)], &[(0, 2), (1, 3), (1, 4)]).unwrap();
        let report = line_graph_bridge_report(&p).unwrap();
        assert_eq!(report.k, 3);
        assert_eq!(report.s_hat_size, 2);
        assert_eq!(report.z_hat_size, 3);
        // Direct recount of the S-set neighborhood in J(5,2).
        let lg = build_line_graph(5).unwrap();
        let s_ids: Vec<usize> = p
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == Label::S)
            .map(|(e, _)| e)
            .collect();
        let expected = lg.graph().neighborhood_of_set(&s_ids).len();
        assert_eq!(report.neighborhood_s_hat, expected);
    }

    #[test]
    fn all_s_degenerates_to_zero() {
        let g = CompleteGraph::new(5).unwrap();
        let p = EdgePartition::new(g, vec![Label::S; 10]).unwrap();
        let report = line_graph_bridge_report(&p).unwrap();
        assert_eq!(report.z_hat_size, 0);
        assert_eq!(report.incidence_side_min, 0);
        assert_eq!(report.neighborhood_s_hat, 0);
    }
}
