//! Incidence sums of an edge partition and the checks built on them.
//!
//! The incidence of two edge classes is the dot product of their per-vertex
//! degree vectors; because two distinct edges of a simple graph share at
//! most one vertex, it equals the number of incident cross-class edge
//! pairs. The central check: for every partition with `|Z| = n-3`,
//!
//! ```text
//! sum s[i]*t[i]  >=  min( sum z[i]*t[i], sum z[i]*s[i] )
//! ```
//!
//! A partition for which this fails would be a counterexample and is the
//! highest-priority output of the whole toolkit.
//!
//! All quantities here are exact 64-bit integers; halves are handled by
//! doubling both sides of the affected comparisons.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kn::{DegreeProfile, EdgePartition, Label};

/// The three incidence sums of a degree profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceSums {
    pub i_st: i64,
    pub i_zt: i64,
    pub i_zs: i64,
}

impl IncidenceSums {
    /// True iff `i_st >= min(i_zt, i_zs)`.
    pub fn bound_holds(&self) -> bool {
        self.i_st >= self.i_zt.min(self.i_zs)
    }
}

/// Exact dot products of the degree vectors.
pub fn incidence_sums(profile: &DegreeProfile) -> IncidenceSums {
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(&x, &y)| x * y).sum();
    IncidenceSums {
        i_st: dot(&profile.s, &profile.t),
        i_zt: dot(&profile.z, &profile.t),
        i_zs: dot(&profile.z, &profile.s),
    }
}

/// Rewriting quantities behind the incidence inequalities, plus the
/// doubled sum-of-squares comparisons. Everything is exact; quantities
/// that are halves in the usual formulation are stored doubled and named
/// accordingly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaDiagnostics {
    /// `(n-1)*sum(z) - sum(z^2)`; equals `2(n-1)(n-3) - sum(z^2)` when
    /// `sum(z) = 2(n-3)`.
    pub lhs_rewrite_z: i64,
    /// `(n-1)*sum(t) - sum(t^2)`.
    pub rhs_rewrite_t: i64,
    /// `(n-1)*sum(s) - sum(s^2)`.
    pub rhs_rewrite_s: i64,
    /// `sum(z^2) + 2*i_st`, i.e. twice `sum(z^2)/2 + i_st`.
    pub doubled_half_sq_z_plus_ist: i64,
    /// Twice `(n-1)(n-3)`, the threshold the previous field is compared to.
    pub doubled_threshold: i64,
    /// `sum(z^2) + 6`, i.e. twice `sum(z^2)/2 + 3`.
    pub z_square_lhs_doubled: i64,
    /// Twice the z-degree sum over vertices with both `s > 0` and `t > 0`.
    pub z_over_r_doubled: i64,
    /// `p * q`, the product of the zero-degree set sizes.
    pub pq_product: i64,
    /// Would the three rewritten inequalities follow if `i_st` were strictly
    /// below both other sums? (Implications; vacuously true whenever the
    /// main bound holds.)
    pub hypothesis_both_strict: bool,
    pub implication_zt_side: bool,
    pub implication_zs_side: bool,
    pub implication_half_squares: bool,
}

fn zero_sets(profile: &DegreeProfile) -> (Vec<usize>, Vec<usize>) {
    let p: Vec<usize> = (0..profile.n).filter(|&i| profile.s[i] == 0).collect();
    let q: Vec<usize> = (0..profile.n).filter(|&i| profile.t[i] == 0).collect();
    (p, q)
}

/// Diagnostics for a theorem-mode profile (`sum(z) = 2(n-3)` required).
///
/// The exact identities
/// `i_zt - i_st = lhs_rewrite_z - rhs_rewrite_s` and
/// `i_zs - i_st = lhs_rewrite_z - rhs_rewrite_t`
/// hold for every profile; the conditional inequalities are reported as
/// implications and never asserted on their own.
pub fn lemma_diagnostics(profile: &DegreeProfile) -> Result<LemmaDiagnostics> {
    if !profile.is_theorem_mode() {
        return Err(crate::error::Error::Mode {
            n: profile.n,
            expected: profile.n - 3,
            actual: usize::try_from(profile.sum_z() / 2).unwrap_or(usize::MAX),
        });
    }
    Ok(diagnostics_unchecked(profile))
}

pub(crate) fn diagnostics_unchecked(profile: &DegreeProfile) -> LemmaDiagnostics {
    let n1 = profile.n as i64 - 1;
    let sums = incidence_sums(profile);
    let sq = |v: &[i64]| v.iter().map(|&x| x * x).sum::<i64>();
    let sq_z = sq(&profile.z);

    let lhs_rewrite_z = n1 * profile.sum_z() - sq_z;
    let rhs_rewrite_t = n1 * profile.sum_t() - sq(&profile.t);
    let rhs_rewrite_s = n1 * profile.sum_s() - sq(&profile.s);

    let (p_set, q_set) = zero_sets(profile);
    let z_over_r: i64 = (0..profile.n)
        .filter(|&i| profile.s[i] > 0 && profile.t[i] > 0)
        .map(|i| profile.z[i])
        .sum();

    let hypothesis = sums.i_st < sums.i_zt && sums.i_st < sums.i_zs;
    let doubled_threshold = 2 * n1 * (profile.n as i64 - 3);
    let doubled_half = sq_z + 2 * sums.i_st;

    LemmaDiagnostics {
        lhs_rewrite_z,
        rhs_rewrite_t,
        rhs_rewrite_s,
        doubled_half_sq_z_plus_ist: doubled_half,
        doubled_threshold,
        z_square_lhs_doubled: sq_z + 6,
        z_over_r_doubled: 2 * z_over_r,
        pq_product: (p_set.len() * q_set.len()) as i64,
        hypothesis_both_strict: hypothesis,
        implication_zt_side: !hypothesis || lhs_rewrite_z > rhs_rewrite_s,
        implication_zs_side: !hypothesis || lhs_rewrite_z > rhs_rewrite_t,
        implication_half_squares: !hypothesis || doubled_half < doubled_threshold,
    }
}

/// Full report for one theorem-mode partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceReport {
    pub n: usize,
    pub i_st: i64,
    pub i_zt: i64,
    pub i_zs: i64,
    #[serde(rename = "holds")]
    pub bound_holds: bool,
    /// Number of vertices with no incident S edge.
    pub p: usize,
    /// Number of vertices with no incident T edge.
    pub q: usize,
    pub diagnostics: LemmaDiagnostics,
}

/// Evaluate the incidence bound on a theorem-mode partition (`|Z| = n-3`).
pub fn check_incidence_bound(partition: &EdgePartition) -> Result<IncidenceReport> {
    partition.require_theorem_mode()?;
    let profile = partition.degree_profile();
    let sums = incidence_sums(&profile);
    let (p_set, q_set) = zero_sets(&profile);
    Ok(IncidenceReport {
        n: profile.n,
        i_st: sums.i_st,
        i_zt: sums.i_zt,
        i_zs: sums.i_zs,
        bound_holds: sums.bound_holds(),
        p: p_set.len(),
        q: q_set.len(),
        diagnostics: diagnostics_unchecked(&profile),
    })
}

/// The unconditional structural facts about the zero-degree sets of a
/// theorem-mode partition, plus the reported-only root bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub n: usize,
    pub p_vertices: Vec<usize>,
    pub q_vertices: Vec<usize>,
    pub p: usize,
    pub q: usize,
    /// (a) no vertex lies in both P and Q.
    pub p_q_disjoint: bool,
    /// (b) every edge between P and Q carries label Z.
    pub pq_edges_all_z: bool,
    pub pq_product: i64,
    /// (c) `p*q <= n-3`.
    pub pq_bound_holds: bool,
    /// (d) `sum(z^2)/2 + 3 >= sum of z over R`, compared doubled.
    pub half_squares_lhs_doubled: i64,
    pub half_squares_rhs_doubled: i64,
    pub half_squares_holds: bool,
    /// Reported, not asserted: `(p+q)^2 <= 4(n-3)`, the integer-exact form
    /// of `p+q <= 2*sqrt(n-3)`.
    pub root_bound_observed: bool,
}

/// Compute P, Q and the facts (a)-(d). Requires theorem mode: a partition
/// where some vertex carried more than `n-3` Z edges would be rejected as
/// mode-invalid before any fact is evaluated.
pub fn structural_facts(partition: &EdgePartition) -> Result<StructuralReport> {
    partition.require_theorem_mode()?;
    let profile = partition.degree_profile();
    let n = profile.n;
    let (p_vertices, q_vertices) = zero_sets(&profile);

    let in_p = |i: usize| profile.s[i] == 0;
    let in_q = |i: usize| profile.t[i] == 0;
    let p_q_disjoint = (0..n).all(|i| !(in_p(i) && in_q(i)));

    let graph = partition.graph();
    let mut pq_edges_all_z = true;
    for &a in &p_vertices {
        for &b in &q_vertices {
            if a == b {
                continue;
            }
            let e = graph.edge_id(a.min(b), a.max(b))?;
            if partition.label(e) != Label::Z {
                pq_edges_all_z = false;
            }
        }
    }

    let pq_product = (p_vertices.len() * q_vertices.len()) as i64;
    let sq_z: i64 = profile.z.iter().map(|&x| x * x).sum();
    let z_over_r: i64 = (0..n)
        .filter(|&i| !in_p(i) && !in_q(i))
        .map(|i| profile.z[i])
        .sum();

    let p = p_vertices.len();
    let q = q_vertices.len();
    let pq_sum = (p + q) as i64;

    Ok(StructuralReport {
        n,
        p,
        q,
        p_vertices,
        q_vertices,
        p_q_disjoint,
        pq_edges_all_z,
        pq_product,
        pq_bound_holds: pq_product <= n as i64 - 3,
        half_squares_lhs_doubled: sq_z + 6,
        half_squares_rhs_doubled: 2 * z_over_r,
        half_squares_holds: sq_z + 6 >= 2 * z_over_r,
        root_bound_observed: pq_sum * pq_sum <= 4 * (n as i64 - 3),
    })
}

/// Independent oracle for `i_st`: count the unordered pairs of one S edge
/// and one T edge sharing an endpoint, by direct enumeration. Two distinct
/// edges of a simple graph share at most one vertex, so this equals the
/// degree dot product.
pub fn incidence_linegraph_oracle(partition: &EdgePartition) -> i64 {
    let s_edges = partition.class_edges(Label::S);
    let t_edges = partition.class_edges(Label::T);
    let mut count = 0i64;
    for &(a, b) in &s_edges {
        for &(c, d) in &t_edges {
            if a == c || a == d || b == c || b == d {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kn::{CompleteGraph, EdgePartition};

    fn section3_family_n5() -> EdgePartition {
        EdgePartition::from_classes(5, &[(0, 1), (1, 2)], &[(0, 2), (1, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn sums_match_hand_counts() {
        let profile = section3_family_n5().degree_profile();
        let sums = incidence_sums(&profile);
        assert_eq!(sums.i_st, 4);
        assert_eq!(sums.i_zs, 6);
        assert_eq!(sums.i_zt, 10);
    }

    #[test]
    fn sums_vanish_for_single_class() {
        let g = CompleteGraph::new(6).unwrap();
        let p = EdgePartition::new(g, vec![Label::S; 15]).unwrap();
        let sums = incidence_sums(&p.degree_profile());
        assert_eq!((sums.i_st, sums.i_zt, sums.i_zs), (0, 0, 0));
    }

    #[test]
    fn theorem_check_on_hand_counted_n4() {
        let p = EdgePartition::from_classes(4, &[(0, 2), (1, 2)], &[(0, 1)]).unwrap();
        let report = check_incidence_bound(&p).unwrap();
        assert_eq!(report.i_st, 4);
        assert_eq!(report.i_zt, 2);
        assert_eq!(report.i_zs, 2);
        assert!(report.bound_holds);
    }

    #[test]
    fn theorem_check_trivial_n3() {
        let p = EdgePartition::from_classes(3, &[(0, 1)], &[]).unwrap();
        let report = check_incidence_bound(&p).unwrap();
        assert_eq!(report.i_zt, 0);
        assert_eq!(report.i_zs, 0);
        assert!(report.bound_holds);
    }

    #[test]
    fn theorem_check_rejects_wrong_z_size() {
        let p = section3_family_n5(); // |Z| = n-2
        assert!(check_incidence_bound(&p).is_err());
    }

    #[test]
    fn rewriting_identity_is_exact() {
        // Any partition will do; try a handful of deterministic ones.
        let g = CompleteGraph::new(6).unwrap();
        for shift in 0..3usize {
            let labels: Vec<Label> = (0..15)
                .map(|e| match (e + shift) % 4 {
                    0 => Label::Z,
                    1 | 2 => Label::S,
                    _ => Label::T,
                })
                .collect();
            let p = EdgePartition::new(g, labels).unwrap();
            let profile = p.degree_profile();
            let sums = incidence_sums(&profile);
            let d = diagnostics_unchecked(&profile);
            assert_eq!(sums.i_zt - sums.i_st, d.lhs_rewrite_z - d.rhs_rewrite_s);
            assert_eq!(sums.i_zs - sums.i_st, d.lhs_rewrite_z - d.rhs_rewrite_t);
        }
    }

    #[test]
    fn diagnostics_zero_z_at_n3() {
        let p = EdgePartition::from_classes(3, &[(0, 1)], &[]).unwrap();
        let profile = p.degree_profile();
        let d = lemma_diagnostics(&profile).unwrap();
        assert_eq!(d.lhs_rewrite_z, 0);
        let sums = incidence_sums(&profile);
        assert_eq!(sums.i_zt - sums.i_st, d.lhs_rewrite_z - d.rhs_rewrite_s);
        assert_eq!(sums.i_zs - sums.i_st, d.lhs_rewrite_z - d.rhs_rewrite_t);
    }

    #[test]
    fn structural_facts_on_triangle_z() {
        // n=6: Z a triangle on {3,4,5}, S everything inside {0,1,2}, T rest.
        let p =
            EdgePartition::from_classes(6, &[(0, 1), (0, 2), (1, 2)], &[(3, 4), (3, 5), (4, 5)])
                .unwrap();
        let report = structural_facts(&p).unwrap();
        assert_eq!(report.p_vertices, vec![3, 4, 5]);
        assert!(report.q_vertices.is_empty());
        assert_eq!(report.pq_product, 0);
        assert!(report.p_q_disjoint);
        assert!(report.pq_edges_all_z);
        assert!(report.pq_bound_holds);
        assert!(report.half_squares_holds);
    }

    #[test]
    fn structural_facts_on_hand_counted_n4() {
        let p = EdgePartition::from_classes(4, &[(0, 2), (1, 2)], &[(0, 1)]).unwrap();
        let report = structural_facts(&p).unwrap();
        assert_eq!(report.p_vertices, vec![3]);
        assert!(report.q_vertices.is_empty());
        assert!(report.pq_bound_holds);
    }

    #[test]
    fn structural_facts_rejects_general_mode() {
        assert!(structural_facts(&section3_family_n5()).is_err());
        // A vertex with all n-1 incident edges in Z forces |Z| > n-3, so
        // the input is rejected as mode-invalid before any fact runs.
        let all_z_at_0 =
            EdgePartition::from_classes(5, &[], &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(matches!(
            structural_facts(&all_z_at_0),
            Err(crate::error::Error::Mode { .. })
        ));
    }

    #[test]
    fn oracle_matches_dot_product_on_family() {
        let p = section3_family_n5();
        assert_eq!(incidence_linegraph_oracle(&p), 4);
        let g = CompleteGraph::new(5).unwrap();
        let all_s = EdgePartition::new(g, vec![Label::S; 10]).unwrap();
        assert_eq!(incidence_linegraph_oracle(&all_s), 0);
    }
}
