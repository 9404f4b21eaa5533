//! The counterexample family showing the incidence bound breaks once
//! `|Z|` grows from `n-3` to `n-2`.
//!
//! For n >= 5 take `S = {(0,1), (1,2)}`, `Z = {(0,2)} ∪ {(1,i) : i >= 3}`
//! and put every other edge in T. Then `i_st = 2(n-3)`,
//! `i_zs = 2(n-3) + 2` and `i_zt >= (n-3)(n-1)`, so `i_st` drops strictly
//! below both other sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::incidence_sums;
use crate::kn::EdgePartition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub n: usize,
    pub i_st: i64,
    pub i_zs: i64,
    pub i_zt: i64,
    pub violates_min_bound: bool,
}

/// The family member on `n` vertices (`|Z| = n-2`, general mode).
/// n = 5 is the smallest member; below that the construction runs out of
/// vertices.
pub fn sharp_family(n: usize) -> Result<EdgePartition> {
    if n < 5 {
        return Err(Error::Domain(format!(
            "the counterexample family needs n >= 5, got {n}"
        )));
    }
    let s_edges = [(0, 1), (1, 2)];
    let mut z_edges = vec![(0, 2)];
    z_edges.extend((3..n).map(|i| (1, i)));
    EdgePartition::from_classes(n, &s_edges, &z_edges)
}

/// Build the family member and report its incidence sums.
pub fn verify_sharpness(n: usize) -> Result<SharpnessReport> {
    let partition = sharp_family(n)?;
    let sums = incidence_sums(&partition.degree_profile());
    Ok(SharpnessReport {
        n,
        i_st: sums.i_st,
        i_zs: sums.i_zs,
        i_zt: sums.i_zt,
        violates_min_bound: sums.i_st < sums.i_zt.min(sums.i_zs),
    })
}
