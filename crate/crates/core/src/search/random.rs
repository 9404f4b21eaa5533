//! Uniform sampling of theorem-mode partitions. Each sample draws a
//! uniform rank below `C(m, n-3)` (rejection sampling, then combinatorial
//! unranking) for the Z set and a uniform coin per remaining edge for
//! S versus T. Sample `i` of a run with seed `s` uses its own generator
//! stream, so results are independent of how samples are sharded across
//! workers.

use crate::combinatorics::unrank_combination;
use crate::kn::{CompleteGraph, EdgePartition, Label};
use crate::rng::XorShift64Star;

use super::{Accum, ViolationRecord};

pub(crate) struct RandomJob {
    pub graph: CompleteGraph,
    pub seed: u64,
    pub total_z_sets: u128,
}

/// Draw one uniform theorem-mode partition (exposed for test corpora).
pub fn sample_theorem_partition(n: usize, seed: u64, index: u64) -> EdgePartition {
    let graph = CompleteGraph::new(n).expect("n >= 3");
    let total = crate::combinatorics::binomial_checked(graph.edge_count() as u64, (n - 3) as u64)
        .expect("within unranking range");
    let mut rng = XorShift64Star::stream(seed, index);
    sample_with(&graph, total, &mut rng)
}

fn sample_with(
    graph: &CompleteGraph,
    total_z_sets: u128,
    rng: &mut XorShift64Star,
) -> EdgePartition {
    let n = graph.n();
    let m = graph.edge_count();
    let rank = rng.below_u128(total_z_sets);
    let z_set = unrank_combination(m, n - 3, rank);
    let mut labels = vec![Label::S; m];
    for &e in &z_set {
        labels[e] = Label::Z;
    }
    for label in labels.iter_mut() {
        if *label != Label::Z && rng.coin() {
            *label = Label::T;
        }
    }
    EdgePartition::new(*graph, labels).expect("label count matches")
}

pub(crate) fn process_range(job: &RandomJob, start: u128, end: u128) -> Accum {
    let mut accum = Accum::default();
    for index in start..end {
        let mut rng = XorShift64Star::stream(job.seed, index as u64);
        let partition = sample_with(&job.graph, job.total_z_sets, &mut rng);
        let sums = crate::incidence::incidence_sums(&partition.degree_profile());
        accum.partitions_checked += 1;
        if sums.i_st < sums.i_zt.min(sums.i_zs) {
            accum.violations.push(ViolationRecord {
                partition: partition.to_line(),
            });
        }
    }
    accum
}
