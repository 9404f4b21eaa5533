//! Incidence bounds for three-class edge partitions of complete graphs.
//!
//! The toolkit models partitions of the edges of `K_n` into classes S, T
//! and Z, checks the incidence bound
//! `sum(s_i t_i) >= min(sum(z_i t_i), sum(z_i s_i))` for partitions with
//! `|Z| = n-3`, builds the `|Z| = n-2` family where the bound fails, hunts
//! for counterexamples (exhaustively, randomly, and through degree
//! profiles with exact realizability), and certifies strong node
//! connectivity of Eulerian orientations of the line graph J(n,2).
//!
//! Everything is exact 64-bit integer arithmetic, and every randomized
//! path is reproducible from an explicit seed (see [`rng`]).

pub mod combinatorics;
pub mod error;
pub mod incidence;
pub mod kn;
pub mod orient;
pub mod realize;
pub mod rng;
pub mod search;
pub mod sharpness;

pub use error::{Error, Result};
pub use incidence::{
    check_incidence_bound, incidence_linegraph_oracle, incidence_sums, lemma_diagnostics,
    structural_facts, IncidenceReport, IncidenceSums, LemmaDiagnostics, StructuralReport,
};
pub use kn::{CompleteGraph, DegreeProfile, EdgePartition, Label, PartitionMode};
pub use realize::{realize_profile, InfeasibleReason, ProfileRealization};
pub use search::{
    exhaustive_search, profile_search, random_search, run_search, SearchConfig, SearchMode,
    SearchOutcome, SearchReport,
};
pub use sharpness::{sharp_family, verify_sharpness, SharpnessReport};
