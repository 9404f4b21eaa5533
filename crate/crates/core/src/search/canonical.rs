//! Canonical keys for partitions modulo the two symmetries that leave the
//! incidence bound untouched: relabeling vertices (which permutes every
//! sum) and swapping S with T (which fixes `i_st` and exchanges `i_zt`
//! with `i_zs`, fixing their min).
//!
//! Exact mode works for n <= 8: the key is the lexicographically smallest
//! label string over all `2 * n!` symmetry images, so equal keys mean
//! equivalent partitions and unequal keys mean inequivalent ones. Beyond
//! n = 8 a non-injective class hash (the sorted multiset of per-vertex
//! `(min(s,t), max(s,t), z)` triples) is produced instead; it can bucket
//! partitions but must never be used to skip work.

use crate::error::{Error, Result};
use crate::kn::{CompleteGraph, EdgePartition, Label};

/// Opaque class key; compare for equality only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn is_exact(&self) -> bool {
        self.0.first() == Some(&0)
    }
}

pub const EXACT_MODE_MAX_N: usize = 8;

/// Precomputed edge permutations for every vertex permutation of `K_n`.
pub struct CanonicalContext {
    n: usize,
    edge_perms: Vec<Vec<u32>>,
}

impl CanonicalContext {
    pub fn new(n: usize) -> Result<Self> {
        if n > EXACT_MODE_MAX_N {
            return Err(Error::Refused(format!(
                "exact canonical keys are limited to n <= {EXACT_MODE_MAX_N}; \
                 n = {n} only supports the bucketing class hash"
            )));
        }
        let graph = CompleteGraph::new(n)?;
        let m = graph.edge_count();
        let mut edge_perms = Vec::new();
        let mut vertices: Vec<usize> = (0..n).collect();
        heap_permutations(&mut vertices, &mut |perm| {
            let mut edges = vec![0u32; m];
            for (e, slot) in edges.iter_mut().enumerate() {
                let (u, v) = graph.endpoints(e);
                let (pu, pv) = (perm[u], perm[v]);
                let id = graph.edge_id(pu.min(pv), pu.max(pv)).unwrap();
                *slot = id as u32;
            }
            edge_perms.push(edges);
        });
        Ok(CanonicalContext { n, edge_perms })
    }

    /// Exact key: minimum label string over all symmetry images.
    pub fn key_for_labels(&self, labels: &[Label]) -> CanonicalKey {
        let m = labels.len();
        let plain: Vec<u8> = labels.iter().map(|&l| label_byte(l)).collect();
        let swapped: Vec<u8> = labels.iter().map(|&l| label_byte(swap_st(l))).collect();

        let mut best: Option<Vec<u8>> = None;
        let mut candidate = vec![0u8; m];
        for edges in &self.edge_perms {
            for source in [&plain, &swapped] {
                for e in 0..m {
                    candidate[e] = source[edges[e] as usize];
                }
                match &best {
                    Some(b) if candidate.as_slice() >= b.as_slice() => {}
                    _ => best = Some(candidate.clone()),
                }
            }
        }
        let mut bytes = Vec::with_capacity(m + 2);
        bytes.push(0); // exact mode tag
        bytes.push(self.n as u8);
        bytes.extend(best.unwrap());
        CanonicalKey(bytes)
    }
}

/// Key for a partition: exact for n <= 8, class hash beyond.
pub fn canonical_key(partition: &EdgePartition) -> CanonicalKey {
    let n = partition.n();
    if n <= EXACT_MODE_MAX_N {
        let ctx = CanonicalContext::new(n).expect("n checked");
        ctx.key_for_labels(partition.labels())
    } else {
        class_hash(partition)
    }
}

/// The documented non-injective bucketing hash for large n.
pub fn class_hash(partition: &EdgePartition) -> CanonicalKey {
    let profile = partition.degree_profile();
    let mut triples: Vec<(i64, i64, i64)> = (0..profile.n)
        .map(|i| {
            let (a, b) = (
                profile.s[i].min(profile.t[i]),
                profile.s[i].max(profile.t[i]),
            );
            (a, b, profile.z[i])
        })
        .collect();
    triples.sort_unstable();
    let mut bytes = Vec::with_capacity(3 * profile.n + 2);
    bytes.push(1); // hash mode tag
    bytes.push(profile.n as u8);
    for (a, b, z) in triples {
        bytes.push(a as u8);
        bytes.push(b as u8);
        bytes.push(z as u8);
    }
    CanonicalKey(bytes)
}

fn label_byte(l: Label) -> u8 {
    match l {
        Label::S => 0,
        Label::T => 1,
        Label::Z => 2,
    }
}

fn swap_st(l: Label) -> Label {
    match l {
        Label::S => Label::T,
        Label::T => Label::S,
        Label::Z => Label::Z,
    }
}

fn heap_permutations<F: FnMut(&[usize])>(items: &mut Vec<usize>, visit: &mut F) {
    fn recurse<F: FnMut(&[usize])>(k: usize, items: &mut Vec<usize>, visit: &mut F) {
        if k <= 1 {
            visit(items);
            return;
        }
        for i in 0..k {
            recurse(k - 1, items, visit);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let k = items.len();
    recurse(k, items, visit);
}
